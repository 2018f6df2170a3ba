#include "dpo/algebra/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "dpo/error.hpp"

namespace dpo {

// ---------------------------------------------------------------- Ring

struct Ring::Data {
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
};

Ring::Ring() : Ring(std::vector<std::string>{}) {}

Ring::Ring(std::vector<std::string> names) {
  auto data = std::make_shared<Data>();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw InputError("empty variable name");
    if (!data->index.emplace(names[i], i).second)
      throw InputError("duplicate variable name '" + names[i] + "'");
  }
  data->names = std::move(names);
  data_ = std::move(data);
}

std::size_t Ring::size() const { return data_->names.size(); }
const std::string& Ring::name(std::size_t index) const { return data_->names.at(index); }
const std::vector<std::string>& Ring::names() const { return data_->names; }

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t Ring::require(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx) throw InputError("unknown variable '" + std::string(name) + "'");
  return *idx;
}

bool Ring::operator==(const Ring& other) const {
  return data_ == other.data_ || data_->names == other.data_->names;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  Monomial m(nvars);
  m.exps_.at(index) = power;
  return m;
}

std::uint64_t Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= divisor.exps_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(r.exps_[i], other.exps_[i]);
  return r;
}

// ---------------------------------------------------------------- MonomialOrder

namespace {

std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo,
                                   std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = hi; i > lo; --i) {
    if (a[i - 1] != b[i - 1]) return b[i - 1] <=> a[i - 1];
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  switch (kind) {
    case Kind::Lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return std::strong_ordering::equal;
    case Kind::DegRevLex:
      return grevlex_range(a, b, 0, n);
    case Kind::BlockElimination: {
      const std::size_t k = std::min(split, n);
      if (auto c = grevlex_range(a, b, 0, k); c != 0) return c;
      return grevlex_range(a, b, k, n);
    }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::describe() const {
  switch (kind) {
    case Kind::Lex: return "lex";
    case Kind::DegRevLex: return "grevlex";
    case Kind::BlockElimination: return "block(" + std::to_string(split) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(Ring ring, MonomialOrder order) : ring_(std::move(ring)), order_(order) {}

Polynomial Polynomial::constant(const Ring& ring, const Scalar& value, MonomialOrder order) {
  Polynomial p(ring, order);
  if (value != 0) p.terms_.push_back({Monomial(ring.size()), value});
  return p;
}

Polynomial Polynomial::variable(const Ring& ring, std::string_view name, MonomialOrder order) {
  Polynomial p(ring, order);
  p.terms_.push_back({Monomial::variable(ring.size(), ring.require(name)), Scalar(1)});
  return p;
}

Polynomial Polynomial::from_terms(const Ring& ring, std::vector<Term> terms, MonomialOrder order) {
  Polynomial p(ring, order);
  for (const auto& t : terms)
    if (t.mono.size() != ring.size()) throw InputError("monomial length differs from ring size");
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), [this](const Term& a, const Term& b) {
    return order_.compare(a.mono, b.mono) > 0;
  });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().mono == t.mono) {
      merged.back().coef += t.coef;
    } else {
      if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
  terms_ = std::move(merged);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

std::uint32_t Polynomial::degree_in(std::string_view var) const {
  return degree_in(ring_.require(var));
}

std::uint64_t Polynomial::degree_in(std::span<const std::size_t> vars) const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) {
    std::uint64_t s = 0;
    for (auto v : vars) s += t.mono[v];
    d = std::max(d, s);
  }
  return d;
}

std::vector<std::size_t> Polynomial::support() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < ring_.size(); ++v)
    if (degree_in(v) > 0) out.push_back(v);
  return out;
}

const Polynomial::Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw InputError("zero polynomial has no leading term");
  return terms_.front();
}

Scalar Polynomial::coefficient(const Monomial& mono) const {
  for (const auto& t : terms_)
    if (t.mono == mono) return t.coef;
  return Scalar(0);
}

Polynomial Polynomial::with_order(MonomialOrder order) const {
  Polynomial p(*this);
  p.order_ = order;
  p.normalize();
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial p(*this);
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

namespace {

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (!(a.ring() == b.ring())) throw InputError("polynomials live in different rings");
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(*this, other);
  const Polynomial& rhs = other.order_ == order_ ? other : other.with_order(order_);
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < rhs.terms_.size()) {
    if (j == rhs.terms_.size()) {
      out.push_back(std::move(terms_[i++]));
      continue;
    }
    if (i == terms_.size()) {
      out.push_back(rhs.terms_[j++]);
      continue;
    }
    auto c = order_.compare(terms_[i].mono, rhs.terms_[j].mono);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(rhs.terms_[j++]);
    } else {
      Scalar s = terms_[i].coef + rhs.terms_[j].coef;
      if (s != 0) out.push_back({std::move(terms_[i].mono), std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  Polynomial p(a.ring_, a.order_);
  p.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) p.terms_.push_back({s.mono * t.mono, s.coef * t.coef});
  p.normalize();
  return p;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Scalar& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= factor;
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, Scalar(1), order_);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (!(ring_ == other.ring_)) return false;
  const Polynomial& rhs = other.order_ == order_ ? other : other.with_order(order_);
  if (terms_.size() != rhs.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != rhs.terms_[i].mono || terms_[i].coef != rhs.terms_[i].coef) return false;
  return true;
}

Integer Polynomial::denominator_lcm() const {
  Integer l = 1;
  for (const auto& t : terms_) l = lcm(l, Integer(t.coef.get_den()));
  return l;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  const Integer den = denominator_lcm();
  Integer g = 0;
  for (const auto& t : terms_) g = gcd(g, Integer(t.coef.get_num() * (den / t.coef.get_den())));
  Polynomial p(*this);
  p *= Scalar(den) / Scalar(g);
  return p;
}

namespace {

std::string monomial_text(const Ring& ring, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

std::string terms_text(const Ring& ring, const std::vector<Polynomial::Term>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    const bool negative = t.coef < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Scalar mag = abs(t.coef);
    if (t.mono.is_one()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << monomial_text(ring, t.mono);
    }
  }
  return os.str();
}

}  // namespace

std::string Polynomial::to_string() const { return terms_text(ring_, terms_); }

std::string Polynomial::canonical_text() const { return terms_text(ring_, primitive().terms_); }

// ---------------------------------------------------------------- free functions

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  require_same_ring(a, b);
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  return a;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images,
                      const Ring& target) {
  const Ring& src = p.ring();
  for (const auto& [name, image] : images) {
    if (!src.contains(name)) throw InputError("substitution key '" + name + "' is not a variable");
    if (!(image.ring() == target)) throw InputError("image of '" + name + "' is outside the target ring");
  }
  const MonomialOrder order =
      p.order().kind == MonomialOrder::Kind::BlockElimination ? MonomialOrder::grevlex() : p.order();

  std::vector<Polynomial> base;
  base.reserve(src.size());
  for (std::size_t v = 0; v < src.size(); ++v) {
    auto it = images.find(src.name(v));
    if (it != images.end()) {
      base.push_back(it->second.with_order(order));
    } else if (p.degree_in(v) > 0) {
      base.push_back(Polynomial::variable(target, src.name(v), order));
    } else {
      base.push_back(Polynomial(target, order));
    }
  }
  // powers[v][e] cached lazily
  std::vector<std::vector<Polynomial>> powers(src.size());
  auto power_of = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, Scalar(1), order));
    while (cache.size() <= e) cache.push_back(cache.back() * base[v]);
    return cache[e];
  };

  Polynomial result(target, order);
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(target, t.coef, order);
    for (std::size_t v = 0; v < src.size(); ++v)
      if (t.mono[v] > 0) term *= power_of(v, t.mono[v]);
    result += term;
  }
  return result;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images) {
  return substitute(p, images, p.ring());
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Scalar>& values) {
  std::map<std::string, Polynomial> images;
  for (const auto& [name, value] : values)
    images.emplace(name, Polynomial::constant(p.ring(), value, p.order()));
  return substitute(p, images).with_order(p.order());
}

Polynomial embed(const Polynomial& p, const Ring& target) {
  return substitute(p, std::map<std::string, Polynomial>{}, target);
}

Scalar evaluate(const Polynomial& p, std::span<const Scalar> point) {
  if (point.size() != p.ring().size()) throw InputError("evaluation point has wrong dimension");
  Scalar sum = 0;
  Scalar factor;
  for (const auto& t : p.terms()) {
    Scalar term = t.coef;
    for (std::size_t v = 0; v < point.size(); ++v) {
      if (t.mono[v] == 0) continue;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), point[v].get_num_mpz_t(), t.mono[v]);
      mpz_pow_ui(den.get_mpz_t(), point[v].get_den_mpz_t(), t.mono[v]);
      factor = ratio(num, den);
      term *= factor;
    }
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

double evaluate(const Polynomial& p, std::span<const double> point) {
  if (point.size() != p.ring().size()) throw InputError("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& t : p.terms()) {
    double term = t.coef.get_d();
    for (std::size_t v = 0; v < point.size(); ++v)
      for (std::uint32_t e = 0; e < t.mono[v]; ++e) term *= point[v];
    sum += term;
  }
  return sum;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.ring().size()) throw InputError("derivative variable out of range");
  std::vector<Polynomial::Term> terms;
  for (const auto& t : p.terms()) {
    if (t.mono[var] == 0) continue;
    Monomial m = t.mono;
    const auto e = m[var];
    m[var] = e - 1;
    terms.push_back({std::move(m), t.coef * e});
  }
  return Polynomial::from_terms(p.ring(), std::move(terms), p.order());
}

Polynomial partial_derivative(const Polynomial& p, std::string_view var) {
  return partial_derivative(p, p.ring().require(var));
}

}  // namespace dpo
