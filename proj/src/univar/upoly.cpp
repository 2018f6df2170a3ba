#include "dpo/univar/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "dpo/error.hpp"

namespace dpo {

UPoly::UPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::constant(const Integer& c) { return UPoly({c}); }

UPoly UPoly::monomial(const Integer& c, std::size_t degree) {
  std::vector<Integer> v(degree + 1, Integer(0));
  v[degree] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::from_polynomial(const Polynomial& p, std::size_t var) {
  const Integer den = p.denominator_lcm();
  std::vector<Integer> v;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      if (i != var && t.mono[i] != 0)
        throw InputError("polynomial is not univariate in '" + p.ring().name(var) + "'");
    const std::size_t e = t.mono[var];
    if (v.size() <= e) v.resize(e + 1, Integer(0));
    Scalar scaled = t.coef * Scalar(den);
    v[e] += Integer(scaled.get_num());
  }
  return UPoly(std::move(v));
}

Integer UPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

const Integer& UPoly::leading() const {
  if (c_.empty()) throw InputError("zero polynomial has no leading coefficient");
  return c_.back();
}

UPoly UPoly::operator-() const {
  UPoly r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Integer(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Integer(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Integer& k) {
  if (k == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= k;
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Integer> v(a.c_.size() + b.c_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      mpz_addmul(v[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
  }
  return UPoly(std::move(v));
}

UPoly UPoly::pow(unsigned e) const {
  UPoly result = constant(Integer(1));
  UPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Integer UPoly::content() const {
  Integer g = 0;
  for (const auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

UPoly UPoly::primitive() const {
  if (is_zero()) return *this;
  const Integer g = content();
  UPoly r(*this);
  if (g != 1)
    for (auto& c : r.c_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return r;
}

UPoly UPoly::primitive_monic_sign() const {
  UPoly r = primitive();
  if (!r.is_zero() && r.leading() < 0) r = -r;
  return r;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Integer> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(v));
}

std::size_t UPoly::low_order() const {
  std::size_t m = 0;
  while (m < c_.size() && c_[m] == 0) ++m;
  return m;
}

UPoly UPoly::shift_down(std::size_t m) const {
  if (m > low_order()) throw InputError("shift_down would drop nonzero coefficients");
  if (m >= c_.size()) return UPoly();
  return UPoly(std::vector<Integer>(c_.begin() + static_cast<std::ptrdiff_t>(m), c_.end()));
}

bool UPoly::is_even() const {
  for (std::size_t i = 1; i < c_.size(); i += 2)
    if (c_[i] != 0) return false;
  return true;
}

UPoly UPoly::even_to_square() const {
  if (!is_even()) throw InputError("polynomial is not even");
  std::vector<Integer> v;
  for (std::size_t i = 0; i < c_.size(); i += 2) v.push_back(c_[i]);
  return UPoly(std::move(v));
}

UPoly UPoly::square_to_even() const {
  if (is_zero()) return *this;
  std::vector<Integer> v(2 * c_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[2 * i] = c_[i];
  return UPoly(std::move(v));
}

int UPoly::sign_at(const Scalar& x) const {
  if (c_.empty()) return 0;
  const Integer& n = x.get_num();
  const Integer& d = x.get_den();
  Integer acc = c_.back();
  Integer dp = d;
  for (std::size_t k = c_.size() - 1; k-- > 0;) {
    acc *= n;
    mpz_addmul(acc.get_mpz_t(), c_[k].get_mpz_t(), dp.get_mpz_t());
    dp *= d;
  }
  return sgn(acc);
}

Scalar UPoly::evaluate(const Scalar& x) const {
  Scalar acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + Scalar(c_[k]);
  acc.canonicalize();
  return acc;
}

double UPoly::evaluate(double x) const {
  double acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k].get_d();
  return acc;
}

Polynomial UPoly::to_polynomial(const Ring& ring, std::size_t var) const {
  std::vector<Polynomial::Term> terms;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0)
      terms.push_back({Monomial::variable(ring.size(), var, static_cast<std::uint32_t>(i)),
                       Scalar(c_[i])});
  return Polynomial::from_terms(ring, std::move(terms));
}

std::string UPoly::to_string(std::string_view var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    const bool negative = c_[k] < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    Integer mag = abs(c_[k]);
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << '*';
    os << var;
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

UPoly divide_exact(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InputError("division by the zero polynomial");
  if (a.is_zero()) return UPoly();
  if (a.degree() < b.degree()) throw Error("inexact polynomial division");
  std::vector<Integer> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Integer> q(r.size() - db, Integer(0));
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), bc.back().get_mpz_t()))
      throw Error("inexact polynomial division");
    Integer c;
    mpz_divexact(c.get_mpz_t(), r[k].get_mpz_t(), bc.back().get_mpz_t());
    const std::size_t shift = k - db;
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[shift + j].get_mpz_t(), c.get_mpz_t(), bc[j].get_mpz_t());
    q[shift] = c;
  }
  for (std::size_t k = 0; k < db; ++k)
    if (r[k] != 0) throw Error("inexact polynomial division");
  return UPoly(std::move(q));
}

UPoly pseudo_remainder(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InputError("pseudo-remainder by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const Integer& lb = bc.back();
  int e = a.degree() - b.degree() + 1;
  std::size_t top = r.size();
  while (top > db) {
    const Integer lr = r[top - 1];
    const std::size_t shift = top - 1 - db;
    if (lr != 0) {
      for (std::size_t k = 0; k < top - 1; ++k) r[k] *= lb;
      for (std::size_t j = 0; j < db; ++j) mpz_submul(r[shift + j].get_mpz_t(), lr.get_mpz_t(), bc[j].get_mpz_t());
      --e;
    }
    r[top - 1] = 0;
    --top;
  }
  r.resize(db);
  UPoly rem(std::move(r));
  if (e > 0) {
    Integer f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
    rem *= f;
  }
  return rem;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.primitive_monic_sign();
  if (b.is_zero()) return a.primitive_monic_sign();
  UPoly x = a.primitive();
  UPoly y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    UPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.primitive();
  }
  return x.primitive_monic_sign();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.is_constant()) return p.primitive_monic_sign();
  const UPoly g = gcd(p, p.derivative());
  return divide_exact(p.primitive(), g).primitive_monic_sign();
}

}  // namespace dpo
