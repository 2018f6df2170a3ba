#include "dpo/groebner/groebner.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include "dpo/error.hpp"

namespace dpo {

// ---------------------------------------------------------------- reference path over Q

namespace {

std::optional<std::size_t> find_reducer(const Monomial& m, std::span<const Polynomial> G) {
  for (std::size_t i = 0; i < G.size(); ++i)
    if (G[i].leading_term().mono.divides(m)) return i;
  return std::nullopt;
}

Polynomial monomial_poly(const Ring& ring, const Monomial& m, const Scalar& c,
                         const MonomialOrder& order) {
  return Polynomial::from_terms(ring, {{m, c}}, order);
}

}  // namespace

Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> G,
                       const MonomialOrder& order) {
  std::vector<Polynomial> basis;
  basis.reserve(G.size());
  for (const auto& g : G) {
    if (!(g.ring() == p.ring())) throw InputError("normal_form: divisor in a different ring");
    if (!g.is_zero()) basis.push_back(g.with_order(order));
  }
  Polynomial rest = p.with_order(order);
  std::vector<Polynomial::Term> remainder;
  while (!rest.is_zero()) {
    const auto lt = rest.leading_term();
    if (auto idx = find_reducer(lt.mono, basis)) {
      const auto& g = basis[*idx];
      const auto& glt = g.leading_term();
      rest -= monomial_poly(p.ring(), lt.mono / glt.mono, lt.coef / glt.coef, order) * g;
    } else {
      remainder.push_back(lt);
      rest -= monomial_poly(p.ring(), lt.mono, lt.coef, order);
    }
  }
  return Polynomial::from_terms(p.ring(), std::move(remainder), order);
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  const Polynomial fo = f.with_order(order);
  const Polynomial go = g.with_order(order);
  const auto& lf = fo.leading_term();
  const auto& lg = go.leading_term();
  const Monomial l = lf.mono.lcm(lg.mono);
  return monomial_poly(f.ring(), l / lf.mono, Scalar(1) / lf.coef, order) * fo -
         monomial_poly(f.ring(), l / lg.mono, Scalar(1) / lg.coef, order) * go;
}

bool satisfies_buchberger_criterion(const GroebnerBasis& G) {
  for (std::size_t i = 0; i < G.basis.size(); ++i)
    for (std::size_t j = i + 1; j < G.basis.size(); ++j) {
      const Polynomial s = s_polynomial(G.basis[i], G.basis[j], G.order);
      if (!normal_form(s, G.basis, G.order).is_zero()) return false;
    }
  return true;
}

// ---------------------------------------------------------------- fast engine

namespace {

constexpr std::size_t kMaxVars = 48;

struct PMono {
  std::uint32_t d0 = 0;  // degree of the leading block (whole monomial for lex/grevlex)
  std::uint32_t d1 = 0;  // degree of the trailing block
  std::uint64_t mask = 0;
  std::array<std::uint16_t, kMaxVars> e{};

  std::uint32_t degree() const { return d0 + d1; }
};

struct GTerm {
  PMono m;
  Integer c;
};

struct GPoly {
  std::vector<GTerm> t;
  std::uint32_t sugar = 0;
};

struct Pair {
  std::size_t i;
  std::size_t j;
  PMono lcm;
  std::uint32_t sugar;
};

class Engine {
 public:
  Engine(std::size_t nvars, const MonomialOrder& order, const GroebnerOptions& options,
         GroebnerStats& stats)
      : n_(nvars), kind_(order.kind), options_(options), stats_(stats) {
    if (nvars > kMaxVars)
      throw InputError("Groebner engine supports at most " + std::to_string(kMaxVars) + " variables");
    split_ = kind_ == MonomialOrder::Kind::BlockElimination ? std::min(order.split, nvars) : nvars;
  }

  // -------- monomials

  PMono make(const Monomial& m) const {
    PMono p;
    for (std::size_t i = 0; i < n_; ++i) {
      if (m[i] > std::numeric_limits<std::uint16_t>::max())
        throw InputError("exponent too large for the Groebner engine");
      p.e[i] = static_cast<std::uint16_t>(m[i]);
    }
    finish(p);
    return p;
  }

  Monomial unmake(const PMono& p) const {
    Monomial m(n_);
    for (std::size_t i = 0; i < n_; ++i) m[i] = p.e[i];
    return m;
  }

  void finish(PMono& p) const {
    p.d0 = p.d1 = 0;
    p.mask = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      (i < split_ ? p.d0 : p.d1) += p.e[i];
      if (p.e[i]) p.mask |= std::uint64_t{1} << (i % 64);
    }
  }

  PMono mul(const PMono& a, const PMono& b) const {
    PMono r;
    for (std::size_t i = 0; i < n_; ++i) {
      const std::uint32_t s = std::uint32_t{a.e[i]} + b.e[i];
      if (s > std::numeric_limits<std::uint16_t>::max()) throw Error("Groebner exponent overflow");
      r.e[i] = static_cast<std::uint16_t>(s);
    }
    r.d0 = a.d0 + b.d0;
    r.d1 = a.d1 + b.d1;
    r.mask = a.mask | b.mask;
    return r;
  }

  PMono quot(const PMono& a, const PMono& b) const {
    PMono r;
    for (std::size_t i = 0; i < n_; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    finish(r);
    return r;
  }

  PMono lcm(const PMono& a, const PMono& b) const {
    PMono r;
    for (std::size_t i = 0; i < n_; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    finish(r);
    return r;
  }

  bool divides(const PMono& a, const PMono& b) const {
    if (a.mask & ~b.mask) return false;
    for (std::size_t i = 0; i < n_; ++i)
      if (a.e[i] > b.e[i]) return false;
    return true;
  }

  bool coprime(const PMono& a, const PMono& b) const {
    if (n_ <= 64) return (a.mask & b.mask) == 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }

  bool equal(const PMono& a, const PMono& b) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (a.e[i] != b.e[i]) return false;
    return true;
  }

  // >0 if a > b in the term order
  int cmp(const PMono& a, const PMono& b) const {
    if (kind_ == MonomialOrder::Kind::Lex) {
      for (std::size_t i = 0; i < n_; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
      return 0;
    }
    if (a.d0 != b.d0) return a.d0 > b.d0 ? 1 : -1;
    for (std::size_t i = split_; i-- > 0;)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    if (a.d1 != b.d1) return a.d1 > b.d1 ? 1 : -1;
    for (std::size_t i = n_; i-- > split_;)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
  }

  // -------- polynomials

  GPoly make(const Polynomial& p) const {
    GPoly g;
    const Polynomial prim = p.primitive();
    for (const auto& t : prim.terms()) {
      g.t.push_back({make(t.mono), Integer(t.coef.get_num())});
      g.sugar = std::max<std::uint32_t>(g.sugar, static_cast<std::uint32_t>(t.mono.degree()));
    }
    sort_terms(g.t);
    return g;
  }

  Polynomial unmake(const GPoly& g, const Ring& ring, const MonomialOrder& order) const {
    std::vector<Polynomial::Term> terms;
    terms.reserve(g.t.size());
    const Scalar lc(g.t.front().c);
    for (const auto& t : g.t) terms.push_back({unmake(t.m), Scalar(t.c) / lc});
    return Polynomial::from_terms(ring, std::move(terms), order);
  }

  void sort_terms(std::vector<GTerm>& t) const {
    std::sort(t.begin(), t.end(), [this](const GTerm& a, const GTerm& b) { return cmp(a.m, b.m) > 0; });
  }

  // Divides both term ranges by their common content and returns it (1 if none).
  static Integer remove_content(std::vector<GTerm>& a, std::vector<GTerm>& b, std::size_t b_from) {
    Integer g = 0;
    for (const auto& t : a) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) return g;
    }
    for (std::size_t k = b_from; k < b.size(); ++k) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b[k].c.get_mpz_t());
      if (g == 1) return g;
    }
    if (g == 0) return 1;
    for (auto& t : a) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    for (std::size_t k = b_from; k < b.size(); ++k)
      mpz_divexact(b[k].c.get_mpz_t(), b[k].c.get_mpz_t(), g.get_mpz_t());
    return g;
  }

  // Returns the rational factor the polynomial was multiplied by.
  static Scalar make_primitive(GPoly& p) {
    std::vector<GTerm> none;
    Scalar factor(Integer(1), remove_content(p.t, none, 0));
    factor.canonicalize();
    if (!p.t.empty() && p.t.front().c < 0) {
      for (auto& t : p.t) t.c = -t.c;
      factor = -factor;
    }
    return factor;
  }

  std::optional<std::size_t> find_divisor(const PMono& m, std::optional<std::size_t> skip) const {
    std::optional<std::size_t> best;
    for (std::size_t k : active_) {
      if (skip && *skip == k) continue;
      if (divides(polys_[k].t.front().m, m) && (!best || polys_[k].t.size() < polys_[*best].t.size())) best = k;
    }
    return best;
  }

  void charge() {
    if (++stats_.reductions > options_.reduction_budget)
      throw BudgetExhausted("Groebner reduction budget of " + std::to_string(options_.reduction_budget) +
                                " steps exhausted",
                            stats_.reductions);
  }

  // Full fraction-free reduction modulo the active basis; result is primitive.
  // If `multiplier` is given, receives m with m*p == result modulo the basis.
  GPoly reduce(GPoly p, std::optional<std::size_t> skip = std::nullopt, bool tail_only = false,
               Scalar* multiplier = nullptr) {
    Scalar mult(1);
    std::vector<GTerm> done;
    std::vector<GTerm> cur = std::move(p.t);
    std::vector<GTerm> next;
    std::size_t head = 0;
    if (tail_only && !cur.empty()) {
      done.push_back(std::move(cur.front()));
      head = 1;
    }
    Integer a, b, d;
    while (head < cur.size()) {
      const auto idx = find_divisor(cur[head].m, skip);
      if (!idx) {
        done.push_back(std::move(cur[head]));
        ++head;
        continue;
      }
      charge();
      const GPoly& g = polys_[*idx];
      a = g.t.front().c;
      b = cur[head].c;
      mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
      const PMono q = quot(cur[head].m, g.t.front().m);
      p.sugar = std::max(p.sugar, g.sugar + q.degree());

      // next = a * cur[head+1..] - b * q * g[1..]
      next.clear();
      next.reserve(cur.size() - head + g.t.size());
      std::size_t i = head + 1, j = 1;
      const bool scale = a != 1;
      while (i < cur.size() || j < g.t.size()) {
        int c;
        PMono qm;
        if (j < g.t.size()) qm = mul(q, g.t[j].m);
        if (i == cur.size()) c = -1;
        else if (j == g.t.size()) c = 1;
        else c = cmp(cur[i].m, qm);
        if (c > 0) {
          next.push_back(std::move(cur[i]));
          if (scale) next.back().c *= a;
          ++i;
        } else if (c < 0) {
          GTerm t{qm, Integer()};
          mpz_mul(t.c.get_mpz_t(), b.get_mpz_t(), g.t[j].c.get_mpz_t());
          t.c = -t.c;
          next.push_back(std::move(t));
          ++j;
        } else {
          Integer v = cur[i].c;
          if (scale) v *= a;
          mpz_submul(v.get_mpz_t(), b.get_mpz_t(), g.t[j].c.get_mpz_t());
          if (v != 0) next.push_back({qm, std::move(v)});
          ++i;
          ++j;
        }
      }
      if (scale) {
        for (auto& t : done) t.c *= a;
        mult *= a;
      }
      std::swap(cur, next);
      head = 0;
      const Integer content = remove_content(done, cur, head);
      if (content != 1) mult /= content;
    }
    GPoly out;
    out.t = std::move(done);
    out.sugar = p.sugar;
    mult *= make_primitive(out);
    if (multiplier) *multiplier = mult;
    return out;
  }

  // Normal form as (term, rational coefficient) pairs.
  std::vector<std::pair<PMono, Scalar>> normal_form(GPoly p) {
    Scalar m;
    GPoly r = reduce(std::move(p), std::nullopt, false, &m);
    std::vector<std::pair<PMono, Scalar>> out;
    for (auto& t : r.t) out.emplace_back(t.m, Scalar(t.c) / m);
    return out;
  }

  const std::vector<GPoly>& polys() const { return polys_; }
  const std::vector<std::size_t>& active() const { return active_; }
  std::size_t nvars() const { return n_; }

  bool zero_dimensional() const {
    std::vector<bool> seen(n_, false);
    for (std::size_t k : active_) {
      const PMono& m = polys_[k].t.front().m;
      if (m.degree() == 0) return true;
      std::size_t nonzero = 0, var = 0;
      for (std::size_t i = 0; i < n_; ++i)
        if (m.e[i]) {
          ++nonzero;
          var = i;
        }
      if (nonzero == 1) seen[var] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  // Minimal polynomial of multiplication by variable `var` on the quotient ring,
  // monic, ascending coefficients. Needs a finished run() on a zero-dimensional ideal.
  std::vector<Scalar> minimal_polynomial(std::size_t var) {
    struct Row {
      std::size_t pivot;
      std::vector<Scalar> v;
      std::vector<Scalar> comb;
    };
    std::map<std::vector<std::uint16_t>, std::size_t> column;
    std::vector<Row> rows;
    std::vector<Scalar> scale;  // r_k == scale[k] * x^k modulo the ideal
    PMono x;
    x.e[var] = 1;
    finish(x);
    GPoly r;
    r.t.push_back({PMono{}, Integer(1)});
    for (std::size_t k = 0;; ++k) {
      if (k > 0)
        for (auto& t : r.t) t.m = mul(t.m, x);
      Scalar m;
      r = reduce(std::move(r), std::nullopt, false, &m);
      scale.push_back(k == 0 ? m : m * scale.back());

      std::vector<Scalar> v(column.size());
      for (const auto& t : r.t) {
        std::vector<std::uint16_t> key(t.m.e.begin(), t.m.e.begin() + static_cast<std::ptrdiff_t>(n_));
        auto [it, fresh] = column.emplace(std::move(key), column.size());
        if (fresh) v.resize(column.size());
        v[it->second] = Scalar(t.c);
      }
      std::vector<Scalar> comb(k + 1);
      comb[k] = 1;
      for (const Row& row : rows) {
        const Scalar f = v[row.pivot];
        if (f == 0) continue;
        for (std::size_t j = 0; j < row.v.size(); ++j)
          if (row.v[j] != 0) v[j] -= f * row.v[j];
        for (std::size_t j = 0; j < row.comb.size(); ++j)
          if (row.comb[j] != 0) comb[j] -= f * row.comb[j];
      }
      const auto nz = std::find_if(v.begin(), v.end(), [](const Scalar& c) { return c != 0; });
      if (nz == v.end()) {
        std::vector<Scalar> poly(k + 1);
        for (std::size_t i = 0; i <= k; ++i) poly[i] = comb[i] * scale[i];
        const Scalar lead = poly[k];
        for (auto& c : poly) c /= lead;
        return poly;
      }
      const Scalar inv = Scalar(1) / *nz;
      for (auto& c : v) c *= inv;
      for (auto& c : comb) c *= inv;
      rows.push_back({static_cast<std::size_t>(nz - v.begin()), std::move(v), std::move(comb)});
    }
  }

  GPoly spoly(std::size_t i, std::size_t j, const PMono& l) const {
    const GPoly& f = polys_[i];
    const GPoly& g = polys_[j];
    const PMono qf = quot(l, f.t.front().m);
    const PMono qg = quot(l, g.t.front().m);
    Integer a = g.t.front().c, b = f.t.front().c, d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
    // a*qf*f - b*qg*g, leading terms cancel
    GPoly s;
    s.sugar = std::max(f.sugar + qf.degree(), g.sugar + qg.degree());
    std::size_t x = 1, y = 1;
    while (x < f.t.size() || y < g.t.size()) {
      PMono mf, mg;
      if (x < f.t.size()) mf = mul(qf, f.t[x].m);
      if (y < g.t.size()) mg = mul(qg, g.t[y].m);
      int c;
      if (x == f.t.size()) c = -1;
      else if (y == g.t.size()) c = 1;
      else c = cmp(mf, mg);
      if (c > 0) {
        s.t.push_back({mf, a * f.t[x].c});
        ++x;
      } else if (c < 0) {
        s.t.push_back({mg, -(b * g.t[y].c)});
        ++y;
      } else {
        Integer v = a * f.t[x].c - b * g.t[y].c;
        if (v != 0) s.t.push_back({mf, std::move(v)});
        ++x;
        ++y;
      }
    }
    return s;
  }

  // Gebauer-Moeller update with the new element h = polys_[t].
  void update(std::size_t t) {
    const PMono& lh = polys_[t].t.front().m;
    struct Cand {
      std::size_t j;
      PMono l;
      bool coprime;
    };
    std::vector<Cand> C;
    for (std::size_t j : active_) {
      const PMono& lj = polys_[j].t.front().m;
      C.push_back({j, lcm(lh, lj), coprime(lh, lj)});
    }
    std::vector<Cand> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const Cand& c = C[k];
      bool keep = c.coprime;
      if (!keep) {
        keep = true;
        for (std::size_t r = k + 1; r < C.size() && keep; ++r)
          if (divides(C[r].l, c.l)) keep = false;
        for (std::size_t r = 0; r < D.size() && keep; ++r)
          if (divides(D[r].l, c.l)) keep = false;
      }
      if (keep) {
        D.push_back(c);
      } else {
        ++stats_.pairs_pruned;
      }
    }
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& p : pairs_) {
      const bool drop = divides(lh, p.lcm) &&
                        !equal(lcm(polys_[p.i].t.front().m, lh), p.lcm) &&
                        !equal(lcm(lh, polys_[p.j].t.front().m), p.lcm);
      if (drop) {
        ++stats_.pairs_pruned;
      } else {
        kept.push_back(std::move(p));
      }
    }
    for (const auto& c : D) {
      if (c.coprime) {
        ++stats_.pairs_pruned;
        continue;
      }
      const PMono& lj = polys_[c.j].t.front().m;
      const std::uint32_t sugar =
          std::max(polys_[t].sugar + quot(c.l, lh).degree(), polys_[c.j].sugar + quot(c.l, lj).degree());
      kept.push_back({c.j, t, c.l, sugar});
    }
    pairs_ = std::move(kept);
    std::vector<std::size_t> still;
    for (std::size_t j : active_)
      if (!divides(lh, polys_[j].t.front().m)) still.push_back(j);
    still.push_back(t);
    active_ = std::move(still);
    stats_.max_basis_size = std::max(stats_.max_basis_size, active_.size());
  }

  std::size_t select_pair() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k)
      if (pair_less(pairs_[k], pairs_[best])) best = k;
    return best;
  }

  bool pair_less(const Pair& a, const Pair& b) const {
    if (options_.selection == PairSelection::Sugar && a.sugar != b.sugar) return a.sugar < b.sugar;
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
    if (int c = cmp(a.lcm, b.lcm); c != 0) return c < 0;
    return std::pair(a.j, a.i) < std::pair(b.j, b.i);
  }

  void add(GPoly h) {
    polys_.push_back(std::move(h));
    update(polys_.size() - 1);
  }

  std::vector<GPoly> run(std::vector<GPoly> input) {
    for (auto& g : input) {
      if (g.t.empty()) continue;
      GPoly h = reduce(std::move(g));
      if (!h.t.empty()) add(std::move(h));
    }
    while (!pairs_.empty()) {
      const std::size_t k = select_pair();
      const Pair p = pairs_[k];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(k));
      ++stats_.pairs_reduced;
      GPoly h = reduce(spoly(p.i, p.j, p.lcm));
      if (h.t.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      add(std::move(h));
    }
    // inter-reduce the minimal basis
    std::vector<std::size_t> order = active_;
    std::sort(order.begin(), order.end(), [this](std::size_t x, std::size_t y) {
      return cmp(polys_[x].t.front().m, polys_[y].t.front().m) < 0;
    });
    for (std::size_t k : order) polys_[k] = reduce(polys_[k], k, true);
    std::vector<GPoly> out;
    for (std::size_t k : order) out.push_back(polys_[k]);
    return out;
  }

 private:
  std::size_t n_;
  std::size_t split_;
  MonomialOrder::Kind kind_;
  GroebnerOptions options_;
  GroebnerStats& stats_;
  std::vector<GPoly> polys_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

struct QuotientAlgebra::Impl {
  Ring ring;
  GroebnerStats stats;
  std::unique_ptr<Engine> engine;
  GroebnerBasis basis;
  std::vector<Monomial> standard;
  std::map<std::vector<std::uint32_t>, std::size_t> index;

  std::vector<Scalar> coordinates(GPoly p) {
    std::vector<Scalar> out(standard.size());
    for (auto& [m, c] : engine->normal_form(std::move(p))) {
      const Monomial mono = engine->unmake(m);
      out.at(index.at(mono.exponents())) = c;
    }
    return out;
  }
};

namespace {

void check_postcondition(const GroebnerBasis& G) {
  if (!satisfies_buchberger_criterion(G)) throw std::logic_error("Buchberger criterion fails on a produced basis");
}

}  // namespace

std::optional<QuotientAlgebra> QuotientAlgebra::build(const PolySystem& S, const GroebnerOptions& options,
                                                      GroebnerStats* stats) {
  auto impl = std::make_shared<Impl>();
  impl->ring = S.ring;
  impl->engine = std::make_unique<Engine>(S.ring.size(), MonomialOrder::grevlex(), options, impl->stats);
  Engine& engine = *impl->engine;
  std::vector<GPoly> input;
  for (const auto& g : S.generators) {
    if (!(g.ring() == S.ring)) throw InputError("QuotientAlgebra: generator outside the system ring");
    if (!g.is_zero()) input.push_back(engine.make(g.with_order(MonomialOrder::grevlex())));
  }
  if (input.empty()) return std::nullopt;
  std::vector<GPoly> reduced;
  {
    try {
      reduced = engine.run(std::move(input));
    } catch (...) {
      if (stats) *stats = impl->stats;
      throw;
    }
  }
  if (stats) *stats = impl->stats;
  if (!engine.zero_dimensional()) return std::nullopt;
  impl->basis.order = MonomialOrder::grevlex();
  impl->basis.reduced = true;
  for (const auto& g : reduced) impl->basis.basis.push_back(engine.unmake(g, S.ring, MonomialOrder::grevlex()));
  if (options.check_postcondition) check_postcondition(impl->basis);

  // standard monomials: closure of 1 under multiplication, avoiding leading terms
  std::vector<Monomial> leads;
  for (const auto& g : impl->basis.basis) leads.push_back(g.leading_term().mono);
  auto is_standard = [&](const Monomial& m) {
    return std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  std::vector<Monomial> queue;
  std::map<std::vector<std::uint32_t>, bool> seen;
  const Monomial one(S.ring.size());
  if (is_standard(one)) {
    queue.push_back(one);
    seen[one.exponents()] = true;
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    if (queue.size() > 1'000'000) throw Error("quotient algebra is too large");
    for (std::size_t v = 0; v < S.ring.size(); ++v) {
      Monomial m = queue[head];
      m[v] += 1;
      if (seen.count(m.exponents()) || !is_standard(m)) continue;
      seen[m.exponents()] = true;
      queue.push_back(std::move(m));
    }
  }
  const MonomialOrder grevlex = MonomialOrder::grevlex();
  std::sort(queue.begin(), queue.end(), [&](const Monomial& a, const Monomial& b) { return grevlex.compare(a, b) < 0; });
  impl->standard = std::move(queue);
  for (std::size_t i = 0; i < impl->standard.size(); ++i) impl->index[impl->standard[i].exponents()] = i;
  return QuotientAlgebra(std::move(impl));
}

const Ring& QuotientAlgebra::ring() const { return impl_->ring; }
const GroebnerBasis& QuotientAlgebra::basis() const { return impl_->basis; }
const std::vector<Monomial>& QuotientAlgebra::standard_monomials() const { return impl_->standard; }

std::vector<Scalar> QuotientAlgebra::coordinates(const Polynomial& p) const {
  if (!(p.ring() == impl_->ring)) throw InputError("QuotientAlgebra: polynomial outside the ring");
  if (p.is_zero()) return std::vector<Scalar>(dimension());
  return impl_->coordinates(impl_->engine->make(p.with_order(MonomialOrder::grevlex())));
}

std::vector<std::vector<Scalar>> QuotientAlgebra::multiplication_matrix(std::size_t var) const {
  const std::size_t D = dimension();
  std::vector<std::vector<Scalar>> M(D, std::vector<Scalar>(D));
  for (std::size_t j = 0; j < D; ++j) {
    Monomial m = impl_->standard[j];
    m[var] += 1;
    GPoly p;
    p.t.push_back({impl_->engine->make(m), Integer(1)});
    const auto col = impl_->coordinates(std::move(p));
    for (std::size_t i = 0; i < D; ++i) M[i][j] = col[i];
  }
  return M;
}

std::vector<Scalar> QuotientAlgebra::minimal_polynomial(std::size_t var) const {
  if (var >= impl_->ring.size()) throw InputError("minimal_polynomial: variable index out of range");
  return impl_->engine->minimal_polynomial(var);
}

GroebnerBasis buchberger(const PolySystem& S, const GroebnerOptions& options, GroebnerStats* stats) {
  if (S.generators.empty()) throw InputError("buchberger: empty generator list");
  GroebnerStats local;
  GroebnerStats& st = stats ? *stats : local;
  Engine engine(S.ring.size(), S.order, options, st);
  std::vector<GPoly> input;
  for (const auto& g : S.generators) {
    if (!(g.ring() == S.ring)) throw InputError("buchberger: generator outside the system ring");
    if (g.is_zero()) continue;
    input.push_back(engine.make(g));
  }
  GroebnerBasis result;
  result.order = S.order;
  result.reduced = true;
  if (input.empty()) return result;
  for (const auto& g : engine.run(std::move(input)))
    result.basis.push_back(engine.unmake(g, S.ring, S.order));
  if (options.check_postcondition) check_postcondition(result);
  return result;
}

std::vector<Polynomial> elimination_ideal(const PolySystem& S, std::span<const std::string> keep,
                                          const GroebnerOptions& options, GroebnerStats* stats) {
  std::vector<bool> kept(S.ring.size(), false);
  for (const auto& name : keep) kept[S.ring.require(name)] = true;
  GroebnerStats local;
  GroebnerStats& st = stats ? *stats : local;
  GroebnerOptions block_options = options;

  if (options.elimination == EliminationMethod::Auto && keep.size() == 1 && S.ring.size() > 1) {
    // Zero-dimensional ideal: the eliminant is the minimal polynomial of the kept
    // variable acting on Q[vars]/I.
    if (auto Q = QuotientAlgebra::build(PolySystem{S.ring, S.generators, MonomialOrder::grevlex()}, options, &st)) {
      const std::size_t var = S.ring.require(keep.front());
      const std::vector<Scalar> coeffs = Q->minimal_polynomial(var);
      std::vector<Polynomial::Term> terms;
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0)
          terms.push_back({Monomial::variable(S.ring.size(), var, static_cast<std::uint32_t>(i)), coeffs[i]});
      return {Polynomial::from_terms(S.ring, std::move(terms))};
    }
    block_options.reduction_budget = options.reduction_budget > st.reductions ? options.reduction_budget - st.reductions : 0;
  }

  std::vector<std::string> names;
  for (std::size_t v = 0; v < S.ring.size(); ++v)
    if (!kept[v]) names.push_back(S.ring.name(v));
  const std::size_t eliminated = names.size();
  for (std::size_t v = 0; v < S.ring.size(); ++v)
    if (kept[v]) names.push_back(S.ring.name(v));

  const Ring work(names);
  PolySystem W{work, {}, MonomialOrder::block(eliminated)};
  for (const auto& g : S.generators) W.generators.push_back(embed(g, work).with_order(W.order));
  GroebnerStats block_stats;
  const GroebnerBasis G = buchberger(W, block_options, &block_stats);
  st.reductions += block_stats.reductions;
  st.pairs_reduced += block_stats.pairs_reduced;
  st.zero_reductions += block_stats.zero_reductions;
  st.pairs_pruned += block_stats.pairs_pruned;
  st.max_basis_size = std::max(st.max_basis_size, block_stats.max_basis_size);

  std::vector<Polynomial> out;
  for (const auto& g : G.basis) {
    bool in_subring = true;
    for (std::size_t v = 0; v < eliminated && in_subring; ++v)
      if (g.degree_in(v) > 0) in_subring = false;
    if (in_subring) out.push_back(embed(g, S.ring));
  }
  return out;
}

}  // namespace dpo
