#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>

#include "dpo/error.hpp"
#include "dpo/periodicity/periodicity.hpp"
#include "dpo/univar/sturm.hpp"

namespace dpo {

namespace {

// One step of the scheme as a polynomial map on homogeneous coordinates
// (N_1, ..., N_d, D) with x_i = N_i / D: every part is c * N^a * D^(e-|a|) * T^beta.
struct StepTerm {
  Integer c;
  std::vector<std::size_t> a;
  std::size_t rest = 0;
  std::size_t beta = 0;
};

struct StepMap {
  std::size_t d = 0;
  std::size_t e = 0;
  /// d numerators by Cramer's rule, then the determinant.
  std::vector<std::vector<StepTerm>> parts;
  std::vector<Integer> start;   // homogeneous x_0
  std::vector<Scalar> target;   // closing point
};

StepMap step_map(const PeriodicityProblem& P) {
  const SchemeSystem& s = P.scheme;
  const std::size_t d = s.dimension();
  const LinearForm L = linear_form(s);
  std::vector<Polynomial> polys;
  for (std::size_t j = 0; j < d; ++j) {
    auto Aj = L.A;
    for (std::size_t i = 0; i < d; ++i) Aj[i][j] = -L.b[i];
    polys.push_back(determinant(Aj));
  }
  polys.push_back(determinant(L.A));

  StepMap m;
  m.d = d;
  std::vector<std::size_t> state_vars;
  for (std::size_t i = 0; i < d; ++i) state_vars.push_back(s.current(i));
  std::size_t beta_max = 0;
  Integer den = 1;
  for (const auto& p : polys) {
    m.e = std::max<std::size_t>(m.e, p.degree_in(state_vars));
    beta_max = std::max<std::size_t>(beta_max, p.degree_in(s.step()));
    den = lcm(den, p.denominator_lcm());
  }
  // dt = T/n: scale every part by n^beta_max so all coefficients stay integral
  for (const auto& p : polys) {
    std::vector<StepTerm> terms;
    for (const auto& t : p.terms()) {
      StepTerm st;
      st.beta = t.mono[s.step()];
      Integer scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), P.n, beta_max - st.beta);
      st.c = Integer(Scalar(t.coef * den).get_num()) * scale;
      std::size_t deg = 0;
      for (std::size_t i = 0; i < d; ++i) {
        st.a.push_back(t.mono[s.current(i)]);
        deg += t.mono[s.current(i)];
      }
      st.rest = m.e - deg;
      terms.push_back(std::move(st));
    }
    m.parts.push_back(std::move(terms));
  }
  Integer den0 = 1;
  for (const auto& v : P.initial) den0 = lcm(den0, Integer(v.get_den()));
  for (const auto& v : P.initial) m.start.push_back(Integer(v * den0));
  m.start.push_back(den0);
  m.target = P.pinned_point(P.n);
  return m;
}

// Runs the chain in a commutative ring providing from_int, t_pow, mul, add.
template <class R>
std::vector<typename R::Elem> run_chain(const StepMap& m, std::size_t steps, const R& ring,
                                        const std::function<void(std::size_t, const std::vector<typename R::Elem>&)>&
                                            visit = nullptr) {
  using E = typename R::Elem;
  std::vector<E> x;
  for (const auto& v : m.start) x.push_back(ring.from_int(v));
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<std::vector<E>> pw(m.d + 1);
    for (std::size_t i = 0; i <= m.d; ++i) {
      pw[i].push_back(ring.from_int(Integer(1)));
      for (std::size_t a = 1; a <= m.e; ++a) pw[i].push_back(ring.mul(pw[i].back(), x[i]));
    }
    std::vector<E> y;
    for (const auto& part : m.parts) {
      E acc = ring.from_int(Integer(0));
      for (const auto& t : part) {
        E v = ring.from_int(t.c);
        for (std::size_t i = 0; i < m.d; ++i)
          if (t.a[i]) v = ring.mul(v, pw[i][t.a[i]]);
        if (t.rest) v = ring.mul(v, pw[m.d][t.rest]);
        if (t.beta) v = ring.mul(v, ring.t_pow(t.beta));
        acc = ring.add(acc, v);
      }
      y.push_back(std::move(acc));
    }
    x = std::move(y);
    if (visit) visit(k + 1, x);
  }
  return x;
}

// Closure condition i: N_i * den(target_i) - D * num(target_i).
template <class R>
typename R::Elem closure(const StepMap& m, const R& ring, const std::vector<typename R::Elem>& x, std::size_t i) {
  return ring.add(ring.mul(x[i], ring.from_int(Integer(m.target[i].get_den()))),
                  ring.mul(x[m.d], ring.from_int(Integer(-m.target[i].get_num()))));
}

// ---------------------------------------------------------------- degree bookkeeping

// Formal degree bounds in T of the homogeneous coordinates after `steps` steps.
std::vector<std::size_t> degree_bounds(const StepMap& m, std::size_t steps) {
  std::vector<std::size_t> bound(m.d + 1, 0);
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<std::size_t> next;
    for (const auto& part : m.parts) {
      std::size_t b = 0;
      for (const auto& t : part) {
        std::size_t tb = t.beta + t.rest * bound[m.d];
        for (std::size_t i = 0; i < m.d; ++i) tb += t.a[i] * bound[i];
        b = std::max(b, tb);
      }
      next.push_back(b);
    }
    bound = std::move(next);
  }
  return bound;
}

// Top coefficients: f with formal degree bound B is kept as the first K
// coefficients of u^B f(1/u).
struct TopSeries {
  std::size_t bound = 0;
  std::vector<Integer> c;
};

struct TopRing {
  using Elem = TopSeries;
  std::size_t K;
  Elem from_int(const Integer& v) const { return {0, {v}}; }
  Elem t_pow(std::size_t beta) const { return {beta, {Integer(1)}}; }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r{a.bound + b.bound, std::vector<Integer>(std::min(K, a.c.size() + b.c.size()), Integer(0))};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == 0) continue;
      for (std::size_t j = 0; j < b.c.size() && i + j < r.c.size(); ++j)
        mpz_addmul(r.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
    }
    return r;
  }
  Elem add(const Elem& a, const Elem& b) const {
    const std::size_t B = std::max(a.bound, b.bound);
    Elem r{B, std::vector<Integer>(K, Integer(0))};
    for (std::size_t i = 0; i < a.c.size() && i + (B - a.bound) < K; ++i) r.c[i + (B - a.bound)] += a.c[i];
    for (std::size_t i = 0; i < b.c.size() && i + (B - b.bound) < K; ++i) r.c[i + (B - b.bound)] += b.c[i];
    return r;
  }
};

// Exact degree and leading coefficient of each closure condition, or nullopt
// when more than K top coefficients cancel.
std::vector<std::optional<std::pair<std::size_t, Integer>>> closure_tops(const StepMap& m, std::size_t steps,
                                                                        std::size_t K) {
  const TopRing ring{K};
  const auto x = run_chain(m, steps, ring);
  std::vector<std::optional<std::pair<std::size_t, Integer>>> out;
  for (std::size_t i = 0; i < m.d; ++i) {
    const TopSeries c = closure(m, ring, x, i);
    std::optional<std::pair<std::size_t, Integer>> top;
    for (std::size_t j = 0; j < c.c.size() && j <= c.bound; ++j)
      if (c.c[j] != 0) {
        top = std::pair(c.bound - j, c.c[j]);
        break;
      }
    out.push_back(top);
  }
  return out;
}

// ---------------------------------------------------------------- modular images

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

struct Field {
  u64 p;
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }
  u64 add(u64 a, u64 b) const { return a + b >= p ? a + b - p : a + b; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
  u64 from(const Integer& z) const { return mpz_fdiv_ui(z.get_mpz_t(), p); }

  void trim(ModPoly& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  ModPoly rem(ModPoly a, const ModPoly& b) const {
    const u64 il = inv(b.back());
    while (a.size() >= b.size()) {
      const u64 f = mul(a.back(), il);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub(a[shift + i], mul(f, b[i]));
      trim(a);
    }
    return a;
  }
  // monic gcd
  ModPoly gcd(ModPoly a, ModPoly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      ModPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.empty()) {
      const u64 il = inv(a.back());
      for (auto& c : a) c = mul(c, il);
    }
    return a;
  }
  // polynomial of degree < ys.size() through (k, ys[k-1]), k = 1..m
  ModPoly interpolate(std::vector<u64> ys) const {
    const std::size_t m = ys.size();
    std::vector<u64> inverse(m + 1, 1);
    for (std::size_t j = 2; j <= m; ++j) inverse[j] = mul(p - p / j, inverse[p % j]);
    for (std::size_t j = 1; j < m; ++j)
      for (std::size_t i = m - 1; i >= j; --i) {
        ys[i] = mul(sub(ys[i], ys[i - 1]), inverse[j]);
        if (i == j) break;
      }
    ModPoly r(m, 0);
    for (std::size_t k = m; k-- > 0;) {
      const u64 xk = k + 1;
      for (std::size_t i = m - 1; i > 0; --i) r[i] = sub(r[i - 1], mul(r[i], xk));
      r[0] = sub(ys[k], mul(r[0], xk));
    }
    trim(r);
    return r;
  }
};

struct PointRing {
  using Elem = u64;
  const Field& F;
  u64 t;
  Elem from_int(const Integer& v) const { return F.from(v); }
  Elem t_pow(std::size_t beta) const { return F.pow(t, beta); }
  Elem mul(Elem a, Elem b) const { return F.mul(a, b); }
  Elem add(Elem a, Elem b) const { return F.add(a, b); }
};

// Monic gcd of the closure conditions modulo p, or nullopt if p divides every
// known leading coefficient (then the modular degree proves nothing).
std::optional<ModPoly> modular_gcd(const StepMap& m, std::size_t steps, std::size_t B, const Field& F,
                                   const std::vector<std::optional<std::pair<std::size_t, Integer>>>& tops) {
  bool lucky = false;
  for (const auto& t : tops)
    if (t && F.from(t->second) != 0) lucky = true;
  if (!lucky) return std::nullopt;
  std::vector<std::vector<u64>> values(m.d);
  for (std::size_t j = 0; j <= B; ++j) {
    const PointRing ring{F, j + 1};
    const auto x = run_chain(m, steps, ring);
    for (std::size_t i = 0; i < m.d; ++i) values[i].push_back(closure(m, ring, x, i));
  }
  ModPoly g;
  for (std::size_t i = 0; i < m.d; ++i) g = F.gcd(g, F.interpolate(values[i]));
  return g;
}

// a/b with |a|, |b| <= sqrt(M/2) and a = b*r mod M
std::optional<Scalar> rational_reconstruction(const Integer& r, const Integer& M) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(M / 2).get_mpz_t());
  Integer r0 = M, r1 = r, s0 = 0, s1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  Scalar out(r1, s1);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------- exact checks in Q[T]/(f)

struct QuotientRing {
  using Elem = std::vector<Scalar>;
  std::vector<Scalar> f;  // monic, degree = f.size() - 1 >= 1
  std::size_t deg() const { return f.size() - 1; }
  Elem reduce(std::vector<Scalar> a) const {
    for (std::size_t k = a.size(); k-- > deg();) {
      if (a[k] == 0) continue;
      const Scalar c = a[k];
      for (std::size_t i = 0; i <= deg(); ++i) a[k - deg() + i] -= c * f[i];
    }
    a.resize(deg(), Scalar(0));
    return a;
  }
  Elem from_int(const Integer& v) const {
    Elem e(deg(), Scalar(0));
    e[0] = Scalar(v);
    return e;
  }
  Elem t_pow(std::size_t beta) const {
    std::vector<Scalar> a(beta + 1, Scalar(0));
    a[beta] = 1;
    return reduce(std::move(a));
  }
  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<Scalar> r(2 * deg(), Scalar(0));
    for (std::size_t i = 0; i < deg(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < deg(); ++j)
        if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
    return reduce(std::move(r));
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (std::size_t i = 0; i < deg(); ++i) r[i] += b[i];
    return r;
  }
};

QuotientRing quotient_by(const UPoly& f) {
  QuotientRing q;
  const Scalar lead(f.leading());
  for (const auto& c : f.coeffs()) q.f.push_back(Scalar(c) / lead);
  return q;
}

UPoly to_upoly(const std::vector<Scalar>& v) {
  Integer den = 1;
  for (const auto& c : v) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> out;
  for (const auto& c : v) out.push_back(Integer(c * den));
  return UPoly(std::move(out));
}

UPoly saturate(UPoly e, const UPoly& d) {
  if (d.is_constant()) return e;
  for (;;) {
    const UPoly g = gcd(e, d);
    if (g.is_constant()) return e;
    e = divide_exact(e, g);
  }
}

struct Certified {
  UPoly eliminant;
  std::string note;
};

// Recovers G = gcd of the (uncancelled) closure conditions from modular images,
// proves it exactly, then removes the factors where an intermediate point goes
// to infinity. nullopt when some step cannot be decided this way.
std::optional<Certified> modular_route(const PeriodicityProblem& P, const StepMap& m, std::size_t max_degree,
                                       std::string& why) {
  const auto bounds = degree_bounds(m, P.n);
  const std::size_t B = *std::max_element(bounds.begin(), bounds.end());
  if (B > max_degree)
    throw BudgetExhausted("map-composition: degree bound " + std::to_string(B) + " exceeds the cap " +
                              std::to_string(max_degree),
                          B);
  std::vector<std::optional<std::pair<std::size_t, Integer>>> tops;
  for (std::size_t K = 8;; K *= 2) {
    tops = closure_tops(m, P.n, K);
    if (std::any_of(tops.begin(), tops.end(), [](const auto& t) { return t.has_value(); })) break;
    if (K > B) {
      why = "all closure conditions vanish identically";
      return std::nullopt;
    }
  }
  // T = 0 closes the cyclic chain exactly, so T divides every condition there.
  const std::size_t trivial = P.is_boundary() ? 0 : 1;

  Integer p_big;
  mpz_ui_pow_ui(p_big.get_mpz_t(), 2, 62);
  std::optional<std::size_t> degree;
  std::vector<Integer> residues;
  Integer modulus = 1;
  std::optional<UPoly> G;
  for (int attempt = 0; attempt < 64 && !G; ++attempt) {
    mpz_nextprime(p_big.get_mpz_t(), p_big.get_mpz_t());
    const Field F{mpz_get_ui(p_big.get_mpz_t())};
    const auto g = modular_gcd(m, P.n, B, F, tops);
    if (!g || g->empty()) continue;
    const std::size_t dg = g->size() - 1;
    if (dg == trivial) {
      G = trivial ? UPoly::monomial(1, 1) : UPoly::constant(1);
      break;
    }
    if (!degree || dg < *degree) {
      degree = dg;
      residues.assign(g->begin(), g->end());
      modulus = Integer(static_cast<unsigned long>(F.p));
    } else if (dg == *degree) {
      const Integer p(static_cast<unsigned long>(F.p));
      Integer inv;
      mpz_invert(inv.get_mpz_t(), Integer(modulus % p).get_mpz_t(), p.get_mpz_t());
      for (std::size_t i = 0; i <= dg; ++i) {
        Integer delta = (Integer(static_cast<unsigned long>((*g)[i])) - residues[i]) % p;
        if (delta < 0) delta += p;
        residues[i] += modulus * ((delta * inv) % p);
      }
      modulus *= p;
    } else {
      continue;
    }
    std::vector<Scalar> coeffs;
    bool ok = true;
    for (const auto& r : residues) {
      auto q = rational_reconstruction(r, modulus);
      if (!q) {
        ok = false;
        break;
      }
      coeffs.push_back(*q);
    }
    if (!ok) continue;
    const UPoly candidate = to_upoly(coeffs);
    // exact proof that the candidate divides every condition
    const QuotientRing ring = quotient_by(candidate);
    const auto x = run_chain(m, P.n, ring);
    bool divides = true;
    for (std::size_t i = 0; i < m.d && divides; ++i)
      divides = std::all_of(closure(m, ring, x, i).begin(), closure(m, ring, x, i).end(),
                            [](const Scalar& c) { return c == 0; });
    if (divides) G = candidate.primitive_monic_sign();
  }
  if (!G) {
    why = "modular gcd could not be reconstructed";
    return std::nullopt;
  }
  Certified out{*G, "gcd of the closure conditions has degree " + std::to_string(G->degree()) +
                        " (modular images, verified exactly)"};

  const std::size_t low = G->low_order();
  const UPoly rest = squarefree_part(G->shift_down(low));
  if (rest.is_constant() || sturm_count(rest, Bound::at(0), Bound::pos_inf()) == 0) return out;

  // drop factors of `rest` at which some intermediate point is at infinity
  UPoly removed = UPoly::constant(1);
  bool ambiguous = false;
  const QuotientRing ring = quotient_by(rest);
  run_chain<QuotientRing>(m, P.n, ring, [&](std::size_t, const std::vector<std::vector<Scalar>>& x) {
    const UPoly g = gcd(rest, to_upoly(x[m.d]));
    if (g.is_constant()) return;
    UPoly common = g;
    for (std::size_t i = 0; i < m.d; ++i) common = gcd(common, to_upoly(x[i]));
    if (!common.is_constant()) ambiguous = true;
    removed = removed * g;
  });
  if (ambiguous) {
    why = "an intermediate point is 0/0 at a candidate root";
    return std::nullopt;
  }
  out.eliminant = saturate(*G, removed);
  out.note += ", singular-step factors removed";
  return out;
}

// ---------------------------------------------------------------- exact route

struct SymbolicPoint {
  std::vector<UPoly> num;
  UPoly den;
};

struct UPolyRing {
  using Elem = UPoly;
  Elem from_int(const Integer& v) const { return UPoly::constant(v); }
  Elem t_pow(std::size_t beta) const { return UPoly::monomial(1, beta); }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
};

void cancel(SymbolicPoint& x) {
  UPoly g = x.den;
  for (const auto& p : x.num) {
    if (g.is_constant() && !g.is_zero()) break;
    g = gcd(g, p);
  }
  if (!g.is_zero() && !g.is_constant()) {
    x.den = divide_exact(x.den, g);
    for (auto& p : x.num) p = divide_exact(p, g);
  }
  Integer content = x.den.content();
  for (const auto& p : x.num) content = gcd(content, p.content());
  if (content > 1) {
    x.den = divide_exact(x.den, UPoly::constant(content));
    for (auto& p : x.num) p = divide_exact(p, UPoly::constant(content));
  }
  if (x.den.leading() < 0) {
    x.den = -x.den;
    for (auto& p : x.num) p = -p;
  }
}

UPoly exact_route(const PeriodicityProblem& P, const StepMap& m, std::size_t max_degree, std::string& note) {
  const UPolyRing ring;
  SymbolicPoint x;
  for (std::size_t i = 0; i < m.d; ++i) x.num.push_back(UPoly::constant(m.start[i]));
  x.den = UPoly::constant(m.start[m.d]);
  std::vector<UPoly> denominators;
  note = "exact composition, denominator degrees:";
  for (std::size_t k = 0; k < P.n; ++k) {
    StepMap one = m;
    one.start.clear();
    // run a single step from the current symbolic point
    std::vector<UPoly> cur = x.num;
    cur.push_back(x.den);
    std::vector<std::vector<UPoly>> pw(m.d + 1);
    for (std::size_t i = 0; i <= m.d; ++i) {
      pw[i].push_back(UPoly::constant(1));
      for (std::size_t a = 1; a <= m.e; ++a) pw[i].push_back(pw[i].back() * cur[i]);
    }
    std::vector<UPoly> image;
    for (const auto& part : m.parts) {
      UPoly acc;
      for (const auto& t : part) {
        UPoly v = UPoly::constant(t.c);
        for (std::size_t i = 0; i < m.d; ++i)
          if (t.a[i]) v = v * pw[i][t.a[i]];
        if (t.rest) v = v * pw[m.d][t.rest];
        if (t.beta) v = v * ring.t_pow(t.beta);
        acc += v;
      }
      image.push_back(std::move(acc));
    }
    SymbolicPoint next;
    next.den = image.back();
    image.pop_back();
    next.num = std::move(image);
    if (next.den.is_zero()) throw Error("map-composition: the step map is singular for every T");
    cancel(next);
    x = std::move(next);
    if (static_cast<std::size_t>(std::max(0, x.den.degree())) > max_degree)
      throw BudgetExhausted("map-composition: degree " + std::to_string(x.den.degree()) + " exceeds the cap " +
                                std::to_string(max_degree) + " at step " + std::to_string(k + 1),
                            static_cast<std::size_t>(x.den.degree()));
    note += " " + std::to_string(x.den.degree());
    denominators.push_back(x.den);
  }
  UPoly E;
  for (std::size_t i = 0; i < m.d; ++i) {
    const UPoly cond = x.num[i] * Integer(m.target[i].get_den()) - x.den * Integer(m.target[i].get_num());
    E = gcd(E, cond);
  }
  if (E.is_zero()) return E;
  for (const auto& D : denominators) E = saturate(E, D);
  return E;
}

}  // namespace

UPoly map_composition_eliminant(const PeriodicityProblem& P, std::size_t max_degree, std::string* diagnostics) {
  const StepMap m = step_map(P);
  std::string why;
  if (auto c = modular_route(P, m, max_degree, why)) {
    if (diagnostics) *diagnostics = c->note;
    return c->eliminant;
  }
  std::string note;
  UPoly E = exact_route(P, m, max_degree, note);
  if (diagnostics) *diagnostics = "modular route inconclusive (" + why + "); " + note;
  return E;
}

}  // namespace dpo
