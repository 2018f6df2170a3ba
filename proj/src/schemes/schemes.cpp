#include "dpo/schemes/schemes.hpp"

#include <algorithm>
#include <map>

#include "dpo/error.hpp"

namespace dpo {

VectorField::VectorField(std::vector<std::string> state_names, std::vector<Polynomial> components)
    : names_(std::move(state_names)), ring_(names_) {
  if (components.size() != names_.size())
    throw InputError("vector field needs one component per state variable");
  for (auto& c : components) components_.push_back(embed(c, ring_));
}

std::uint64_t VectorField::degree() const {
  std::uint64_t d = 0;
  for (const auto& c : components_) d = std::max(d, c.total_degree());
  return d;
}

std::vector<double> VectorField::operator()(const std::vector<double>& x) const {
  std::vector<double> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(evaluate(c, std::span<const double>(x)));
  return out;
}

std::string point_name(std::string_view state, std::size_t k) {
  return std::string(state) + "_" + std::to_string(k);
}

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Midpoint: return "midpoint";
    case SchemeKind::ExplicitEuler: return "euler";
    case SchemeKind::Kahan: return "kahan";
  }
  return "?";
}

SchemeKind parse_scheme_kind(std::string_view text) {
  if (text == "midpoint") return SchemeKind::Midpoint;
  if (text == "euler" || text == "explicit-euler") return SchemeKind::ExplicitEuler;
  if (text == "kahan") return SchemeKind::Kahan;
  throw InputError("unknown scheme '" + std::string(text) + "' (expected midpoint, euler or kahan)");
}

std::uint64_t SchemeSystem::degree_in_next() const {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < dimension(); ++i) vars.push_back(next(i));
  std::uint64_t d = 0;
  for (const auto& r : residuals) d = std::max(d, r.degree_in(vars));
  return d;
}

namespace {

Ring scheme_ring(const VectorField& f) {
  std::vector<std::string> names;
  for (const auto& s : f.state_names()) names.push_back(point_name(s, 0));
  for (const auto& s : f.state_names()) names.push_back(point_name(s, 1));
  names.push_back("dt");
  return Ring(names);
}

// state variable s -> weight_0 * s_0 + weight_1 * s_1
std::map<std::string, Polynomial> blend(const VectorField& f, const Ring& R, const Scalar& w0, const Scalar& w1) {
  std::map<std::string, Polynomial> images;
  for (const auto& s : f.state_names()) {
    Polynomial img(R);
    if (w0 != 0) img += w0 * Polynomial::variable(R, point_name(s, 0));
    if (w1 != 0) img += w1 * Polynomial::variable(R, point_name(s, 1));
    images.emplace(s, img);
  }
  return images;
}

Polynomial homogeneous_part(const Polynomial& p, std::uint64_t degree) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : p.terms())
    if (t.mono.degree() == degree) terms.push_back(t);
  return Polynomial::from_terms(p.ring(), std::move(terms), p.order());
}

SchemeSystem assemble(SchemeKind kind, const VectorField& f, const Ring& R,
                      const std::vector<Polynomial>& increments) {
  SchemeSystem s{kind, f, R, {}};
  const Polynomial dt = Polynomial::variable(R, "dt");
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    const auto& name = f.state_names()[i];
    const Polynomial r = Polynomial::variable(R, point_name(name, 1)) - Polynomial::variable(R, point_name(name, 0)) -
                         dt * increments[i];
    s.residuals.push_back(r.primitive());
  }
  return s;
}

}  // namespace

SchemeSystem midpoint_scheme(const VectorField& f) {
  const Ring R = scheme_ring(f);
  const auto mid = blend(f, R, Scalar(1, 2), Scalar(1, 2));
  std::vector<Polynomial> inc;
  for (const auto& c : f.components()) inc.push_back(substitute(c, mid, R));
  return assemble(SchemeKind::Midpoint, f, R, inc);
}

SchemeSystem explicit_euler_scheme(const VectorField& f) {
  const Ring R = scheme_ring(f);
  const auto cur = blend(f, R, 1, 0);
  std::vector<Polynomial> inc;
  for (const auto& c : f.components()) inc.push_back(substitute(c, cur, R));
  return assemble(SchemeKind::ExplicitEuler, f, R, inc);
}

SchemeSystem kahan_scheme(const VectorField& f) {
  if (f.degree() > 2) throw InputError("Kahan requires quadratic vector field");
  const Ring R = scheme_ring(f);
  const auto x = blend(f, R, 1, 0);
  const auto xh = blend(f, R, 0, 1);
  const auto sum = blend(f, R, 1, 1);
  std::vector<Polynomial> inc;
  for (const auto& c : f.components()) {
    const Polynomial Q = homogeneous_part(c, 2);
    const Polynomial L = homogeneous_part(c, 1);
    const Polynomial k = homogeneous_part(c, 0);
    Polynomial polar = substitute(Q, sum, R) - substitute(Q, x, R) - substitute(Q, xh, R);
    polar *= Scalar(1, 2);
    Polynomial lin = substitute(L, sum, R);
    lin *= Scalar(1, 2);
    inc.push_back(polar + lin + embed(k, R));
  }
  return assemble(SchemeKind::Kahan, f, R, inc);
}

SchemeSystem make_scheme(SchemeKind kind, const VectorField& f) {
  switch (kind) {
    case SchemeKind::Midpoint: return midpoint_scheme(f);
    case SchemeKind::ExplicitEuler: return explicit_euler_scheme(f);
    case SchemeKind::Kahan: return kahan_scheme(f);
  }
  throw InputError("unknown scheme kind");
}

LinearForm linear_form(const SchemeSystem& s) {
  const std::size_t d = s.dimension();
  if (s.degree_in_next() > 1) throw InputError("scheme residuals are not linear in the advanced state");
  LinearForm out;
  out.A.assign(d, std::vector<Polynomial>(d, Polynomial(s.ring)));
  out.b.assign(d, Polynomial(s.ring));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::vector<Polynomial::Term>> cols(d);
    std::vector<Polynomial::Term> rest;
    for (const auto& t : s.residuals[i].terms()) {
      bool placed = false;
      for (std::size_t j = 0; j < d && !placed; ++j) {
        if (t.mono[s.next(j)] == 0) continue;
        Monomial m = t.mono;
        m[s.next(j)] = 0;
        cols[j].push_back({m, t.coef});
        placed = true;
      }
      if (!placed) rest.push_back(t);
    }
    for (std::size_t j = 0; j < d; ++j) out.A[i][j] = Polynomial::from_terms(s.ring, std::move(cols[j]));
    out.b[i] = Polynomial::from_terms(s.ring, std::move(rest));
  }
  return out;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& M) {
  const std::size_t n = M.size();
  if (n == 0) throw InputError("determinant of an empty matrix");
  if (n == 1) return M[0][0];
  Polynomial det(M[0][0].ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(M[i][k]);
      minor.push_back(std::move(row));
    }
    const Polynomial term = M[0][j] * determinant(minor);
    if (j % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

RationalMap kahan_rational_map(const VectorField& f) {
  const SchemeSystem s = kahan_scheme(f);
  const LinearForm L = linear_form(s);
  const std::size_t d = s.dimension();
  RationalMap map{s.ring, {}, determinant(L.A)};
  for (std::size_t j = 0; j < d; ++j) {
    auto Aj = L.A;
    for (std::size_t i = 0; i < d; ++i) Aj[i][j] = -L.b[i];
    map.numerators.push_back(determinant(Aj));
  }
  const Polynomial at_zero = substitute(map.denominator, std::map<std::string, Scalar>{{"dt", Scalar(0)}});
  if (!at_zero.is_constant() || at_zero.is_zero())
    throw Error("Kahan system is singular at dt = 0");
  const Scalar c = Scalar(1) / at_zero.leading_term().coef;
  map.denominator *= c;
  for (auto& p : map.numerators) p *= c;
  return map;
}

}  // namespace dpo
