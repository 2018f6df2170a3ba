#ifndef DPO_SCHEMES_SCHEMES_HPP
#define DPO_SCHEMES_SCHEMES_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dpo/algebra/polynomial.hpp"

namespace dpo {

/// Polynomial ODE dx/dt = f(x) over the ring of its state names.
class VectorField {
 public:
  VectorField() = default;
  /// components[i] must live in Ring(state_names); throws InputError otherwise.
  VectorField(std::vector<std::string> state_names, std::vector<Polynomial> components);

  std::size_t dimension() const { return names_.size(); }
  const std::vector<std::string>& state_names() const { return names_; }
  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& components() const { return components_; }
  /// Maximum total degree of the components.
  std::uint64_t degree() const;
  std::vector<double> operator()(const std::vector<double>& x) const;

 private:
  std::vector<std::string> names_;
  Ring ring_;
  std::vector<Polynomial> components_;
};

/// `name_k`, the name of a state variable at point k.
std::string point_name(std::string_view state, std::size_t k);

enum class SchemeKind { Midpoint, ExplicitEuler, Kahan };

std::string to_string(SchemeKind kind);
/// Accepts midpoint, euler / explicit-euler, kahan.
SchemeKind parse_scheme_kind(std::string_view text);

/// Residuals g(x, x̂, dt) over the ring [s_0..., s_1..., dt]: `_0` names the
/// current point and `_1` the advanced one.
struct SchemeSystem {
  SchemeKind kind = SchemeKind::Midpoint;
  VectorField field;
  Ring ring;
  std::vector<Polynomial> residuals;

  std::size_t dimension() const { return field.dimension(); }
  std::size_t current(std::size_t i) const { return i; }
  std::size_t next(std::size_t i) const { return field.dimension() + i; }
  std::size_t step() const { return 2 * field.dimension(); }
  /// Joint degree of the residuals in the advanced-state variables.
  std::uint64_t degree_in_next() const;
};

/// 2(x̂ - x) - dt f((x + x̂)/2) style residuals, made primitive over Z.
SchemeSystem midpoint_scheme(const VectorField& f);
SchemeSystem explicit_euler_scheme(const VectorField& f);
/// Polarized (linearly implicit) scheme; throws InputError for degree > 2.
SchemeSystem kahan_scheme(const VectorField& f);
SchemeSystem make_scheme(SchemeKind kind, const VectorField& f);

/// x̂_i = numerators[i] / denominator, in the scheme's ring (no advanced variables
/// occur). The denominator is normalized to equal 1 at dt = 0.
struct RationalMap {
  Ring ring;
  std::vector<Polynomial> numerators;
  Polynomial denominator;
};

/// Solves the Kahan residuals for x̂ by Cramer's rule over Q[x, dt].
RationalMap kahan_rational_map(const VectorField& f);

/// Residuals linear in x̂ written as A(x, dt) x̂ + b(x, dt); A is row-major d×d.
struct LinearForm {
  std::vector<std::vector<Polynomial>> A;
  std::vector<Polynomial> b;
};
/// Throws InputError if some residual is not of degree <= 1 in x̂.
LinearForm linear_form(const SchemeSystem& s);

/// Determinant by cofactor expansion (small matrices only).
Polynomial determinant(const std::vector<std::vector<Polynomial>>& M);

}  // namespace dpo

#endif  // DPO_SCHEMES_SCHEMES_HPP
