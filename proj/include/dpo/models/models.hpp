#ifndef DPO_MODELS_MODELS_HPP
#define DPO_MODELS_MODELS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpo/algebra/scalar.hpp"
#include "dpo/schemes/schemes.hpp"

namespace dpo {

struct ModelParameter {
  std::string name;
  Scalar value;
  std::string meaning;
};

/// Start and end of a half-period two-point boundary formulation.
struct HalfPeriodEnds {
  std::string label;
  std::vector<Scalar> start;
  std::vector<Scalar> end;
};

struct ModelSpec {
  std::string name;
  std::string title;
  std::vector<ModelParameter> parameters;
  VectorField field;
  std::vector<Scalar> default_x0;
  /// Rough period of the reference solution through default_x0, if known.
  std::optional<double> period_hint;
  std::string notes;
  std::vector<HalfPeriodEnds> half_period_ends;

  std::size_t dimension() const { return field.dimension(); }
  const Scalar& parameter(std::string_view name) const;
};

/// linear, cubic, vl, top with default parameters.
std::vector<ModelSpec> catalog();

/// Builds a model with some parameters replaced. Throws InputError for unknown
/// models or parameters.
ModelSpec instantiate(std::string_view name, const std::map<std::string, Scalar>& overrides = {});

}  // namespace dpo

#endif  // DPO_MODELS_MODELS_HPP
