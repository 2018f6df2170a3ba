#ifndef DPO_GROEBNER_LINEAR_ELIMINATION_HPP
#define DPO_GROEBNER_LINEAR_ELIMINATION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "dpo/algebra/polynomial.hpp"
#include "dpo/univar/upoly.hpp"

namespace dpo {

struct LinearElimination {
  /// gcd of the consistency conditions left after eliminating every unknown
  /// (zero when the system is consistent for every parameter value).
  UPoly eliminant;
  /// Last Bareiss pivot: the leading minor of the chosen pivot rows/columns.
  /// Parameter values where it vanishes are not covered by the eliminant.
  UPoly leading_minor;
  std::size_t rank = 0;
  std::vector<UPoly> conditions;
};

/// True when every equation has degree <= 1 in the unknowns jointly and all
/// remaining variables are the single parameter.
bool is_linear_in(std::span<const Polynomial> equations, std::span<const std::size_t> unknowns,
                  std::size_t param);

/// Fraction-free (Bareiss) Gaussian elimination over Z[param] of a system that
/// is linear in `unknowns`. Throws InputError if the system is not of that form.
LinearElimination fraction_free_eliminate(std::span<const Polynomial> equations,
                                          std::span<const std::size_t> unknowns, std::size_t param);

}  // namespace dpo

#endif  // DPO_GROEBNER_LINEAR_ELIMINATION_HPP
