#ifndef DPO_UNIVAR_ISOLATE_HPP
#define DPO_UNIVAR_ISOLATE_HPP

#include <cstddef>
#include <vector>

#include "dpo/univar/upoly.hpp"

namespace dpo {

/// Univariate period polynomial in T after removing the trivial root T = 0.
struct Eliminant {
  UPoly poly;
  std::size_t deflation = 0;
  /// Root analysis ran in S = T^2 (poly is even in T).
  bool even_substitution = false;
};

/// Strips the factor T^m, normalizes to a primitive polynomial with positive
/// leading coefficient and records whether the rest is even in T.
Eliminant deflate(const UPoly& p);

/// Exact isolating interval (lo, hi) containing exactly one positive root.
struct PeriodCertificate {
  Scalar lo;
  Scalar hi;
  double value = 0.0;
  std::size_t sturm_count = 1;
  std::size_t multiplicity = 1;
};

struct IsolationOptions {
  /// Target width relative to max(1, value).
  double relative_width = 1e-12;
  /// Re-run a full Sturm count after every bisection step (slow; for tests).
  bool verify_each_step = false;
};

/// Certified, refined, ascending list of all positive real roots.
std::vector<PeriodCertificate> isolate_positive_roots(const Eliminant& e,
                                                      const IsolationOptions& options = {});

}  // namespace dpo

#endif  // DPO_UNIVAR_ISOLATE_HPP
