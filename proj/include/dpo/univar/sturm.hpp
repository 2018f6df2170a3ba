#ifndef DPO_UNIVAR_STURM_HPP
#define DPO_UNIVAR_STURM_HPP

#include <vector>

#include "dpo/univar/upoly.hpp"

namespace dpo {

/// Interval end point: a finite rational or an infinity.
struct Bound {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Scalar value;

  static Bound neg_inf() { return {Kind::NegInf, Scalar(0)}; }
  static Bound pos_inf() { return {Kind::PosInf, Scalar(0)}; }
  static Bound at(const Scalar& v) { return {Kind::Finite, v}; }
};

/// Sturm sequence of the squarefree part of a nonzero polynomial; built once,
/// queried many times.
class SturmSequence {
 public:
  explicit SturmSequence(const UPoly& p);

  /// Number of distinct real roots in (a, b]. Requires a < b.
  std::size_t count(const Bound& a, const Bound& b) const;
  const UPoly& squarefree() const { return seq_.front(); }
  const std::vector<UPoly>& sequence() const { return seq_; }

 private:
  std::size_t variations(const Bound& x) const;
  std::vector<UPoly> seq_;
};

/// Distinct real roots of p in (a, b].
std::size_t sturm_count(const UPoly& p, const Bound& a, const Bound& b);

}  // namespace dpo

#endif  // DPO_UNIVAR_STURM_HPP
