#ifndef DPO_NUMERIC_COMPILED_HPP
#define DPO_NUMERIC_COMPILED_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dpo/algebra/polynomial.hpp"

namespace dpo {

/// A polynomial system flattened to double coefficients for fast evaluation.
class CompiledSystem {
 public:
  CompiledSystem() = default;
  explicit CompiledSystem(const std::vector<Polynomial>& polys);

  std::size_t size() const { return rows_.size(); }
  std::size_t variables() const { return nvars_; }

  Eigen::VectorXd value(std::span<const double> x) const { return value_as<double>(x); }
  Eigen::MatrixXd jacobian(std::span<const double> x) const { return jacobian_as<double>(x); }

  /// Evaluation in another floating type (double and long double are provided).
  template <class Real>
  Eigen::Matrix<Real, Eigen::Dynamic, 1> value_as(std::span<const Real> x) const;
  template <class Real>
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> jacobian_as(std::span<const Real> x) const;
  /// Max-norm of value(x).
  double residual(std::span<const double> x) const;

 private:
  struct Term {
    long double coef;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (var, exponent)
  };
  template <class Real>
  static Real eval(const std::vector<Term>& terms, std::span<const Real> x);

  std::size_t nvars_ = 0;
  std::vector<std::vector<Term>> rows_;
  /// d rows_[i] / d x_j, sparse by (i, j).
  struct Partial {
    std::size_t row, col;
    std::vector<Term> terms;
  };
  std::vector<Partial> partials_;
};

}  // namespace dpo

#endif  // DPO_NUMERIC_COMPILED_HPP
