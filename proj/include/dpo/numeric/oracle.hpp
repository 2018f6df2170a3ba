#ifndef DPO_NUMERIC_ORACLE_HPP
#define DPO_NUMERIC_ORACLE_HPP

#include <vector>

#include "dpo/numeric/stepping.hpp"
#include "dpo/schemes/schemes.hpp"

namespace dpo {

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
};

/// Classical RK4 with fixed step h up to t_end (the last step is shortened).
Trajectory rk_reference(const VectorField& f, const State& x0, double t_end, double h);

State rk4_step(const VectorField& f, const State& x, double h);

struct PoincareOptions {
  double h = 1e-3;
  double horizon = 1e3;
  double tolerance = 1e-8;
  /// Crossings closer than this to t = 0 are ignored.
  double min_time = 1e-6;
};

/// First return time to the hyperplane through x0 orthogonal to f(x0), crossed
/// in the same direction. Throws NoReturn.
double poincare_period(const VectorField& f, const State& x0, const PoincareOptions& options = {});

}  // namespace dpo

#endif  // DPO_NUMERIC_ORACLE_HPP
