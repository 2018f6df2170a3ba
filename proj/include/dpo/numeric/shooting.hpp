#ifndef DPO_NUMERIC_SHOOTING_HPP
#define DPO_NUMERIC_SHOOTING_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dpo/numeric/stepping.hpp"
#include "dpo/periodicity/periodicity.hpp"

namespace dpo {

enum class Classification { Periodic, SmallResidualPseudo, Diverged };
std::string to_string(Classification c);

struct ShootingOptions {
  double periodic_tolerance = 1e-10;
  double pseudo_low = 1e-6;
  double pseudo_high = 1e-2;
  std::size_t stagnation_window = 5;
  std::size_t divergence_window = 10;
  std::size_t max_iterations = 200;
  /// Divide every equation by its largest coefficient before measuring residuals.
  bool normalize_rows = true;
};

/// Interior points x_1..x_{n-1} and the period variable T of a PeriodicityProblem.
struct ShootingSeed {
  std::vector<State> points;
  double T = 0.0;
};

struct ShootingOutcome {
  /// x_0 .. x_{n-1}; for the boundary variant `end` is the terminal state.
  Orbit orbit;
  /// Value of T (= n dt) at the end of the iteration.
  double period = 0.0;
  /// Boundary variant only: the chain covers half a period.
  std::optional<double> t_half;
  std::optional<double> t_full;
  bool converged = false;
  std::vector<double> residual_history;
  Classification classification = Classification::Diverged;
};

/// Levenberg-Marquardt damped Gauss-Newton on all equations of the problem over
/// (interior points, T). Residuals are max-norms of the cleared
/// equations, normalized per row unless disabled.
ShootingOutcome gauss_newton_shoot(const PeriodicityProblem& problem, const ShootingSeed& seed,
                                   const ShootingOptions& options = {});

/// Each equation divided by its largest absolute coefficient.
std::vector<Polynomial> normalized(const std::vector<Polynomial>& equations);

/// Max-norm of the problem equations at (points, T).
double problem_residual(const PeriodicityProblem& problem, const ShootingSeed& point);

/// Seeds resampled from an RK trajectory of `f` from x0: for each full-period
/// guess P the chain is taken to cover fraction * P (1 for cyclic problems, 1/2
/// for half-period boundary problems) with points at uniform times.
std::vector<ShootingSeed> trajectory_seeds(const VectorField& f, const State& x0, std::size_t steps,
                                           double fraction, const std::vector<double>& period_guesses,
                                           double h = 1e-3);

/// Same layout, but the points are a free run of the scheme itself with
/// dt = fraction * P / steps. Guesses where a step fails are dropped.
std::vector<ShootingSeed> scheme_seeds(const SchemeSystem& scheme, const State& x0, std::size_t steps,
                                       double fraction, const std::vector<double>& period_guesses);

/// gauss_newton_shoot for every seed on `threads` workers (0 = hardware
/// concurrency); outcomes are in seed order.
std::vector<ShootingOutcome> multi_shoot(const PeriodicityProblem& problem, const std::vector<ShootingSeed>& seeds,
                                         const ShootingOptions& options = {}, unsigned threads = 0);

enum class BackSubstitution { Auto, Stepping, Eigen, LeastSquares };

/// Points of an orbit with period T (a root of the eliminant). Stepping runs the
/// scheme from x_0; Eigen reads the points off the multiplication matrices of the
/// quotient algebra of the cyclic ideal; LeastSquares solves the system that is
/// linear in the points at fixed T. Auto uses LeastSquares when the system is
/// linear in the points and Stepping otherwise.
std::vector<State> back_substitute(const PeriodicityProblem& problem, double T,
                                   BackSubstitution method = BackSubstitution::Auto);

/// Consecutive edge cross products of the closed polygon all share one sign.
bool is_convex_polygon(const std::vector<State>& points);
/// Winding number of the closed polygon (first two coordinates) around `center`.
int winding_number(const std::vector<State>& points, double cx = 0.0, double cy = 0.0);

}  // namespace dpo

#endif  // DPO_NUMERIC_SHOOTING_HPP
