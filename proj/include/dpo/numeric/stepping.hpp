#ifndef DPO_NUMERIC_STEPPING_HPP
#define DPO_NUMERIC_STEPPING_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dpo/numeric/compiled.hpp"
#include "dpo/schemes/schemes.hpp"

namespace dpo {

using State = std::vector<double>;

enum class OrbitSource { AlgebraicCertificate, Shooting, FreeRun };
std::string to_string(OrbitSource s);

struct Orbit {
  /// x_0 .. x_{steps-1}; `end` is x_steps.
  std::vector<State> points;
  State end;
  double dt = 0.0;
  SchemeKind kind = SchemeKind::Midpoint;
  /// Max-norm of the scheme residuals over every step with x_steps replaced by x_0.
  std::optional<double> closure_residual;
  OrbitSource source = OrbitSource::FreeRun;
};

struct NewtonOptions {
  double tolerance = 1e-13;
  std::size_t max_iterations = 50;
  std::size_t max_halvings = 8;
};

/// Implicit one-step solver for a scheme; the compiled residuals are reused.
class Stepper {
 public:
  explicit Stepper(const SchemeSystem& scheme, NewtonOptions options = {});

  const SchemeSystem& scheme() const { return scheme_; }
  /// Solves g(x, x̂, dt) = 0 for x̂ by damped Newton started at x̂ = x (one
  /// linear solve when the scheme is linear in x̂). Throws StepFailure.
  State step(const State& x, double dt) const;
  /// Max-norm of g(x, x̂, dt).
  double residual(const State& x, const State& xhat, double dt) const;

 private:
  std::vector<double> pack(const State& x, const State& xhat, double dt) const;

  SchemeSystem scheme_;
  NewtonOptions options_;
  CompiledSystem residuals_;
  bool linear_ = false;
};

State newton_step(const SchemeSystem& scheme, const State& x, double dt, const NewtonOptions& options = {});

/// Applies `steps` implicit steps from x0. StepFailure::index() is the failing step.
/// With close = true the closure residual is filled in.
Orbit run_orbit(const SchemeSystem& scheme, const State& x0, double dt, std::size_t steps, bool close = true);

/// Closure residual of a cyclic point sequence, see Orbit.
double closure_residual(const Stepper& stepper, const std::vector<State>& points, double dt);

}  // namespace dpo

#endif  // DPO_NUMERIC_STEPPING_HPP
