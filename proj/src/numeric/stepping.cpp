#include "dpo/numeric/stepping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpo/error.hpp"

namespace dpo {

std::string to_string(OrbitSource s) {
  switch (s) {
    case OrbitSource::AlgebraicCertificate: return "algebraic-certificate";
    case OrbitSource::Shooting: return "shooting";
    case OrbitSource::FreeRun: return "free-run";
  }
  return "?";
}

Stepper::Stepper(const SchemeSystem& scheme, NewtonOptions options)
    : scheme_(scheme), options_(options), residuals_(scheme.residuals), linear_(scheme.degree_in_next() <= 1) {}

std::vector<double> Stepper::pack(const State& x, const State& xhat, double dt) const {
  const std::size_t d = scheme_.dimension();
  if (x.size() != d || xhat.size() != d) throw InputError("state has the wrong dimension");
  std::vector<double> v(2 * d + 1);
  std::copy(x.begin(), x.end(), v.begin());
  std::copy(xhat.begin(), xhat.end(), v.begin() + static_cast<std::ptrdiff_t>(d));
  v[2 * d] = dt;
  return v;
}

double Stepper::residual(const State& x, const State& xhat, double dt) const {
  return residuals_.residual(pack(x, xhat, dt));
}

State Stepper::step(const State& x, double dt) const {
  if (!(dt > 0.0)) throw InputError("step size must be positive");
  const std::size_t d = scheme_.dimension();
  const auto jac_next = [&](const std::vector<double>& v) {
    return residuals_.jacobian(v).block(0, static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d),
                                        static_cast<Eigen::Index>(d));
  };
  std::vector<double> v = pack(x, x, dt);
  double scale = 1.0;
  for (double c : x) scale = std::max(scale, std::abs(c));
  // round-off floor of the residual at this magnitude
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale * std::max(1.0, dt);
  const double tol = std::max(options_.tolerance, floor);

  Eigen::VectorXd r = residuals_.value(v);
  double norm = r.lpNorm<Eigen::Infinity>();
  for (std::size_t it = 0; it < options_.max_iterations && norm > tol; ++it) {
    const Eigen::MatrixXd J = jac_next(v);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    const Eigen::VectorXd delta = lu.solve(-r);
    if (!delta.allFinite()) break;
    double lambda = 1.0;
    bool improved = false;
    std::vector<double> trial = v;
    for (std::size_t h = 0; h <= options_.max_halvings; ++h, lambda *= 0.5) {
      for (std::size_t i = 0; i < d; ++i) trial[d + i] = v[d + i] + lambda * delta[static_cast<Eigen::Index>(i)];
      const Eigen::VectorXd rt = residuals_.value(trial);
      const double nt = rt.lpNorm<Eigen::Infinity>();
      if (nt < norm || linear_) {
        v = trial;
        r = rt;
        norm = nt;
        improved = true;
        break;
      }
    }
    if (!improved) {
      if (delta.lpNorm<Eigen::Infinity>() <= 4 * std::numeric_limits<double>::epsilon() * scale) break;
      throw StepFailure("damped Newton made no progress (residual " + std::to_string(norm) + ")", 0);
    }
    if (delta.lpNorm<Eigen::Infinity>() <= 4 * std::numeric_limits<double>::epsilon() * scale &&
        norm <= 1e3 * tol)
      break;
  }
  if (!(norm <= 1e3 * tol) || !std::isfinite(norm))
    throw StepFailure("Newton did not converge within " + std::to_string(options_.max_iterations) +
                          " iterations (residual " + std::to_string(norm) + ")",
                      0);
  return State(v.begin() + static_cast<std::ptrdiff_t>(d), v.begin() + static_cast<std::ptrdiff_t>(2 * d));
}

State newton_step(const SchemeSystem& scheme, const State& x, double dt, const NewtonOptions& options) {
  return Stepper(scheme, options).step(x, dt);
}

double closure_residual(const Stepper& stepper, const std::vector<State>& points, double dt) {
  double worst = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k)
    worst = std::max(worst, stepper.residual(points[k], points[(k + 1) % points.size()], dt));
  return worst;
}

Orbit run_orbit(const SchemeSystem& scheme, const State& x0, double dt, std::size_t steps, bool close) {
  if (steps == 0) throw InputError("an orbit needs at least one step");
  const Stepper stepper(scheme);
  Orbit orbit;
  orbit.dt = dt;
  orbit.kind = scheme.kind;
  orbit.points.push_back(x0);
  State x = x0;
  for (std::size_t k = 0; k < steps; ++k) {
    try {
      x = stepper.step(x, dt);
    } catch (const StepFailure& e) {
      throw StepFailure(std::string("step ") + std::to_string(k) + ": " + e.what(), k);
    }
    if (k + 1 < steps) orbit.points.push_back(x);
  }
  orbit.end = x;
  if (close) orbit.closure_residual = closure_residual(stepper, orbit.points, dt);
  return orbit;
}

}  // namespace dpo
