#include "dpo/numeric/oracle.hpp"

#include <cmath>

#include "dpo/error.hpp"

namespace dpo {

State rk4_step(const VectorField& f, const State& x, double h) {
  const std::size_t d = x.size();
  auto shifted = [&](const State& k, double s) {
    State y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + s * k[i];
    return y;
  };
  const State k1 = f(x);
  const State k2 = f(shifted(k1, h / 2));
  const State k3 = f(shifted(k2, h / 2));
  const State k4 = f(shifted(k3, h));
  State y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return y;
}

Trajectory rk_reference(const VectorField& f, const State& x0, double t_end, double h) {
  if (!(h > 0.0)) throw InputError("RK step must be positive");
  if (x0.size() != f.dimension()) throw InputError("initial state has the wrong dimension");
  Trajectory tr;
  tr.times.push_back(0.0);
  tr.states.push_back(x0);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = std::min(t_end, static_cast<double>(k) * h);
    tr.states.push_back(rk4_step(f, tr.states.back(), t - tr.times.back()));
    tr.times.push_back(t);
  }
  return tr;
}

double poincare_period(const VectorField& f, const State& x0, const PoincareOptions& options) {
  const std::size_t d = x0.size();
  const State normal = f(x0);
  double nn = 0.0;
  for (double c : normal) nn += c * c;
  if (nn == 0.0) throw NoReturn("initial point is an equilibrium");
  auto side = [&](const State& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += (x[i] - x0[i]) * normal[i];
    return s;
  };
  State x = x0;
  double t = 0.0;
  double s = side(x);
  while (t < options.horizon) {
    const State y = rk4_step(f, x, options.h);
    const double sy = side(y);
    if (t + options.h > options.min_time && s < 0.0 && sy >= 0.0) {
      // bisect on the step length from x
      double lo = 0.0, hi = options.h;
      while (hi - lo > options.tolerance * 1e-2) {
        const double mid = 0.5 * (lo + hi);
        (side(rk4_step(f, x, mid)) < 0.0 ? lo : hi) = mid;
      }
      return t + 0.5 * (lo + hi);
    }
    x = y;
    s = sy;
    t += options.h;
    for (double c : x)
      if (!std::isfinite(c)) throw NoReturn("trajectory blew up");
  }
  throw NoReturn("no return detected within the horizon");
}

}  // namespace dpo
