#include "dpo/numeric/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <atomic>
#include <random>
#include <thread>

#include "dpo/numeric/oracle.hpp"

#include "dpo/error.hpp"
#include "dpo/groebner/linear_elimination.hpp"

namespace dpo {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Periodic: return "periodic";
    case Classification::SmallResidualPseudo: return "small-residual-pseudo";
    case Classification::Diverged: return "diverged";
  }
  return "?";
}

namespace {

std::vector<double> pack(const PeriodicityProblem& P, const ShootingSeed& s) {
  const std::size_t d = P.dimension();
  if (s.points.size() + 1 != P.n) throw InputError("seed must hold n-1 interior points");
  std::vector<double> v(P.ring.size());
  for (std::size_t k = 1; k < P.n; ++k) {
    if (s.points[k - 1].size() != d) throw InputError("seed point has the wrong dimension");
    for (std::size_t i = 0; i < d; ++i) v[P.point_var(k, i)] = s.points[k - 1][i];
  }
  v[P.period_var()] = s.T;
  return v;
}

ShootingSeed unpack(const PeriodicityProblem& P, const std::vector<double>& v) {
  ShootingSeed s;
  for (std::size_t k = 1; k < P.n; ++k) {
    State x(P.dimension());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = v[P.point_var(k, i)];
    s.points.push_back(std::move(x));
  }
  s.T = v[P.period_var()];
  return s;
}

State to_state(const std::vector<Scalar>& v) {
  State s;
  for (const auto& c : v) s.push_back(to_double(c));
  return s;
}

std::vector<State> with_start(const PeriodicityProblem& P, std::vector<State> interior) {
  interior.insert(interior.begin(), to_state(P.initial));
  return interior;
}

std::vector<State> by_stepping(const PeriodicityProblem& P, double T) {
  const Orbit o = run_orbit(P.scheme, to_state(P.initial), T / static_cast<double>(P.n), P.n, false);
  return o.points;
}

std::vector<State> by_least_squares(const PeriodicityProblem& P, double T) {
  const CompiledSystem F(P.equations);
  std::vector<double> v(P.ring.size(), 0.0);
  v[P.period_var()] = T;
  const Eigen::VectorXd b = F.value(v);
  const Eigen::MatrixXd J = F.jacobian(v);
  const auto unknown = P.unknowns();
  Eigen::MatrixXd A(J.rows(), static_cast<Eigen::Index>(unknown.size()));
  for (std::size_t c = 0; c < unknown.size(); ++c) A.col(static_cast<Eigen::Index>(c)) = J.col(static_cast<Eigen::Index>(unknown[c]));
  const Eigen::VectorXd y = A.completeOrthogonalDecomposition().solve(-b);
  for (std::size_t c = 0; c < unknown.size(); ++c) v[unknown[c]] = y[static_cast<Eigen::Index>(c)];
  return with_start(P, unpack(P, v).points);
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<Scalar>>& M) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(M.size()), static_cast<Eigen::Index>(M.size()));
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(M[i][j]);
  return out;
}

std::vector<State> by_eigenvectors(const PeriodicityProblem& P, double T) {
  const auto algebra = QuotientAlgebra::build({P.ring, P.equations, MonomialOrder::grevlex()});
  if (!algebra) throw Error("eigenvalue back-substitution needs a zero-dimensional system");
  if (algebra->dimension() == 0 || !algebra->standard_monomials().front().is_one())
    throw Error("the cyclic system has no solutions");
  const std::size_t nv = P.ring.size();
  std::vector<Eigen::MatrixXd> M;
  for (std::size_t v = 0; v < nv; ++v) M.push_back(to_matrix(algebra->multiplication_matrix(v)));
  // a generic combination separates points that share a value of T
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Eigen::MatrixXd Mf = M[P.period_var()];
  for (std::size_t v = 0; v + 1 < nv; ++v) Mf += coef(rng) * M[v];
  // left eigenvectors evaluate the standard monomials at the points
  const Eigen::EigenSolver<Eigen::MatrixXd> es(Mf.transpose());
  const Eigen::MatrixXcd V = es.eigenvectors();
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> values;
  for (Eigen::Index c = 0; c < V.cols(); ++c) {
    const Eigen::VectorXcd w = V.col(c);
    if (std::abs(w[0]) < 1e-12 * w.norm()) continue;
    std::vector<double> point(nv);
    double imag = 0.0;
    for (std::size_t v = 0; v < nv; ++v) {
      const std::complex<double> x = (M[v].transpose() * w)[0] / w[0];
      point[v] = x.real();
      imag = std::max(imag, std::abs(x.imag()));
    }
    const double miss = std::abs(point[P.period_var()] - T);
    if (imag > 1e-6 * std::max(1.0, std::abs(T)) || miss >= best) continue;
    best = miss;
    values = point;
  }
  if (values.empty() || best > 1e-6 * std::max(1.0, std::abs(T)))
    throw Error("no real solution of the cyclic system at this period");
  return with_start(P, unpack(P, values).points);
}

}  // namespace

std::vector<Polynomial> normalized(const std::vector<Polynomial>& equations) {
  std::vector<Polynomial> out;
  for (const auto& e : equations) {
    Scalar big = 0;
    for (const auto& t : e.terms()) big = std::max<Scalar>(big, abs(t.coef));
    out.push_back(big == 0 ? e : e * Scalar(1 / big));
  }
  return out;
}

double problem_residual(const PeriodicityProblem& problem, const ShootingSeed& point) {
  return CompiledSystem(problem.equations).residual(pack(problem, point));
}

std::vector<State> back_substitute(const PeriodicityProblem& problem, double T, BackSubstitution method) {
  if (method == BackSubstitution::Auto) {
    const auto points = problem.unknowns();
    method = is_linear_in(problem.equations, points, problem.period_var()) ? BackSubstitution::LeastSquares
                                                                            : BackSubstitution::Stepping;
  }
  switch (method) {
    case BackSubstitution::Stepping: return by_stepping(problem, T);
    case BackSubstitution::Eigen: return by_eigenvectors(problem, T);
    case BackSubstitution::LeastSquares: return by_least_squares(problem, T);
    case BackSubstitution::Auto: break;
  }
  return {};
}

ShootingOutcome gauss_newton_shoot(const PeriodicityProblem& problem, const ShootingSeed& seed,
                                   const ShootingOptions& options) {
  // extended precision: near-degenerate solutions converge only linearly
  using Real = long double;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  const CompiledSystem F(options.normalize_rows ? normalized(problem.equations) : problem.equations);
  const std::vector<double> start = pack(problem, seed);
  std::vector<Real> v(start.begin(), start.end());
  auto unknown = problem.unknowns();
  unknown.push_back(problem.period_var());
  const auto nu = static_cast<Eigen::Index>(unknown.size());

  auto restricted = [&](const Mat& J) {
    Mat A(J.rows(), nu);
    for (Eigen::Index c = 0; c < nu; ++c) A.col(c) = J.col(static_cast<Eigen::Index>(unknown[c]));
    return A;
  };
  auto value = [&](const std::vector<Real>& x) { return F.value_as<Real>(x); };
  auto max_norm = [](const Vec& r) { return static_cast<double>(r.template lpNorm<Eigen::Infinity>()); };

  ShootingOutcome out;
  Vec r = value(v);
  Real sq = r.squaredNorm();
  out.residual_history.push_back(max_norm(r));
  Real lambda = 0;
  std::size_t rises = 0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    if (out.residual_history.back() < options.periodic_tolerance) break;
    const Mat A = restricted(F.jacobian_as<Real>(v));
    Vec delta;
    if (lambda == 0) {
      delta = A.completeOrthogonalDecomposition().solve(-r);
    } else {
      Mat N = A.transpose() * A;
      for (Eigen::Index i = 0; i < nu; ++i) N(i, i) += lambda * std::max<Real>(N(i, i), 1e-12L);
      delta = N.ldlt().solve(-(A.transpose() * r));
    }
    std::vector<Real> trial = v;
    for (Eigen::Index c = 0; c < nu; ++c) trial[unknown[c]] += delta[c];
    const Vec rt = value(trial);
    const Real sqt = rt.squaredNorm();
    if (std::isfinite(static_cast<double>(sqt)) && sqt < sq) {
      v = std::move(trial);
      r = rt;
      rises = 0;
      sq = sqt;
      lambda = lambda < 1e-9L ? 0 : lambda / 10;
    } else {
      lambda = lambda == 0 ? 1e-6L : lambda * 10;
      if (std::isfinite(static_cast<double>(sqt)) && sqt > sq) ++rises;
    }
    out.residual_history.push_back(max_norm(r));
    if (lambda > 1e12L || rises >= options.divergence_window) break;
    // stop once a long window made no relative progress
    const std::size_t w = options.stagnation_window * 4;
    if (out.residual_history.size() > w) {
      const double then = out.residual_history[out.residual_history.size() - 1 - w];
      if (out.residual_history.back() > 0.999 * then) break;
    }
  }

  const ShootingSeed final_point = unpack(problem, std::vector<double>(v.begin(), v.end()));
  const double final_residual = out.residual_history.back();
  out.period = final_point.T;
  out.converged = final_residual < options.periodic_tolerance;
  if (out.converged) {
    out.classification = Classification::Periodic;
  } else {
    const auto& h = out.residual_history;
    bool stagnant = h.size() >= options.stagnation_window;
    for (std::size_t k = 0; stagnant && k < options.stagnation_window; ++k) {
      const double x = h[h.size() - 1 - k];
      stagnant = x >= options.pseudo_low && x <= options.pseudo_high;
    }
    out.classification = stagnant ? Classification::SmallResidualPseudo : Classification::Diverged;
  }
  out.orbit.points = with_start(problem, final_point.points);
  out.orbit.dt = final_point.T / static_cast<double>(problem.n);
  out.orbit.kind = problem.scheme.kind;
  out.orbit.end = to_state(problem.pinned_point(problem.n));
  out.orbit.closure_residual = final_residual;
  out.orbit.source = OrbitSource::Shooting;
  if (problem.is_boundary()) {
    out.t_half = out.period;
    out.t_full = 2.0 * out.period;
  }
  return out;
}

std::vector<ShootingSeed> trajectory_seeds(const VectorField& f, const State& x0, std::size_t steps,
                                           double fraction, const std::vector<double>& period_guesses, double h) {
  if (steps < 1) throw InputError("a chain needs at least one step");
  std::vector<ShootingSeed> seeds;
  for (double P : period_guesses) {
    if (!(P > 0.0)) continue;
    const double span = fraction * P;
    const Trajectory tr = rk_reference(f, x0, span, h);
    ShootingSeed s;
    for (std::size_t k = 1; k < steps; ++k) {
      const double t = span * static_cast<double>(k) / static_cast<double>(steps);
      const auto idx = std::min(tr.states.size() - 1, static_cast<std::size_t>(std::lround(t / h)));
      s.points.push_back(tr.states[idx]);
    }
    s.T = span;
    seeds.push_back(std::move(s));
  }
  return seeds;
}

std::vector<ShootingSeed> scheme_seeds(const SchemeSystem& scheme, const State& x0, std::size_t steps,
                                       double fraction, const std::vector<double>& period_guesses) {
  if (steps < 1) throw InputError("a chain needs at least one step");
  std::vector<ShootingSeed> seeds;
  for (double P : period_guesses) {
    if (!(P > 0.0)) continue;
    const double span = fraction * P;
    Orbit o;
    try {
      o = run_orbit(scheme, x0, span / static_cast<double>(steps), steps, false);
    } catch (const StepFailure&) {
      continue;
    }
    seeds.push_back({{o.points.begin() + 1, o.points.end()}, span});
  }
  return seeds;
}

std::vector<ShootingOutcome> multi_shoot(const PeriodicityProblem& problem, const std::vector<ShootingSeed>& seeds,
                                         const ShootingOptions& options, unsigned threads) {
  std::vector<ShootingOutcome> out(seeds.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, seeds.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(seeds.size());
  auto work = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        out[i] = gauss_newton_shoot(problem, seeds[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

bool is_convex_polygon(const std::vector<State>& p) {
  const std::size_t m = p.size();
  if (m < 3) return false;
  int sign = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const State& a = p[k];
    const State& b = p[(k + 1) % m];
    const State& c = p[(k + 2) % m];
    const double cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
    const int s = cross > 0 ? 1 : (cross < 0 ? -1 : 0);
    if (s == 0) return false;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return true;
}

int winding_number(const std::vector<State>& p, double cx, double cy) {
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const State& a = p[k];
    const State& b = p[(k + 1) % p.size()];
    const double t0 = std::atan2(a[1] - cy, a[0] - cx);
    const double t1 = std::atan2(b[1] - cy, b[0] - cx);
    double d = t1 - t0;
    while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
    while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
    total += d;
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

}  // namespace dpo
