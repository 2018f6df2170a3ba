#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dpo/error.hpp"
#include "dpo/models/models.hpp"
#include "dpo/numeric/oracle.hpp"
#include "dpo/numeric/shooting.hpp"

using namespace dpo;

namespace {

double norm2(const State& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

double dist(const State& a, const State& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

}  // namespace

TEST_CASE("compiled system matches exact evaluation") {
  const auto s = kahan_scheme(instantiate("vl").field);
  const CompiledSystem F(s.residuals);
  const std::vector<double> v{1.0, 2.0, 1.1, 1.9, 0.3};
  const auto r = F.value(v);
  for (std::size_t i = 0; i < s.residuals.size(); ++i)
    CHECK(r[static_cast<Eigen::Index>(i)] == doctest::Approx(evaluate(s.residuals[i], v)));
  // Jacobian against central differences
  const auto J = F.jacobian(v);
  for (std::size_t j = 0; j < v.size(); ++j) {
    auto a = v, b = v;
    a[j] += 1e-6;
    b[j] -= 1e-6;
    const Eigen::VectorXd d = (F.value(a) - F.value(b)) / 2e-6;
    for (Eigen::Index i = 0; i < d.size(); ++i) CHECK(J(i, static_cast<Eigen::Index>(j)) == doctest::Approx(d[i]).epsilon(1e-6));
  }
}

TEST_CASE("newton_step examples") {
  const auto lin = instantiate("linear").field;
  // the midpoint step rotates by 2 atan(dt/2), a quarter turn at dt = 2
  const State q = newton_step(midpoint_scheme(lin), {0, 1}, 2.0);
  CHECK(dist(q, {1, 0}) < 1e-13);
  const State e = newton_step(explicit_euler_scheme(lin), {0, 1}, 1.0);
  CHECK(dist(e, {1, 1}) < 1e-15);
  const auto vl = kahan_scheme(instantiate("vl").field);
  const Stepper st(vl);
  for (double dt : {0.01, 0.1, 0.3, 0.5}) {
    const State y = st.step({1, 2}, dt);
    CHECK(st.residual({1, 2}, y, dt) < 1e-13);
  }
  CHECK_THROWS_AS(newton_step(midpoint_scheme(lin), {0, 1}, -1.0), InputError);
}

TEST_CASE("midpoint conserves the circle and closes at the Cayley step") {
  const auto s = midpoint_scheme(instantiate("linear").field);
  const double dt = 2 * std::tan(std::numbers::pi / 15);
  const Orbit o = run_orbit(s, {0, 1}, dt, 15);
  CHECK(*o.closure_residual < 1e-12);
  for (const auto& p : o.points) CHECK(std::abs(norm2(p) - 1.0) < 1e-12);
  const Orbit free = run_orbit(s, {0.3, -0.8}, 0.37, 200, false);
  double r0 = norm2(free.points.front());
  for (const auto& p : free.points) {
    CHECK(std::abs(norm2(p) - r0) < 1e-12);
    r0 = norm2(p);
  }
}

TEST_CASE("explicit Euler norm growth law") {
  const auto s = explicit_euler_scheme(instantiate("linear").field);
  for (double dt : {0.05, 0.3, 1.0}) {
    const Orbit o = run_orbit(s, {0, 1}, dt, 12);
    for (std::size_t k = 0; k + 1 < o.points.size(); ++k) {
      const double ratio = norm2(o.points[k + 1]) / norm2(o.points[k]);
      CHECK(std::abs(ratio - (1 + dt * dt)) < 1e-14 * (1 + dt * dt));
    }
    CHECK(*o.closure_residual > 1e-3);
  }
}

TEST_CASE("root selection follows the branch through x") {
  const auto s = midpoint_scheme(instantiate("cubic").field);
  const Stepper st(s);
  for (double dt = 0.01; dt <= 0.5; dt += 0.01) {
    const State x{0.4, -0.9};
    CHECK(dist(st.step(x, dt), x) <= 2.0 * dt);
  }
}

TEST_CASE("shooting from a certificate stays put") {
  const auto s = midpoint_scheme(instantiate("linear").field);
  const auto P = build_cyclic_system(s, 15, std::vector<Scalar>{0, 1});
  const double T = 30 * std::tan(std::numbers::pi / 15);
  const auto pts = back_substitute(P, T);
  ShootingSeed seed{{pts.begin() + 1, pts.end()}, T};
  const auto out = gauss_newton_shoot(P, seed);
  CHECK(out.classification == Classification::Periodic);
  CHECK(out.residual_history.back() < 1e-12);
  CHECK(out.period == doctest::Approx(T).epsilon(1e-12));
}

TEST_CASE("eigenvector back-substitution on the cubic oscillator") {
  const auto s = midpoint_scheme(instantiate("cubic").field);
  const auto P = build_cyclic_system(s, 3, std::vector<Scalar>{0, 1});
  const double T = std::pow(62208.0, 0.25);  // positive root of T^5 - 62208 T
  const auto a = back_substitute(P, T, BackSubstitution::Eigen);
  const auto b = back_substitute(P, T, BackSubstitution::Stepping);
  REQUIRE(a.size() == 3);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(dist(a[k], b[k]) < 1e-8);
  CHECK(problem_residual(P, {{a.begin() + 1, a.end()}, T}) < 1e-8);
}

TEST_CASE("pseudo-solutions are classified") {
  const auto vl = instantiate("vl");
  const auto s = kahan_scheme(vl.field);
  const auto P = build_cyclic_system(s, 11, vl.default_x0);
  const Orbit o = run_orbit(s, {1, 2}, 0.3008, 11, false);
  const auto out = gauss_newton_shoot(P, {{o.points.begin() + 1, o.points.end()}, 11 * 0.3008});
  CHECK(out.classification == Classification::SmallResidualPseudo);
  CHECK_FALSE(out.converged);
}

TEST_CASE("polygon checks") {
  const std::vector<State> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  CHECK(is_convex_polygon(square));
  CHECK(winding_number(square) == 1);
  std::vector<State> star;
  for (int k = 0; k < 5; ++k) {
    const double t = 2 * std::numbers::pi * 2 * k / 5;
    star.push_back({std::cos(t), std::sin(t)});
  }
  CHECK(winding_number(star) == 2);
}

TEST_CASE("RK reference") {
  const auto lin = instantiate("linear").field;
  const auto tr = rk_reference(lin, {0, 1}, 2 * std::numbers::pi, 1e-3);
  CHECK(dist(tr.states.back(), {0, 1}) < 1e-8);
  // fourth order: halving h divides the error by about 16
  const double e1 = dist(rk_reference(lin, {0, 1}, 1.0, 0.1).states.back(), {std::sin(1.0), std::cos(1.0)});
  const double e2 = dist(rk_reference(lin, {0, 1}, 1.0, 0.05).states.back(), {std::sin(1.0), std::cos(1.0)});
  CHECK(e1 / e2 == doctest::Approx(16).epsilon(0.15));
  const auto vl = rk_reference(instantiate("vl").field, {1, 2}, 10.0, 1e-3);
  for (const auto& x : vl.states) CHECK((x[0] > 0 && x[1] > 0));
  const auto top = instantiate("top");
  const double P = poincare_period(top.field, {0, 1, 0.1});
  const auto tt = rk_reference(top.field, {0, 1, 0.1}, P, 1e-3);
  double qmin = 1;
  for (const auto& x : tt.states) qmin = std::min(qmin, x[1]);
  CHECK(qmin < -0.9);
}

TEST_CASE("Poincare periods") {
  CHECK(poincare_period(instantiate("linear").field, {0, 1}) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-9));
  CHECK(std::abs(poincare_period(instantiate("vl").field, {1, 2}) - 3.24) < 0.01);
  CHECK_THROWS_AS(poincare_period(instantiate("vl").field, {2, 2}), NoReturn);
  PoincareOptions o;
  o.horizon = 1.0;
  CHECK_THROWS_AS(poincare_period(instantiate("linear").field, {0, 1}, o), NoReturn);
}
