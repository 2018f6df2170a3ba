#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dpo/error.hpp"
#include "dpo/models/models.hpp"
#include "dpo/periodicity/periodicity.hpp"

using namespace dpo;

namespace {

// Cayley rotation: the midpoint step turns by 2 atan(dt/2), so n steps close at
// dt = 2 tan(pi k / n).
std::vector<double> cayley_periods(std::size_t n) {
  std::vector<double> out;
  for (std::size_t k = 1; 2 * k < n; ++k) out.push_back(2.0 * n * std::tan(std::numbers::pi * k / n));
  return out;
}

std::vector<double> values(const PeriodSearchResult& r) {
  std::vector<double> v;
  for (const auto& c : r.certificates) v.push_back(c.value);
  return v;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol * std::max(1.0, want[i]));
}

const std::vector<Scalar> kX0{0, 1};

}  // namespace

TEST_CASE("cyclic system shape") {
  const auto s = midpoint_scheme(instantiate("linear").field);
  const auto P = build_cyclic_system(s, 3, kX0);
  CHECK(P.equations.size() == 6);
  CHECK(P.unknowns().size() == 4);
  CHECK(P.ring.names().back() == "T");
  CHECK(P.ring.name(P.point_var(2, 1)) == "y_2");
}

TEST_CASE("linear midpoint roots follow the Cayley closed form") {
  const auto s = midpoint_scheme(instantiate("linear").field);
  for (std::size_t n = 3; n <= 9; ++n) {
    const auto r = eliminate_to_period(build_cyclic_system(s, n, kX0));
    CHECK(r.status == SearchStatus::RootsFound);
    check_close(values(r), cayley_periods(n), 1e-9);
  }
}

TEST_CASE("strategies agree on the linear oscillator") {
  const auto s = midpoint_scheme(instantiate("linear").field);
  const auto P = build_cyclic_system(s, 5, kX0);
  const auto a = eliminate_to_period(P, Strategy::Linear);
  const auto b = eliminate_to_period(P, Strategy::Groebner);
  CHECK(a.strategy == Strategy::Linear);
  CHECK(b.strategy == Strategy::Groebner);
  check_close(values(a), values(b), 1e-12);
  // Kahan coincides with the midpoint rule on linear fields
  const auto k = eliminate_to_period(build_cyclic_system(kahan_scheme(instantiate("linear").field), 6, kX0),
                                     Strategy::MapComposition);
  CHECK(k.strategy == Strategy::MapComposition);
  check_close(values(k), cayley_periods(6), 1e-9);
}

TEST_CASE("explicit Euler never closes") {
  const auto s = explicit_euler_scheme(instantiate("linear").field);
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto r = eliminate_to_period(build_cyclic_system(s, n, kX0));
    CHECK(r.status == SearchStatus::CertifiedEmpty);
    CHECK(r.certificates.empty());
  }
}

TEST_CASE("Volterra-Lotka Kahan systems are incompatible for small n") {
  const auto vl = instantiate("vl");
  const auto s = kahan_scheme(vl.field);
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto r = eliminate_to_period(build_cyclic_system(s, n, vl.default_x0));
    CHECK(r.strategy == Strategy::MapComposition);
    CHECK(r.status == SearchStatus::CertifiedEmpty);
  }
  // the Groebner route reaches the same verdict where it is cheap
  const auto g = eliminate_to_period(build_cyclic_system(s, 3, vl.default_x0), Strategy::Groebner);
  CHECK(g.status == SearchStatus::CertifiedEmpty);
}

TEST_CASE("tiny budgets are reported") {
  const auto s = midpoint_scheme(instantiate("cubic").field);
  PeriodSearchOptions o;
  o.groebner.reduction_budget = 10;
  const auto r = eliminate_to_period(build_cyclic_system(s, 4, kX0), Strategy::Groebner, o);
  CHECK(r.status == SearchStatus::BudgetExhausted);
}

TEST_CASE("scan results are ordered by n") {
  const auto s = midpoint_scheme(instantiate("linear").field);
  const auto entries = period_scan(s, 3, 8, kX0, Strategy::Auto, {}, 3);
  REQUIRE(entries.size() == 6);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(entries[i].n == 3 + i);
    REQUIRE(entries[i].result);
    CHECK(entries[i].result->certificates.front().value ==
          doctest::Approx(cayley_periods(3 + i).front()).epsilon(1e-10));
  }
}

TEST_CASE("boundary system") {
  const auto top = instantiate("top");
  const auto s = kahan_scheme(top.field);
  const std::vector<Scalar> end{0, -1, Scalar(1, 10)};
  const auto P = build_boundary_system(s, 6, top.default_x0, end);
  CHECK(P.is_boundary());
  CHECK(P.equations.size() == 18);
  CHECK(P.unknowns().size() == 15);
  CHECK(P.pinned_point(6) == end);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("map-composition") == Strategy::MapComposition);
  CHECK(to_string(SearchStatus::CertifiedEmpty) == "certified-empty");
  CHECK_THROWS_AS(parse_strategy("magic"), InputError);
}
