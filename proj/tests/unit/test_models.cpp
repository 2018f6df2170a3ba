#include <doctest.h>

#include "dpo/error.hpp"
#include "dpo/models/models.hpp"

using namespace dpo;

TEST_CASE("catalog") {
  const auto c = catalog();
  REQUIRE(c.size() == 4);
  const std::map<std::string, std::uint64_t> degrees{{"linear", 1}, {"cubic", 3}, {"vl", 2}, {"top", 2}};
  for (const auto& m : c) CHECK(m.field.degree() == degrees.at(m.name));
}

TEST_CASE("field values") {
  CHECK(instantiate("linear").field({0, 1}) == std::vector<double>{1, 0});
  CHECK(instantiate("vl").field({2, 2}) == std::vector<double>{0, 0});
  CHECK(instantiate("vl").default_x0 == std::vector<Scalar>{1, 2});
}

TEST_CASE("top coefficients from 8:7:2") {
  const auto top = instantiate("top");
  const auto& f = top.field.components();
  CHECK(f[0].terms().front().coef == Scalar(-5, 8));
  CHECK(f[1].terms().front().coef == Scalar(6, 7));
  CHECK(f[2].terms().front().coef == Scalar(-1, 2));
  CHECK(top.default_x0 == std::vector<Scalar>{0, 1, Scalar(1, 10)});
}

TEST_CASE("overrides are exact") {
  const auto top = instantiate("top", {{"eps", parse_scalar("1e-10")}});
  CHECK(top.default_x0[2] == Scalar("1/10000000000"));
  CHECK_THROWS_AS(instantiate("top", {{"zeta", Scalar(1)}}), InputError);
  CHECK_THROWS_AS(instantiate("pendulum"), InputError);
  const auto vl = instantiate("vl", {{"a", Scalar(3)}});
  CHECK(vl.field({1, 3}) == std::vector<double>{0, -3});
}
