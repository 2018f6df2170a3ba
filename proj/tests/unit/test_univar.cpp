#include <doctest.h>

#include <cmath>

#include "dpo/univar/isolate.hpp"
#include "dpo/univar/sturm.hpp"

using namespace dpo;

namespace {

UPoly from_roots(const std::vector<long>& roots) {
  UPoly p = UPoly::constant(1);
  for (long r : roots) p = p * UPoly(std::vector<Integer>{Integer(-r), Integer(1)});
  return p;
}

}  // namespace

TEST_CASE("Sturm counts match known roots") {
  const UPoly p = from_roots({-3, -1, 2, 2, 5});
  CHECK(sturm_count(p, Bound::neg_inf(), Bound::pos_inf()) == 4);
  CHECK(sturm_count(p, Bound::at(0), Bound::pos_inf()) == 2);
  CHECK(sturm_count(p, Bound::at(2), Bound::at(5)) == 1);
  CHECK(sturm_count(p, Bound::at(-3), Bound::at(-1)) == 1);
}

TEST_CASE("gcd and squarefree part") {
  const UPoly a = from_roots({1, 2, 2}), b = from_roots({2, 3});
  CHECK(gcd(a, b).primitive_monic_sign() == from_roots({2}));
  CHECK(squarefree_part(a).primitive_monic_sign() == from_roots({1, 2}));
  CHECK(divide_exact(a, from_roots({2})) == from_roots({1, 2}));
}

TEST_CASE("positive roots are isolated and refined") {
  // (T^2 - 2)(T - 3) T
  const UPoly p = UPoly(std::vector<Integer>{-2, 0, 1}) * from_roots({3, 0});
  const auto e = deflate(p);
  CHECK(e.deflation == 1);
  const auto roots = isolate_positive_roots(e);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(roots[1].value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(roots[0].lo <= roots[0].hi);
}

TEST_CASE("even eliminants are analysed in T^2") {
  const UPoly p(std::vector<Integer>{0, -4, 0, 1});  // T^3 - 4T
  const auto e = deflate(p);
  CHECK(e.even_substitution);
  const auto roots = isolate_positive_roots(e);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].value == doctest::Approx(2.0));
}
