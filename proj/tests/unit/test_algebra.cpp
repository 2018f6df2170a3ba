#include <doctest.h>

#include <random>

#include "dpo/algebra/polynomial.hpp"
#include "dpo/error.hpp"

using namespace dpo;

namespace {

Polynomial random_poly(const Ring& R, std::mt19937& rng) {
  std::uniform_int_distribution<int> terms(0, 4), exp(0, 2), num(-9, 9), den(1, 4);
  std::vector<Polynomial::Term> ts;
  const int m = terms(rng);
  for (int t = 0; t < m; ++t) {
    Monomial mono(R.size());
    for (std::size_t v = 0; v < R.size(); ++v) mono[v] = static_cast<std::uint32_t>(exp(rng));
    ts.push_back({mono, ratio(num(rng), den(rng))});
  }
  return Polynomial::from_terms(R, ts);
}

}  // namespace

TEST_CASE("scalar parsing is exact") {
  CHECK(parse_scalar("3") == Scalar(3));
  CHECK(parse_scalar("-7/2") == Scalar(-7, 2));
  CHECK(parse_scalar("0.30083") == Scalar(30083, 100000));
  CHECK(parse_scalar("1e-10") == Scalar("1/10000000000"));
  CHECK(parse_scalar("2.5E3") == Scalar(2500));
  CHECK(parse_scalar_list("0,1") == std::vector<Scalar>{0, 1});
  CHECK_THROWS_AS(parse_scalar("1/0"), InputError);
  CHECK_THROWS_AS(parse_scalar("abc"), InputError);
}

TEST_CASE("ring axioms on random polynomials") {
  const Ring R({"x", "y", "z"});
  std::mt19937 rng(7);
  const Polynomial zero(R), one = Polynomial::constant(R, 1);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_poly(R, rng), b = random_poly(R, rng), c = random_poly(R, rng);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + zero == a);
    REQUIRE(a * one == a);
    REQUIRE((a - a).is_zero());
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  const Ring R({"x", "y"});
  std::mt19937 rng(11);
  const std::vector<Scalar> pt{Scalar(2, 3), Scalar(-5, 7)};
  for (int i = 0; i < 200; ++i) {
    const auto a = random_poly(R, rng), b = random_poly(R, rng);
    CHECK(evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt));
    CHECK(evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt));
  }
}

TEST_CASE("substitution and derivatives") {
  const Ring R({"x", "y"});
  const auto x = Polynomial::variable(R, "x"), y = Polynomial::variable(R, "y");
  const auto p = x.pow(2) * y - y;
  const auto q = substitute(p, std::map<std::string, Polynomial>{{"x", x + y}});
  CHECK(q == (x + y).pow(2) * y - y);
  CHECK(partial_derivative(p, "x") == Scalar(2) * x * y);
  CHECK(substitute(p, std::map<std::string, Scalar>{{"y", Scalar(3)}}) == Scalar(3) * x.pow(2) - Polynomial::constant(R, 3));
}

TEST_CASE("ring mismatch is an input error") {
  const auto a = Polynomial::variable(Ring({"x"}), "x");
  const auto b = Polynomial::variable(Ring({"y"}), "y");
  CHECK_THROWS_AS(poly_arith(a, b, ArithOp::Add), InputError);
}

TEST_CASE("monomial orders") {
  const Monomial a(std::vector<std::uint32_t>{1, 0, 2}), b(std::vector<std::uint32_t>{0, 3, 0});
  CHECK(MonomialOrder::lex().compare(a, b) == std::strong_ordering::greater);
  CHECK(MonomialOrder::grevlex().compare(a, b) == std::strong_ordering::less);
  CHECK(MonomialOrder::block(1).compare(a, b) == std::strong_ordering::greater);
}
