#include <doctest.h>

#include "dpo/error.hpp"
#include "dpo/models/models.hpp"
#include "dpo/schemes/schemes.hpp"

using namespace dpo;

namespace {

// g(x, x̂, dt) with the two points swapped and dt negated
Polynomial reversed(const SchemeSystem& s, const Polynomial& g) {
  std::map<std::string, Polynomial> images;
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    images[s.ring.name(s.current(i))] = Polynomial::variable(s.ring, s.ring.name(s.next(i)));
    images[s.ring.name(s.next(i))] = Polynomial::variable(s.ring, s.ring.name(s.current(i)));
  }
  images[s.ring.name(s.step())] = -Polynomial::variable(s.ring, s.ring.name(s.step()));
  return substitute(g, images);
}

}  // namespace

TEST_CASE("midpoint residual of the harmonic oscillator") {
  const auto s = midpoint_scheme(instantiate("linear").field);
  REQUIRE(s.residuals.size() == 2);
  CHECK(s.residuals[0].to_string() == "-y_0*dt - y_1*dt - 2*x_0 + 2*x_1");
  CHECK(s.ring.names() == std::vector<std::string>{"x_0", "y_0", "x_1", "y_1", "dt"});
}

TEST_CASE("midpoint and Kahan schemes are symmetric for every model") {
  for (const auto& m : catalog()) {
    std::vector<SchemeKind> kinds{SchemeKind::Midpoint};
    if (m.field.degree() <= 2) kinds.push_back(SchemeKind::Kahan);
    for (auto kind : kinds) {
      const auto s = make_scheme(kind, m.field);
      for (const auto& g : s.residuals) {
        const auto r = reversed(s, g);
        CHECK_MESSAGE((r + g).is_zero(), m.name << " " << to_string(kind));
      }
    }
  }
}

TEST_CASE("Kahan residuals are linear in the advanced point") {
  for (const auto& name : {"linear", "vl", "top"}) {
    const auto s = kahan_scheme(instantiate(name).field);
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < s.dimension(); ++i) next.push_back(s.next(i));
    for (const auto& g : s.residuals) CHECK(g.degree_in(next) == 1);
    CHECK(s.degree_in_next() == 1);
  }
  CHECK_THROWS_AS(kahan_scheme(instantiate("cubic").field), InputError);
}

TEST_CASE("explicit Euler residuals do not involve the advanced point nonlinearly") {
  const auto s = explicit_euler_scheme(instantiate("cubic").field);
  CHECK(s.degree_in_next() == 1);
  CHECK(s.residuals[1].to_string().find("x_1") == std::string::npos);
}

TEST_CASE("Kahan rational map solves the residuals") {
  const auto m = instantiate("vl");
  const auto s = kahan_scheme(m.field);
  const auto map = kahan_rational_map(m.field);
  // the map lives in the scheme ring and does not involve the advanced point
  const std::vector<Scalar> pt{Scalar(1), Scalar(2), Scalar(0), Scalar(0), Scalar(3, 10)};
  const Scalar D = evaluate(map.denominator, pt);
  CHECK(evaluate(substitute(map.denominator, std::map<std::string, Scalar>{{"dt", Scalar(0)}}), pt) == 1);
  std::vector<Scalar> full{pt[0], pt[1], evaluate(map.numerators[0], pt) / D, evaluate(map.numerators[1], pt) / D,
                           pt[4]};
  for (const auto& g : s.residuals) CHECK(evaluate(g, full) == 0);
}

TEST_CASE("scheme names") {
  CHECK(parse_scheme_kind("explicit-euler") == SchemeKind::ExplicitEuler);
  CHECK(parse_scheme_kind("euler") == SchemeKind::ExplicitEuler);
  CHECK(to_string(SchemeKind::Kahan) == "kahan");
  CHECK_THROWS_AS(parse_scheme_kind("rk4"), InputError);
}
