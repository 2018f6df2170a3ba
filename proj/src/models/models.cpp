#include "dpo/models/models.hpp"

#include <numbers>

#include "dpo/error.hpp"

namespace dpo {

const Scalar& ModelSpec::parameter(std::string_view key) const {
  for (const auto& p : parameters)
    if (p.name == key) return p.value;
  throw InputError("model '" + name + "' has no parameter '" + std::string(key) + "'");
}

namespace {

const std::vector<std::string>& known_models() {
  static const std::vector<std::string> names{"linear", "cubic", "vl", "top"};
  return names;
}

std::vector<ModelParameter> default_parameters(std::string_view name) {
  if (name == "vl")
    return {{"a", Scalar(2), "prey equilibrium level in dx/dt = -x (y - a)"},
            {"b", Scalar(2), "predator equilibrium level in dy/dt = (x - b) y"}};
  if (name == "top")
    return {{"A", Scalar(8), "principal moment of inertia about p"},
            {"B", Scalar(7), "principal moment of inertia about q (middle axis)"},
            {"C", Scalar(2), "principal moment of inertia about r"},
            {"eps", Scalar(1, 10), "initial r, distance from the unstable rotation"}};
  return {};
}

ModelSpec build(std::string_view name, std::vector<ModelParameter> params) {
  ModelSpec m;
  m.name = std::string(name);
  m.parameters = std::move(params);
  auto value = [&](std::string_view key) -> const Scalar& { return m.parameter(key); };

  if (name == "linear") {
    const Ring R({"x", "y"});
    const auto x = Polynomial::variable(R, "x"), y = Polynomial::variable(R, "y");
    m.title = "harmonic oscillator dx/dt = y, dy/dt = -x";
    m.field = VectorField({"x", "y"}, {y, -x});
    m.default_x0 = {0, 1};
    m.period_hint = 2 * std::numbers::pi;
    m.notes = "exact period 2*pi";
  } else if (name == "cubic") {
    const Ring R({"x", "y"});
    const auto x = Polynomial::variable(R, "x"), y = Polynomial::variable(R, "y");
    m.title = "cubic oscillator dx/dt = y, dy/dt = -x^3";
    m.field = VectorField({"x", "y"}, {y, -x.pow(3)});
    m.default_x0 = {0, 1};
    m.period_hint = 6.2363;
    m.notes = "period from (0,1) is about 6.2363";
  } else if (name == "vl") {
    const Ring R({"x", "y"});
    const auto x = Polynomial::variable(R, "x"), y = Polynomial::variable(R, "y");
    const auto a = Polynomial::constant(R, value("a")), b = Polynomial::constant(R, value("b"));
    m.title = "Volterra-Lotka dx/dt = -x (y - a), dy/dt = (x - b) y";
    m.field = VectorField({"x", "y"}, {-(x * (y - a)), (x - b) * y});
    m.default_x0 = {1, 2};
    m.period_hint = 3.24;
    m.notes = "period from (1,2) is about 3.24 for a = b = 2";
  } else if (name == "top") {
    const Scalar A = value("A"), B = value("B"), C = value("C");
    if (A == 0 || B == 0 || C == 0) throw InputError("top: moments of inertia must be nonzero");
    const Ring R({"p", "q", "r"});
    const auto p = Polynomial::variable(R, "p"), q = Polynomial::variable(R, "q"), r = Polynomial::variable(R, "r");
    m.title = "free rigid body A dp/dt = (C - B) q r and cyclic";
    m.field = VectorField({"p", "q", "r"}, {((C - B) / A) * (q * r), ((A - C) / B) * (p * r), ((B - A) / C) * (p * q)});
    m.default_x0 = {0, 1, value("eps")};
    m.notes = "rotation near the middle axis; q flips between +1 and -1, period grows like ln(1/eps)";
    m.half_period_ends = {{"perturbed", {0, 1, value("eps")}, {0, -1, value("eps")}},
                          {"axis", {0, 1, 0}, {0, -1, 0}}};
  }
  return m;
}

}  // namespace

std::vector<ModelSpec> catalog() {
  std::vector<ModelSpec> out;
  for (const auto& name : known_models()) out.push_back(build(name, default_parameters(name)));
  return out;
}

ModelSpec instantiate(std::string_view name, const std::map<std::string, Scalar>& overrides) {
  bool known = false;
  for (const auto& n : known_models()) known = known || n == name;
  if (!known) throw InputError("unknown model '" + std::string(name) + "'");
  auto params = default_parameters(name);
  for (const auto& [key, val] : overrides) {
    bool found = false;
    for (auto& p : params)
      if (p.name == key) {
        p.value = val;
        found = true;
      }
    if (!found) throw InputError("model '" + std::string(name) + "' has no parameter '" + key + "'");
  }
  return build(name, std::move(params));
}

}  // namespace dpo
