#include "dpo/cli/config.hpp"

#include <cstdlib>

#include "dpo/error.hpp"

namespace dpo::cli {

std::string to_string(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Text: return "text";
  }
  return "?";
}

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "text") return Format::Text;
  throw InputError("unknown format '" + std::string(text) + "'");
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["model"] = c.model;
  j["parameters"] = c.parameters;
  j["scheme"] = c.scheme;
  j["n"] = c.n;
  if (c.n_max) j["n_max"] = *c.n_max;
  j["x0"] = c.x0;
  if (!c.x_end.empty()) j["x_end"] = c.x_end;
  j["boundary"] = c.boundary;
  j["strategy"] = c.strategy;
  j["budget"] = c.budget;
  j["max_degree"] = c.max_degree;
  if (c.dt) j["dt"] = *c.dt;
  if (c.period) j["period"] = *c.period;
  if (c.steps) j["steps"] = *c.steps;
  if (!c.period_guesses.empty()) j["period_guesses"] = c.period_guesses;
  j["seeds"] = c.seeds;
  j["h"] = c.h;
  j["horizon"] = c.horizon;
  j["format"] = to_string(c.format);
  return j;
}

void apply_environment(RunConfig& c) {
  const char* v = std::getenv(kBudgetVariable);
  if (!v || !*v) return;
  char* end = nullptr;
  const unsigned long long b = std::strtoull(v, &end, 10);
  if (*end != '\0' || b == 0) throw InputError(std::string(kBudgetVariable) + " must be a positive integer");
  c.budget = static_cast<std::size_t>(b);
}

ModelSpec resolve_model(const RunConfig& c) {
  std::map<std::string, Scalar> overrides;
  for (const auto& [k, v] : c.parameters) overrides[k] = parse_scalar(v);
  return instantiate(c.model, overrides);
}

std::vector<Scalar> resolve_x0(const RunConfig& c, const ModelSpec& m) {
  if (c.x0.empty()) return m.default_x0;
  auto x = parse_scalar_list(c.x0);
  if (x.size() != m.dimension())
    throw InputError("x0 needs " + std::to_string(m.dimension()) + " components for model " + m.name);
  return x;
}

SchemeSystem resolve_scheme(const RunConfig& c, const ModelSpec& m) {
  return make_scheme(parse_scheme_kind(c.scheme), m.field);
}

PeriodSearchOptions resolve_search_options(const RunConfig& c) {
  PeriodSearchOptions o;
  o.groebner.reduction_budget = c.budget;
  o.max_composition_degree = c.max_degree;
  return o;
}

}  // namespace dpo::cli
