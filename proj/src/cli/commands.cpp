#include "dpo/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dpo/error.hpp"
#include "dpo/numeric/oracle.hpp"
#include "dpo/numeric/shooting.hpp"

namespace dpo::cli {

namespace {


using nlohmann::json;
using cli::to_string;
using dpo::to_string;

std::vector<std::string> integer_strings(const UPoly& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(c.get_str());
  return out;
}

std::vector<std::string> scalar_strings(const std::vector<Scalar>& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(to_string(c));
  return out;
}

State to_state(const std::vector<Scalar>& v) {
  State s;
  for (const auto& c : v) s.push_back(to_double(c));
  return s;
}

json model_json(const ModelSpec& m) {
  json j;
  j["name"] = m.name;
  j["title"] = m.title;
  j["dimension"] = m.dimension();
  j["state"] = m.field.state_names();
  std::vector<std::string> eqs;
  for (std::size_t i = 0; i < m.dimension(); ++i)
    eqs.push_back("d" + m.field.state_names()[i] + "/dt = " + m.field.components()[i].to_string());
  j["equations"] = eqs;
  j["parameters"] = json::array();
  for (const auto& p : m.parameters)
    j["parameters"].push_back({{"name", p.name}, {"value", to_string(p.value)}, {"meaning", p.meaning}});
  j["default_x0"] = scalar_strings(m.default_x0);
  if (m.period_hint) j["period_hint"] = *m.period_hint;
  j["notes"] = m.notes;
  return j;
}

json result_json(const PeriodSearchResult& r) {
  json j;
  j["strategy"] = to_string(r.strategy);
  j["status"] = to_string(r.status);
  j["eliminant"] = integer_strings(r.raw);
  j["deflation"] = r.eliminant.deflation;
  j["even_substitution"] = r.eliminant.even_substitution;
  j["certificates"] = json::array();
  for (const auto& c : r.certificates)
    j["certificates"].push_back(
        {{"lo", to_string(c.lo)}, {"hi", to_string(c.hi)}, {"value", c.value}, {"multiplicity", c.multiplicity}});
  j["timing"] = {{"seconds", r.seconds}};
  j["stats"] = {{"reductions", r.stats.reductions}, {"pairs", r.stats.pairs_reduced}};
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  return j;
}

int exit_for(SearchStatus s) {
  switch (s) {
    case SearchStatus::RootsFound: return Found;
    case SearchStatus::BudgetExhausted: return Budget;
    case SearchStatus::CertifiedEmpty:
    case SearchStatus::Unconstrained: return EmptyOrFailed;
  }
  return EmptyOrFailed;
}

void write_text_result(std::ostream& out, std::size_t n, const PeriodSearchResult& r) {
  out << "n=" << n << " status=" << to_string(r.status) << " strategy=" << to_string(r.strategy)
      << " degree=" << r.raw.degree() << " time=" << r.seconds << "s\n";
  for (const auto& c : r.certificates)
    out << "  T in [" << to_string(c.lo) << ", " << to_string(c.hi) << "]  ~ " << std::setprecision(15) << c.value
        << "\n";
  if (!r.diagnostics.empty()) out << "  " << r.diagnostics << "\n";
}

PeriodicityProblem build_problem(const RunConfig& c, const SchemeSystem& s, const std::vector<Scalar>& x0,
                                 const ModelSpec& m) {
  if (!c.boundary) return build_cyclic_system(s, c.n, x0);
  if (c.x_end.empty()) throw InputError("--boundary needs --x-end");
  const auto end = parse_scalar_list(c.x_end);
  if (end.size() != m.dimension()) throw InputError("x-end has the wrong dimension");
  return build_boundary_system(s, c.n, x0, end);
}

double step_size(const RunConfig& c) {
  if (c.dt) return *c.dt;
  if (c.period) return *c.period / static_cast<double>(c.n);
  throw InputError("give --dt or --period");
}

}  // namespace

int cmd_models(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto models = catalog();
  if (c.format == Format::Json) {
    json j = json::array();
    for (const auto& m : models) j.push_back(model_json(m));
    out << j.dump(2) << "\n";
    return Found;
  }
  for (const auto& m : models) {
    out << m.name << ": " << m.title << "\n";
    for (std::size_t i = 0; i < m.dimension(); ++i)
      out << "  d" << m.field.state_names()[i] << "/dt = " << m.field.components()[i].to_string() << "\n";
    for (const auto& p : m.parameters) out << "  " << p.name << " = " << to_string(p.value) << "  (" << p.meaning << ")\n";
    out << "  x0 = (";
    for (std::size_t i = 0; i < m.default_x0.size(); ++i) out << (i ? ", " : "") << to_string(m.default_x0[i]);
    out << ")\n";
  }
  return Found;
}

int cmd_system(const RunConfig& c, std::ostream& out, std::ostream&) {
  const ModelSpec m = resolve_model(c);
  const SchemeSystem s = resolve_scheme(c, m);
  const PeriodicityProblem P = build_problem(c, s, resolve_x0(c, m), m);
  std::vector<std::string> residuals, equations;
  for (const auto& r : s.residuals) residuals.push_back(r.to_string());
  for (const auto& e : P.equations) equations.push_back(e.to_string());
  if (c.format == Format::Json) {
    json j;
    j["config"] = to_json(c);
    j["residuals"] = residuals;
    j["ring"] = P.ring.names();
    j["equations"] = equations;
    out << j.dump(2) << "\n";
  } else {
    out << "scheme residuals:\n";
    for (const auto& r : residuals) out << "  " << r << "\n";
    out << equations.size() << " equations in " << P.ring.size() << " unknowns:\n";
    for (const auto& e : equations) out << "  " << e << "\n";
  }
  return Found;
}

int cmd_periods(const RunConfig& c, std::ostream& out, std::ostream&) {
  const ModelSpec m = resolve_model(c);
  const SchemeSystem s = resolve_scheme(c, m);
  const auto x0 = resolve_x0(c, m);
  const Strategy strategy = parse_strategy(c.strategy);
  const PeriodSearchOptions options = resolve_search_options(c);

  if (c.n_max) {
    if (c.boundary) throw InputError("scans use the cyclic system");
    const auto entries = period_scan(s, c.n, *c.n_max, x0, strategy, options, c.threads);
    json j;
    j["config"] = to_json(c);
    j["results"] = json::array();
    int code = EmptyOrFailed;
    for (const auto& e : entries) {
      json r;
      if (e.result) {
        r = result_json(*e.result);
        if (c.format == Format::Text) write_text_result(out, e.n, *e.result);
        if (e.result->status == SearchStatus::RootsFound) code = Found;
        if (e.result->status == SearchStatus::BudgetExhausted && code != Found) code = Budget;
      } else {
        r["error"] = e.error;
        if (c.format == Format::Text) out << "n=" << e.n << " error: " << e.error << "\n";
      }
      r["n"] = e.n;
      j["results"].push_back(r);
    }
    if (c.format == Format::Json) out << j.dump(2) << "\n";
    return code;
  }

  const PeriodicityProblem P = build_problem(c, s, x0, m);
  const PeriodSearchResult r = eliminate_to_period(P, strategy, options);
  if (c.format == Format::Text) {
    write_text_result(out, c.n, r);
  } else {
    json j = result_json(r);
    j["config"] = to_json(c);
    out << j.dump(2) << "\n";
  }
  return exit_for(r.status);
}

int cmd_orbit(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ModelSpec m = resolve_model(c);
  const SchemeSystem s = resolve_scheme(c, m);
  const State x0 = to_state(resolve_x0(c, m));
  const double dt = step_size(c);
  const std::size_t steps = c.steps.value_or(c.n);
  Orbit o;
  try {
    o = run_orbit(s, x0, dt, steps);
  } catch (const StepFailure& e) {
    err << "step failure at step " << e.index() << ": " << e.what() << "\n";
    return EmptyOrFailed;
  }
  std::vector<State> rows = o.points;
  rows.push_back(o.end);
  if (c.format == Format::Json) {
    json j;
    j["config"] = to_json(c);
    j["dt"] = dt;
    j["points"] = rows;
    j["closure_residual"] = *o.closure_residual;
    out << j.dump(2) << "\n";
  } else {
    out << "k,t";
    for (const auto& name : m.field.state_names()) out << "," << name;
    out << "\n" << std::setprecision(17);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out << k << "," << static_cast<double>(k) * dt;
      for (double v : rows[k]) out << "," << v;
      out << "\n";
    }
  }
  err << "closure_residual=" << std::setprecision(6) << *o.closure_residual << "\n";
  return Found;
}

int cmd_shoot(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ModelSpec m = resolve_model(c);
  const SchemeSystem s = resolve_scheme(c, m);
  const auto x0 = resolve_x0(c, m);
  std::vector<HalfPeriodEnds> runs;
  std::size_t chain = c.n;
  double fraction = 1.0;
  if (c.boundary) {
    // n counts points per full period; the chain covers half of it
    if (c.n % 2 != 0 || c.n < 2) throw InputError("boundary shooting needs an even n");
    chain = c.n / 2;
    fraction = 0.5;
    if (!c.x_end.empty()) {
      runs.push_back({"custom", x0, parse_scalar_list(c.x_end)});
    } else {
      runs = m.half_period_ends;
      if (runs.empty()) throw InputError("model " + m.name + " has no half-period endpoints; give --x-end");
    }
  } else {
    runs.push_back({"cyclic", x0, x0});
  }

  std::vector<double> guesses = c.period_guesses;
  if (guesses.empty()) {
    PoincareOptions po;
    po.h = c.h;
    po.horizon = c.horizon;
    const double P0 = poincare_period(m.field, to_state(x0), po);
    for (int k = -1; k <= 6; ++k) guesses.push_back(P0 + k * P0 / 2);
  }
  std::vector<ShootingSeed> seeds;
  if (c.seeds == "rk")
    seeds = trajectory_seeds(m.field, to_state(x0), chain, fraction, guesses, c.h);
  else if (c.seeds == "scheme")
    seeds = scheme_seeds(s, to_state(x0), chain, fraction, guesses);
  else
    throw InputError("unknown seed source '" + c.seeds + "'");

  json j;
  j["config"] = to_json(c);
  j["chain_steps"] = chain;
  j["outcomes"] = json::array();
  std::vector<std::pair<double, std::string>> found;
  for (const auto& run : runs) {
    const PeriodicityProblem P = c.boundary ? build_boundary_system(s, chain, run.start, run.end)
                                            : build_cyclic_system(s, chain, run.start);
    const auto outcomes = multi_shoot(P, seeds, {}, c.threads);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      const double reported = o.t_full.value_or(o.period);
      json jo{{"endpoints", run.label},
              {"seed_period", seeds[i].T / fraction},
              {"period", o.period},
              {"reported", reported},
              {"classification", to_string(o.classification)},
              {"converged", o.converged},
              {"residual", o.residual_history.back()},
              {"iterations", o.residual_history.size() - 1}};
      if (o.t_half) {
        jo["t_half"] = *o.t_half;
        jo["t_full"] = *o.t_full;
      }
      j["outcomes"].push_back(jo);
      if (o.converged && reported > 0) found.emplace_back(reported, run.label);
    }
  }
  std::sort(found.begin(), found.end());
  json solutions = json::array();
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (i > 0 && std::abs(found[i].first - found[i - 1].first) <= 1e-5 * found[i].first &&
        found[i].second == found[i - 1].second)
      continue;
    solutions.push_back({{"reported", found[i].first}, {"endpoints", found[i].second}});
  }
  j["solutions"] = solutions;
  if (c.format == Format::Text) {
    for (const auto& sol : solutions)
      out << std::setprecision(10) << sol["reported"].get<double>() << "  (" << sol["endpoints"].get<std::string>()
          << ")\n";
  } else {
    out << j.dump(2) << "\n";
  }
  if (solutions.empty()) err << "no seed converged\n";
  return solutions.empty() ? EmptyOrFailed : Found;
}

int cmd_oracle(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ModelSpec m = resolve_model(c);
  PoincareOptions po;
  po.h = c.h;
  po.horizon = c.horizon;
  double T = 0.0;
  try {
    T = poincare_period(m.field, to_state(resolve_x0(c, m)), po);
  } catch (const NoReturn& e) {
    err << e.what() << "\n";
    return EmptyOrFailed;
  }
  if (c.format == Format::Text) {
    out << std::setprecision(12) << T << "\n";
  } else {
    json j;
    j["config"] = to_json(c);
    j["period"] = T;
    j["tolerance"] = po.tolerance;
    out << j.dump(2) << "\n";
  }
  return Found;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "models") return cmd_models(c, out, err);
    if (c.command == "system") return cmd_system(c, out, err);
    if (c.command == "periods") return cmd_periods(c, out, err);
    if (c.command == "orbit") return cmd_orbit(c, out, err);
    if (c.command == "shoot") return cmd_shoot(c, out, err);
    if (c.command == "oracle") return cmd_oracle(c, out, err);
    err << "unknown command '" << c.command << "'\n";
    return Usage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return Budget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return EmptyOrFailed;
  }
}

RunConfig orbit_from_periods(const json& periods, std::size_t root) {
  const json& cfg = periods.at("config");
  RunConfig c;
  c.command = "orbit";
  c.model = cfg.at("model").get<std::string>();
  c.parameters = cfg.at("parameters").get<std::map<std::string, std::string>>();
  c.scheme = cfg.at("scheme").get<std::string>();
  c.n = cfg.at("n").get<std::size_t>();
  c.x0 = cfg.at("x0").get<std::string>();
  const auto& certs = periods.at("certificates");
  if (root >= certs.size()) throw InputError("the periods result has no certificate " + std::to_string(root));
  c.period = certs.at(root).at("value").get<double>();
  c.format = Format::Csv;
  return c;
}

}  // namespace dpo::cli
