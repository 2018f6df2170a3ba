#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dpo/cli/commands.hpp"
#include "dpo/error.hpp"

namespace {

using dpo::cli::RunConfig;

struct Flags {
  std::vector<std::string> params;
  std::string format;
  std::string from;
  std::size_t root = 0;
};

void model_flags(CLI::App* cmd, RunConfig& c, Flags& f) {
  cmd->add_option("--model,-m", c.model, "linear, cubic, vl or top")->capture_default_str();
  cmd->add_option("--param,-p", f.params, "parameter override name=value (repeatable)");
  cmd->add_option("--eps", [&c](const CLI::results_t& r) {
    c.parameters["eps"] = r.front();
    return true;
  }, "top: initial r (shorthand for --param eps=...)");
  cmd->add_option("--x0", c.x0, "initial state, comma separated exact values");
}

void scheme_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--scheme,-s", c.scheme, "midpoint, euler or kahan")->capture_default_str();
  cmd->add_option("-n", c.n, "number of steps (points per period)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic solutions of difference schemes for polynomial ODEs"};
  app.require_subcommand(1);
  RunConfig c;
  Flags f;
  std::string output;
  app.add_option("--output,-o", output, "write the result to this file instead of stdout");
  app.add_option("--threads", c.threads, "worker threads (0 = all cores)");

  auto* models = app.add_subcommand("models", "list the built-in models");
  models->add_option("--format,-f", f.format, "json or text");

  auto* system = app.add_subcommand("system", "print the scheme residuals and the periodicity system");
  model_flags(system, c, f);
  scheme_flags(system, c);
  system->add_flag("--boundary", c.boundary, "two-point boundary system ending at --x-end");
  system->add_option("--x-end", c.x_end, "terminal state of the boundary system");
  system->add_option("--format,-f", f.format, "json or text");

  auto* periods = app.add_subcommand("periods", "eliminate the points and certify the periods");
  model_flags(periods, c, f);
  scheme_flags(periods, c);
  periods->add_option("--n-max", c.n_max, "scan n, n+1, ..., n-max");
  periods->add_flag("--boundary", c.boundary, "two-point boundary system ending at --x-end");
  periods->add_option("--x-end", c.x_end, "terminal state of the boundary system");
  periods->add_option("--strategy", c.strategy, "auto, groebner, linear or map-composition")->capture_default_str();
  periods->add_option("--budget", c.budget, "polynomial reduction budget")->capture_default_str();
  periods->add_option("--max-degree", c.max_degree, "degree cap for map composition")->capture_default_str();
  periods->add_option("--format,-f", f.format, "json or text");

  auto* orbit = app.add_subcommand("orbit", "step the scheme and print the orbit as CSV");
  model_flags(orbit, c, f);
  scheme_flags(orbit, c);
  orbit->add_option("--dt", c.dt, "step size");
  orbit->add_option("--period,-T", c.period, "period; dt = T / n");
  orbit->add_option("--steps", c.steps, "number of steps (default n)");
  orbit->add_option("--from", f.from, "a periods JSON result; uses its configuration and a certificate");
  orbit->add_option("--root", f.root, "certificate index for --from (0-based)");
  orbit->add_option("--format,-f", f.format, "csv or json");

  auto* shoot = app.add_subcommand("shoot", "Gauss-Newton shooting from RK or scheme seeds");
  model_flags(shoot, c, f);
  scheme_flags(shoot, c);
  shoot->add_flag("--boundary", c.boundary, "half-period boundary problem with n/2 steps");
  shoot->add_option("--x-end", c.x_end, "terminal state (default: the model's half-period endpoints)");
  shoot->add_option("--period-guess", c.period_guesses, "full-period guesses for the seeds");
  shoot->add_option("--seeds", c.seeds, "seed source: rk or scheme")->check(CLI::IsMember({"rk", "scheme"}));
  shoot->add_option("--rk-step", c.h, "RK step for the seeds")->capture_default_str();
  shoot->add_option("--format,-f", f.format, "json or text");

  auto* oracle = app.add_subcommand("oracle", "Poincare return period of the exact flow");
  model_flags(oracle, c, f);
  oracle->add_option("--rk-step", c.h, "RK step")->capture_default_str();
  oracle->add_option("--horizon", c.horizon, "give up after this time")->capture_default_str();
  oracle->add_option("--format,-f", f.format, "json or text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dpo::cli::Usage;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    for (const auto& p : f.params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) throw dpo::InputError("--param expects name=value");
      c.parameters[p.substr(0, eq)] = p.substr(eq + 1);
    }
    if (c.command == "orbit") c.format = dpo::cli::Format::Csv;
    if (c.command == "models") c.format = dpo::cli::Format::Text;
    if (!f.format.empty()) c.format = dpo::cli::parse_format(f.format);
    if (c.command == "orbit" && !f.from.empty()) {
      std::ifstream in(f.from);
      if (!in) throw dpo::InputError("cannot read " + f.from);
      const auto fmt = c.format;
      c = dpo::cli::orbit_from_periods(nlohmann::json::parse(in), f.root);
      c.format = fmt;
    }
    dpo::cli::apply_environment(c);
    c.output = output;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dpo::cli::Usage;
  }

  if (output.empty()) return dpo::cli::run(c, std::cout, std::cerr);
  std::ofstream out(output);
  if (!out) {
    std::cerr << "error: cannot write " << output << "\n";
    return dpo::cli::EmptyOrFailed;
  }
  return dpo::cli::run(c, out, std::cerr);
}
