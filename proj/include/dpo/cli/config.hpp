#ifndef DPO_CLI_CONFIG_HPP
#define DPO_CLI_CONFIG_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpo/models/models.hpp"
#include "dpo/periodicity/periodicity.hpp"

namespace dpo::cli {

enum class Format { Json, Csv, Text };
std::string to_string(Format f);
Format parse_format(std::string_view text);

/// Exit codes shared by every subcommand.
enum ExitCode : int { Found = 0, EmptyOrFailed = 1, Usage = 2, Budget = 3 };

/// Environment variable that overrides the reduction budget.
inline constexpr const char* kBudgetVariable = "DPO_BUDGET";

struct RunConfig {
  std::string command;
  std::string model = "linear";
  std::map<std::string, std::string> parameters;
  std::string scheme = "midpoint";
  std::size_t n = 5;
  std::optional<std::size_t> n_max;
  /// Comma-separated exact values; empty means the model default.
  std::string x0;
  std::string x_end;
  bool boundary = false;
  std::string strategy = "auto";
  std::size_t budget = 1'000'000;
  std::size_t max_degree = 20'000;
  std::optional<double> dt;
  std::optional<double> period;
  std::optional<std::size_t> steps;
  std::vector<double> period_guesses;
  /// "rk" resamples the reference trajectory, "scheme" runs the scheme.
  std::string seeds = "rk";
  double h = 1e-3;
  double horizon = 1e3;
  unsigned threads = 0;
  Format format = Format::Json;
  std::string output;
};

nlohmann::json to_json(const RunConfig& c);

/// Applies kBudgetVariable when set; throws InputError when it is malformed.
void apply_environment(RunConfig& c);

ModelSpec resolve_model(const RunConfig& c);
std::vector<Scalar> resolve_x0(const RunConfig& c, const ModelSpec& m);
SchemeSystem resolve_scheme(const RunConfig& c, const ModelSpec& m);
PeriodSearchOptions resolve_search_options(const RunConfig& c);

}  // namespace dpo::cli

#endif  // DPO_CLI_CONFIG_HPP
