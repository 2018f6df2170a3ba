#ifndef DPO_CLI_COMMANDS_HPP
#define DPO_CLI_COMMANDS_HPP

#include <iosfwd>

#include "dpo/cli/config.hpp"

namespace dpo::cli {

/// Each command writes its result to `out`, notes to `err`, and returns an ExitCode.
int cmd_models(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_system(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_periods(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_orbit(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_shoot(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Dispatches on c.command; library errors become exit codes with a message on `err`.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Reads the `config` and certificates of a `periods` JSON result and fills in an
/// orbit run at certificate `root` (0-based).
RunConfig orbit_from_periods(const nlohmann::json& periods, std::size_t root);

}  // namespace dpo::cli

#endif  // DPO_CLI_COMMANDS_HPP
