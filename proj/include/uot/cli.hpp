#ifndef UOT_CLI_HPP
#define UOT_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace uot {

/// Exit codes: 0 success, 2 infeasible setup or bad input, 3 non-convergence
/// (partial outputs are still written).
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNoConverge = 3;

/// Run one experiment described by a JSON config. The command is taken from
/// config["command"] unless `command` is nonempty. Optional overrides replace
/// the config's seed and output_dir. Writes summary.json plus per-command CSV
/// artifacts into the output directory; on error writes error.json there.
int run_experiment(nlohmann::json config, const std::string& command = "",
                   std::optional<std::uint64_t> seed_override = {},
                   std::optional<std::string> out_override = {});

}  // namespace uot

#endif
