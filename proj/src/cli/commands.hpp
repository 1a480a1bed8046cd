// commands.hpp - the CLI subcommands as testable functions.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace darkwell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct CommandOptions {
    std::string config_path;             // empty = no file, overrides only
    std::string out_path;                // overrides the config's out key
    std::vector<std::string> overrides;  // repeated "key=value"
    bool quiet = false;
};

int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_wells(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_scenarios(const CommandOptions& opts, std::ostream& out, std::ostream& err);

// "%.17g": lossless round-trip formatting used for every CSV number.
std::string g17(double v);

}  // namespace darkwell::cli
