#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "transport1d/field.hpp"
#include "transport1d/profile.hpp"

namespace transport1d::cli {

enum class Command { run, verify, compare, traces };

struct RunConfig {
    Command command = Command::run;
    std::vector<std::string> scenarios{"constant-drift"};  // builtin labels or CSV paths
    std::size_t nt = 257;
    std::size_t nx = 257;
    bool resolution_set = false;  // nt or nx given explicitly
    std::vector<int> mollifier_n;
    std::filesystem::path out_dir = "out";
    std::string only;
    std::size_t jobs = 1;
    bool force = false;
    std::optional<double> x;
    // Data overrides in the `const:v` / `step:left,right,at` grammar.
    std::optional<std::string> theta0, theta_bar, theta_under;
    // residual_tolerance, oracle_threshold
    std::map<std::string, double> tolerances;
};

// Values read from a key = value file; each carries its line for error messages.
struct ConfigEntry {
    std::string value;
    int line = 0;
};
using ConfigFile = std::map<std::string, ConfigEntry>;

ConfigFile read_config_file(const std::filesystem::path& path);
ConfigFile parse_config_text(const std::string& text, const std::string& source = "config");

// Applies file entries onto cfg; unknown keys and bad values raise InvalidArgument
// naming the line and key.
void apply_config(RunConfig& cfg, const ConfigFile& file, const std::string& source = "config");

// Thrown by parse_args for --help; carries the usage text.
struct HelpRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full command line (without the program name). Flags override the --config file.
RunConfig parse_args(const std::vector<std::string>& args);

// Checks labels, flag combinations and counts. Throws InvalidArgument.
void validate(const RunConfig& cfg);

// `const:v` or `step:left,right,at` on [lo, hi].
Profile parse_profile(const std::string& spec, double lo, double hi);

// {N/4, N/2, N} (values >= 1) for a single N; lists are kept as given.
std::vector<int> expand_mollifier(const std::vector<int>& given);

bool is_builtin(const std::string& name);

// Builtin by label or tabulated scenario from a CSV file, with data overrides applied.
Scenario load_scenario(const std::string& name, const RunConfig& cfg);

}  // namespace transport1d::cli
