#include "config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "transport1d/error.hpp"
#include "transport1d/io.hpp"

namespace transport1d::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        throw InvalidArgument(what + ": not a number '" + s + "'");
    return v;
}

long long to_integer(const std::string& s, const std::string& what) {
    long long v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        throw InvalidArgument(what + ": not an integer '" + s + "'");
    return v;
}

std::size_t lattice_count(const std::string& s, const std::string& key) {
    const auto v = to_integer(s, key);
    if (v < 2) throw InvalidArgument(key + " must be >= 2");
    return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& s, const std::string& what) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw InvalidArgument(what + ": expected true or false, got '" + s + "'");
}

Command to_command(const std::string& s) {
    if (s == "run") return Command::run;
    if (s == "verify") return Command::verify;
    if (s == "compare") return Command::compare;
    if (s == "traces") return Command::traces;
    throw InvalidArgument("unknown command '" + s + "'");
}

std::vector<int> mollifier_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& item : split(s, ',')) {
        const auto v = to_integer(item, "mollifier-n");
        if (v < 1) throw InvalidArgument("mollifier-n values must be >= 1");
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw InvalidArgument("mollifier-n: empty list");
    return out;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::run: return "run";
        case Command::verify: return "verify";
        case Command::compare: return "compare";
        case Command::traces: return "traces";
    }
    return "?";
}

}  // namespace

ConfigFile parse_config_text(const std::string& text, const std::string& source) {
    ConfigFile out;
    std::istringstream is(text);
    std::string raw;
    for (int line = 1; std::getline(is, raw); ++line) {
        const auto hash = raw.find('#');
        const auto body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        const std::string where = source + ":" + std::to_string(line);
        if (eq == std::string::npos)
            throw InvalidArgument(where + ": expected 'key = value', got '" + body + "'");
        const auto key = trim(body.substr(0, eq));
        auto value = trim(body.substr(eq + 1));
        if (key.empty()) throw InvalidArgument(where + ": missing key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (out.count(key)) throw InvalidArgument(where + ": duplicate key '" + key + "'");
        out[key] = {value, line};
    }
    return out;
}

ConfigFile read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

void apply_config(RunConfig& cfg, const ConfigFile& file, const std::string& source) {
    for (const auto& [key, entry] : file) {
        const std::string where = source + ":" + std::to_string(entry.line) + ": ";
        const auto& v = entry.value;
        try {
            if (key == "command") cfg.command = to_command(v);
            else if (key == "scenario") cfg.scenarios = split(v, ',');
            else if (key == "nt") cfg.nt = lattice_count(v, "nt"), cfg.resolution_set = true;
            else if (key == "nx") cfg.nx = lattice_count(v, "nx"), cfg.resolution_set = true;
            else if (key == "mollifier_n" || key == "mollifier-n") cfg.mollifier_n = mollifier_list(v);
            else if (key == "out") cfg.out_dir = v;
            else if (key == "only") cfg.only = v;
            else if (key == "jobs") {
                const auto j = to_integer(v, "jobs");
                if (j < 1) throw InvalidArgument("jobs must be >= 1");
                cfg.jobs = static_cast<std::size_t>(j);
            } else if (key == "force") cfg.force = to_bool(v, "force");
            else if (key == "x") cfg.x = to_double(v, "x");
            else if (key == "theta0") cfg.theta0 = v;
            else if (key == "theta_bar") cfg.theta_bar = v;
            else if (key == "theta_under") cfg.theta_under = v;
            else if (key == "residual_tolerance" || key == "oracle_threshold") {
                const double d = to_double(v, key);
                if (!(d > 0.0)) throw InvalidArgument(key + " must be positive");
                cfg.tolerances[key] = d;
            } else throw InvalidArgument("unknown key '" + key + "'");
        } catch (const InvalidArgument& e) {
            const std::string msg = e.what();
            throw InvalidArgument(where + (msg.find(key) == std::string::npos ? key + ": " : "") + msg);
        }
    }
}

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Transport equations with nearly incompressible fields in one space dimension",
                 "transport1d"};
    app.require_subcommand(0, 1);

    std::string config_path, scenario, mollifier, out, only;
    long long nt = 0, nx = 0, jobs = 0;
    double x = 0.0;
    bool force = false;
    auto* o_config = app.add_option("--config", config_path, "key = value configuration file");
    auto* o_scen = app.add_option("--scenario", scenario, "builtin label or CSV path; comma list");
    auto* o_nx = app.add_option("--nx", nx, "space nodes");
    auto* o_nt = app.add_option("--nt", nt, "time levels");
    auto* o_moll = app.add_option("--mollifier-n", mollifier, "N (expands to N/4,N/2,N) or a list");
    auto* o_out = app.add_option("--out", out, "output directory (default $TRANSPORT1D_OUT or ./out)");
    auto* o_only = app.add_option("--only", only, "criterion id pattern for verify, e.g. ENV-*");
    auto* o_jobs = app.add_option("--jobs", jobs, "parallel scenario or criterion runs");
    auto* o_force = app.add_flag("--force", force, "overwrite existing output files");
    auto* o_x = app.add_option("--x", x, "abscissa for traces");

    std::vector<CLI::App*> subs;
    for (const char* name : {"run", "verify", "compare", "traces"}) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
        subs.push_back(sub);
    }
    subs[0]->description("solve and write solution, traces and a JSON summary");
    subs[1]->description("run the property suite and print one line per criterion");
    subs[2]->description("compare against the smoothed-problem oracle");
    subs[3]->description("write boundary traces, or the time trace at --x");

    std::vector<const char*> argv{"transport1d"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw InvalidArgument(e.what());
    }

    RunConfig cfg;
    if (const char* env = std::getenv("TRANSPORT1D_OUT"); env && *env) cfg.out_dir = env;
    ConfigFile file;
    if (o_config->count()) {
        file = read_config_file(config_path);
        apply_config(cfg, file, config_path);
    }

    bool have_command = file.count("command") > 0;
    for (std::size_t k = 0; k < subs.size(); ++k)
        if (subs[k]->parsed()) {
            cfg.command = static_cast<Command>(k);
            have_command = true;
        }
    if (!have_command) throw InvalidArgument("no command given (run, verify, compare or traces)");

    if (o_scen->count()) cfg.scenarios = split(scenario, ',');
    if (o_nt->count()) cfg.nt = lattice_count(std::to_string(nt), "nt"), cfg.resolution_set = true;
    if (o_nx->count()) cfg.nx = lattice_count(std::to_string(nx), "nx"), cfg.resolution_set = true;
    if (o_moll->count()) cfg.mollifier_n = mollifier_list(mollifier);
    if (o_out->count()) cfg.out_dir = out;
    if (o_force->count()) cfg.force = force;
    if (o_jobs->count()) {
        if (jobs < 1) throw InvalidArgument("jobs must be >= 1");
        cfg.jobs = static_cast<std::size_t>(jobs);
    }
    // Command-specific flags are conflicts outside their command, whatever the file says.
    if (o_only->count()) {
        if (cfg.command != Command::verify)
            throw InvalidArgument(std::string("--only applies to verify, not ") + command_name(cfg.command));
        cfg.only = only;
    }
    if (o_x->count()) {
        if (cfg.command != Command::traces)
            throw InvalidArgument(std::string("--x applies to traces, not ") + command_name(cfg.command));
        cfg.x = x;
    }
    if (o_moll->count() && cfg.command != Command::compare)
        throw InvalidArgument(std::string("--mollifier-n applies to compare, not ") +
                              command_name(cfg.command));
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    if (cfg.nt < 2) throw InvalidArgument("nt must be >= 2");
    if (cfg.nx < 2) throw InvalidArgument("nx must be >= 2");
    if (cfg.scenarios.empty()) throw InvalidArgument("no scenario given");
    for (const auto& s : cfg.scenarios) {
        if (is_builtin(s)) continue;
        if (std::filesystem::is_regular_file(s)) continue;
        std::string known;
        for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
        throw InvalidArgument("unknown scenario '" + s + "' (builtins: " + known +
                              "; or a path to a t,x,rho,b CSV file)");
    }
    if (cfg.command == Command::compare && cfg.mollifier_n.empty())
        throw InvalidArgument("compare requires --mollifier-n");
    if (cfg.command == Command::verify && cfg.resolution_set && cfg.nx != cfg.nt)
        throw InvalidArgument("verify runs on square lattices: --nx and --nt must match");
    for (const auto* spec : {&cfg.theta0, &cfg.theta_bar, &cfg.theta_under})
        if (*spec) parse_profile(**spec, 0.0, 1.0);
}

Profile parse_profile(const std::string& spec, double lo, double hi) {
    const auto colon = spec.find(':');
    const auto kind = trim(spec.substr(0, colon));
    const auto args = colon == std::string::npos ? std::vector<std::string>{}
                                                 : split(spec.substr(colon + 1), ',');
    if (kind == "const" && args.size() == 1)
        return Profile::constant(to_double(args[0], "const"), lo, hi);
    if (kind == "step" && args.size() == 3) {
        const double l = to_double(args[0], "step"), r = to_double(args[1], "step");
        const double at = to_double(args[2], "step");
        return Profile::analytic([=](double s) { return s < at ? l : r; }, lo, hi);
    }
    throw InvalidArgument("bad data spec '" + spec + "' (expected const:v or step:left,right,at)");
}

std::vector<int> expand_mollifier(const std::vector<int>& given) {
    if (given.size() != 1) return given;
    std::vector<int> out;
    for (const int v : {given[0] / 4, given[0] / 2, given[0]})
        if (v >= 1 && (out.empty() || out.back() != v)) out.push_back(v);
    return out;
}

bool is_builtin(const std::string& name) {
    const auto& names = builtin_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Scenario load_scenario(const std::string& name, const RunConfig& cfg) {
    Scenario s;
    if (is_builtin(name)) {
        s = builtin_scenario(name);
    } else {
        const auto table = read_csv_file(name);
        BoundaryData placeholder;
        s = tabulated_scenario(table, std::filesystem::path(name).stem().string(), placeholder);
        const auto& g = s.table->grid;
        s.boundary = {Profile::constant(1.0, g.alpha(), g.beta()), Profile::constant(1.0, 0.0, g.T()),
                      Profile::constant(1.0, 0.0, g.T())};
    }
    const auto& d = s.domain;
    if (cfg.theta0) s.boundary.theta0 = parse_profile(*cfg.theta0, d.alpha, d.beta);
    if (cfg.theta_bar) s.boundary.theta_bar = parse_profile(*cfg.theta_bar, 0.0, d.T);
    if (cfg.theta_under) s.boundary.theta_under = parse_profile(*cfg.theta_under, 0.0, d.T);
    if (const auto it = cfg.tolerances.find("oracle_threshold"); it != cfg.tolerances.end())
        s.oracle_threshold = it->second;
    return s;
}

}  // namespace transport1d::cli
