#include "commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "verify/criteria.hpp"
#include "transport1d/error.hpp"
#include "transport1d/io.hpp"
#include "transport1d/oracle.hpp"
#include "transport1d/potential.hpp"
#include "transport1d/solver.hpp"

namespace transport1d::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << content;
        os.flush();
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void OutputSet::add(fs::path path, std::string content) {
    paths_.push_back(std::move(path));
    contents_.push_back(std::move(content));
}

void OutputSet::commit(bool force) const {
    if (!force)
        for (const auto& p : paths_)
            if (fs::exists(p))
                throw InvalidArgument("refusing to overwrite " + p.string() + " (pass --force)");
    for (std::size_t k = 0; k < paths_.size(); ++k) write_atomic(paths_[k], contents_[k]);
}

namespace {

struct Case {
    Scenario scenario;
    FieldPair f;
    Potential p;
    Solution sol;
    Potential p_theta;
};

SpaceTimeGrid case_grid(const Scenario& s, const RunConfig& cfg) {
    if (s.kind == ScenarioKind::tabulated && !cfg.resolution_set) return s.table->grid;
    return scenario_grid(s, cfg.nt, cfg.nx);
}

Case solve_case(const std::string& name, const RunConfig& cfg) {
    auto s = load_scenario(name, cfg);
    std::optional<double> tol;
    if (const auto it = cfg.tolerances.find("residual_tolerance"); it != cfg.tolerances.end())
        tol = it->second;
    FieldPair f = sample_scenario(s, case_grid(s, cfg), tol);
    Potential p = build_potential(f);
    Solution sol = solve(p, f, s.boundary);
    Potential pt = build_potential(f, &sol.theta);
    return Case{std::move(s), std::move(f), std::move(p), std::move(sol), std::move(pt)};
}

fs::path scenario_dir(const RunConfig& cfg, const Scenario& s) { return cfg.out_dir / s.label; }

template <class F>
std::string render(F&& write) {
    std::ostringstream os;
    write(os);
    return os.str();
}

// Runs one job per scenario (in parallel with --jobs), then prints the
// collected text in scenario order. Returns the largest exit code.
int for_each_scenario(const RunConfig& cfg, std::ostream& out,
                      const std::function<int(const std::string&, std::ostream&)>& job) {
    const auto& names = cfg.scenarios;
    std::vector<std::string> text(names.size());
    std::vector<int> codes(names.size(), 0);
    std::vector<std::exception_ptr> errors(names.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k; (k = next++) < names.size();) {
            std::ostringstream os;
            try {
                codes[k] = job(names[k], os);
            } catch (...) {
                errors[k] = std::current_exception();
            }
            text[k] = os.str();
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < std::min(cfg.jobs, names.size()); ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    int code = 0;
    for (std::size_t k = 0; k < names.size(); ++k) {
        out << text[k];
        if (errors[k]) std::rethrow_exception(errors[k]);
        code = std::max(code, codes[k]);
    }
    return code;
}

std::string number(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

}  // namespace

int command_run(const RunConfig& cfg, std::ostream& out) {
    return for_each_scenario(cfg, out, [&](const std::string& name, std::ostream& log) {
        const auto c = solve_case(name, cfg);
        const auto& g = c.f.grid;
        const auto bv = bv_in_space_check(c.sol, c.f, c.scenario.boundary);
        const auto bc_l = check_boundary_condition(c.p, c.p_theta, c.scenario.boundary, Side::left);
        const auto bc_r = check_boundary_condition(c.p, c.p_theta, c.scenario.boundary, Side::right);
        const double cons = potential_consistency(c.sol, c.p_theta);
        const double C = cons / (g.dx() + g.dt());

        ordered_json j;
        j["scenario"] = c.scenario.label;
        j["nt"] = g.nt();
        j["nx"] = g.nx();
        j["linf_bound"] = c.sol.linf_bound;
        j["max_bv_space"] = bv.max_tv;
        j["bv_space_bound"] = bv.bound;
        j["bc_mismatch_left"] = bc_l.mismatch;
        j["bc_mismatch_right"] = bc_r.mismatch;
        j["potential_consistency"] = cons;
        j["consistency_constant"] = C;
        j["b_sup"] = c.f.b_sup;
        j["slabs"] = c.sol.slabs.size();

        const auto dir = scenario_dir(cfg, c.scenario);
        OutputSet files;
        files.add(dir / "solution.csv", render([&](std::ostream& os) {
                      write_solution_csv(os, g, c.f.rho, c.f.b, c.sol.theta, c.sol.rho_theta);
                  }));
        files.add(dir / "traces.csv", render([&](std::ostream& os) { write_trace_csv(os, c.p, c.p_theta); }));
        files.add(dir / "summary.json", j.dump(2) + "\n");
        files.commit(cfg.force);

        log << c.scenario.label << " (" << g.nt() << "x" << g.nx() << "): linf_bound "
            << number(c.sol.linf_bound) << ", max TV " << number(bv.max_tv) << " <= "
            << number(bv.bound) << ", bc mismatch " << number(bc_l.mismatch) << "/"
            << number(bc_r.mismatch) << ", potential consistency " << number(cons)
            << " = C (dx+dt) with C = " << number(C) << "\n";
        for (const auto& p : files.paths()) log << "  wrote " << p.string() << "\n";
        return 0;
    });
}

int command_traces(const RunConfig& cfg, std::ostream& out) {
    return for_each_scenario(cfg, out, [&](const std::string& name, std::ostream& log) {
        const auto c = solve_case(name, cfg);
        const auto& g = c.f.grid;
        const auto dir = scenario_dir(cfg, c.scenario);
        OutputSet files;
        if (!cfg.x) {
            files.add(dir / "traces.csv",
                      render([&](std::ostream& os) { write_trace_csv(os, c.p, c.p_theta); }));
        } else {
            const double x = *cfg.x;
            if (!(x > g.alpha() && x <= g.beta()))
                throw InvalidArgument("--x must lie in (alpha, beta] = (" + format_number(g.alpha()) +
                                      ", " + format_number(g.beta()) + "]");
            const std::size_t j = std::max<std::size_t>(1, g.nearest_column(x));
            const auto tilde = theta_time_trace(c.p, c.p_theta, j);
            files.add(dir / ("time_trace_x" + format_number(x) + ".csv"), render([&](std::ostream& os) {
                          // Fluxes through the column, left to right: -d_t P.
                          os << "t,x,tr_brho,tr_brhotheta,theta_tilde\n";
                          for (std::size_t i = 0; i + 1 < g.nt(); ++i) {
                              const double a = -(c.p(i + 1, j) - c.p(i, j)) / g.dt();
                              const double b = -(c.p_theta(i + 1, j) - c.p_theta(i, j)) / g.dt();
                              os << format_number(g.t(i)) << ',' << format_number(g.x(j)) << ','
                                 << format_number(a) << ',' << format_number(b) << ','
                                 << format_number(tilde[i]) << '\n';
                          }
                      }));
            double tv = 0.0;
            for (std::size_t i = 1; i < tilde.size(); ++i) tv += std::abs(tilde[i] - tilde[i - 1]);
            log << c.scenario.label << ": time trace at x = " << format_number(g.x(j))
                << ", total variation " << number(tv) << "\n";
        }
        files.commit(cfg.force);
        for (const auto& p : files.paths()) log << "  wrote " << p.string() << "\n";
        return 0;
    });
}

int command_compare(const RunConfig& cfg, std::ostream& out) {
    const auto ns = expand_mollifier(cfg.mollifier_n);
    if (ns.empty()) throw InvalidArgument("no usable mollifier index");
    return for_each_scenario(cfg, out, [&](const std::string& name, std::ostream& log) {
        const auto c = solve_case(name, cfg);
        const auto& g = c.f.grid;
        const double norm = l1_norm(c.sol.rho_theta, g);
        const auto dir = scenario_dir(cfg, c.scenario);
        OutputSet files;
        std::vector<GridField> oracle;
        ordered_json rows = ordered_json::array();
        std::vector<double> dist;
        log << c.scenario.label << " (" << g.nt() << "x" << g.nx() << ")\n"
            << "     n   L1 distance     relative     |h_n|_L1\n";
        for (const int n : ns) {
            const auto mp = mollify(c.f, c.p, c.scenario.boundary, n, c.scenario.positive_b);
            auto sm = solve_smooth(mp);
            const double d = l1_distance(c.sol.rho_theta, sm.rho_theta_n, g);
            const double rel = norm > 0 ? d / norm : d;
            dist.push_back(d);
            log << std::setw(6) << n << std::setw(14) << number(d) << std::setw(13) << number(rel)
                << std::setw(13) << number(mp.h_l1) << "\n";
            rows.push_back({{"n", n}, {"l1_distance", d}, {"relative", rel}, {"h_l1", mp.h_l1},
                            {"bn_sup", mp.bn_sup}});
            files.add(dir / ("oracle_n" + std::to_string(n) + ".csv"), render([&](std::ostream& os) {
                          write_solution_csv(os, g, mp.rho_n, mp.b_n, sm.theta_n, sm.rho_theta_n,
                                             "oracle_n=" + std::to_string(n));
                      }));
            oracle.push_back(std::move(sm.rho_theta_n));
        }
        files.add(dir / "compare.csv", render([&](std::ostream& os) {
                      os << "t,x,rho_theta";
                      for (const int n : ns) os << ",rho_theta_n" << n;
                      os << '\n';
                      for (std::size_t i = 0; i < g.nt(); ++i)
                          for (std::size_t j = 0; j < g.nx(); ++j) {
                              os << format_number(g.t(i)) << ',' << format_number(g.x(j)) << ','
                                 << format_number(c.sol.rho_theta(i, j));
                              for (const auto& o : oracle) os << ',' << format_number(o(i, j));
                              os << '\n';
                          }
                  }));
        bool monotone = true;
        for (std::size_t k = 0; k + 1 < dist.size(); ++k) monotone = monotone && dist[k + 1] <= dist[k];
        const double final_rel = norm > 0 ? dist.back() / norm : dist.back();
        const double threshold = c.scenario.oracle_threshold;
        const bool ok = monotone && final_rel <= threshold;
        ordered_json j;
        j["scenario"] = c.scenario.label;
        j["norm_rho_theta"] = norm;
        j["threshold"] = threshold;
        j["monotone"] = monotone;
        j["passed"] = ok;
        j["runs"] = rows;
        files.add(dir / "compare.json", j.dump(2) + "\n");
        files.commit(cfg.force);
        log << "  " << (monotone ? "non-increasing" : "NOT monotone") << ", final relative "
            << number(final_rel) << (final_rel <= threshold ? " <= " : " > ") << number(threshold)
            << (ok ? "  PASS" : "  FAIL") << "\n";
        for (const auto& p : files.paths()) log << "  wrote " << p.string() << "\n";
        return ok ? 0 : 1;
    });
}

int command_verify(const RunConfig& cfg, std::ostream& out) {
    verify::SuiteOptions opts;
    if (cfg.resolution_set) opts.resolution = cfg.nx;
    opts.jobs = cfg.jobs;
    for (const auto& name : cfg.scenarios)
        if (!is_builtin(name)) opts.extra_scenarios.push_back(load_scenario(name, cfg));

    bool any = false;
    for (const auto& c : verify::criteria()) any = any || verify::selected_by(cfg.only, c.id);
    if (!any) throw InvalidArgument("no criterion matches '" + cfg.only + "'");

    const auto results = verify::run_criteria(opts, cfg.only);
    std::size_t passed = 0;
    for (const auto& r : results) {
        out << verify::format_result(r) << "\n";
        passed += r.passed ? 1 : 0;
    }
    out << passed << "/" << results.size() << " criteria passed\n";
    return passed == results.size() ? 0 : 1;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
        case Command::run: return command_run(cfg, out);
        case Command::verify: return command_verify(cfg, out);
        case Command::compare: return command_compare(cfg, out);
        case Command::traces: return command_traces(cfg, out);
    }
    return 2;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(parse_args(args), out);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        err << "error: " << e.what() << " (value " << e.value() << ")\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace transport1d::cli
