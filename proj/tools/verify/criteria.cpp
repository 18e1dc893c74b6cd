#include "criteria.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "transport1d/characteristics.hpp"
#include "transport1d/envelope.hpp"
#include "transport1d/error.hpp"
#include "transport1d/oracle.hpp"
#include "transport1d/potential.hpp"
#include "transport1d/solver.hpp"

namespace transport1d::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class... Args>
std::string cat(const Args&... args) {
    std::ostringstream os;
    os << std::setprecision(4);
    (os << ... << args);
    return os.str();
}

// Collects failed sub-checks; the first few end up in the detail line.
struct Checks {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void note(const std::string& s) { notes.push_back(s); }
    CriterionResult result(std::string id) const {
        CriterionResult r{std::move(id), failures.empty(), {}, 0.0};
        const auto& lines = failures.empty() ? notes : failures;
        for (std::size_t k = 0; k < lines.size() && k < 6; ++k)
            r.detail += (k ? "; " : "") + lines[k];
        if (lines.size() > 6) r.detail += cat("; ... (", lines.size() - 6, " more)");
        return r;
    }
};

std::size_t resolution(const SuiteOptions& o, std::size_t fallback) {
    return o.resolution.value_or(fallback);
}

SpaceTimeGrid grid_for(const Scenario& s, const SuiteOptions& o, std::size_t fallback) {
    if (s.kind == ScenarioKind::tabulated && !o.resolution) return s.table->grid;
    const auto n = resolution(o, fallback);
    return scenario_grid(s, n, n);
}

std::vector<Scenario> builtins() {
    std::vector<Scenario> v;
    for (const auto& name : builtin_names()) v.push_back(builtin_scenario(name));
    return v;
}

std::vector<Scenario> builtins_and_extras(const SuiteOptions& o) {
    auto v = builtins();
    v.insert(v.end(), o.extra_scenarios.begin(), o.extra_scenarios.end());
    return v;
}

struct Run {
    FieldPair f;
    Potential p;
    Solution sol;
    Potential p_theta;
};

Run make_run(const Scenario& s, const SpaceTimeGrid& g, const BoundaryData& data) {
    FieldPair f = sample_scenario(s, g);
    Potential p = build_potential(f);
    Solution sol = solve(p, f, data);
    Potential pt = build_potential(f, &sol.theta);
    return Run{std::move(f), std::move(p), std::move(sol), std::move(pt)};
}

Run make_run(const Scenario& s, const SpaceTimeGrid& g) { return make_run(s, g, s.boundary); }

// ---- 1 ------------------------------------------------------------------

CriterionResult env_oracle(const SuiteOptions&) {
    Checks c;
    constexpr int levels = 4;
    std::size_t exhaustive = 0;
    for (std::size_t len = 1; len <= 8; ++len) {
        const auto down = monotone_sequences(len, levels, false);
        const auto up = monotone_sequences(len, levels, true);
        std::size_t codes = 1;
        for (std::size_t k = 0; k < len; ++k) codes *= levels;
        std::vector<int> fi(len);
        std::vector<double> fd(len);
        for (std::size_t code = 0; code < codes; ++code) {
            for (std::size_t k = 0, r = code; k < len; ++k, r /= levels) {
                fi[k] = static_cast<int>(r % levels);
                fd[k] = fi[k];
            }
            const auto bu = brute_upper_envelope(fi, down);
            const auto bl = brute_lower_envelope(fi, up);
            const auto eu = upper_decreasing_envelope(fd);
            const auto el = lower_increasing_envelope(fd);
            for (std::size_t k = 0; k < len; ++k) {
                const bool ok = eu.values[k] == bu[k] && el.values[k] == bl[k] &&
                                eu.contact[k] == (bu[k] == fi[k]) &&
                                el.contact[k] == (bl[k] == fi[k]);
                if (!ok) {
                    c.require(false, cat("envelope differs from brute force, length ", len,
                                         " code ", code));
                    break;
                }
            }
            ++exhaustive;
        }
    }

    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> step(-2, 2);
    std::size_t dichotomy_fail = 0, restriction_fail = 0;
    for (int s = 0; s < 1000; ++s) {
        std::vector<double> f(200);
        // Alternate real noise with quantized walks so ties and plateaus occur.
        if (s % 2 == 0) {
            for (auto& v : f) v = unit(rng);
        } else {
            double w = 0.0;
            for (auto& v : f) v = (w += 0.25 * step(rng));
        }
        const auto eu = upper_decreasing_envelope(f);
        const auto el = lower_increasing_envelope(f);
        bool ok = envelope_dichotomy_holds(f, eu.values, eu.contact, eu.tol) &&
                  envelope_dichotomy_holds(f, el.values, el.contact, el.tol);
        for (std::size_t k = 0; k < f.size() && ok; ++k)
            ok = eu.values[k] >= f[k] && el.values[k] <= f[k] &&
                 (k == 0 || (eu.values[k] <= eu.values[k - 1] && el.values[k] >= el.values[k - 1]));
        if (!ok) ++dichotomy_fail;

        std::vector<std::size_t> contacts;
        for (std::size_t k = 0; k < f.size(); ++k)
            if (eu.contact[k]) contacts.push_back(k);
        std::uniform_int_distribution<std::size_t> pick_k(0, contacts.size() - 1);
        const std::size_t k_star = contacts[pick_k(rng)];
        std::uniform_int_distribution<std::size_t> pick_tau(k_star, f.size() - 1);
        const std::size_t tau = pick_tau(rng);
        const auto rr = envelope_restriction(f, k_star, tau);
        if (!rr.agrees) ++restriction_fail;
    }
    c.require(dichotomy_fail == 0, cat(dichotomy_fail, " random sequences break the dichotomy"));
    c.require(restriction_fail == 0,
              cat(restriction_fail, " random sequences break the restriction property"));
    c.note(cat(exhaustive, " exhaustive sequences, 1000 random"));
    return c.result("ENV-ORACLE");
}

// ---- 2 ------------------------------------------------------------------

CriterionResult char_props(const SuiteOptions& o) {
    Checks c;
    std::mt19937_64 rng(7);
    for (const auto& s : builtins_and_extras(o)) {
        const auto g = grid_for(s, o, 257);
        const auto f = sample_scenario(s, g);
        const auto p = build_potential(f);
        const double B = f.b_sup;
        const double lip_tol = p.lip_x() * 2 * g.dx() + p.lip_t() * g.dt();
        std::uniform_int_distribution<std::size_t> level(1, g.nt() - 2), col(1, g.nx() - 2);
        double worst_a = 0, worst_b = 0, worst_f = 0, worst_h = 0;
        for (int k = 0; k < 200; ++k) {
            const std::size_t i0 = level(rng), j1 = col(rng);
            std::uniform_int_distribution<std::size_t> col2(j1, g.nx() - 2);
            const std::size_t j2 = col2(rng);
            const auto c1 = level_curve(p, g.t(i0), g.x(j1), B);
            const auto c2 = level_curve(p, g.t(i0), g.x(j2), B);
            for (std::size_t i = 0; i + 1 < g.nt(); ++i)
                worst_a = std::max(worst_a, std::abs(c1.positions[i + 1] - c1.positions[i]) -
                                                (B * g.dt() + 2 * g.dx()));
            worst_b = std::max(worst_b, std::abs(c1.positions[i0] - c1.x_bar));
            for (std::size_t i = 0; i < g.nt(); ++i) {
                const double t = g.t(i);
                if (t >= c1.t_star - 1e-12 && t <= c1.t_upper + 1e-12)
                    worst_f = std::max(worst_f, std::abs(p.at(i, c1.positions[i]) - c1.h_bar) - lip_tol);
                worst_h = std::max(worst_h, c1.positions[i] - c2.positions[i] - g.dx());
            }
        }
        const std::string tag = s.label + ": ";
        c.require(worst_a <= 0, cat(tag, "(a) Lipschitz excess ", worst_a));
        c.require(worst_b <= 1e-12 * (1 + std::abs(g.alpha()) + std::abs(g.beta())),
                  cat(tag, "(b) base offset ", worst_b));
        c.require(worst_f <= 0, cat(tag, "(f) level excess ", worst_f));
        c.require(worst_h <= 0, cat(tag, "(h) order excess ", worst_h));
        c.note(cat(tag, "ok"));
    }
    return c.result("CHAR-PROPS");
}

// ---- 3 ------------------------------------------------------------------

CriterionResult sol_linf(const SuiteOptions& o) {
    Checks c;
    std::vector<std::size_t> sizes{129, 257};
    if (o.resolution) sizes = {*o.resolution};
    for (const auto& s : builtins_and_extras(o)) {
        for (const auto n : sizes) {
            SuiteOptions fixed = o;
            fixed.resolution = n;
            const auto g = grid_for(s, s.kind == ScenarioKind::tabulated ? o : fixed, n);
            const auto r = make_run(s, g);
            const double excess = r.sol.theta.max_abs() - r.sol.linf_bound;
            c.require(excess <= 1e-10, cat(s.label, " @", g.nx(), ": |theta| exceeds bound by ", excess));
            if (s.kind == ScenarioKind::tabulated) break;
        }
        c.note(cat(s.label, " ok"));
    }
    return c.result("SOL-LINF");
}

// ---- 4 ------------------------------------------------------------------

CriterionResult sol_uniq(const SuiteOptions& o) {
    Checks c;
    std::vector<std::size_t> sizes{129, 257, 513};
    if (o.resolution) {
        const auto r = *o.resolution;
        sizes = {(r - 1) / 2 + 1, r, 2 * (r - 1) + 1};
    }
    for (const char* name : {"constant-drift", "positive-b"}) {
        const auto s = builtin_scenario(name);
        std::vector<double> cons;
        for (const auto n : sizes) {
            const auto r = make_run(s, scenario_grid(s, n, n));
            cons.push_back(potential_consistency(r.sol, r.p_theta));
        }
        std::string line = cat(name, " C=");
        for (std::size_t k = 0; k < cons.size(); ++k) line += cat(k ? "/" : "", cons[k]);
        for (std::size_t k = 0; k + 1 < cons.size(); ++k)
            c.require(cons[k] >= 1.5 * cons[k + 1],
                      cat(name, ": consistency ratio ", cons[k] / cons[k + 1], " < 1.5 (", line, ")"));
        c.note(line);
    }
    return c.result("SOL-UNIQ");
}

// ---- 5 ------------------------------------------------------------------

CriterionResult sol_bc(const SuiteOptions& o) {
    Checks c;
    for (const auto& s : builtins()) {
        const auto g = grid_for(s, o, 257);
        const auto r = make_run(s, g);
        const double tol = 10 * (g.dx() + g.dt()) * g.T() * r.f.b_sup;
        for (const auto side : {Side::left, Side::right}) {
            const auto rep = check_boundary_condition(r.p, r.p_theta, s.boundary, side);
            const char* sn = side == Side::left ? "left" : "right";
            c.require(rep.mismatch <= tol,
                      cat(s.label, " ", sn, ": mismatch ", rep.mismatch, " > ", tol));
            c.note(cat(s.label, " ", sn, " ", rep.mismatch, "/", tol));
        }
    }
    return c.result("SOL-BC");
}

// ---- 6 ------------------------------------------------------------------

BoundaryData shifted(const BoundaryData& d, double by) {
    const auto shift = [by](const Profile& q) {
        return Profile::analytic([q, by](double s) { return q(s) + by; }, q.lo(), q.hi());
    };
    return {shift(d.theta0), shift(d.theta_bar), shift(d.theta_under)};
}

BoundaryData constant_data(const BoundaryData& d, double v) {
    return {Profile::constant(v, d.theta0.lo(), d.theta0.hi()),
            Profile::constant(v, d.theta_bar.lo(), d.theta_bar.hi()),
            Profile::constant(v, d.theta_under.lo(), d.theta_under.hi())};
}

CriterionResult sol_cmp(const SuiteOptions& o) {
    Checks c;
    struct Pair {
        std::string what;
        Scenario s;
        BoundaryData a, b;
        double expected_min;  // lower bound implied by the data beyond the ordering
    };
    const auto cd = builtin_scenario("constant-drift");
    const auto os = builtin_scenario("oscillating-sign");
    const std::vector<Pair> pairs{
        {"identical data", cd, cd.boundary, cd.boundary, 0.0},
        {"data shifted by 1", cd, shifted(cd.boundary, 1.0), cd.boundary, 1.0},
        {"sign data vs -1", os, os.boundary, constant_data(os.boundary, -1.0), 0.0},
    };
    for (const auto& pr : pairs) {
        const auto g = grid_for(pr.s, o, 257);
        const auto ra = make_run(pr.s, g, pr.a);
        const auto rb = make_run(pr.s, g, pr.b);
        const double linf = std::max(ra.sol.linf_bound, rb.sol.linf_bound);
        const double m = comparison_check(ra.sol, rb.sol, ra.f);
        double rho_min = ra.f.rho.data()[0];
        for (const double v : ra.f.rho.data()) rho_min = std::min(rho_min, v);
        c.require(m >= -1e-8 * linf, cat(pr.what, ": min rho(theta_a - theta_b) = ", m));
        c.require(m >= rho_min * pr.expected_min - 1e-8 * linf,
                  cat(pr.what, ": min ", m, " below ", rho_min * pr.expected_min));
        c.note(cat(pr.what, " min=", m));
    }
    return c.result("SOL-CMP");
}

// ---- 7 ------------------------------------------------------------------

CriterionResult bv_space(const SuiteOptions& o) {
    Checks c;
    for (const char* name : {"positive-b", "oscillating-sign"}) {
        const auto s = builtin_scenario(name);
        const auto r = make_run(s, grid_for(s, o, 513));
        const auto rep = bv_in_space_check(r.sol, r.f, s.boundary);
        c.require(rep.ok, cat(name, ": max TV ", rep.max_tv, " > bound ", rep.bound));
        c.note(cat(name, " ", rep.max_tv, "<=", rep.bound));
    }
    for (const auto& s : o.extra_scenarios) {
        const auto r = make_run(s, grid_for(s, o, 513));
        const auto rep = bv_in_space_check(r.sol, r.f, s.boundary);
        c.require(rep.ok, cat(s.label, ": max TV ", rep.max_tv, " > bound ", rep.bound));
    }
    return c.result("BV-SPACE");
}

// ---- 8 ------------------------------------------------------------------

CriterionResult bv_time(const SuiteOptions& o) {
    Checks c;
    const auto s = builtin_scenario("positive-b");
    const auto r = make_run(s, grid_for(s, o, 257));
    const auto& d = s.boundary;
    const double sum = d.theta0.total_variation() + d.theta_bar.total_variation() +
                       std::abs(d.theta_bar.left_limit() - d.theta0.left_limit());
    const double kappa = std::min(d.theta0.min_value(), d.theta_bar.min_value());
    const double K = std::max(d.theta0.max_value(), d.theta_bar.max_value());
    const auto& g = r.f.grid;
    for (const int q : {1, 2, 3}) {
        const double x = g.alpha() + 0.25 * q * g.length();
        const auto tr = theta_time_trace(r.p, r.p_theta, g.nearest_column(x));
        const double tv = total_variation(tr);
        const auto [lo, hi] = std::minmax_element(tr.begin(), tr.end());
        c.require(tv <= 1.05 * sum, cat("x=", x, ": TV ", tv, " > ", 1.05 * sum));
        c.require(*lo >= kappa - 1e-8 && *hi <= K + 1e-8,
                  cat("x=", x, ": range [", *lo, ",", *hi, "] outside [", kappa, ",", K, "]"));
        c.note(cat("x=", x, " TV ", tv, "<=", 1.05 * sum));
    }
    return c.result("BV-TIME");
}

// ---- 9 ------------------------------------------------------------------

CriterionResult cex_diverge(const SuiteOptions& o) {
    Checks c;
    const auto t0 = Clock::now();
    const auto s = builtin_scenario("oscillating-sign");
    const auto g = grid_for(s, o, 4097);
    const auto f = sample_scenario(s, g);
    const auto p = build_potential(f);
    const CharacteristicSolver cs(f, p, s.boundary);
    const auto col = cs.theta_column(g.nearest_column(0.0));

    // theta(t,0) = -1 while the curve from the origin sits right of 0, +1 otherwise.
    double l1 = 0.0;
    for (std::size_t i = 0; i + 1 < g.nt() && g.t(i + 1) <= 0.95 + 1e-12; ++i) {
        const auto exact = [&](std::size_t k) {
            const double r = 1.0 - g.t(k);
            return r * r * std::sin(std::numbers::pi / r) > 0.0 ? -1.0 : 1.0;
        };
        l1 += 0.5 * g.dt() * (std::abs(col[i] - exact(i)) + std::abs(col[i + 1] - exact(i + 1)));
    }
    const double tol = 8 * g.dx() * (1 + f.b_sup);
    c.require(l1 <= tol, cat("L1 error ", l1, " > ", tol));
    std::string tvs;
    for (const int K : {8, 16, 32}) {
        std::vector<double> head;
        for (std::size_t i = 0; i < g.nt() && g.t(i) <= 1.0 - 1.0 / K + 1e-12; ++i)
            head.push_back(col[i]);
        const double tv = total_variation(head);
        c.require(tv >= 2 * (K - 2), cat("K=", K, ": TV ", tv, " < ", 2 * (K - 2)));
        tvs += cat(tvs.empty() ? "" : "/", tv);
    }
    const double secs = seconds_since(t0);
    c.require(secs < 60, cat("runtime ", secs, " s"));
    c.note(cat("L1 ", l1, "<=", tol, ", TV ", tvs, " for K=8/16/32"));
    return c.result("CEX-DIVERGE");
}

// ---- 10 -----------------------------------------------------------------

CriterionResult trace_renorm(const SuiteOptions& o) {
    Checks c;
    const std::vector<std::pair<std::string, std::function<double(double)>>> qs{
        {"s^2", [](double v) { return v * v; }},
        {"|s|", [](double v) { return std::abs(v); }},
        {"s", [](double v) { return v; }},
    };
    for (const char* name : {"constant-drift", "oscillating-sign"}) {
        const auto s = builtin_scenario(name);
        const auto g = grid_for(s, o, 257);
        const auto r = make_run(s, g);
        const double L = r.sol.linf_bound;
        const double tol = 20 * (g.dx() + g.dt()) * g.T() * r.f.b_sup * (1 + L * L);
        double worst = 0.0;
        for (const auto& [qn, q] : qs) {
            for (const auto side : {Side::left, Side::right}) {
                const auto rep = renormalized_trace_check(r.sol, r.f, r.p, q, side);
                const char* sn = side == Side::left ? "left" : "right";
                c.require(rep.mismatch <= tol,
                          cat(name, " q=", qn, " ", sn, ": mismatch ", rep.mismatch, " > ", tol));
                c.require(rep.degenerate_excess <= 0.0,
                          cat(name, " q=", qn, " ", sn, ": degenerate excess ", rep.degenerate_excess));
                worst = std::max(worst, rep.mismatch);
            }
        }
        c.note(cat(name, " worst ", worst, "<=", tol));
    }
    return c.result("TRACE-RENORM");
}

// ---- 11 -----------------------------------------------------------------

CriterionResult oracle_conv(const SuiteOptions& o) {
    Checks c;
    const auto t0 = Clock::now();
    for (const auto& s : builtins()) {
        const auto g = grid_for(s, o, 257);
        const auto r = make_run(s, g);
        const double norm = l1_norm(r.sol.rho_theta, g);
        const double h_slack = 1e-12 * (1 + r.f.rho_sup + r.f.flux_sup) * g.T() * g.length();
        std::vector<double> dist, h;
        for (const int n : {4, 8, 16}) {
            const auto mp = mollify(r.f, r.p, s.boundary, n, s.positive_b);
            const auto sm = solve_smooth(mp);
            dist.push_back(l1_distance(r.sol.rho_theta, sm.rho_theta_n, g));
            h.push_back(mp.h_l1);
        }
        for (std::size_t k = 0; k + 1 < dist.size(); ++k) {
            c.require(dist[k + 1] <= dist[k], cat(s.label, ": distance increases ", dist[k], "->", dist[k + 1]));
            c.require(h[k + 1] <= h[k] + h_slack, cat(s.label, ": |h_n| increases ", h[k], "->", h[k + 1]));
        }
        const double rel = dist.back() / norm;
        c.require(rel <= s.oracle_threshold,
                  cat(s.label, ": relative distance ", rel, " > ", s.oracle_threshold, " at n=16"));
        c.note(cat(s.label, " rel ", dist[0] / norm, "/", dist[1] / norm, "/", rel));
    }
    const double secs = seconds_since(t0);
    c.require(secs < 120, cat("runtime ", secs, " s"));
    return c.result("ORACLE-CONV");
}

// ---- 12 -----------------------------------------------------------------

CriterionResult trace_sign(const SuiteOptions& o) {
    Checks c;
    {
        const auto s = builtin_scenario("positive-b");
        const auto f = sample_scenario(s, grid_for(s, o, 257));
        const auto p = build_potential(f);
        const auto left = boundary_trace(p, Side::left);
        const auto right = boundary_trace(p, Side::right);
        const double lmax = *std::max_element(left.begin(), left.end());
        const double rmin = *std::min_element(right.begin(), right.end());
        c.require(lmax <= 1e-10, cat("positive-b: left trace reaches ", lmax));
        c.require(rmin >= -1e-10, cat("positive-b: right trace reaches ", rmin));
        c.note(cat("positive-b max Tr(alpha+) ", lmax, ", min Tr(beta-) ", rmin));
    }
    for (const auto& s : builtins_and_extras(o)) {
        const auto r = make_run(s, grid_for(s, o, 257));
        const double linf = r.sol.theta.max_abs();
        for (const auto side : {Side::left, Side::right}) {
            const double ex = trace_domination_excess(r.f, r.p, r.p_theta, linf, side);
            c.require(ex <= 0.0, cat(s.label, side == Side::left ? " left" : " right",
                                     ": domination excess ", ex));
        }
    }
    return c.result("TRACE-SIGN");
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> table{
        {"ENV-ORACLE", "envelopes vs brute force; dichotomy and restriction", env_oracle},
        {"CHAR-PROPS", "curve Lipschitz, base, level and order properties", char_props},
        {"SOL-LINF", "maximum principle", sol_linf},
        {"SOL-UNIQ", "potential consistency under refinement", sol_uniq},
        {"SOL-BC", "inflow boundary condition", sol_bc},
        {"SOL-CMP", "comparison principle", sol_cmp},
        {"BV-SPACE", "total variation in space", bv_space},
        {"BV-TIME", "total variation of the time trace", bv_time},
        {"CEX-DIVERGE", "unbounded trace variation for the sign-changing field", cex_diverge},
        {"TRACE-RENORM", "renormalized boundary traces", trace_renorm},
        {"ORACLE-CONV", "agreement with the smoothed problem", oracle_conv},
        {"TRACE-SIGN", "trace signs and domination", trace_sign},
    };
    return table;
}

bool glob_match(const std::string& pattern, const std::string& text) {
    std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

bool selected_by(const std::string& only, const std::string& id) {
    if (only.empty()) return true;
    std::size_t start = 0;
    while (start <= only.size()) {
        const auto comma = std::min(only.find(',', start), only.size());
        if (glob_match(only.substr(start, comma - start), id)) return true;
        start = comma + 1;
    }
    return false;
}

std::vector<CriterionResult> run_criteria(const SuiteOptions& opts, const std::string& only) {
    std::vector<const Criterion*> selected;
    for (const auto& c : criteria())
        if (selected_by(only, c.id)) selected.push_back(&c);

    std::vector<CriterionResult> results(selected.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k; (k = next++) < selected.size();) {
            const auto t0 = Clock::now();
            try {
                results[k] = selected[k]->run(opts);
            } catch (const std::exception& e) {
                results[k] = {selected[k]->id, false, std::string("error: ") + e.what(), 0.0};
            }
            results[k].seconds = seconds_since(t0);
        }
    };
    const std::size_t n = std::clamp<std::size_t>(opts.jobs, 1, std::max<std::size_t>(1, selected.size()));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return results;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(13) << r.id << std::right
       << std::fixed << std::setprecision(2) << std::setw(7) << r.seconds << " s  " << r.detail;
    return os.str();
}

}  // namespace transport1d::verify
