#include "transport1d/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "transport1d/error.hpp"

namespace transport1d {

namespace {

using std::numbers::pi;

// C^2 ramp from 0 to 1 on [0,1].
double smootherstep(double s) {
    s = std::clamp(s, 0.0, 1.0);
    return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

Scenario constant_drift() {
    Scenario s;
    s.label = "constant-drift";
    s.domain = {1.0, 0.0, 2.0};
    s.rho = [](double, double) { return 1.0; };
    s.b = [](double, double) { return 1.0; };
    s.boundary.theta0 = Profile::analytic(
        [](double x) { return 1.0 + 0.5 * std::cos(0.5 * pi * x); }, 0.0, 2.0);
    s.boundary.theta_bar =
        Profile::analytic([](double t) { return t < 0.5 ? 1.5 : 0.75; }, 0.0, 1.0);
    s.boundary.theta_under = Profile::constant(1.0, 0.0, 1.0);
    s.positive_b = true;
    return s;
}

// Potential 3x - 2.4t + 0.6 sin(2x - t) gives a strictly positive, non-uniform pair.
Scenario positive_b() {
    Scenario s;
    s.label = "positive-b";
    s.domain = {1.0, 0.0, 2.5};
    s.rho = [](double t, double x) { return 3.0 + 1.2 * std::cos(2.0 * x - t); };
    s.b = [](double t, double x) {
        const double c = std::cos(2.0 * x - t);
        return (2.4 + 0.6 * c) / (3.0 + 1.2 * c);
    };
    s.boundary.theta0 = Profile::analytic(
        [](double x) { return 0.6 + 0.25 * std::cos(2.5 * x); }, 0.0, 2.5);
    s.boundary.theta_bar = Profile::analytic(
        [](double t) { return 0.85 - 0.45 * std::sin(0.5 * pi * t); }, 0.0, 1.0);
    s.boundary.theta_under = Profile::constant(0.6, 0.0, 1.0);
    s.positive_b = true;
    return s;
}

// Translating density with a vacuum band; inside the band b is free.
Scenario vacuum_patch() {
    constexpr double c = 0.5;
    const auto profile = [](double xi) {
        if (xi < 1.8 || xi > 2.5) return 3.0;
        if (xi < 2.0) return 3.0 * (1.0 - smootherstep((xi - 1.8) / 0.2));
        if (xi <= 2.3) return 0.0;
        return 3.0 * smootherstep((xi - 2.3) / 0.2);
    };
    Scenario s;
    s.label = "vacuum-patch";
    s.domain = {1.0, 0.0, 4.0};
    s.rho = [profile](double t, double x) { return profile(x - c * t); };
    s.b = [profile](double t, double x) {
        return profile(x - c * t) > 0.0 ? c : -0.75 * std::cos(6.0 * t + 3.0 * x);
    };
    s.boundary.theta0 = Profile::analytic(
        [](double x) { return 1.2 + 0.4 * std::sin(2.0 * x); }, 0.0, 4.0);
    s.boundary.theta_bar =
        Profile::analytic([](double t) { return t < 0.25 ? 1.2 : 0.8; }, 0.0, 1.0);
    s.boundary.theta_under = Profile::constant(1.0, 0.0, 1.0);
    return s;
}

Scenario oscillating_sign() {
    Scenario s;
    s.label = "oscillating-sign";
    s.domain = {1.0, -4.0, 4.0};
    s.rho = [](double, double) { return 1.0; };
    s.b = [](double t, double) {
        if (t >= 1.0) return 0.0;
        const double r = 1.0 - t;
        return -2.0 * r * std::sin(pi / r) + pi * std::cos(pi / r);
    };
    s.boundary.theta0 =
        Profile::analytic([](double x) { return x < 0.0 ? -1.0 : 1.0; }, -4.0, 4.0);
    s.boundary.theta_bar = Profile::constant(-1.0, 0.0, 1.0);
    s.boundary.theta_under = Profile::constant(1.0, 0.0, 1.0);
    s.oracle_threshold = 0.10;
    return s;
}

double bilinear(const TabulatedField& tab, const GridField& f, double t, double x) {
    const auto& g = tab.grid;
    const double u = std::clamp(t / g.dt(), 0.0, static_cast<double>(g.nt() - 1));
    const double v = std::clamp((x - g.alpha()) / g.dx(), 0.0, static_cast<double>(g.nx() - 1));
    const auto i = std::min(static_cast<std::size_t>(u), g.nt() - 2);
    const auto j = std::min(static_cast<std::size_t>(v), g.nx() - 2);
    const double a = u - static_cast<double>(i);
    const double c = v - static_cast<double>(j);
    return (1 - a) * ((1 - c) * f(i, j) + c * f(i, j + 1)) +
           a * ((1 - c) * f(i + 1, j) + c * f(i + 1, j + 1));
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"constant-drift", "vacuum-patch",
                                                "oscillating-sign", "positive-b"};
    return names;
}

Scenario builtin_scenario(std::string_view name) {
    if (name == "constant-drift") return constant_drift();
    if (name == "positive-b") return positive_b();
    if (name == "vacuum-patch") return vacuum_patch();
    if (name == "oscillating-sign") return oscillating_sign();
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw InvalidArgument("unknown scenario '" + std::string(name) + "' (builtins: " + known + ")");
}

SpaceTimeGrid scenario_grid(const Scenario& s, std::size_t nt, std::size_t nx) {
    return SpaceTimeGrid::build(s.domain.T, s.domain.alpha, s.domain.beta, nt, nx);
}

double default_residual_tolerance(const SpaceTimeGrid& g, double b_sup) {
    return 10.0 * (g.dx() * g.dx() + g.dt() * g.dt()) * (1.0 + b_sup);
}

double continuity_residual(const GridField& rho, const GridField& b, const SpaceTimeGrid& g) {
    const std::size_t nt = g.nt(), nx = g.nx();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < nt; ++i) {
        for (std::size_t j = 1; j + 1 < nx; ++j) {
            const double dt_rho = (rho(i + 1, j) - rho(i - 1, j)) / (2.0 * g.dt());
            const double dx_flux =
                (b(i, j + 1) * rho(i, j + 1) - b(i, j - 1) * rho(i, j - 1)) / (2.0 * g.dx());
            worst = std::max(worst, std::abs(dt_rho + dx_flux));
        }
    }
    return worst * std::min(g.dt(), g.dx());
}

FieldPair sample_scenario(const Scenario& s, const SpaceTimeGrid& g, std::optional<double> tol) {
    FieldPair f{g, GridField(g.nt(), g.nx()), GridField(g.nt(), g.nx())};
    if (s.kind == ScenarioKind::tabulated) {
        if (!s.table) throw InvalidArgument("tabulated scenario without table");
        const auto& tg = s.table->grid;
        const double scale = 1e-9 * (1.0 + std::abs(tg.T()) + std::abs(tg.alpha()) +
                                     std::abs(tg.beta()));
        if (std::abs(tg.T() - g.T()) > scale || std::abs(tg.alpha() - g.alpha()) > scale ||
            std::abs(tg.beta() - g.beta()) > scale)
            throw InvalidArgument("grid domain does not match the tabulated scenario");
        const bool same = tg.nt() == g.nt() && tg.nx() == g.nx();
        for (std::size_t i = 0; i < g.nt(); ++i)
            for (std::size_t j = 0; j < g.nx(); ++j) {
                f.rho(i, j) = same ? s.table->rho(i, j) : bilinear(*s.table, s.table->rho, g.t(i), g.x(j));
                f.b(i, j) = same ? s.table->b(i, j) : bilinear(*s.table, s.table->b, g.t(i), g.x(j));
            }
    } else {
        if (!s.rho || !s.b) throw InvalidArgument("analytic scenario without closures");
        for (std::size_t i = 0; i < g.nt(); ++i) {
            const double t = g.t(i);
            for (std::size_t j = 0; j < g.nx(); ++j) {
                const double x = g.x(j);
                f.rho(i, j) = s.rho(t, x);
                f.b(i, j) = s.b(t, x);
            }
        }
    }
    double rho_min = 0.0;
    for (std::size_t k = 0; k < f.rho.data().size(); ++k) {
        const double r = f.rho.data()[k];
        const double v = f.b.data()[k];
        if (!std::isfinite(r) || !std::isfinite(v))
            throw NumericalFailure("non-finite field value", r);
        rho_min = std::min(rho_min, r);
        f.rho_sup = std::max(f.rho_sup, r);
        f.b_sup = std::max(f.b_sup, std::abs(v));
        f.flux_sup = std::max(f.flux_sup, std::abs(v * r));
    }
    if (rho_min < 0.0) throw NumericalFailure("negative density", rho_min);
    f.residual = continuity_residual(f.rho, f.b, g);
    const double limit = tol.value_or(default_residual_tolerance(g, f.b_sup));
    if (f.residual > limit)
        throw NumericalFailure("not nearly incompressible at this resolution", f.residual);
    return f;
}

double total_variation(std::span<const double> v) {
    if (v.empty()) throw InvalidArgument("total variation of an empty sequence");
    double tv = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) tv += std::abs(v[k] - v[k - 1]);
    return tv;
}

}  // namespace transport1d
