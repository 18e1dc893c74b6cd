#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "transport1d/error.hpp"
#include "transport1d/oracle.hpp"

using namespace transport1d;
using namespace t1d_test;

namespace {

struct Pair {
    FieldPair f;
    Potential p;
};

Pair pair(const Scenario& s, std::size_t n) {
    auto f = sample_scenario(s, scenario_grid(s, n, n));
    auto p = build_potential(f);
    return {std::move(f), std::move(p)};
}

}  // namespace

TEST(Kernel, UnitMassOnOpenInterval) {
    const int m = 20000;
    double mass = 0.0;
    for (int k = 0; k < m; ++k) mass += bump_kernel((k + 0.5) / m) / m;
    EXPECT_NEAR(mass, 1.0, 1e-8);
    EXPECT_EQ(bump_kernel(0.0), 0.0);
    EXPECT_EQ(bump_kernel(1.0), 0.0);
    EXPECT_EQ(bump_kernel(-0.3), 0.0);
    EXPECT_DOUBLE_EQ(bump_kernel(0.5), 30.0 / 16.0);
}

TEST(Extension, ConstantDriftIsContinuous) {
    const Domain d{1.0, 0.0, 2.0};
    const double c = 0.7;
    const auto s = pair(drift(c, d, constant_data(d, 1, 1, 1)), 33);
    const auto e = extend_fields(s.f, s.p);
    for (const double t : {0.0, 0.3, 0.99}) {
        EXPECT_EQ(e.A(t, -1.0), 1.0);
        EXPECT_EQ(e.A(t, 3.0), 1.0);
        EXPECT_NEAR(e.A(t, 1.0), 1.0, 1e-14);
        EXPECT_NEAR(e.B(t, -0.5), c, 1e-12);
        EXPECT_NEAR(e.B(t, 1.1), c, 1e-12);
        EXPECT_NEAR(e.B(t, 2.5), c, 1e-12);
    }
    EXPECT_EQ(e.B(1.5, 1.0), 0.0);
    EXPECT_EQ(e.B(1.5, -1.0), 0.0);
}

TEST(Extension, VacuumNearLeftWall) {
    const Domain d{1.0, 0.0, 1.0};
    const auto s = pair(analytic(
                            "vac", d, [](double, double x) { return x < 0.3 ? 0.0 : 1.0; },
                            [](double t, double x) { return x < 0.3 ? std::cos(9 * t) : 0.0; },
                            constant_data(d, 1, 1, 1)),
                        65);
    const auto e = extend_fields(s.f, s.p);
    for (const double t : {0.0, 0.4, 0.8}) {
        EXPECT_EQ(e.B(t, -0.2), 0.0);
        EXPECT_EQ(e.A(t, -0.2), 1.0);
    }
}

TEST(Extension, FluxDominatedByDensity) {
    for (const auto& name : builtin_names()) {
        const auto s = pair(builtin_scenario(name), 65);
        const auto e = extend_fields(s.f, s.p);
        const double M = std::max(s.f.b_sup, s.f.flux_sup);
        const auto& g = s.f.grid;
        for (double t = 0.0; t <= g.T(); t += 0.07)
            for (double x = g.alpha() - 1.0; x <= g.beta() + 1.0; x += 0.05)
                ASSERT_LE(std::abs(e.B(t, x)), M * std::abs(e.A(t, x)) + 1e-10) << name;
    }
}

TEST(Mollify, ConstantsPositiveRecipe) {
    const Domain d{1.0, 0.0, 2.0};
    const double c = 0.6;
    const auto s = pair(drift(c, d, constant_data(d, 1, 1, 1)), 65);
    for (const int n : {4, 8}) {
        const auto mp = mollify(s.f, s.p, constant_data(d, 1, 1, 1), n, true);
        const auto& g = mp.grid;
        for (std::size_t i = 0; g.t(i) + 1.0 / n + g.dt() <= g.T(); ++i)
            for (std::size_t j = 0; j < g.nx(); ++j) {
                ASSERT_NEAR(mp.rho_n(i, j), 1.0 + 1.0 / n, 1e-12);
                ASSERT_NEAR(mp.b_n(i, j), (c + 1.0 / n) / (1.0 + 1.0 / n), 1e-12);
            }
    }
}

TEST(Mollify, ConstantsBlendedRecipe) {
    const Domain d{1.0, 0.0, 2.0};
    const double c = 0.6;
    const auto s = pair(drift(c, d, constant_data(d, 1, 1, 1)), 65);
    const int n = 8;
    const auto mp = mollify(s.f, s.p, constant_data(d, 1, 1, 1), n, false);
    const auto& g = mp.grid;
    for (std::size_t i = 0; g.t(i) + 1.0 / n + g.dt() <= g.T(); ++i)
        for (std::size_t j = 0; j < g.nx(); ++j) {
            ASSERT_NEAR(mp.rho_n(i, j), 1.0 + 1.0 / n, 1e-12);
            ASSERT_NEAR(mp.b_n(i, j), c / (1.0 + 1.0 / n), 1e-12);
        }
}

TEST(Mollify, DensityBoundedBelowAndSpeedBounded) {
    for (const auto& name : builtin_names()) {
        const auto sc = builtin_scenario(name);
        const auto s = pair(sc, 129);
        const double M = std::max(s.f.b_sup, s.f.flux_sup);
        for (const int n : {4, 8, 16}) {
            const auto mp = mollify(s.f, s.p, sc.boundary, n, sc.positive_b);
            for (const double r : mp.rho_n.data()) ASSERT_GE(r, 1.0 / n - 1e-12) << name;
            // The positive recipe adds 1/n to both A and B; the ratio stays below max(M, 1).
            const double bound = sc.positive_b ? std::max(M, 1.0) : M;
            EXPECT_LE(mp.bn_sup, bound + 1e-8) << name << " n=" << n;
        }
    }
}

TEST(Mollify, BoundaryFluxConvergesToTrace) {
    const auto sc = builtin_scenario("constant-drift");
    const auto s = pair(sc, 257);
    const auto tr = boundary_trace(s.p, Side::left);
    const auto& g = s.f.grid;
    std::vector<double> err;
    for (const int n : {4, 8, 16}) {
        const auto mp = mollify(s.f, s.p, sc.boundary, n, true);
        double e = 0.0;
        for (std::size_t i = 0; i + 1 < g.nt(); ++i) e += std::abs(mp.flux_n(i, 0) + tr[i]) * g.dt();
        err.push_back(e);
    }
    EXPECT_LT(err[1], err[0]);
    EXPECT_LT(err[2], err[1]);
}

TEST(Mollify, RejectsNonPositiveIndex) {
    const auto sc = builtin_scenario("constant-drift");
    const auto s = pair(sc, 33);
    EXPECT_THROW(mollify(s.f, s.p, sc.boundary, 0, true), InvalidArgument);
    EXPECT_THROW(smooth_data(sc.boundary, s.f.grid, 0), InvalidArgument);
}

TEST(SmoothData, ConstantDataUnchanged) {
    const Domain d{1.0, -1.0, 1.0};
    const auto g = SpaceTimeGrid::build(1.0, -1.0, 1.0, 33, 33);
    const auto out = smooth_data(constant_data(d, 0.3, 0.3, 0.3), g, 8);
    for (const Profile* p : {&out.theta0, &out.theta_bar, &out.theta_under})
        for (const double v : p->samples()) EXPECT_NEAR(v, 0.3, 1e-12);
}

TEST(SmoothData, StepVariationBounded) {
    const Domain d{1.0, 0.0, 2.0};
    const auto g = SpaceTimeGrid::build(1.0, 0.0, 2.0, 65, 65);
    const BoundaryData data{Profile::analytic([](double x) { return x < 1.2 ? 0.5 : 1.0; }, 0.0, 2.0),
                            Profile::analytic([](double t) { return t < 0.5 ? 2.0 : -1.0; }, 0.0, 1.0),
                            Profile::constant(1.0, 0.0, 1.0)};
    for (const int n : {4, 16}) {
        const auto out = smooth_data(data, g, n);
        EXPECT_LE(out.theta_bar.total_variation(),
                  data.theta_bar.total_variation() +
                      std::abs(data.theta0.left_limit() - data.theta_bar.left_limit()) + 1e-12);
        EXPECT_LE(out.theta0.total_variation(), data.theta0.total_variation() + 1e-12);
    }
}

TEST(SmoothData, VanishingVariantPadsWithZeros) {
    const Domain d{1.0, 0.0, 2.0};
    const auto g = SpaceTimeGrid::build(1.0, 0.0, 2.0, 65, 65);
    const int n = 8;
    const auto out = smooth_data(constant_data(d, 2, 3, 4), g, n, DataSmoothing::vanishing);
    for (double t = 0.0; t <= 1.0 / n; t += 0.005) {
        EXPECT_EQ(out.theta_bar(t), 0.0);
        EXPECT_EQ(out.theta_under(t), 0.0);
    }
    for (double x = 0.0; x <= 1.0 / n; x += 0.005) EXPECT_EQ(out.theta0(x), 0.0);
    for (double x = 2.0 - 2.0 / n; x <= 2.0; x += 0.005) EXPECT_EQ(out.theta0(x), 0.0);
    EXPECT_NEAR(out.theta0(1.0), 2.0, 1e-12);
}

TEST(SmoothSolve, ConstantSpeedTranslatesStep) {
    const Domain d{1.0, 0.0, 2.0};
    const double c = 0.75, x0 = 0.6;
    const auto g = SpaceTimeGrid::build(1.0, 0.0, 2.0, 129, 129);
    MollifiedProblem mp{1, false, g};
    mp.rho_n = GridField(129, 129, 1.0);
    mp.b_n = GridField(129, 129, c);
    mp.flux_n = mp.b_n;
    mp.data_n = {Profile::analytic([x0](double x) { return x > x0 ? 1.0 : 0.0; }, 0.0, 2.0),
                 Profile::constant(0.0, 0.0, 1.0), Profile::constant(0.0, 0.0, 1.0)};
    const auto sol = solve_smooth(mp);
    GridField exact(129, 129);
    for (std::size_t i = 0; i < 129; ++i)
        for (std::size_t j = 0; j < 129; ++j) exact(i, j) = g.x(j) > x0 + c * g.t(i) ? 1.0 : 0.0;
    EXPECT_LE(l1_distance(sol.theta_n, exact, g), 4 * g.dx());
}

TEST(SmoothSolve, InflowValuesFromBoundary) {
    const Domain d{1.0, 0.0, 1.0};
    const auto g = SpaceTimeGrid::build(1.0, 0.0, 1.0, 65, 65);
    MollifiedProblem mp{1, false, g};
    mp.rho_n = GridField(65, 65, 1.0);
    mp.b_n = GridField(65, 65, -0.5);
    mp.flux_n = mp.b_n;
    mp.data_n = {Profile::constant(1.0, 0.0, 1.0), Profile::constant(5.0, 0.0, 1.0),
                 Profile::analytic([](double t) { return t; }, 0.0, 1.0)};
    const auto sol = solve_smooth(mp);
    // Leftward motion: the right wall feeds x > 1 - 0.5 t, with the entry time t - 2(1 - x).
    EXPECT_NEAR(sol.theta_n(64, 64), 1.0, 1e-12);
    EXPECT_NEAR(sol.theta_n(64, 48), 0.5, 1e-9);
    EXPECT_EQ(sol.theta_n(32, 0), 1.0);
}

TEST(SmoothSolve, StaysWithinDataRange) {
    const auto sc = builtin_scenario("positive-b");
    const auto s = pair(sc, 129);
    const auto mp = mollify(s.f, s.p, sc.boundary, 8, true);
    const auto sol = solve_smooth(mp);
    const double lo = std::min(sc.boundary.theta0.min_value(), sc.boundary.theta_bar.min_value());
    const double hi = std::max(sc.boundary.theta0.max_value(), sc.boundary.theta_bar.max_value());
    for (const double v : sol.theta_n.data()) {
        ASSERT_GE(v, lo - 1e-12);
        ASSERT_LE(v, hi + 1e-12);
    }
}

TEST(Norms, TrapezoidWeights) {
    const auto g = SpaceTimeGrid::build(2.0, -1.0, 2.0, 9, 17);
    EXPECT_NEAR(l1_norm(GridField(9, 17, -1.0), g), 6.0, 1e-12);
    EXPECT_NEAR(l1_distance(GridField(9, 17, 3.0), GridField(9, 17, 1.0), g), 12.0, 1e-12);
}
