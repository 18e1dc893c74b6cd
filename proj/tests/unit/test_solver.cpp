#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "helpers.hpp"
#include "transport1d/error.hpp"
#include "transport1d/solver.hpp"

using namespace transport1d;
using namespace t1d_test;

namespace {

double l1_error(const Solution& sol, const FieldPair& f,
                const std::function<double(double, double)>& exact) {
    const auto& g = sol.grid;
    double e = 0.0;
    for (std::size_t i = 0; i < g.nt(); ++i)
        for (std::size_t j = 0; j < g.nx(); ++j) {
            const double w = (i == 0 || i + 1 == g.nt() ? 0.5 : 1.0) * (j == 0 || j + 1 == g.nx() ? 0.5 : 1.0);
            e += w * f.rho(i, j) * std::abs(sol.theta(i, j) - exact(g.t(i), g.x(j)));
        }
    return e * g.dt() * g.dx();
}

BoundaryData data_of(const Domain& d, std::function<double(double)> th0,
                     std::function<double(double)> bar, std::function<double(double)> under) {
    return {Profile::analytic(std::move(th0), d.alpha, d.beta), Profile::analytic(std::move(bar), 0.0, d.T),
            Profile::analytic(std::move(under), 0.0, d.T)};
}

}  // namespace

TEST(TildeQ, StationaryFieldIntegratesInitialDatum) {
    const Domain d{1.0, 0.0, 2.0};
    const auto data = data_of(d, [](double x) { return std::cos(x); }, [](double) { return 0.0; },
                              [](double) { return 0.0; });
    const auto s = drift(0.0, d, data);
    const auto r = run(s, 65, 129);
    const auto& g = r.f.grid;
    for (const std::size_t i : {0u, 20u, 64u})
        for (std::size_t j = 0; j < g.nx(); j += 16)
            EXPECT_NEAR(r.sol.q_tilde(i, j), std::sin(g.x(j)), g.dx() * g.dx()) << i << "," << j;
    EXPECT_NEAR(tilde_q_value(r.p, r.f, data, 0.5, 1.3), std::sin(1.3), g.dx() * g.dx());
}

TEST(TildeQ, UnitDataReproducesPotential) {
    const Domain d{1.0, 0.0, 2.0};
    const auto s = drift(0.8, d, constant_data(d, 1, 1, 1));
    const auto r = run(s, 65, 65);
    const auto& g = r.f.grid;
    for (std::size_t i = 0; i < g.nt(); ++i)
        for (std::size_t j = 0; j < g.nx(); ++j)
            ASSERT_NEAR(r.sol.q_tilde(i, j), g.x(j) - 0.8 * g.t(i), 1e-10);
}

TEST(TildeQ, BoundaryFedValueIsTraceIntegral) {
    const Domain d{1.0, 0.0, 2.0};
    const auto data = data_of(d, [](double) { return 1.0; }, [](double t) { return t; },
                              [](double) { return 1.0; });
    const auto s = drift(1.0, d, data);
    const auto f = sample_scenario(s, scenario_grid(s, 129, 129));
    const auto p = build_potential(f);
    // t* = 0.75 - 0.25 = 0.5; integral of (-1) * tau over [0, 0.5].
    EXPECT_NEAR(tilde_q_value(p, f, data, 0.75, 0.25), -0.125, 1e-9);
    EXPECT_NEAR(tilde_q_value(p, f, data, 1.0, 0.4), -0.5 * 0.36, 1e-9);
    EXPECT_THROW(tilde_q_value(p, f, data, 0.7001, 0.25), InvalidArgument);
    EXPECT_THROW(tilde_q_value(p, f, data, 0.75, 2.5), InvalidArgument);
}

TEST(Solve, StationaryKeepsInitialDatum) {
    const Domain d{1.0, 0.0, 1.0};
    const auto data = data_of(d, [](double x) { return x * x - 0.3; }, [](double) { return 5.0; },
                              [](double) { return -5.0; });
    const auto r = run(drift(0.0, d, data), 33, 65);
    // The wall columns sit on the division points, where values are fixed by continuity only.
    for (std::size_t i = 0; i < 33; ++i)
        for (std::size_t j = 1; j + 1 < 65; ++j) {
            const double x = r.f.grid.x(j);
            ASSERT_NEAR(r.sol.theta(i, j), x * x - 0.3, 1e-12);
        }
    EXPECT_EQ(r.sol.slabs.size(), 1u);
}

TEST(Solve, OscillatingVelocitySplitsAtFlowLine) {
    const auto s = builtin_scenario("oscillating-sign");
    const auto r = run(s, 257, 257);
    const auto& g = r.f.grid;
    const double band = 2 * g.dx() + r.f.b_sup * g.dt();
    std::size_t checked = 0;
    for (std::size_t i = 0; i < g.nt(); ++i)
        for (std::size_t j = 0; j < g.nx(); ++j) {
            const double X = a_osc(g.t(i));
            if (std::abs(g.x(j) - X) <= band) continue;
            ASSERT_EQ(r.sol.theta(i, j), g.x(j) < X ? -1.0 : 1.0) << i << "," << j;
            ++checked;
        }
    EXPECT_GT(checked, g.nt() * g.nx() * 9 / 10);
}

TEST(Solve, TranslatedStep) {
    const Domain d{1.0, 0.0, 2.0};
    const double c = 1.0, x0 = 0.5;
    const auto data = data_of(d, [x0](double x) { return x > x0 ? 1.0 : 0.0; }, [](double) { return 0.0; },
                              [](double) { return 0.0; });
    const auto r = run(drift(c, d, data), 257, 257);
    const double err = l1_error(r.sol, r.f, [&](double t, double x) { return x > x0 + c * t ? 1.0 : 0.0; });
    EXPECT_LE(err, 4 * r.f.grid.dx() * (1 + c * d.T));
}

TEST(Solve, ManySlabsMatchExactSolution) {
    // Domain of length 0.5 with unit speed: slabs of duration 0.25.
    const Domain d{1.0, 0.0, 0.5};
    const auto th0 = [](double x) { return std::sin(2 * std::numbers::pi * x); };
    const auto bar = [](double t) { return std::cos(3 * t); };
    const auto data = data_of(d, th0, bar, [](double) { return 0.0; });
    const auto r = run(drift(1.0, d, data), 257, 129);
    EXPECT_EQ(r.sol.slabs.size(), 4u);
    for (std::size_t k = 1; k < r.sol.slabs.size(); ++k) EXPECT_EQ(r.sol.slabs[k].lo, r.sol.slabs[k - 1].hi);
    const double err = l1_error(r.sol, r.f, [&](double t, double x) { return x > t ? th0(x - t) : bar(t - x); });
    EXPECT_LE(err, 4 * r.f.grid.dx());
    EXPECT_LE(potential_consistency(r.sol, r.p_theta), 4 * (r.f.grid.dx() + r.f.grid.dt()));
}

TEST(Solve, SolutionInvariants) {
    for (const auto& name : builtin_names()) {
        const auto s = builtin_scenario(name);
        const auto r = run(s, 129, 129);
        EXPECT_EQ(r.sol.linf_bound, s.boundary.linf());
        for (std::size_t k = 0; k < r.sol.theta.data().size(); ++k) {
            ASSERT_LE(std::abs(r.sol.theta.data()[k]), r.sol.linf_bound + 1e-10) << name;
            ASSERT_EQ(r.sol.rho_theta.data()[k], r.f.rho.data()[k] * r.sol.theta.data()[k]);
        }
        ASSERT_EQ(r.sol.division.size(), r.f.grid.nt());
        for (const auto& dp : r.sol.division) EXPECT_LE(dp.x_alpha, dp.x_beta) << name;
    }
}

TEST(Solve, Deterministic) {
    const auto s = builtin_scenario("vacuum-patch");
    const auto a = run(s, 129, 129);
    const auto b = run(s, 129, 129);
    const auto& x = a.sol.theta.data();
    const auto& y = b.sol.theta.data();
    ASSERT_EQ(x.size(), y.size());
    EXPECT_EQ(std::memcmp(x.data(), y.data(), x.size() * sizeof(double)), 0);
    EXPECT_EQ(std::memcmp(a.sol.q_tilde.data().data(), b.sol.q_tilde.data().data(), x.size() * sizeof(double)), 0);
}

TEST(Solve, InitialRowReproducesDatum) {
    const auto s = builtin_scenario("positive-b");
    for (const std::size_t n : {65u, 129u}) {
        const auto r = run(s, n, n);
        const auto& g = r.f.grid;
        double l1 = 0.0;
        for (std::size_t j = 0; j + 1 < g.nx(); ++j) {
            const double dq = (r.sol.q_tilde(0, j + 1) - r.sol.q_tilde(0, j)) / g.dx();
            const double xm = g.x(j) + 0.5 * g.dx();
            l1 += std::abs(dq - s.rho(0.0, xm) * s.boundary.theta0(xm)) * g.dx();
        }
        EXPECT_LE(l1, g.dx()) << n;
    }
}

TEST(Solve, EvaluateRejectsOutsidePoints) {
    const auto s = builtin_scenario("constant-drift");
    const auto f = sample_scenario(s, scenario_grid(s, 33, 33));
    const auto p = build_potential(f);
    const CharacteristicSolver cs(f, p, s.boundary);
    EXPECT_THROW(cs.evaluate(40, 1.0), InvalidArgument);
    EXPECT_THROW(cs.evaluate(3, -0.1), InvalidArgument);
    const auto v = cs.evaluate(16, 0.2);
    EXPECT_EQ(v.foot, Foot::left);
    EXPECT_NEAR(v.foot_time, 0.3, 1e-9);
}

TEST(TimeTrace, PositiveVelocityStaysInDataRange) {
    const auto s = builtin_scenario("positive-b");
    const auto r = run(s, 257, 257);
    const double lo = std::min(s.boundary.theta0.min_value(), s.boundary.theta_bar.min_value());
    const double hi = std::max(s.boundary.theta0.max_value(), s.boundary.theta_bar.max_value());
    for (const std::size_t j : {64u, 128u, 256u}) {
        const auto tr = theta_time_trace(r.p, r.p_theta, j);
        ASSERT_EQ(tr.size(), 256u);
        for (const double v : tr) {
            EXPECT_GE(v, lo - 1e-8) << j;
            EXPECT_LE(v, hi + 1e-8) << j;
        }
    }
}

TEST(TimeTrace, HoldsValueWhereFluxVanishes) {
    const Domain d{1.0, 0.0, 1.0};
    const auto data = data_of(d, [](double x) { return x; }, [](double) { return 0.0; }, [](double) { return 0.0; });
    const auto r = run(drift(0.0, d, data), 17, 17);
    for (const double v : theta_time_trace(r.p, r.p_theta, 8)) EXPECT_EQ(v, 0.0);
}

TEST(BoundaryCondition, ConstantDriftInflow) {
    const Domain d{1.0, 0.0, 2.0};
    const double c = 0.9;
    const auto data = data_of(d, [](double x) { return 1.0 + 0.2 * x; }, [](double) { return 1.0; },
                              [](double) { return 3.0; });
    const auto r = run(drift(c, d, data), 129, 129);
    const auto& g = r.f.grid;
    const auto left = check_boundary_condition(r.p, r.p_theta, data, Side::left);
    EXPECT_NEAR(left.active_measure, 1.0, 1e-12);
    EXPECT_LE(left.mismatch, 10 * (g.dx() + g.dt()) * d.T * c);
    const auto right = check_boundary_condition(r.p, r.p_theta, data, Side::right);
    EXPECT_EQ(right.active_measure, 0.0);
    EXPECT_EQ(right.mismatch, 0.0);
}

TEST(BoundaryCondition, OutflowOnlyAtRightForNonNegativeVelocity) {
    const auto s = builtin_scenario("positive-b");
    const auto r = run(s, 129, 129);
    const auto right = check_boundary_condition(r.p, r.p_theta, s.boundary, Side::right);
    EXPECT_EQ(right.active_measure, 0.0);
    EXPECT_EQ(right.mismatch, 0.0);
}

TEST(BoundaryCondition, VacuumAtBoundaryIsVacuous) {
    const Domain d{1.0, 0.0, 1.0};
    const auto s = analytic(
        "vac-wall", d, [](double, double x) { return x < 0.25 ? 0.0 : 1.0; },
        [](double, double x) { return x < 0.25 ? 0.5 : 0.0; }, constant_data(d, 1, 2, 3));
    const auto r = run(s, 65, 65);
    for (const Side side : {Side::left, Side::right}) {
        const auto rep = check_boundary_condition(r.p, r.p_theta, s.boundary, side);
        EXPECT_EQ(rep.active_measure, 0.0);
        EXPECT_EQ(rep.mismatch, 0.0);
    }
}

TEST(RenormalizedTrace, IdentityIsExact) {
    for (const auto& name : builtin_names()) {
        const auto r = run(builtin_scenario(name), 129, 129);
        for (const Side side : {Side::left, Side::right}) {
            const auto rep = renormalized_trace_check(r.sol, r.f, r.p, [](double v) { return v; }, side);
            EXPECT_LE(rep.mismatch, 1e-12) << name;
            EXPECT_LE(rep.degenerate_excess, 0.0) << name;
        }
    }
}

TEST(RenormalizedTrace, SquareOnConstantDrift) {
    const auto s = builtin_scenario("constant-drift");
    const auto r = run(s, 257, 257);
    const auto& g = r.f.grid;
    const double sup = s.boundary.theta_bar.sup_norm();
    const auto rep = renormalized_trace_check(r.sol, r.f, r.p, [](double v) { return v * v; }, Side::left);
    EXPECT_LE(rep.mismatch, 20 * (g.dx() + g.dt()) * g.T() * 1.0 * sup * sup);
    EXPECT_GT(rep.active_measure, 0.99);
}

TEST(RenormalizedTrace, AbsoluteValueOnOscillatingField) {
    const auto s = builtin_scenario("oscillating-sign");
    const auto r = run(s, 257, 257);
    const auto& g = r.f.grid;
    const auto rep = renormalized_trace_check(r.sol, r.f, r.p, [](double v) { return std::abs(v); }, Side::left);
    EXPECT_LE(rep.mismatch, 20 * (g.dx() + g.dt()) * g.T() * r.f.b_sup);
}

TEST(TraceDomination, BuiltinsAreDominated) {
    for (const auto& name : builtin_names()) {
        const auto r = run(builtin_scenario(name), 129, 129);
        for (const Side side : {Side::left, Side::right})
            EXPECT_LE(trace_domination_excess(r.f, r.p, r.p_theta, r.sol.linf_bound, side),
                      r.p.lip_t() * r.f.grid.dt() + 1e-10)
                << name;
    }
}

TEST(Comparison, IdenticalDataGiveZero) {
    const auto r = run(builtin_scenario("positive-b"), 65, 65);
    EXPECT_EQ(comparison_check(r.sol, r.sol, r.f), 0.0);
}

TEST(Comparison, ShiftedDataShiftSolution) {
    const Domain d{1.0, 0.0, 2.0};
    const auto th0 = [](double x) { return std::sin(3 * x); };
    const auto bar = [](double t) { return t < 0.4 ? 0.5 : -0.5; };
    const auto a = run(drift(0.7, d, data_of(d, [&](double x) { return th0(x) + 1; },
                                             [&](double t) { return bar(t) + 1; }, [](double) { return 1.0; })),
                       129, 129);
    const auto b = run(drift(0.7, d, data_of(d, th0, bar, [](double) { return 0.0; })), 129, 129);
    EXPECT_GE(comparison_check(a.sol, b.sol, a.f), 1.0 - 1e-8 * a.sol.linf_bound);
}

TEST(Comparison, OscillatingAboveConstantMinusOne) {
    auto s = builtin_scenario("oscillating-sign");
    const auto a = run(s, 129, 129);
    s.boundary = constant_data(s.domain, -1, -1, -1);
    const auto b = run(s, 129, 129);
    EXPECT_GE(comparison_check(a.sol, b.sol, a.f), -1e-8);
}

TEST(Comparison, GridMismatchRejected) {
    const auto s = builtin_scenario("constant-drift");
    const auto a = run(s, 33, 33);
    const auto b = run(s, 65, 65);
    EXPECT_THROW(comparison_check(a.sol, b.sol, a.f), InvalidArgument);
}

TEST(BvInSpace, ConstantDataHaveNoVariation) {
    const Domain d{1.0, 0.0, 2.0};
    const auto data = constant_data(d, 0.4, 0.4, 0.4);
    const auto r = run(drift(0.5, d, data), 65, 65);
    const auto rep = bv_in_space_check(r.sol, r.f, data);
    EXPECT_EQ(rep.max_tv, 0.0);
    EXPECT_EQ(rep.bound, 0.0);
    EXPECT_TRUE(rep.ok);
}

TEST(BvInSpace, TranslatedJumpOfTwo) {
    const Domain d{1.0, 0.0, 2.0};
    const auto data = data_of(d, [](double x) { return x < 1.0 ? -1.0 : 1.0; }, [](double) { return -1.0; },
                              [](double) { return 1.0; });
    const auto r = run(drift(0.5, d, data), 129, 129);
    const auto rep = bv_in_space_check(r.sol, r.f, data);
    EXPECT_DOUBLE_EQ(rep.bound, 2.0);
    EXPECT_DOUBLE_EQ(rep.max_tv, 2.0);
    EXPECT_TRUE(rep.ok);
}

TEST(BvInSpace, OscillatingDataBound) {
    const auto s = builtin_scenario("oscillating-sign");
    const auto r = run(s, 257, 257);
    const auto rep = bv_in_space_check(r.sol, r.f, s.boundary);
    // TotVar theta0 = 2, boundary data constant and matching theta0 at both ends.
    EXPECT_DOUBLE_EQ(rep.bound, 2.0);
    EXPECT_DOUBLE_EQ(rep.max_tv, 2.0);
    EXPECT_TRUE(rep.ok);
}

TEST(BvInSpace, SkipsVacuumNodes) {
    const auto s = builtin_scenario("vacuum-patch");
    const auto r = run(s, 129, 129);
    const auto rep = bv_in_space_check(r.sol, r.f, s.boundary);
    EXPECT_TRUE(rep.ok) << rep.max_tv << " > " << rep.bound;
    EXPECT_EQ(rep.tv.size(), r.f.grid.nt());
}
