#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>

#include "transport1d/field.hpp"
#include "transport1d/potential.hpp"
#include "transport1d/solver.hpp"

namespace t1d_test {

using namespace transport1d;

inline Scenario analytic(std::string label, Domain d, std::function<double(double, double)> rho,
                         std::function<double(double, double)> b, BoundaryData data) {
    Scenario s;
    s.label = std::move(label);
    s.domain = d;
    s.rho = std::move(rho);
    s.b = std::move(b);
    s.boundary = std::move(data);
    return s;
}

inline BoundaryData constant_data(const Domain& d, double th0, double bar, double under) {
    return {Profile::constant(th0, d.alpha, d.beta), Profile::constant(bar, 0.0, d.T),
            Profile::constant(under, 0.0, d.T)};
}

// rho = 1, b = c on the given domain.
inline Scenario drift(double c, Domain d, BoundaryData data) {
    return analytic("drift", d, [](double, double) { return 1.0; }, [c](double, double) { return c; },
                    std::move(data));
}

inline double a_osc(double t) {
    const double r = 1.0 - t;
    if (r <= 0.0) return 0.0;
    return r * r * std::sin(std::numbers::pi / r);
}

struct Run {
    FieldPair f;
    Potential p;
    Solution sol;
    Potential p_theta;
};

inline Run run(const Scenario& s, std::size_t nt, std::size_t nx) {
    FieldPair f = sample_scenario(s, scenario_grid(s, nt, nx));
    Potential p = build_potential(f);
    Solution sol = solve(p, f, s.boundary);
    Potential pt = build_potential(f, &sol.theta);
    return Run{std::move(f), std::move(p), std::move(sol), std::move(pt)};
}

}  // namespace t1d_test
