#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "transport1d/grid.hpp"
#include "transport1d/profile.hpp"

namespace transport1d {

struct Domain {
    double T = 1.0;
    double alpha = 0.0;
    double beta = 1.0;
};

// Node values of a tabulated scenario, on its own lattice.
struct TabulatedField {
    SpaceTimeGrid grid;
    GridField rho;
    GridField b;
};

enum class ScenarioKind { analytic, tabulated };

struct Scenario {
    ScenarioKind kind = ScenarioKind::analytic;
    std::string label;
    Domain domain;
    std::function<double(double, double)> rho;  // (t, x), analytic kind
    std::function<double(double, double)> b;
    std::shared_ptr<const TabulatedField> table;  // tabulated kind
    BoundaryData boundary;
    bool positive_b = false;          // b >= 0 everywhere: single-kernel smoothing
    double oracle_threshold = 0.05;   // relative L1 gate for the smoothed problem
};

// Sampled density and velocity with the diagnostics every later stage needs.
struct FieldPair {
    SpaceTimeGrid grid;
    GridField rho;
    GridField b;
    double residual = 0.0;  // max |D_t rho + D_x(b rho)| * min(dt, dx) over interior nodes
    double b_sup = 0.0;
    double rho_sup = 0.0;
    double flux_sup = 0.0;  // max |b rho|
};

const std::vector<std::string>& builtin_names();
Scenario builtin_scenario(std::string_view name);

// Default admission tolerance 10 (dx^2 + dt^2)(1 + b_sup).
double default_residual_tolerance(const SpaceTimeGrid& g, double b_sup);

double continuity_residual(const GridField& rho, const GridField& b, const SpaceTimeGrid& g);

// Throws NumericalFailure on negative density or a residual above tolerance.
FieldPair sample_scenario(const Scenario& s, const SpaceTimeGrid& g,
                          std::optional<double> tol = std::nullopt);

// Sum of |v[k+1] - v[k]|. Throws InvalidArgument on empty input.
double total_variation(std::span<const double> v);

SpaceTimeGrid scenario_grid(const Scenario& s, std::size_t nt, std::size_t nx);

}  // namespace transport1d
