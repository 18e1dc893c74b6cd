#pragma once

#include <vector>

#include "transport1d/field.hpp"
#include "transport1d/grid.hpp"

namespace transport1d {

enum class Side { left, right };

// Node values of the potential P with d_x P = rho w, d_t P = -b rho w, P(0,alpha) = 0.
// w is an optional node weight (theta for P_theta).
class Potential {
public:
    const SpaceTimeGrid& grid() const noexcept { return grid_; }
    const GridField& values() const noexcept { return values_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }

    double lip_x() const noexcept { return lip_x_; }  // max |rho w|
    double lip_t() const noexcept { return lip_t_; }  // max |b rho w|
    double path_discrepancy() const noexcept { return path_discrepancy_; }
    bool weighted() const noexcept { return weighted_; }

    // Value at (t_i, x) by linear interpolation along level i.
    double at(std::size_t i, double x) const noexcept;

private:
    friend Potential build_potential(const FieldPair&, const GridField*);
    explicit Potential(const SpaceTimeGrid& g) : grid_(g) {}

    SpaceTimeGrid grid_;
    GridField values_;
    double lip_x_ = 0.0, lip_t_ = 0.0, path_discrepancy_ = 0.0;
    bool weighted_ = false;
};

// Tolerance for the two-path check: 20 * residual * T * (beta-alpha) / min(dt,dx) + 1e-10.
double path_tolerance(const FieldPair& f);

// Trapezoid along t=0 in x, then along each column in t. The opposite order is
// recomputed row by row; for the unweighted potential a mismatch above
// path_tolerance throws NumericalFailure.
Potential build_potential(const FieldPair& f, const GridField* weight = nullptr);

// Forward difference quotients (P(t_{i+1},x_b) - P(t_i,x_b))/dt, nt-1 entries.
// Left: Tr[b rho w](alpha+). Right: -Tr[b rho w](beta-).
std::vector<double> boundary_time_derivative(const Potential& p, Side side);

// Outward-signed normal traces: Tr(alpha+) = dP/dt at alpha, Tr(beta-) = -dP/dt at beta.
std::vector<double> boundary_trace(const Potential& p, Side side);

}  // namespace transport1d
