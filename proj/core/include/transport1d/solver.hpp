#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "transport1d/characteristics.hpp"
#include "transport1d/field.hpp"
#include "transport1d/potential.hpp"
#include "transport1d/profile.hpp"

namespace transport1d {

// Which datum a node's value was read from.
enum class Foot : std::uint8_t { initial, left, right };

// Levels [lo, hi] solved from the row at lo. Consecutive slabs share an end level.
struct Slab {
    std::size_t lo = 0;
    std::size_t hi = 0;
    double q_offset = 0.0;  // Q~ at (t_lo, alpha)
};

struct Solution {
    SpaceTimeGrid grid;
    GridField theta;
    GridField rho_theta;
    GridField q_tilde;
    std::vector<Foot> foot;  // row-major, nt * nx
    std::vector<Slab> slabs;
    std::vector<DivisionPoints> division;  // one per level
    double linf_bound = 0.0;
};

// Constructive solver for theta given rho, b, the potential P of (rho, b) and data.
class CharacteristicSolver {
public:
    CharacteristicSolver(const FieldPair& f, const Potential& p, const BoundaryData& data);

    const std::vector<Slab>& slabs() const noexcept { return slabs_; }
    const LevelSets& level_sets() const noexcept { return ls_; }

    struct NodeValue {
        double theta = 0.0;
        double q_tilde = 0.0;
        Foot foot = Foot::initial;
        double foot_time = 0.0;    // t_* (or slab start for initial feet)
        double foot_x = 0.0;       // gamma(t_lo) for initial feet, boundary abscissa otherwise
    };

    // Arbitrary abscissa on level i0; the level value is interpolated from P.
    NodeValue evaluate(std::size_t i0, double x_bar) const;
    NodeValue evaluate_node(std::size_t i0, std::size_t j) const;

    std::vector<double> theta_row(std::size_t i0) const;
    std::vector<double> theta_column(std::size_t j) const;

    Solution solve() const;

private:
    struct LevelContext;
    LevelContext context(std::size_t i0) const;
    std::size_t slab_of(std::size_t i0) const noexcept;
    NodeValue evaluate(const LevelContext& ctx, double x_bar, double h_bar) const;
    double initial_integral(std::size_t s, double y) const;

    const FieldPair* f_;
    const Potential* p_;
    const BoundaryData* data_;
    LevelSets ls_;
    std::vector<Slab> slabs_;
    std::vector<Profile> initial_;             // theta at each slab's first level
    std::vector<std::vector<double>> f0_;      // cumulative integral of rho*theta on that level
};

Solution solve(const Potential& p, const FieldPair& f, const BoundaryData& data);

// Q~(t_bar, x_bar) for t_bar on a level and alpha <= x_bar <= beta.
double tilde_q_value(const Potential& p, const FieldPair& f, const BoundaryData& data,
                     double t_bar, double x_bar);

// max |Q~ - P_theta| over nodes.
double potential_consistency(const Solution& sol, const Potential& p_theta);

// ---- property checks ----------------------------------------------------

double data_total_variation_bound(const BoundaryData& d);

struct BvSpaceReport {
    std::vector<double> tv;  // per level, over nodes with rho > 0
    double max_tv = 0.0;
    double bound = 0.0;
    bool ok = false;
};
BvSpaceReport bv_in_space_check(const Solution& sol, const FieldPair& f, const BoundaryData& d);

// theta~ at column j: ratio of time difference quotients of P_theta and P, one per
// interval. Where |d_t P| <= floor the previous value is held.
std::vector<double> theta_time_trace(const Potential& p, const Potential& p_theta, std::size_t j);

struct BoundaryConditionReport {
    double mismatch = 0.0;        // L1 over active intervals
    double active_measure = 0.0;  // total length of active intervals
};
double trace_floor(const Potential& p);
BoundaryConditionReport check_boundary_condition(const Potential& p, const Potential& p_theta,
                                                 const BoundaryData& d, Side side);

struct RenormalizedTraceReport {
    double mismatch = 0.0;         // L1 on intervals with |Tr[b rho]| > floor
    double degenerate_excess = 0.0;  // max of |Tr[b rho q(theta)]| above its discrete bound elsewhere
    double active_measure = 0.0;
};
RenormalizedTraceReport renormalized_trace_check(const Solution& sol, const FieldPair& f,
                                                 const Potential& p,
                                                 const std::function<double(double)>& q,
                                                 Side side);

// Largest excess of |Tr[b rho theta]| over ||theta||_inf |Tr[b rho]| + ||theta||_inf |Delta(b rho)|
// per interval; <= 0 means the trace is dominated.
double trace_domination_excess(const FieldPair& f, const Potential& p, const Potential& p_theta,
                               double theta_linf, Side side);

// min over nodes of rho (theta_a - theta_b).
double comparison_check(const Solution& a, const Solution& b, const FieldPair& f);

}  // namespace transport1d
