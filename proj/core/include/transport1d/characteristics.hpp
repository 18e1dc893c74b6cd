#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "transport1d/potential.hpp"

namespace transport1d {

// Discrete generalized characteristic through (t_bar, x_bar), one position per level.
struct CharCurve {
    double t_bar = 0.0;
    double x_bar = 0.0;
    std::size_t i_bar = 0;
    double h_bar = 0.0;
    std::vector<double> positions;
    double t_star = 0.0;   // last boundary contact before t_bar, or 0
    double t_upper = 0.0;  // first boundary contact after t_bar, or T
    std::optional<Side> collided_at;  // side of the contact at t_star
    std::optional<Side> exited_at;    // side of the contact at t_upper
};

struct ExitEvent {
    double time = 0.0;
    std::optional<Side> side;
    std::size_t level = 0;  // last (backward) or first (forward) level on the boundary
};

// Level-set queries on a potential within the levels [lo, hi].
// Level tolerance: 1e-10 (1 + |h|) plus twice the potential's two-path discrepancy,
// so quadrature drift on plateaus of P is not mistaken for a level change.
class LevelSets {
public:
    LevelSets(const Potential& p, double b_sup);

    const Potential& potential() const noexcept { return *p_; }
    double b_sup() const noexcept { return b_sup_; }

    double level_tolerance(double h) const noexcept;

    // inf{x : P(t_i,x) > h + tol}, interpolated in the crossing cell; +inf if empty.
    double crossing_above(std::size_t i, double h) const noexcept;
    // inf{x : P(t_i,x) >= h - tol}, interpolated; +inf if empty.
    double crossing_at_or_above(std::size_t i, double h) const noexcept;

    double clamp_line(std::size_t i, double t_bar, double x_bar) const noexcept;
    double position(std::size_t i, double h, double t_bar, double x_bar) const noexcept;

    bool alpha_hit(std::size_t i, double h) const noexcept;
    bool beta_hit(std::size_t i, double h, double t_bar, double x_bar) const noexcept;

    // Linear scans, level by level.
    ExitEvent backward_exit(std::size_t i0, double h, double x_bar, std::size_t lo) const;
    ExitEvent forward_exit(std::size_t i0, double h, double x_bar, std::size_t hi) const;

    // Same result as backward_exit in O(log nt) using range max/min tables.
    ExitEvent backward_exit_fast(std::size_t i0, double h, double x_bar, std::size_t lo) const;

private:
    struct SparseTable {
        std::vector<std::vector<double>> levels;
        bool is_max = true;
        void build(std::vector<double> v, bool max);
        double query(std::size_t a, std::size_t b) const noexcept;  // inclusive
    };

    double backward_time(std::size_t hit, bool alpha, double h, double t_bar, double x_bar) const;
    double forward_time(std::size_t hit, bool alpha, double h, double t_bar, double x_bar) const;

    const Potential* p_;
    double b_sup_;
    double noise_;
    std::vector<double> left_, right_;  // P(., alpha), P(., beta)
    SparseTable left_max_, right_min_;
};

// Requires alpha < x_bar < beta and t_bar on a time level.
CharCurve level_curve(const Potential& p, double t_bar, double x_bar, double b_sup);

struct ExitTimes {
    double t_star = 0.0;
    double t_upper = 0.0;
    std::optional<Side> collided_at;
};
ExitTimes exit_times(const CharCurve& c);

struct DivisionPoints {
    double x_alpha = 0.0;
    double x_beta = 0.0;
};
// Bisection over base columns at level t_bar; resolved to one cell.
DivisionPoints division_points(const Potential& p, double t_bar, double b_sup);
DivisionPoints division_points(const LevelSets& ls, std::size_t i0, std::size_t lo);

}  // namespace transport1d
