#include "transport1d/characteristics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "transport1d/error.hpp"

namespace transport1d {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double frac(double num, double den) {
    if (!(den != 0.0)) return 0.0;
    return std::clamp(num / den, 0.0, 1.0);
}
}  // namespace

void LevelSets::SparseTable::build(std::vector<double> v, bool max) {
    is_max = max;
    levels.clear();
    levels.push_back(std::move(v));
    const std::size_t n = levels[0].size();
    for (std::size_t w = 1; 2 * w <= n; w *= 2) {
        const auto& prev = levels.back();
        std::vector<double> next(n - 2 * w + 1);
        for (std::size_t k = 0; k < next.size(); ++k)
            next[k] = max ? std::max(prev[k], prev[k + w]) : std::min(prev[k], prev[k + w]);
        levels.push_back(std::move(next));
    }
}

double LevelSets::SparseTable::query(std::size_t a, std::size_t b) const noexcept {
    const std::size_t len = b - a + 1;
    const auto k = static_cast<std::size_t>(std::bit_width(len) - 1);
    const std::size_t w = std::size_t{1} << k;
    const double u = levels[k][a], v = levels[k][b + 1 - w];
    return is_max ? std::max(u, v) : std::min(u, v);
}

LevelSets::LevelSets(const Potential& p, double b_sup)
    : p_(&p), b_sup_(b_sup), noise_(2.0 * p.path_discrepancy()) {
    const auto& g = p.grid();
    left_ = p.values().column(0);
    right_ = p.values().column(g.nx() - 1);
    left_max_.build(left_, true);
    right_min_.build(right_, false);
}

double LevelSets::level_tolerance(double h) const noexcept {
    return 1e-10 * (1.0 + std::abs(h)) + noise_;
}

double LevelSets::crossing_above(std::size_t i, double h) const noexcept {
    const auto& g = p_->grid();
    const auto row = p_->values().row(i);
    const double v = h + level_tolerance(h);
    const auto it = std::upper_bound(row.begin(), row.end(), v);
    if (it == row.end()) return kInf;
    const auto j = static_cast<std::size_t>(it - row.begin());
    if (j == 0) return g.alpha();
    return g.x(j - 1) + frac(h - row[j - 1], row[j] - row[j - 1]) * g.dx();
}

double LevelSets::crossing_at_or_above(std::size_t i, double h) const noexcept {
    const auto& g = p_->grid();
    const auto row = p_->values().row(i);
    const double v = h - level_tolerance(h);
    const auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it == row.end()) return kInf;
    const auto j = static_cast<std::size_t>(it - row.begin());
    if (j == 0) return g.alpha();
    return g.x(j - 1) + frac(h - row[j - 1], row[j] - row[j - 1]) * g.dx();
}

double LevelSets::clamp_line(std::size_t i, double t_bar, double x_bar) const noexcept {
    return x_bar + b_sup_ * std::abs(p_->grid().t(i) - t_bar);
}

double LevelSets::position(std::size_t i, double h, double t_bar, double x_bar) const noexcept {
    const auto& g = p_->grid();
    const double s = std::min(crossing_above(i, h), clamp_line(i, t_bar, x_bar));
    return std::max(g.alpha(), std::min(g.beta(), s));
}

bool LevelSets::alpha_hit(std::size_t i, double h) const noexcept {
    return left_[i] > h + level_tolerance(h);
}

bool LevelSets::beta_hit(std::size_t i, double h, double t_bar, double x_bar) const noexcept {
    return right_[i] <= h + level_tolerance(h) &&
           clamp_line(i, t_bar, x_bar) >= p_->grid().beta();
}

// Time in [t_hit, t_hit+1] where the curve leaves the boundary, walking forward from hit.
double LevelSets::backward_time(std::size_t hit, bool alpha, double h, double t_bar,
                                double x_bar) const {
    const auto& g = p_->grid();
    const double t0 = g.t(hit), t1 = g.t(hit + 1);
    const double tol = level_tolerance(h);
    if (alpha) return t0 + frac(left_[hit] - h, left_[hit] - left_[hit + 1]) * g.dt();
    double ta = t1, tb = t1;
    if (right_[hit + 1] > h + tol)
        ta = t0 + frac(h - right_[hit], right_[hit + 1] - right_[hit]) * g.dt();
    if (clamp_line(hit + 1, t_bar, x_bar) < g.beta() && b_sup_ > 0.0)
        tb = std::clamp(t_bar - (g.beta() - x_bar) / b_sup_, t0, t1);
    return std::min(ta, tb);
}

// Time in [t_hit-1, t_hit] where the curve reaches the boundary.
double LevelSets::forward_time(std::size_t hit, bool alpha, double h, double t_bar,
                               double x_bar) const {
    const auto& g = p_->grid();
    const double t0 = g.t(hit - 1);
    const double t1 = g.t(hit);
    const double tol = level_tolerance(h);
    if (alpha) return t0 + frac(h - left_[hit - 1], left_[hit] - left_[hit - 1]) * g.dt();
    double ta = t0, tb = t0;
    if (right_[hit - 1] > h + tol)
        ta = t0 + frac(right_[hit - 1] - h, right_[hit - 1] - right_[hit]) * g.dt();
    if (clamp_line(hit - 1, t_bar, x_bar) < g.beta() && b_sup_ > 0.0)
        tb = std::clamp(t_bar + (g.beta() - x_bar) / b_sup_, t0, t1);
    return std::max(ta, tb);
}

ExitEvent LevelSets::backward_exit(std::size_t i0, double h, double x_bar, std::size_t lo) const {
    const auto& g = p_->grid();
    const double t_bar = g.t(i0);
    for (std::size_t i = i0; i-- > lo;) {
        const bool a = alpha_hit(i, h);
        if (a || beta_hit(i, h, t_bar, x_bar))
            return {backward_time(i, a, h, t_bar, x_bar), a ? Side::left : Side::right, i};
    }
    return {g.t(lo), std::nullopt, lo};
}

ExitEvent LevelSets::forward_exit(std::size_t i0, double h, double x_bar, std::size_t hi) const {
    const auto& g = p_->grid();
    const double t_bar = g.t(i0);
    for (std::size_t i = i0 + 1; i <= hi; ++i) {
        const bool a = alpha_hit(i, h);
        if (a || beta_hit(i, h, t_bar, x_bar))
            return {forward_time(i, a, h, t_bar, x_bar), a ? Side::left : Side::right, i};
    }
    return {g.t(hi), std::nullopt, hi};
}

ExitEvent LevelSets::backward_exit_fast(std::size_t i0, double h, double x_bar,
                                        std::size_t lo) const {
    const auto& g = p_->grid();
    const double t_bar = g.t(i0);
    if (i0 <= lo) return {g.t(lo), std::nullopt, lo};
    const double v = h + level_tolerance(h);

    // Largest level in [lo, i0-1] with P(., alpha) > v.
    std::optional<std::size_t> ia;
    if (left_max_.query(lo, i0 - 1) > v) {
        std::size_t a = lo, b = i0 - 1;
        while (a < b) {
            const std::size_t mid = (a + b + 1) / 2;
            if (left_max_.query(mid, i0 - 1) > v) a = mid;
            else b = mid - 1;
        }
        ia = a;
    }

    // Levels where the clamp line is still at or beyond beta form a prefix [lo, lim].
    std::optional<std::size_t> ib;
    if (clamp_line(lo, t_bar, x_bar) >= g.beta()) {
        std::size_t a = lo, b = i0 - 1;
        while (a < b) {
            const std::size_t mid = (a + b + 1) / 2;
            if (clamp_line(mid, t_bar, x_bar) >= g.beta()) a = mid;
            else b = mid - 1;
        }
        const std::size_t lim = a;
        if (right_min_.query(lo, lim) <= v) {
            std::size_t c = lo, d = lim;
            while (c < d) {
                const std::size_t mid = (c + d + 1) / 2;
                if (right_min_.query(mid, lim) <= v) c = mid;
                else d = mid - 1;
            }
            ib = c;
        }
    }

    if (!ia && !ib) return {g.t(lo), std::nullopt, lo};
    const bool alpha = ia && (!ib || *ia >= *ib);
    const std::size_t hit = alpha ? *ia : *ib;
    return {backward_time(hit, alpha, h, t_bar, x_bar), alpha ? Side::left : Side::right, hit};
}

CharCurve level_curve(const Potential& p, double t_bar, double x_bar, double b_sup) {
    const auto& g = p.grid();
    if (!(x_bar > g.alpha() && x_bar < g.beta()))
        throw InvalidArgument("interior base point required");
    if (!(t_bar >= 0.0 && t_bar <= g.T()))
        throw InvalidArgument("base time outside [0, T]");
    const std::size_t i0 = g.nearest_level(t_bar);
    if (std::abs(g.t(i0) - t_bar) > 1e-9 * g.dt())
        throw InvalidArgument("base time must lie on a time level");

    LevelSets ls(p, b_sup);
    CharCurve c;
    c.i_bar = i0;
    c.t_bar = g.t(i0);
    c.x_bar = x_bar;
    c.h_bar = p.at(i0, x_bar);
    c.positions.resize(g.nt());
    for (std::size_t i = 0; i < g.nt(); ++i)
        c.positions[i] = ls.position(i, c.h_bar, c.t_bar, x_bar);
    const auto back = ls.backward_exit(i0, c.h_bar, x_bar, 0);
    const auto fwd = ls.forward_exit(i0, c.h_bar, x_bar, g.nt() - 1);
    c.t_star = back.time;
    c.collided_at = back.side;
    c.t_upper = fwd.time;
    c.exited_at = fwd.side;
    return c;
}

ExitTimes exit_times(const CharCurve& c) {
    ExitTimes e{c.t_star, c.t_upper, c.collided_at};
    if (!e.collided_at) e.collided_at = c.exited_at;
    return e;
}

DivisionPoints division_points(const LevelSets& ls, std::size_t i0, std::size_t lo) {
    const auto& p = ls.potential();
    const auto& g = p.grid();
    DivisionPoints d{g.alpha(), g.beta()};
    if (i0 <= lo || g.nx() < 3) return d;
    const auto side_of = [&](std::size_t j) {
        return ls.backward_exit_fast(i0, p(i0, j), g.x(j), lo).side;
    };
    const std::size_t first = 1, last = g.nx() - 2;

    // Columns colliding on the left form a prefix; find the first that does not.
    if (side_of(first) == Side::left) {
        std::size_t a = first, b = last + 1;  // side(a) left, b past the end or not left
        while (b - a > 1) {
            const std::size_t mid = (a + b) / 2;
            if (side_of(mid) == Side::left) a = mid;
            else b = mid;
        }
        d.x_alpha = b > last ? g.beta() : 0.5 * (g.x(a) + g.x(b));
    }
    if (side_of(last) == Side::right) {
        std::size_t a = first - 1, b = last;  // side(b) right, a before the start or not right
        while (b - a > 1) {
            const std::size_t mid = (a + b) / 2;
            if (side_of(mid) == Side::right) b = mid;
            else a = mid;
        }
        d.x_beta = a < first ? g.alpha() : 0.5 * (g.x(a) + g.x(b));
    }
    return d;
}

DivisionPoints division_points(const Potential& p, double t_bar, double b_sup) {
    const auto& g = p.grid();
    const std::size_t i0 = g.nearest_level(t_bar);
    if (std::abs(g.t(i0) - t_bar) > 1e-9 * g.dt())
        throw InvalidArgument("base time must lie on a time level");
    LevelSets ls(p, b_sup);
    return division_points(ls, i0, 0);
}

}  // namespace transport1d
