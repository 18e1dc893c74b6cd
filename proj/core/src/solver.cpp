#include "transport1d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "transport1d/envelope.hpp"
#include "transport1d/error.hpp"

namespace transport1d {

struct CharacteristicSolver::LevelContext {
    std::size_t i0 = 0;
    std::size_t slab = 0;
    std::size_t lo = 0;
    std::vector<double> upper;   // upper decreasing envelope of P(., alpha) on [lo, i0]
    std::vector<double> lower;   // lower increasing envelope of P(., beta) on [lo, i0]
    std::vector<double> sum_left, sum_right;  // prefix sums of envelope increments times data
    double y_left = 0.0;   // start-level foot of the left case
    double y_right = 0.0;  // start-level foot of the right case
};

CharacteristicSolver::CharacteristicSolver(const FieldPair& f, const Potential& p,
                                           const BoundaryData& data)
    : f_(&f), p_(&p), data_(&data), ls_(p, f.b_sup) {
    const auto& g = f.grid;
    if (!(p.grid() == g)) throw InvalidArgument("potential and fields live on different grids");

    // Curves stay inside one slab only when its duration is at most (beta-alpha)/(2 b_sup).
    std::size_t per = g.nt() - 1;
    if (f.b_sup > 0.0) {
        const double t_max = g.length() / (2.0 * f.b_sup);
        const double levels = std::floor(t_max / g.dt() * (1.0 + 1e-12));
        if (levels < static_cast<double>(per)) per = std::max<std::size_t>(1, static_cast<std::size_t>(levels));
    }
    for (std::size_t lo = 0; lo < g.nt() - 1; lo += per)
        slabs_.push_back({lo, std::min(lo + per, g.nt() - 1), 0.0});
    if (slabs_.empty()) slabs_.push_back({0, g.nt() - 1, 0.0});

    const auto build_f0 = [&](std::size_t s) {
        const std::size_t lo = slabs_[s].lo;
        std::vector<double> acc(g.nx(), 0.0);
        double prev = f.rho(lo, 0) * initial_[s](g.x(0));
        for (std::size_t j = 1; j < g.nx(); ++j) {
            const double cur = f.rho(lo, j) * initial_[s](g.x(j));
            acc[j] = acc[j - 1] + 0.5 * g.dx() * (prev + cur);
            prev = cur;
        }
        f0_.push_back(std::move(acc));
    };

    initial_.push_back(data.theta0);
    build_f0(0);
    for (std::size_t s = 1; s < slabs_.size(); ++s) {
        const std::size_t lo = slabs_[s].lo;
        const auto ctx = context(lo);  // previous slab owns its end level
        std::vector<double> row(g.nx());
        for (std::size_t j = 0; j < g.nx(); ++j) row[j] = evaluate(ctx, g.x(j), p(lo, j)).theta;
        slabs_[s].q_offset = evaluate(ctx, g.alpha(), p(lo, 0)).q_tilde;
        initial_.push_back(Profile::tabulated(g.alpha(), g.x(g.nx() - 1), std::move(row)));
        build_f0(s);
    }
}

std::size_t CharacteristicSolver::slab_of(std::size_t i0) const noexcept {
    for (std::size_t s = 0; s < slabs_.size(); ++s)
        if (i0 <= slabs_[s].hi) return s;
    return slabs_.size() - 1;
}

CharacteristicSolver::LevelContext CharacteristicSolver::context(std::size_t i0) const {
    const auto& g = f_->grid;
    const auto& p = *p_;
    LevelContext c;
    c.i0 = i0;
    c.slab = slab_of(i0);
    c.lo = slabs_[c.slab].lo;
    const std::size_t n = i0 - c.lo + 1;

    std::vector<double> left(n), right(n);
    for (std::size_t k = 0; k < n; ++k) {
        left[k] = p(c.lo + k, 0);
        right[k] = p(c.lo + k, g.nx() - 1);
    }
    auto up = upper_decreasing_envelope(left);
    auto low = lower_increasing_envelope(right);
    c.upper = std::move(up.values);
    c.lower = std::move(low.values);

    c.sum_left.assign(n, 0.0);
    c.sum_right.assign(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double tm = g.t(c.lo + k) + 0.5 * g.dt();
        c.sum_left[k + 1] = c.sum_left[k] + (c.upper[k + 1] - c.upper[k]) * data_->theta_bar(tm);
        c.sum_right[k + 1] = c.sum_right[k] + (c.lower[k + 1] - c.lower[k]) * data_->theta_under(tm);
    }

    // First level where the boundary potential attains its extreme value.
    const double tol_l = ls_.level_tolerance(c.upper[0]);
    const double tol_r = ls_.level_tolerance(c.lower[0]);
    std::size_t kl = 0, kr = 0;
    while (kl + 1 < n && left[kl] < c.upper[0] - tol_l) ++kl;
    while (kr + 1 < n && right[kr] > c.lower[0] + tol_r) ++kr;

    const double t_lo = g.t(c.lo);
    c.y_left = g.alpha();
    if (kl > 0) {
        const double s = std::min(ls_.crossing_above(c.lo, left[kl]),
                                  g.alpha() + f_->b_sup * (g.t(c.lo + kl) - t_lo));
        c.y_left = std::clamp(s, g.alpha(), g.beta());
    }
    c.y_right = g.beta();
    if (kr > 0) c.y_right = std::clamp(ls_.crossing_at_or_above(c.lo, right[kr]), g.alpha(), g.beta());
    return c;
}

double CharacteristicSolver::initial_integral(std::size_t s, double y) const {
    const auto& g = f_->grid;
    const auto& acc = f0_[s];
    const double u = std::clamp((y - g.alpha()) / g.dx(), 0.0, static_cast<double>(g.nx() - 1));
    const auto j = std::min(static_cast<std::size_t>(u), g.nx() - 2);
    const double w = u - static_cast<double>(j);
    const std::size_t lo = slabs_[s].lo;
    const double a = f_->rho(lo, j) * initial_[s](g.x(j));
    const double b = f_->rho(lo, j + 1) * initial_[s](g.x(j + 1));
    const double mid = (1.0 - w) * a + w * b;
    return acc[j] + 0.5 * w * g.dx() * (a + mid);
}

CharacteristicSolver::NodeValue CharacteristicSolver::evaluate(const LevelContext& c,
                                                               double x_bar,
                                                               double h_bar) const {
    const auto& g = f_->grid;
    const double offset = slabs_[c.slab].q_offset;
    NodeValue v;
    if (c.i0 == c.lo) {
        v.theta = initial_[c.slab](x_bar);
        v.q_tilde = offset + initial_integral(c.slab, x_bar);
        v.foot_time = g.t(c.lo);
        v.foot_x = x_bar;
        return v;
    }
    const double t_bar = g.t(c.i0);
    const auto ev = ls_.backward_exit_fast(c.i0, h_bar, x_bar, c.lo);
    if (!ev.side) {
        const double y = ls_.position(c.lo, h_bar, t_bar, x_bar);
        v.theta = initial_[c.slab](y);
        v.q_tilde = offset + initial_integral(c.slab, y);
        v.foot_time = g.t(c.lo);
        v.foot_x = y;
        return v;
    }
    const std::size_t k = ev.level - c.lo;
    const double tk = g.t(ev.level);
    const double w = std::clamp((ev.time - tk) / g.dt(), 0.0, 1.0);
    const double tm = 0.5 * (tk + ev.time);
    v.foot_time = ev.time;
    if (*ev.side == Side::left) {
        const double part = w * (c.upper[k + 1] - c.upper[k]) * data_->theta_bar(tm);
        v.theta = data_->theta_bar(ev.time);
        v.q_tilde = offset + initial_integral(c.slab, c.y_left) + c.sum_left[k] + part;
        v.foot = Foot::left;
        v.foot_x = g.alpha();
    } else {
        const double part = w * (c.lower[k + 1] - c.lower[k]) * data_->theta_under(tm);
        v.theta = data_->theta_under(ev.time);
        v.q_tilde = offset + initial_integral(c.slab, c.y_right) + c.sum_right[k] + part;
        v.foot = Foot::right;
        v.foot_x = g.beta();
    }
    return v;
}

CharacteristicSolver::NodeValue CharacteristicSolver::evaluate(std::size_t i0, double x_bar) const {
    const auto& g = f_->grid;
    if (i0 >= g.nt()) throw InvalidArgument("base level outside the grid");
    if (!(x_bar >= g.alpha() && x_bar <= g.beta())) throw InvalidArgument("base point outside the grid");
    return evaluate(context(i0), x_bar, p_->at(i0, x_bar));
}

CharacteristicSolver::NodeValue CharacteristicSolver::evaluate_node(std::size_t i0,
                                                                    std::size_t j) const {
    return evaluate(context(i0), f_->grid.x(j), (*p_)(i0, j));
}

std::vector<double> CharacteristicSolver::theta_row(std::size_t i0) const {
    const auto& g = f_->grid;
    const auto c = context(i0);
    std::vector<double> out(g.nx());
    for (std::size_t j = 0; j < g.nx(); ++j) out[j] = evaluate(c, g.x(j), (*p_)(i0, j)).theta;
    return out;
}

std::vector<double> CharacteristicSolver::theta_column(std::size_t j) const {
    const auto& g = f_->grid;
    std::vector<double> out(g.nt());
    for (std::size_t i = 0; i < g.nt(); ++i) out[i] = evaluate(context(i), g.x(j), (*p_)(i, j)).theta;
    return out;
}

Solution CharacteristicSolver::solve() const {
    const auto& g = f_->grid;
    Solution sol{g, GridField(g.nt(), g.nx()), GridField(g.nt(), g.nx()), GridField(g.nt(), g.nx())};
    sol.foot.assign(g.nt() * g.nx(), Foot::initial);
    sol.slabs = slabs_;
    sol.linf_bound = data_->linf();
    sol.division.reserve(g.nt());
    for (std::size_t i = 0; i < g.nt(); ++i) {
        const auto c = context(i);
        for (std::size_t j = 0; j < g.nx(); ++j) {
            const auto v = evaluate(c, g.x(j), (*p_)(i, j));
            sol.theta(i, j) = v.theta;
            sol.rho_theta(i, j) = f_->rho(i, j) * v.theta;
            sol.q_tilde(i, j) = v.q_tilde;
            sol.foot[i * g.nx() + j] = v.foot;
        }
        sol.division.push_back(division_points(ls_, i, c.lo));
    }
    return sol;
}

Solution solve(const Potential& p, const FieldPair& f, const BoundaryData& data) {
    return CharacteristicSolver(f, p, data).solve();
}

double tilde_q_value(const Potential& p, const FieldPair& f, const BoundaryData& data,
                     double t_bar, double x_bar) {
    const auto& g = f.grid;
    const std::size_t i0 = g.nearest_level(t_bar);
    if (!(t_bar >= 0.0 && t_bar <= g.T()) || std::abs(g.t(i0) - t_bar) > 1e-9 * g.dt())
        throw InvalidArgument("base time must lie on a time level");
    return CharacteristicSolver(f, p, data).evaluate(i0, x_bar).q_tilde;
}

double potential_consistency(const Solution& sol, const Potential& p_theta) {
    double worst = 0.0;
    const auto& a = sol.q_tilde.data();
    const auto& b = p_theta.values().data();
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

// ---- property checks ----------------------------------------------------

double data_total_variation_bound(const BoundaryData& d) {
    return d.theta0.total_variation() + d.theta_bar.total_variation() +
           d.theta_under.total_variation() +
           std::abs(d.theta_bar.left_limit() - d.theta0.left_limit()) +
           std::abs(d.theta_under.left_limit() - d.theta0.right_limit());
}

BvSpaceReport bv_in_space_check(const Solution& sol, const FieldPair& f, const BoundaryData& d) {
    const auto& g = sol.grid;
    BvSpaceReport r;
    r.bound = data_total_variation_bound(d);
    r.tv.resize(g.nt());
    for (std::size_t i = 0; i < g.nt(); ++i) {
        double tv = 0.0;
        bool have = false;
        double prev = 0.0;
        for (std::size_t j = 0; j < g.nx(); ++j) {
            if (!(f.rho(i, j) > 0.0)) continue;
            if (have) tv += std::abs(sol.theta(i, j) - prev);
            prev = sol.theta(i, j);
            have = true;
        }
        r.tv[i] = tv;
        r.max_tv = std::max(r.max_tv, tv);
    }
    r.ok = r.max_tv <= r.bound + 1e-6 * (1.0 + r.bound);
    return r;
}

double trace_floor(const Potential& p) { return 1e-8 * p.lip_t(); }

std::vector<double> theta_time_trace(const Potential& p, const Potential& p_theta, std::size_t j) {
    const auto& g = p.grid();
    const double floor = trace_floor(p);
    const std::size_t n = g.nt() - 1;
    std::vector<double> out(n, 0.0);
    std::vector<bool> valid(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (p(i + 1, j) - p(i, j)) / g.dt();
        if (std::abs(d) > floor) {
            out[i] = (p_theta(i + 1, j) - p_theta(i, j)) / g.dt() / d;
            valid[i] = true;
        }
    }
    // Hold the previous value; leading gaps take the first valid one.
    std::size_t first = 0;
    while (first < n && !valid[first]) ++first;
    if (first == n) return out;
    for (std::size_t i = 0; i < first; ++i) out[i] = out[first];
    for (std::size_t i = first + 1; i < n; ++i)
        if (!valid[i]) out[i] = out[i - 1];
    return out;
}

BoundaryConditionReport check_boundary_condition(const Potential& p, const Potential& p_theta,
                                                 const BoundaryData& d, Side side) {
    const auto& g = p.grid();
    const auto tr = boundary_trace(p, side);
    const auto tr_theta = boundary_trace(p_theta, side);
    const Profile& datum = side == Side::left ? d.theta_bar : d.theta_under;
    const double floor = trace_floor(p);
    BoundaryConditionReport r;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (!(tr[i] < -floor)) continue;  // only inflow intervals carry a condition
        const double tm = g.t(i) + 0.5 * g.dt();
        r.mismatch += std::abs(tr_theta[i] - tr[i] * datum(tm)) * g.dt();
        r.active_measure += g.dt();
    }
    return r;
}

namespace {

std::vector<double> boundary_flux_jumps(const FieldPair& f, Side side) {
    const auto& g = f.grid;
    const std::size_t j = side == Side::left ? 0 : g.nx() - 1;
    std::vector<double> out(g.nt() - 1);
    for (std::size_t i = 0; i + 1 < g.nt(); ++i)
        out[i] = std::abs(f.b(i + 1, j) * f.rho(i + 1, j) - f.b(i, j) * f.rho(i, j));
    return out;
}

}  // namespace

RenormalizedTraceReport renormalized_trace_check(const Solution& sol, const FieldPair& f,
                                                 const Potential& p,
                                                 const std::function<double(double)>& q,
                                                 Side side) {
    const auto& g = sol.grid;
    GridField qtheta(g.nt(), g.nx());
    double q_sup = 0.0;
    for (std::size_t k = 0; k < qtheta.data().size(); ++k) {
        qtheta.data()[k] = q(sol.theta.data()[k]);
        q_sup = std::max(q_sup, std::abs(qtheta.data()[k]));
    }
    const auto p_theta = build_potential(f, &sol.theta);
    const auto p_q = build_potential(f, &qtheta);
    const auto tr = boundary_trace(p, side);
    const auto tr_theta = boundary_trace(p_theta, side);
    const auto tr_q = boundary_trace(p_q, side);
    const auto jumps = boundary_flux_jumps(f, side);
    const double floor = trace_floor(p);

    RenormalizedTraceReport r;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (std::abs(tr[i]) > floor) {
            r.mismatch += std::abs(tr_q[i] - tr[i] * q(tr_theta[i] / tr[i])) * g.dt();
            r.active_measure += g.dt();
        } else {
            const double bound = q_sup * (std::abs(tr[i]) + 0.5 * jumps[i]) + 1e-12;
            r.degenerate_excess = std::max(r.degenerate_excess, std::abs(tr_q[i]) - bound);
        }
    }
    return r;
}

double trace_domination_excess(const FieldPair& f, const Potential& p, const Potential& p_theta,
                               double theta_linf, Side side) {
    const auto tr = boundary_trace(p, side);
    const auto tr_theta = boundary_trace(p_theta, side);
    const auto jumps = boundary_flux_jumps(f, side);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double bound = theta_linf * (std::abs(tr[i]) + 0.5 * jumps[i]) + 1e-12;
        worst = std::max(worst, std::abs(tr_theta[i]) - bound);
    }
    return worst;
}

double comparison_check(const Solution& a, const Solution& b, const FieldPair& f) {
    if (!(a.grid == b.grid) || !(a.grid == f.grid))
        throw InvalidArgument("solutions live on different grids");
    double worst = std::numeric_limits<double>::infinity();
    const auto& ta = a.theta.data();
    const auto& tb = b.theta.data();
    const auto& r = f.rho.data();
    for (std::size_t k = 0; k < ta.size(); ++k) worst = std::min(worst, r[k] * (ta[k] - tb[k]));
    return worst;
}

}  // namespace transport1d
