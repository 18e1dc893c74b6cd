#include "transport1d/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "transport1d/error.hpp"

namespace transport1d {

namespace {

// Normalized weights of the bump on m equal cells, sampled at cell midpoints.
std::vector<double> kernel_weights(std::size_t m) {
    std::vector<double> w(m);
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        w[k] = bump_kernel((static_cast<double>(k) + 0.5) / static_cast<double>(m));
        sum += w[k];
    }
    for (double& v : w) v /= sum;
    return w;
}

// Cells of size h covering width 1/n, at least 4.
std::size_t kernel_cells(int n, double h) {
    const double m = std::round(1.0 / (static_cast<double>(n) * h));
    return std::max<std::size_t>(4, static_cast<std::size_t>(m));
}

double smootherstep(double s) {
    s = std::clamp(s, 0.0, 1.0);
    return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

double bilinear(const GridField& v, const SpaceTimeGrid& g, double t, double x) noexcept {
    const double u = std::clamp(t / g.dt(), 0.0, static_cast<double>(g.nt() - 1));
    const double s = std::clamp((x - g.alpha()) / g.dx(), 0.0, static_cast<double>(g.nx() - 1));
    const auto i = std::min(static_cast<std::size_t>(u), g.nt() - 2);
    const auto j = std::min(static_cast<std::size_t>(s), g.nx() - 2);
    const double a = u - static_cast<double>(i);
    const double c = s - static_cast<double>(j);
    return (1 - a) * ((1 - c) * v(i, j) + c * v(i, j + 1)) +
           a * ((1 - c) * v(i + 1, j) + c * v(i + 1, j + 1));
}

// f* sampled forward over ]s, s + 1/n[ with the bump weights, tabulated on [lo, hi].
template <class Fn>
Profile smooth_profile(Fn padded, double lo, double hi, std::size_t cells, int n) {
    const double h = (hi - lo) / static_cast<double>(cells);
    const std::size_t m = kernel_cells(n, h);
    const auto w = kernel_weights(m);
    const double step = 1.0 / (static_cast<double>(n) * static_cast<double>(m));
    std::vector<double> v(cells + 1);
    for (std::size_t k = 0; k <= cells; ++k) {
        const double s = lo + static_cast<double>(k) * h;
        double acc = 0.0;
        for (std::size_t l = 0; l < m; ++l) acc += w[l] * padded(s + (static_cast<double>(l) + 0.5) * step);
        v[k] = acc;
    }
    return Profile::tabulated(lo, hi, std::move(v));
}

}  // namespace

double bump_kernel(double z) noexcept {
    if (!(z > 0.0 && z < 1.0)) return 0.0;
    const double u = z * (1.0 - z);
    return 30.0 * u * u;
}

ExtendedFields::ExtendedFields(const FieldPair& f, const Potential& p)
    : f_(&f), right_(boundary_trace(p, Side::right)) {
    left_ = boundary_trace(p, Side::left);
    for (double& v : left_) v = -v;
}

ExtendedFields extend_fields(const FieldPair& f, const Potential& p) { return {f, p}; }

double ExtendedFields::interior(const GridField& v, double t, double x, bool flux) const noexcept {
    const auto& g = f_->grid;
    if (!flux) return bilinear(v, g, std::min(t, g.T()), x);
    // b rho at the nodes
    const double u = std::clamp(t / g.dt(), 0.0, static_cast<double>(g.nt() - 1));
    const double s = std::clamp((x - g.alpha()) / g.dx(), 0.0, static_cast<double>(g.nx() - 1));
    const auto i = std::min(static_cast<std::size_t>(u), g.nt() - 2);
    const auto j = std::min(static_cast<std::size_t>(s), g.nx() - 2);
    const double a = u - static_cast<double>(i);
    const double c = s - static_cast<double>(j);
    const auto q = [&](std::size_t ii, std::size_t jj) { return f_->b(ii, jj) * f_->rho(ii, jj); };
    return (1 - a) * ((1 - c) * q(i, j) + c * q(i, j + 1)) +
           a * ((1 - c) * q(i + 1, j) + c * q(i + 1, j + 1));
}

double ExtendedFields::A(double t, double x) const noexcept {
    const auto& g = f_->grid;
    if (x < g.alpha() || x > g.beta()) return 1.0;
    return interior(f_->rho, t, x, false);
}

double ExtendedFields::B(double t, double x) const noexcept {
    const auto& g = f_->grid;
    if (t > g.T()) return 0.0;
    if (x < g.alpha() || x > g.beta()) {
        const auto k = std::min(static_cast<std::size_t>(std::max(0.0, t / g.dt())), left_.size() - 1);
        return x < g.alpha() ? left_[k] : right_[k];
    }
    return interior(f_->b, t, x, true);
}

BoundaryData smooth_data(const BoundaryData& d, const SpaceTimeGrid& g, int n,
                         DataSmoothing variant) {
    if (n < 1) throw InvalidArgument("smoothing index n must be >= 1");
    const double T = g.T(), a = g.alpha(), b = g.beta();
    const double pad = 2.0 / static_cast<double>(n);
    const bool bv = variant == DataSmoothing::bv;
    const double a_lim = d.theta0.left_limit(), b_lim = d.theta0.right_limit();

    const auto boundary = [&](const Profile& p, double corner) {
        return [&p, corner, pad, T, bv](double t) {
            if (t < pad) return bv ? corner : 0.0;
            if (t > T) return bv ? p.right_limit() : 0.0;
            return p(t);
        };
    };
    const auto initial = [&](double x) {
        if (bv) {
            if (x < a) return a_lim;
            if (x > b) return b_lim;
            return d.theta0(x);
        }
        if (x < a + pad || x > b - pad) return 0.0;
        return d.theta0(x);
    };
    BoundaryData out{
        smooth_profile(initial, a, b, 4 * (g.nx() - 1), n),
        smooth_profile(boundary(d.theta_bar, a_lim), 0.0, T, 4 * (g.nt() - 1), n),
        smooth_profile(boundary(d.theta_under, b_lim), 0.0, T, 4 * (g.nt() - 1), n),
    };
    return out;
}

namespace {

// Extended potential on the refined lattice. Rows r >= 0 are times r*ht,
// columns c are x = alpha + (c - pad)*hx. Beyond T it is frozen; outside
// [alpha,beta] it grows with unit slope, so d_x P = 1 and -d_t P is the trace.
struct RefinedPotential {
    std::size_t rows = 0, cols = 0, pad = 0;
    double ht = 0.0, hx = 0.0;
    GridField q;

    double A(std::size_t r, std::size_t c) const { return (q(r, c + 1) - q(r, c)) / hx; }   // at (r, c+1/2)
    double B(std::size_t r, std::size_t c) const { return -(q(r + 1, c) - q(r, c)) / ht; }  // at (r+1/2, c)
};

RefinedPotential refine(const Potential& p, std::size_t extra_rows, std::size_t pad) {
    const auto& g = p.grid();
    RefinedPotential rp;
    rp.ht = g.dt() / 4.0;
    rp.hx = g.dx() / 4.0;
    rp.pad = pad;
    rp.rows = 4 * (g.nt() - 1) + extra_rows + 2;
    rp.cols = 4 * (g.nx() - 1) + 2 * pad + 1;
    rp.q = GridField(rp.rows, rp.cols);
    const std::size_t last_row = 4 * (g.nt() - 1), last_col = 4 * (g.nx() - 1);
    for (std::size_t r = 0; r < rp.rows; ++r) {
        const std::size_t rr = std::min(r, last_row);
        const std::size_t i = std::min(rr / 4, g.nt() - 2);
        const double a = (static_cast<double>(rr) - 4.0 * static_cast<double>(i)) / 4.0;
        const auto at = [&](std::size_t j) { return (1 - a) * p(i, j) + a * p(i + 1, j); };
        for (std::size_t c = 0; c < rp.cols; ++c) {
            double v;
            if (c < pad) {
                v = at(0) - static_cast<double>(pad - c) * rp.hx;
            } else if (c - pad > last_col) {
                v = at(g.nx() - 1) + static_cast<double>(c - pad - last_col) * rp.hx;
            } else {
                const std::size_t cc = c - pad;
                const std::size_t j = std::min(cc / 4, g.nx() - 2);
                const double w = (static_cast<double>(cc) - 4.0 * static_cast<double>(j)) / 4.0;
                v = (1 - w) * at(j) + w * at(j + 1);
            }
            rp.q(r, c) = v;
        }
    }
    return rp;
}

}  // namespace

MollifiedProblem mollify(const FieldPair& f, const Potential& p, const BoundaryData& d, int n,
                         bool positive_b, DataSmoothing variant) {
    if (n < 1) throw InvalidArgument("smoothing index n must be >= 1");
    const auto& g = f.grid;
    const double inv = 1.0 / static_cast<double>(n);
    const double ht = g.dt() / 4.0, hx = g.dx() / 4.0;
    const std::size_t mt = kernel_cells(n, ht), mx = kernel_cells(n, hx);
    const auto wt = kernel_weights(mt);
    const auto wx = kernel_weights(mx);
    const std::size_t pad = mx + 2;
    const auto rp = refine(p, mt, pad);
    const std::size_t fine_rows = 4 * (g.nt() - 1), fine_cols = 4 * (g.nx() - 1);
    const bool two = !positive_b;

    // Density side: values at (4i, c+1/2) for c in [-1, fine_cols], time pass first.
    const std::size_t rho_cols = fine_cols + 2;  // index k <-> c = k - 1
    GridField rho_left(g.nt(), rho_cols), rho_right(g.nt(), rho_cols);
    {
        GridField tpass(g.nt(), rp.cols - 1);
        for (std::size_t i = 0; i < g.nt(); ++i)
            for (std::size_t k = 0; k < mt; ++k) {
                const std::size_t r = 4 * i + k;
                // Rows of P may dip by quadrature noise on vacuum; the density is >= 0.
                for (std::size_t c = 0; c + 1 < rp.cols; ++c) tpass(i, c) += wt[k] * std::max(0.0, rp.A(r, c));
            }
        for (std::size_t i = 0; i < g.nt(); ++i)
            for (std::size_t k = 0; k < rho_cols; ++k) {
                const std::size_t c = pad + k - 1;  // lattice column of c+1/2 in the padded frame
                double l = 0.0, rr = 0.0;
                for (std::size_t s = 0; s < mx; ++s) {
                    l += wx[s] * tpass(i, c - s);
                    if (two) rr += wx[s] * tpass(i, c + s);
                }
                rho_left(i, k) = l;
                rho_right(i, k) = rr;
            }
    }

    // Flux side: values at (r+1/2, 4j) for r in [0, fine_rows), space pass first.
    GridField flux_left(fine_rows, g.nx()), flux_right(fine_rows, g.nx());
    {
        GridField xl(rp.rows - 1, g.nx()), xr(rp.rows - 1, g.nx());
        for (std::size_t r = 0; r + 1 < rp.rows; ++r)
            for (std::size_t j = 0; j < g.nx(); ++j) {
                const std::size_t c = pad + 4 * j;
                double l = 0.0, rr = 0.0;
                for (std::size_t s = 0; s < mx; ++s) {
                    l += wx[s] * rp.B(r, c - s);
                    if (two) rr += wx[s] * rp.B(r, c + s);
                }
                xl(r, j) = l;
                xr(r, j) = rr;
            }
        for (std::size_t r = 0; r < fine_rows; ++r)
            for (std::size_t k = 0; k < mt; ++k)
                for (std::size_t j = 0; j < g.nx(); ++j) {
                    flux_left(r, j) += wt[k] * xl(r + k, j);
                    if (two) flux_right(r, j) += wt[k] * xr(r + k, j);
                }
    }

    // Blend (general recipe) and shift by 1/n.
    const double delta = g.length() / 10.0;
    const auto zeta = [&](double x) {
        return 1.0 - smootherstep((x - g.alpha() - delta) / (g.length() - 2.0 * delta));
    };
    GridField rho_half(g.nt(), rho_cols), flux_half(fine_rows, g.nx());
    for (std::size_t i = 0; i < g.nt(); ++i)
        for (std::size_t k = 0; k < rho_cols; ++k) {
            const double x = g.alpha() + (static_cast<double>(k) - 0.5) * hx;
            const double z = two ? zeta(x) : 1.0;
            rho_half(i, k) = z * rho_left(i, k) + (1.0 - z) * rho_right(i, k) + inv;
        }
    for (std::size_t j = 0; j < g.nx(); ++j) {
        const double z = two ? zeta(g.x(j)) : 1.0;
        for (std::size_t r = 0; r < fine_rows; ++r)
            flux_half(r, j) = z * flux_left(r, j) + (1.0 - z) * flux_right(r, j) + (two ? 0.0 : inv);
    }

    MollifiedProblem mp{n, positive_b, g};
    mp.rho_n = GridField(g.nt(), g.nx());
    mp.flux_n = GridField(g.nt(), g.nx());
    mp.b_n = GridField(g.nt(), g.nx());
    for (std::size_t i = 0; i < g.nt(); ++i)
        for (std::size_t j = 0; j < g.nx(); ++j) {
            mp.rho_n(i, j) = 0.5 * (rho_half(i, 4 * j) + rho_half(i, 4 * j + 1));
            const std::size_t r = 4 * i;
            const double below = r > 0 ? flux_half(r - 1, j) : flux_half(0, j);
            const double above = r < fine_rows ? flux_half(r, j) : flux_half(fine_rows - 1, j);
            mp.flux_n(i, j) = 0.5 * (below + above);
            mp.b_n(i, j) = mp.flux_n(i, j) / mp.rho_n(i, j);
            mp.bn_sup = std::max(mp.bn_sup, std::abs(mp.b_n(i, j)));
        }

    // Divergence over each solver cell from its edge values on the refined lattice.
    double h = 0.0;
    for (std::size_t i = 0; i + 1 < g.nt(); ++i)
        for (std::size_t j = 0; j + 1 < g.nx(); ++j) {
            double acc = 0.0;
            for (std::size_t q = 0; q < 4; ++q) {
                const std::size_t k = 4 * j + q + 1;
                acc += (rho_half(i + 1, k) - rho_half(i, k)) * hx;
                const std::size_t r = 4 * i + q;
                acc += (flux_half(r, j + 1) - flux_half(r, j)) * ht;
            }
            h += std::abs(acc);
        }
    mp.h_l1 = h;
    mp.data_n = smooth_data(d, g, n, variant);
    return mp;
}

SmoothSolution solve_smooth(const MollifiedProblem& mp) {
    const auto& g = mp.grid;
    const auto speed = [&](double t, double x) { return bilinear(mp.b_n, g, t, x); };
    const double h = g.dt() / 4.0;
    SmoothSolution out{GridField(g.nt(), g.nx()), GridField(g.nt(), g.nx())};
    const auto& d = mp.data_n;

    for (std::size_t i = 0; i < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            double t = g.t(i), x = g.x(j);
            double value = 0.0;
            bool done = false;
            for (std::size_t step = 0; step < 4 * i && !done; ++step) {
                const double k1 = speed(t, x);
                const double k2 = speed(t - 0.5 * h, x - 0.5 * h * k1);
                const double k3 = speed(t - 0.5 * h, x - 0.5 * h * k2);
                const double k4 = speed(t - h, x - h * k3);
                const double xn = x - h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                const double tn = t - h;
                if (xn < g.alpha() || xn > g.beta()) {
                    const double edge = xn < g.alpha() ? g.alpha() : g.beta();
                    const double w = (x - edge) / (x - xn);
                    const double tc = t - std::clamp(w, 0.0, 1.0) * h;
                    value = xn < g.alpha() ? d.theta_bar(tc) : d.theta_under(tc);
                    done = true;
                }
                t = tn;
                x = xn;
            }
            if (!done) value = d.theta0(x);
            out.theta_n(i, j) = value;
            out.rho_theta_n(i, j) = mp.rho_n(i, j) * value;
        }
    }
    return out;
}

double l1_norm(const GridField& a, const SpaceTimeGrid& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.nt(); ++i) {
        const double wi = (i == 0 || i + 1 == g.nt()) ? 0.5 : 1.0;
        for (std::size_t j = 0; j < g.nx(); ++j) {
            const double wj = (j == 0 || j + 1 == g.nx()) ? 0.5 : 1.0;
            s += wi * wj * std::abs(a(i, j));
        }
    }
    return s * g.dt() * g.dx();
}

double l1_distance(const GridField& a, const GridField& b, const SpaceTimeGrid& g) {
    GridField d(g.nt(), g.nx());
    for (std::size_t k = 0; k < d.data().size(); ++k) d.data()[k] = a.data()[k] - b.data()[k];
    return l1_norm(d, g);
}

}  // namespace transport1d
