#include "transport1d/grid.hpp"

#include <algorithm>
#include <cmath>

#include "transport1d/error.hpp"

namespace transport1d {

SpaceTimeGrid::SpaceTimeGrid(double T, double alpha, double beta, std::size_t nt, std::size_t nx)
    : T_(T), alpha_(alpha), beta_(beta), nt_(nt), nx_(nx),
      dt_(T / static_cast<double>(nt - 1)),
      dx_((beta - alpha) / static_cast<double>(nx - 1)) {}

SpaceTimeGrid SpaceTimeGrid::build(double T, double alpha, double beta,
                                   std::size_t nt, std::size_t nx) {
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("non-positive time extent");
    if (!(beta > alpha) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw InvalidArgument("empty spatial interval: need alpha < beta");
    if (nt < 2) throw InvalidArgument("nt must be >= 2");
    if (nx < 2) throw InvalidArgument("nx must be >= 2");
    return SpaceTimeGrid(T, alpha, beta, nt, nx);
}

std::size_t SpaceTimeGrid::nearest_level(double t) const noexcept {
    const double k = std::round(t / dt_);
    if (!(k > 0.0)) return 0;
    return std::min(nt_ - 1, static_cast<std::size_t>(k));
}

std::size_t SpaceTimeGrid::nearest_column(double x) const noexcept {
    const double k = std::round((x - alpha_) / dx_);
    if (!(k > 0.0)) return 0;
    return std::min(nx_ - 1, static_cast<std::size_t>(k));
}

std::vector<double> GridField::column(std::size_t j) const {
    std::vector<double> out(nt_);
    for (std::size_t i = 0; i < nt_; ++i) out[i] = (*this)(i, j);
    return out;
}

double GridField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace transport1d
