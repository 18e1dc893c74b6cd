#include "transport1d/potential.hpp"

#include <algorithm>
#include <cmath>

#include "transport1d/error.hpp"

namespace transport1d {

double Potential::at(std::size_t i, double x) const noexcept {
    const double u = std::clamp((x - grid_.alpha()) / grid_.dx(), 0.0,
                                static_cast<double>(grid_.nx() - 1));
    const auto j = std::min(static_cast<std::size_t>(u), grid_.nx() - 2);
    const double w = u - static_cast<double>(j);
    return (1.0 - w) * values_(i, j) + w * values_(i, j + 1);
}

double path_tolerance(const FieldPair& f) {
    const auto& g = f.grid;
    return 20.0 * f.residual * g.T() * g.length() / std::min(g.dt(), g.dx()) + 1e-10;
}

Potential build_potential(const FieldPair& f, const GridField* weight) {
    const auto& g = f.grid;
    const std::size_t nt = g.nt(), nx = g.nx();
    if (weight && (weight->nt() != nt || weight->nx() != nx))
        throw InvalidArgument("weight shape does not match the grid");
    const auto w = [&](std::size_t i, std::size_t j) { return weight ? (*weight)(i, j) : 1.0; };
    const auto density = [&](std::size_t i, std::size_t j) { return f.rho(i, j) * w(i, j); };
    const auto flux = [&](std::size_t i, std::size_t j) { return f.b(i, j) * f.rho(i, j) * w(i, j); };

    Potential p(g);
    p.weighted_ = weight != nullptr;
    p.values_ = GridField(nt, nx);
    GridField& q = p.values_;

    for (std::size_t j = 1; j < nx; ++j)
        q(0, j) = q(0, j - 1) + 0.5 * g.dx() * (density(0, j - 1) + density(0, j));
    for (std::size_t i = 1; i < nt; ++i)
        for (std::size_t j = 0; j < nx; ++j)
            q(i, j) = q(i - 1, j) - 0.5 * g.dt() * (flux(i - 1, j) + flux(i, j));

    // Second path: down column alpha (shared with the first), then across each row.
    double worst = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
        double acc = q(i, 0);
        for (std::size_t j = 1; j < nx; ++j) {
            acc += 0.5 * g.dx() * (density(i, j - 1) + density(i, j));
            worst = std::max(worst, std::abs(acc - q(i, j)));
        }
        for (std::size_t j = 0; j < nx; ++j) {
            p.lip_x_ = std::max(p.lip_x_, std::abs(density(i, j)));
            p.lip_t_ = std::max(p.lip_t_, std::abs(flux(i, j)));
        }
    }
    p.path_discrepancy_ = worst;
    if (!weight && worst > path_tolerance(f))
        throw NumericalFailure("potential not well-defined: continuity residual too large", worst);
    return p;
}

std::vector<double> boundary_time_derivative(const Potential& p, Side side) {
    const auto& g = p.grid();
    const std::size_t j = side == Side::left ? 0 : g.nx() - 1;
    std::vector<double> out(g.nt() - 1);
    for (std::size_t i = 0; i + 1 < g.nt(); ++i) out[i] = (p(i + 1, j) - p(i, j)) / g.dt();
    return out;
}

std::vector<double> boundary_trace(const Potential& p, Side side) {
    auto d = boundary_time_derivative(p, side);
    if (side == Side::right)
        for (double& v : d) v = -v;
    return d;
}

}  // namespace transport1d
