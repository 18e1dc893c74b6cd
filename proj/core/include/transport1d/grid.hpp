#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace transport1d {

// Uniform space-time lattice on [0,T] x [alpha,beta].
// Node (i,j) sits at (i*dt, alpha + j*dx); time is the slow index.
class SpaceTimeGrid {
public:
    static SpaceTimeGrid build(double T, double alpha, double beta,
                               std::size_t nt, std::size_t nx);

    double T() const noexcept { return T_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    std::size_t nt() const noexcept { return nt_; }
    std::size_t nx() const noexcept { return nx_; }
    double dt() const noexcept { return dt_; }
    double dx() const noexcept { return dx_; }
    double length() const noexcept { return beta_ - alpha_; }

    double t(std::size_t i) const noexcept { return static_cast<double>(i) * dt_; }
    double x(std::size_t j) const noexcept { return alpha_ + static_cast<double>(j) * dx_; }

    // Nearest node indices, clamped to the lattice.
    std::size_t nearest_level(double t) const noexcept;
    std::size_t nearest_column(double x) const noexcept;

    bool operator==(const SpaceTimeGrid&) const = default;

private:
    SpaceTimeGrid(double T, double alpha, double beta, std::size_t nt, std::size_t nx);

    double T_, alpha_, beta_;
    std::size_t nt_, nx_;
    double dt_, dx_;
};

// Dense nt x nx array of node values, row-major in time.
class GridField {
public:
    GridField() = default;
    GridField(std::size_t nt, std::size_t nx, double fill = 0.0)
        : nt_(nt), nx_(nx), data_(nt * nx, fill) {}

    std::size_t nt() const noexcept { return nt_; }
    std::size_t nx() const noexcept { return nx_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * nx_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * nx_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * nx_, nx_}; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * nx_, nx_};
    }
    std::vector<double> column(std::size_t j) const;

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

    double max_abs() const noexcept;

private:
    std::size_t nt_ = 0, nx_ = 0;
    std::vector<double> data_;
};

}  // namespace transport1d
