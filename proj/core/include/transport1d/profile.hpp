#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace transport1d {

// Scalar function of one variable on [lo, hi]: either a closure or uniform
// samples with linear interpolation. Arguments outside [lo, hi] are clamped.
class Profile {
public:
    Profile() : samples_{0.0, 0.0} {}  // zero on [0, 1]

    static Profile analytic(std::function<double(double)> f, double lo, double hi);
    static Profile tabulated(double lo, double hi, std::vector<double> samples);
    static Profile constant(double value, double lo, double hi);

    double operator()(double s) const;

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    bool is_tabulated() const noexcept { return !fn_; }
    const std::vector<double>& samples() const noexcept { return samples_; }

    // One-sided limits at the ends of the interval.
    double left_limit() const noexcept { return left_limit_; }
    double right_limit() const noexcept { return right_limit_; }

    double sup_norm() const noexcept { return sup_; }
    double min_value() const noexcept { return min_; }
    double max_value() const noexcept { return max_; }
    double total_variation() const noexcept { return tv_; }

private:
    void summarize();

    std::function<double(double)> fn_;
    std::vector<double> samples_;
    double lo_ = 0.0, hi_ = 1.0;
    double left_limit_ = 0.0, right_limit_ = 0.0;
    double sup_ = 0.0, min_ = 0.0, max_ = 0.0, tv_ = 0.0;
};

// Initial datum on [alpha,beta] and the two inflow boundary data on [0,T].
struct BoundaryData {
    Profile theta0;       // on [alpha, beta]
    Profile theta_bar;    // at x = alpha
    Profile theta_under;  // at x = beta

    double linf() const;
};

}  // namespace transport1d
