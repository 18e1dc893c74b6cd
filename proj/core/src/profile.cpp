#include "transport1d/profile.hpp"

#include <algorithm>
#include <cmath>

#include "transport1d/error.hpp"

namespace transport1d {

namespace {
constexpr std::size_t kSummarySamples = 1u << 16;
}

Profile Profile::analytic(std::function<double(double)> f, double lo, double hi) {
    if (!(hi > lo)) throw InvalidArgument("profile interval must satisfy lo < hi");
    Profile p;
    p.fn_ = std::move(f);
    p.lo_ = lo;
    p.hi_ = hi;
    p.summarize();
    return p;
}

Profile Profile::tabulated(double lo, double hi, std::vector<double> samples) {
    if (!(hi > lo)) throw InvalidArgument("profile interval must satisfy lo < hi");
    if (samples.size() < 2) throw InvalidArgument("tabulated profile needs at least 2 samples");
    Profile p;
    p.samples_ = std::move(samples);
    p.lo_ = lo;
    p.hi_ = hi;
    p.summarize();
    return p;
}

Profile Profile::constant(double value, double lo, double hi) {
    return tabulated(lo, hi, {value, value});
}

double Profile::operator()(double s) const {
    if (fn_) return fn_(std::clamp(s, lo_, hi_));
    const std::size_t n = samples_.size();
    const double u = (s - lo_) / (hi_ - lo_) * static_cast<double>(n - 1);
    if (!(u > 0.0)) return samples_.front();
    if (u >= static_cast<double>(n - 1)) return samples_.back();
    const auto k = static_cast<std::size_t>(u);
    const double w = u - static_cast<double>(k);
    return (1.0 - w) * samples_[k] + w * samples_[k + 1];
}

void Profile::summarize() {
    std::vector<double> v;
    if (fn_) {
        const double eps = 1e-9 * (hi_ - lo_);
        left_limit_ = fn_(lo_ + eps);
        right_limit_ = fn_(hi_ - eps);
        v.reserve(kSummarySamples + 1);
        v.push_back(left_limit_);
        const double h = (hi_ - lo_) / static_cast<double>(kSummarySamples);
        for (std::size_t k = 1; k < kSummarySamples; ++k)
            v.push_back(fn_(lo_ + static_cast<double>(k) * h));
        v.push_back(right_limit_);
    } else {
        left_limit_ = samples_.front();
        right_limit_ = samples_.back();
    }
    const std::vector<double>& s = fn_ ? v : samples_;
    min_ = *std::min_element(s.begin(), s.end());
    max_ = *std::max_element(s.begin(), s.end());
    sup_ = std::max(std::abs(min_), std::abs(max_));
    tv_ = 0.0;
    for (std::size_t k = 1; k < s.size(); ++k) tv_ += std::abs(s[k] - s[k - 1]);
}

double BoundaryData::linf() const {
    return std::max({theta0.sup_norm(), theta_bar.sup_norm(), theta_under.sup_norm()});
}

}  // namespace transport1d
