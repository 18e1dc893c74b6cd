#include "transport1d/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "transport1d/error.hpp"

namespace transport1d {

namespace {

template <class Pick>
Envelope suffix_envelope(std::span<const double> f, std::optional<double> tol, Pick pick) {
    if (f.empty()) throw InvalidArgument("envelope of an empty sequence");
    Envelope e;
    e.tol = tol.value_or(default_envelope_tolerance(f));
    const std::size_t n = f.size();
    e.values.resize(n);
    e.contact.resize(n);
    for (std::size_t k = n; k-- > 0;) {
        e.values[k] = k + 1 < n ? pick(f[k], e.values[k + 1]) : f[k];
        e.contact[k] = std::abs(e.values[k] - f[k]) <= e.tol;
    }
    return e;
}

}  // namespace

double default_envelope_tolerance(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return 1e-10 * (1.0 + m);
}

Envelope upper_decreasing_envelope(std::span<const double> f, std::optional<double> tol) {
    return suffix_envelope(f, tol, [](double a, double b) { return std::max(a, b); });
}

Envelope lower_increasing_envelope(std::span<const double> f, std::optional<double> tol) {
    return suffix_envelope(f, tol, [](double a, double b) { return std::min(a, b); });
}

RestrictionResult envelope_restriction(std::span<const double> f, std::size_t k_star,
                                       std::size_t tau_idx, std::optional<double> tol) {
    if (f.empty()) throw InvalidArgument("envelope of an empty sequence");
    if (tau_idx >= f.size() || k_star > tau_idx)
        throw InvalidArgument("restriction indices out of range");
    const double eps = tol.value_or(default_envelope_tolerance(f));
    const auto full = upper_decreasing_envelope(f, eps);
    if (!full.contact[k_star]) throw InvalidArgument("restriction point must be a contact point");
    const auto part = upper_decreasing_envelope(f.first(tau_idx + 1), eps);
    RestrictionResult r;
    r.values.assign(part.values.begin(), part.values.begin() + static_cast<long>(k_star) + 1);
    for (std::size_t k = 0; k <= k_star; ++k)
        r.max_deviation = std::max(r.max_deviation, std::abs(r.values[k] - full.values[k]));
    r.agrees = r.max_deviation <= eps;
    return r;
}

}  // namespace transport1d
