#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace transport1d {

struct Envelope {
    std::vector<double> values;
    std::vector<bool> contact;  // |values[k] - f[k]| <= tol
    double tol = 0.0;
};

// 1e-10 * (1 + max|f|)
double default_envelope_tolerance(std::span<const double> f);

// Smallest non-increasing majorant: values[k] = max_{j >= k} f[j]. Throws InvalidArgument on empty f.
Envelope upper_decreasing_envelope(std::span<const double> f,
                                   std::optional<double> tol = std::nullopt);

// Largest non-decreasing minorant: values[k] = min_{j >= k} f[j].
Envelope lower_increasing_envelope(std::span<const double> f,
                                   std::optional<double> tol = std::nullopt);

// Envelope of f[0..tau_idx] restricted to [0, k_star]. k_star must be a contact
// point of the full upper envelope (InvalidArgument otherwise). Also reports
// whether it agrees with the restriction of the full envelope within tol.
struct RestrictionResult {
    std::vector<double> values;  // k_star + 1 entries
    bool agrees = false;
    double max_deviation = 0.0;
};
RestrictionResult envelope_restriction(std::span<const double> f, std::size_t k_star,
                                       std::size_t tau_idx,
                                       std::optional<double> tol = std::nullopt);

}  // namespace transport1d
