#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace transport1d::verify {

SequenceSet monotone_sequences(std::size_t length, int levels, bool increasing) {
    SequenceSet out;
    std::vector<int> cur;
    std::function<void()> rec = [&] {
        if (cur.size() == length) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v < levels; ++v) {
            if (!cur.empty() && (increasing ? v < cur.back() : v > cur.back())) continue;
            cur.push_back(v);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

namespace {

std::vector<int> brute(std::span<const int> f, const SequenceSet& candidates, bool upper) {
    std::vector<int> best(f.size(), upper ? std::numeric_limits<int>::max()
                                          : std::numeric_limits<int>::min());
    for (const auto& g : candidates) {
        bool ok = true;
        for (std::size_t k = 0; k < f.size() && ok; ++k) ok = upper ? g[k] >= f[k] : g[k] <= f[k];
        if (!ok) continue;
        for (std::size_t k = 0; k < f.size(); ++k)
            best[k] = upper ? std::min(best[k], g[k]) : std::max(best[k], g[k]);
    }
    return best;
}

}  // namespace

std::vector<int> brute_upper_envelope(std::span<const int> f, const SequenceSet& nonincreasing) {
    return brute(f, nonincreasing, true);
}

std::vector<int> brute_lower_envelope(std::span<const int> f, const SequenceSet& nondecreasing) {
    return brute(f, nondecreasing, false);
}

bool envelope_dichotomy_holds(std::span<const double> f, std::span<const double> env,
                              const std::vector<bool>& contact, double tol) {
    const std::size_t n = f.size();
    if (n == 0) return true;
    if (!contact[n - 1]) return false;  // the last index always touches
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (contact[k] && contact[k + 1]) {
            if (std::abs((env[k + 1] - env[k]) - (f[k + 1] - f[k])) > 2 * tol) return false;
        } else if (!contact[k]) {
            if (std::abs(env[k + 1] - env[k]) > tol) return false;
        }
    }
    return true;
}

}  // namespace transport1d::verify
