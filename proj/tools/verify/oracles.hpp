#pragma once

#include <span>
#include <vector>

// Reference computations kept apart from the library's algorithms.
namespace transport1d::verify {

using SequenceSet = std::vector<std::vector<int>>;

// All monotone sequences of a given length over {0..levels-1}.
SequenceSet monotone_sequences(std::size_t length, int levels, bool increasing);

// Pointwise infimum over the non-increasing candidates that majorize f.
std::vector<int> brute_upper_envelope(std::span<const int> f, const SequenceSet& nonincreasing);
// Pointwise supremum over the non-decreasing candidates that minorize f.
std::vector<int> brute_lower_envelope(std::span<const int> f, const SequenceSet& nondecreasing);

// Envelope properties checked directly from the definition, within tol:
// on consecutive contact indices the increments match f; on non-contact runs
// the envelope is constant up to and including the next index.
bool envelope_dichotomy_holds(std::span<const double> f, std::span<const double> env,
                              const std::vector<bool>& contact, double tol);

}  // namespace transport1d::verify
