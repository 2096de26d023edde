#pragma once

#include <cstddef>

#include "delcode/core.hpp"

namespace delcode {

/// Unit-cost edit distance (insertions, deletions, substitutions).
/// Strips the common prefix and suffix, then runs the Myers / Hyyrö
/// bit-parallel recurrence over 64-bit words.
std::size_t levenshtein(const BitString& a, const BitString& b);

/// Textbook two-row dynamic program. O(|a| |b|); the reference for levenshtein.
std::size_t levenshtein_dp(const BitString& a, const BitString& b);

}  // namespace delcode
