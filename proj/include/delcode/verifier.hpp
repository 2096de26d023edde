#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "delcode/core.hpp"

namespace delcode::verify {

/// Two (codeword, pattern) pairs that produce the same received string but
/// disagree on per-block counts. Its existence rules out any decoder.
struct CollisionWitness {
    BitString y;
    CountVector c1, c2;
    BitString x1, x2;
    DeletionPattern d1, d2;
};

struct DetectabilityVerdict {
    bool ok = true;
    std::optional<CollisionWitness> witness;
    std::size_t pairs_checked = 0;  // (codeword, pattern) pairs enumerated
};

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

/// Every pattern with at most delta deletions in each block, ordered as a
/// product of per-block subsets (block 1 varies slowest).
std::vector<DeletionPattern> enumerate_patterns(const CodeParams& params);

std::size_t count_patterns(const CodeParams& params);

/// Every codeword of the marker code for params (requires info length <= 26).
std::vector<BitString> enumerate_marker_code(const CodeParams& params);

/// Builds y -> {count vectors} over every codeword and every admissible
/// pattern; ok iff each y maps to exactly one count vector. A single decoder
/// serves the whole code, so collisions across different codewords count.
/// The witness, when present, is the same for any thread count: it is the
/// lexicographically smallest colliding y with its two earliest sources.
DetectabilityVerdict detects_exhaustive(std::span<const BitString> code, const CodeParams& params,
                                        std::size_t cap = kDefaultEnumerationCap);

/// Single-threaded reference for detects_exhaustive.
DetectabilityVerdict detects_exhaustive_serial(std::span<const BitString> code,
                                               const CodeParams& params,
                                               std::size_t cap = kDefaultEnumerationCap);

/// Last delta bits of block j differ from the first delta bits of block j+1,
/// for every boundary.
bool check_boundary_conditions(const BitString& x, const CodeParams& params);

/// check_boundary_conditions plus: bit delta+1 of block j+1 also differs from
/// the last delta bits of block j. Necessary for block-by-block decoding.
bool check_bbd_condition(const BitString& x, const CodeParams& params);

/// log2(2^(ell-2delta) / (2^(ell-2delta) - 1)).
double epsilon(int delta, std::size_t ell);

/// Lower bound on the redundancy of any code detecting delta deletions per block.
double lower_bound_general(const CodeParams& params);

/// Lower bound for block-by-block decodable codes: (2delta+1)(n/ell - 1).
std::size_t lower_bound_bbd(const CodeParams& params);

}  // namespace delcode::verify
