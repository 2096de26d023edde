#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "delcode/core.hpp"

namespace delcode {

/// Marker code detecting up to delta deletions in each block of a
/// concatenation of ell-bit blocks.
///
/// Codewords satisfy:
///   block 1:            last delta bits are 1
///   blocks 2..B-1:      first delta+1 bits are 0, last delta bits are 1
///   block B (last):     first delta+1 bits are 0
/// Every other position carries an information bit, so the redundancy is
/// (2*delta + 1)(B - 1) where B is the number of blocks.
namespace marker {

struct FixedBit {
    std::size_t index;  // 1-based
    std::uint8_t value;

    friend bool operator==(const FixedBit&, const FixedBit&) = default;
};

struct MarkerLayout {
    CodeParams params;
    std::vector<FixedBit> fixed;     // ascending index
    std::vector<std::size_t> free;   // ascending 1-based information positions

    /// Per-position constraint, 0-based: -1 for free, otherwise the forced bit.
    std::vector<std::int8_t> mask() const;
};

MarkerLayout layout(const CodeParams& params);

/// Number of information bits, n - redundancy(params).
std::size_t info_length(const CodeParams& params);

std::size_t redundancy(const CodeParams& params);

/// Writes info into the free positions in ascending index order.
BitString encode(const BitString& info, const CodeParams& params);

/// Inverse of encode on codewords: reads the free positions.
BitString extract_info(const BitString& x, const CodeParams& params);

bool is_codeword(const BitString& x, const CodeParams& params);

/// Complements every forced position. This maps the code onto its
/// opposite-polarity twin (trailing 0s / leading 1s). The twin is a
/// deletion-detecting code in its own right, but the decoder below only
/// handles the original polarity and mixing the two breaks detection.
BitString mirror(const BitString& x, const CodeParams& params);

enum class DecodeMode {
    strict,       // throw on malformed length or out-of-range counts
    best_effort,  // never throw; clamp and flag suspect blocks
};

struct BoundaryResult {
    CountVector counts;
    std::vector<std::size_t> starts;  // 1-based start of each block in y
    std::vector<BitString> segments;  // y split at starts; concatenates to y
    std::vector<bool> suspect;        // best-effort clamping happened here
};

struct BlockDecision {
    int count = 0;
    bool truncated = false;  // window ran past the end of y
};

/// Deletion count for a non-final block, computed from the ell received bits
/// that start at the block's boundary. `window` may be shorter than ell near
/// the end of y; missing symbols read as 0.
BlockDecision detect_block(std::span<const std::uint8_t> window, std::size_t ell, int delta);

/// Block-by-block boundary recovery. Linear in |y|.
BoundaryResult decode_boundaries(const BitString& y, const CodeParams& params,
                                 DecodeMode mode = DecodeMode::strict);

}  // namespace marker
}  // namespace delcode
