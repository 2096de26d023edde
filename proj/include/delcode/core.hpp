#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "delcode/error.hpp"

namespace delcode {

/// Finite binary sequence. Storage is one byte per symbol, each 0 or 1.
/// Indexing through operator[] is 0-based; everything user-facing
/// (deletion positions, block starts) is 1-based.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t length, std::uint8_t fill = 0);
    explicit BitString(std::vector<std::uint8_t> bits);

    /// Parses '0'/'1' characters. Spaces are ignored so that block-separated
    /// strings like "10101 00111" are accepted. Any other character throws.
    static BitString parse(std::string_view text);

    std::string str() const;

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
    void set(std::size_t i, std::uint8_t bit);
    void push_back(std::uint8_t bit);
    void append(const BitString& other);
    void reserve(std::size_t n) { bits_.reserve(n); }

    /// Bits [pos, pos + len) clipped to the end of the string.
    BitString substr(std::size_t pos, std::size_t len) const;

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    auto begin() const noexcept { return bits_.begin(); }
    auto end() const noexcept { return bits_.end(); }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

enum class BlockMode {
    strict,   // ell divides n
    relaxed,  // last block has length n mod ell
};

/// (delta, ell, n) for a marker code. Construct through make(), which enforces
/// 2*delta < ell <= n/2 and, in strict mode, ell | n. In relaxed mode a short
/// last block must hold at least delta + 1 bits (its leading marker zeros).
struct CodeParams {
    int delta = 0;
    std::size_t ell = 0;
    std::size_t n = 0;
    BlockMode mode = BlockMode::strict;

    static CodeParams make(int delta, std::size_t ell, std::size_t n,
                           BlockMode mode = BlockMode::strict);

    std::size_t num_blocks() const noexcept { return (n + ell - 1) / ell; }
    /// 0-based offset of block j (0-based) in the codeword.
    std::size_t block_begin(std::size_t j) const noexcept { return j * ell; }
    std::size_t block_length(std::size_t j) const noexcept;

    friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Strictly increasing 1-based positions to delete.
class DeletionPattern {
public:
    DeletionPattern() = default;
    explicit DeletionPattern(std::vector<std::size_t> positions);

    const std::vector<std::size_t>& positions() const noexcept { return positions_; }
    std::size_t size() const noexcept { return positions_.size(); }
    bool empty() const noexcept { return positions_.empty(); }

    friend bool operator==(const DeletionPattern&, const DeletionPattern&) = default;

private:
    std::vector<std::size_t> positions_;
};

/// Per-block deletion counts.
struct CountVector {
    std::vector<int> counts;

    std::size_t size() const noexcept { return counts.size(); }
    int operator[](std::size_t j) const noexcept { return counts[j]; }
    int total() const noexcept;
    /// "1,0,1,1"
    std::string str() const;

    friend bool operator==(const CountVector&, const CountVector&) = default;
    friend auto operator<=>(const CountVector&, const CountVector&) = default;
};

struct BlockCounts {
    CountVector counts;
    bool exceeds_budget = false;  // some block has more than delta deletions
};

/// Splits x into consecutive blocks of length ell. In strict mode ell must
/// divide |x|; in relaxed mode the last block may be shorter.
std::vector<BitString> split_blocks(const BitString& x, std::size_t ell,
                                    BlockMode mode = BlockMode::strict);

BitString concat(std::span<const BitString> parts);

BitString apply_deletions(const BitString& x, const DeletionPattern& d);

BlockCounts count_per_block(const DeletionPattern& d, const CodeParams& params);

std::size_t max_run_length(const BitString& x);
std::size_t max_run_length(std::span<const std::uint8_t> bits);

/// True iff `sub` can be obtained from `super` by deletions only.
bool is_subsequence(const BitString& sub, const BitString& super);

}  // namespace delcode
