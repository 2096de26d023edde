#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "delcode/core.hpp"

namespace delcode {

inline constexpr std::uint8_t kPad = 2;

/// t rows of exactly ell symbols over {0, 1, kPad}. Rows shorter than ell are
/// right-padded with kPad and longer rows are truncated.
class TraceMatrix {
public:
    explicit TraceMatrix(std::size_t ell);

    /// Appends a received segment, padding or truncating it to ell.
    void add_segment(const BitString& segment);
    void add_segment(std::span<const std::uint8_t> segment);

    /// Appends an already padded row. The row must have length ell, use only
    /// {0, 1, kPad}, and never place kPad before a bit.
    void add_padded_row(std::span<const std::uint8_t> row);

    std::size_t t() const noexcept { return t_; }
    std::size_t ell() const noexcept { return ell_; }
    std::uint8_t at(std::size_t row, std::size_t col) const noexcept { return cells_[row * ell_ + col]; }
    /// Number of non-pad symbols in a row.
    std::size_t row_length(std::size_t row) const noexcept { return lengths_[row]; }

private:
    std::size_t ell_;
    std::size_t t_ = 0;
    std::vector<std::uint8_t> cells_;
    std::vector<std::size_t> lengths_;
};

/// Bitwise majority alignment. Every row keeps a pointer starting at its
/// first symbol. At each of the ell output positions the rows whose pointer
/// sits on a bit vote, the majority bit is emitted, and the rows that voted
/// for it advance by one.
///
/// Rows on kPad or past their end do not vote. No voters gives 0. A tie goes
/// to the bit of the lowest-indexed voting row.
BitString bma(const TraceMatrix& m);

}  // namespace delcode
