#include "delcode/bma.hpp"

#include <algorithm>

namespace delcode {

TraceMatrix::TraceMatrix(std::size_t ell) : ell_(ell) {
    if (ell == 0) throw ParameterError("TraceMatrix: ell must be >= 1");
}

void TraceMatrix::add_segment(const BitString& segment) { add_segment(segment.bits()); }

void TraceMatrix::add_segment(std::span<const std::uint8_t> segment) {
    const std::size_t keep = std::min(segment.size(), ell_);
    cells_.insert(cells_.end(), segment.begin(), segment.begin() + static_cast<std::ptrdiff_t>(keep));
    cells_.insert(cells_.end(), ell_ - keep, kPad);
    lengths_.push_back(keep);
    ++t_;
}

void TraceMatrix::add_padded_row(std::span<const std::uint8_t> row) {
    if (row.size() != ell_) throw ParameterError("TraceMatrix: padded row must have length ell");
    std::size_t len = 0;
    bool padding = false;
    for (auto s : row) {
        if (s > kPad) throw ParameterError("TraceMatrix: symbols must be 0, 1 or PAD");
        if (s == kPad) {
            padding = true;
        } else {
            if (padding) throw ParameterError("TraceMatrix: PAD may not precede a bit");
            ++len;
        }
    }
    cells_.insert(cells_.end(), row.begin(), row.end());
    lengths_.push_back(len);
    ++t_;
}

BitString bma(const TraceMatrix& m) {
    const std::size_t t = m.t();
    const std::size_t ell = m.ell();
    std::vector<std::size_t> q(t, 0);
    std::vector<std::uint8_t> out(ell, 0);
    for (std::size_t i = 0; i < ell; ++i) {
        int votes[2] = {0, 0};
        int first_vote = -1;
        for (std::size_t j = 0; j < t; ++j) {
            if (q[j] >= ell) continue;
            const std::uint8_t s = m.at(j, q[j]);
            if (s == kPad) continue;
            ++votes[s];
            if (first_vote < 0) first_vote = s;
        }
        std::uint8_t b = 0;
        if (votes[0] != votes[1])
            b = votes[1] > votes[0] ? 1 : 0;
        else if (first_vote >= 0)
            b = static_cast<std::uint8_t>(first_vote);
        out[i] = b;
        for (std::size_t j = 0; j < t; ++j)
            if (q[j] < ell && m.at(j, q[j]) == b) ++q[j];
    }
    return BitString(std::move(out));
}

}  // namespace delcode
