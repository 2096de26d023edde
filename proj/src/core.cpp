#include "delcode/core.hpp"

#include <algorithm>
#include <numeric>

namespace delcode {

BitString::BitString(std::size_t length, std::uint8_t fill) : bits_(length, fill) {
    if (fill > 1) throw ParameterError("BitString: fill must be 0 or 1");
}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
        if (b > 1) throw ParameterError("BitString: symbols must be 0 or 1");
}

BitString BitString::parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1')
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c != ' ')
            throw ParameterError(std::string("BitString: unexpected character '") + c + "'");
    }
    BitString out;
    out.bits_ = std::move(bits);
    return out;
}

std::string BitString::str() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
    return s;
}

void BitString::set(std::size_t i, std::uint8_t bit) {
    if (bit > 1) throw ParameterError("BitString: symbols must be 0 or 1");
    bits_.at(i) = bit;
}

void BitString::push_back(std::uint8_t bit) {
    if (bit > 1) throw ParameterError("BitString: symbols must be 0 or 1");
    bits_.push_back(bit);
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::substr(std::size_t pos, std::size_t len) const {
    BitString out;
    if (pos >= bits_.size()) return out;
    const std::size_t stop = pos + std::min(len, bits_.size() - pos);
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                     bits_.begin() + static_cast<std::ptrdiff_t>(stop));
    return out;
}

CodeParams CodeParams::make(int delta, std::size_t ell, std::size_t n, BlockMode mode) {
    if (delta < 1) throw ParameterError("delta must be >= 1");
    if (ell < 1) throw ParameterError("ell must be >= 1");
    if (n < 1) throw ParameterError("n must be >= 1");
    const auto d = static_cast<std::size_t>(delta);
    if (2 * d >= ell)
        throw ParameterError("need 2*delta < ell (delta=" + std::to_string(delta) +
                             ", ell=" + std::to_string(ell) + ")");
    if (2 * ell > n)
        throw ParameterError("need ell <= n/2 (ell=" + std::to_string(ell) +
                             ", n=" + std::to_string(n) + ")");
    const std::size_t rem = n % ell;
    if (mode == BlockMode::strict && rem != 0)
        throw ParameterError("ell must divide n in strict mode");
    if (mode == BlockMode::relaxed && rem != 0 && rem < d + 1)
        throw ParameterError("short last block (" + std::to_string(rem) +
                             " bits) cannot hold delta+1 marker zeros");
    return CodeParams{delta, ell, n, mode};
}

std::size_t CodeParams::block_length(std::size_t j) const noexcept {
    const std::size_t begin = j * ell;
    return begin >= n ? 0 : std::min(ell, n - begin);
}

DeletionPattern::DeletionPattern(std::vector<std::size_t> positions)
    : positions_(std::move(positions)) {
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (positions_[i] == 0) throw ParameterError("deletion positions are 1-based");
        if (i > 0 && positions_[i] <= positions_[i - 1])
            throw ParameterError("deletion positions must be strictly increasing");
    }
}

int CountVector::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), 0); }

std::string CountVector::str() const {
    std::string s;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (j) s += ',';
        s += std::to_string(counts[j]);
    }
    return s;
}

std::vector<BitString> split_blocks(const BitString& x, std::size_t ell, BlockMode mode) {
    if (ell == 0) throw ParameterError("split_blocks: ell must be >= 1");
    if (mode == BlockMode::strict && x.size() % ell != 0)
        throw ParameterError("split_blocks: ell does not divide |x| in strict mode");
    std::vector<BitString> blocks;
    blocks.reserve((x.size() + ell - 1) / ell);
    for (std::size_t pos = 0; pos < x.size(); pos += ell) blocks.push_back(x.substr(pos, ell));
    return blocks;
}

BitString concat(std::span<const BitString> parts) {
    BitString out;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    out.reserve(total);
    for (const auto& p : parts) out.append(p);
    return out;
}

BitString apply_deletions(const BitString& x, const DeletionPattern& d) {
    const auto& pos = d.positions();
    if (!pos.empty() && pos.back() > x.size())
        throw ParameterError("apply_deletions: position " + std::to_string(pos.back()) +
                             " exceeds length " + std::to_string(x.size()));
    std::vector<std::uint8_t> out;
    out.reserve(x.size() - pos.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (next < pos.size() && pos[next] == i + 1) {
            ++next;
            continue;
        }
        out.push_back(x[i]);
    }
    return BitString(std::move(out));
}

BlockCounts count_per_block(const DeletionPattern& d, const CodeParams& params) {
    BlockCounts result;
    result.counts.counts.assign(params.num_blocks(), 0);
    for (std::size_t p : d.positions()) {
        if (p > params.n)
            throw ParameterError("count_per_block: position " + std::to_string(p) + " exceeds n");
        ++result.counts.counts[(p - 1) / params.ell];
    }
    for (int c : result.counts.counts)
        if (c > params.delta) result.exceeds_budget = true;
    return result;
}

std::size_t max_run_length(std::span<const std::uint8_t> bits) {
    std::size_t best = 0, run = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        run = (i > 0 && bits[i] == bits[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

std::size_t max_run_length(const BitString& x) { return max_run_length(x.bits()); }

bool is_subsequence(const BitString& sub, const BitString& super) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < super.size() && j < sub.size(); ++i)
        if (super[i] == sub[j]) ++j;
    return j == sub.size();
}

}  // namespace delcode
