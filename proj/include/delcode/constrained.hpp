#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "delcode/core.hpp"
#include "delcode/rng.hpp"

namespace delcode {

/// Uniform sampler over binary strings that agree with a per-position mask
/// (-1 = free, 0/1 = forced) and have no run longer than run_limit.
///
/// A backward pass counts, for every position and every (last bit, current
/// run) state, how many valid completions remain. Sampling then walks
/// forward, picking each bit with probability proportional to the completion
/// count it leads to, so every valid string is equally likely and no draw is
/// ever rejected. Rows are rescaled to stay in double range; only ratios
/// within a row are used when sampling.
class ConstrainedSampler {
public:
    ConstrainedSampler(std::vector<std::int8_t> mask, std::size_t run_limit);

    std::size_t length() const noexcept { return mask_.size(); }
    std::size_t run_limit() const noexcept { return run_limit_; }
    bool empty() const noexcept { return !(start_weight_[0] + start_weight_[1] > 0.0); }

    /// log2 of the number of valid strings (-inf when empty).
    double log2_count() const noexcept { return log2_count_; }

    /// Exact count, for length <= 63.
    std::optional<std::uint64_t> exact_count() const;

    bool admits(const BitString& x) const;

    /// Throws SamplingError when no valid string exists.
    BitString sample(RandomStream& stream) const;

private:
    std::size_t state(std::uint8_t bit, std::size_t run) const noexcept { return bit * run_limit_ + run - 1; }
    double weight(std::size_t pos, std::size_t s) const noexcept { return table_[pos * 2 * run_limit_ + s]; }
    bool allowed(std::size_t pos, std::uint8_t bit) const noexcept { return mask_[pos] < 0 || mask_[pos] == bit; }

    std::vector<std::int8_t> mask_;
    std::size_t run_limit_;
    std::vector<double> table_;  // (n + 1) x (2 * run_limit), row i = states after i bits
    double start_weight_[2] = {0.0, 0.0};
    double log2_count_ = 0.0;
};

}  // namespace delcode
