#include "delcode/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace delcode {

ConstrainedSampler::ConstrainedSampler(std::vector<std::int8_t> mask, std::size_t run_limit)
    : mask_(std::move(mask)), run_limit_(run_limit) {
    if (run_limit_ == 0) throw ParameterError("ConstrainedSampler: run_limit must be >= 1");
    if (mask_.empty()) throw ParameterError("ConstrainedSampler: empty mask");
    for (auto m : mask_)
        if (m < -1 || m > 1) throw ParameterError("ConstrainedSampler: mask entries must be -1, 0 or 1");

    const std::size_t n = mask_.size();
    const std::size_t width = 2 * run_limit_;
    table_.assign((n + 1) * width, 0.0);
    std::fill(table_.begin() + static_cast<std::ptrdiff_t>(n * width), table_.end(), 1.0);

    double log2_scale = 0.0;  // accumulated over rows 1..n-1
    for (std::size_t i = n - 1; i >= 1; --i) {
        double* row = &table_[i * width];
        double row_max = 0.0;
        for (std::uint8_t b = 0; b < 2; ++b) {
            for (std::size_t r = 1; r <= run_limit_; ++r) {
                double w = 0.0;
                for (std::uint8_t v = 0; v < 2; ++v) {
                    if (!allowed(i, v)) continue;
                    if (v == b) {
                        if (r < run_limit_) w += weight(i + 1, state(v, r + 1));
                    } else {
                        w += weight(i + 1, state(v, 1));
                    }
                }
                row[state(b, r)] = w;
                row_max = std::max(row_max, w);
            }
        }
        if (row_max > 0.0) {
            for (std::size_t s = 0; s < width; ++s) row[s] /= row_max;
            log2_scale += std::log2(row_max);
        }
    }
    for (std::uint8_t v = 0; v < 2; ++v)
        start_weight_[v] = allowed(0, v) ? weight(1, state(v, 1)) : 0.0;
    const double total = start_weight_[0] + start_weight_[1];
    log2_count_ = total > 0.0 ? std::log2(total) + log2_scale : -std::numeric_limits<double>::infinity();
}

std::optional<std::uint64_t> ConstrainedSampler::exact_count() const {
    const std::size_t n = mask_.size();
    if (n > 63) return std::nullopt;
    // Forward count of prefixes ending in each state.
    std::vector<std::uint64_t> cur(2 * run_limit_, 0), next(2 * run_limit_, 0);
    for (std::uint8_t v = 0; v < 2; ++v)
        if (allowed(0, v)) cur[state(v, 1)] = 1;
    for (std::size_t i = 1; i < n; ++i) {
        std::fill(next.begin(), next.end(), 0);
        for (std::uint8_t b = 0; b < 2; ++b)
            for (std::size_t r = 1; r <= run_limit_; ++r) {
                const std::uint64_t c = cur[state(b, r)];
                if (c == 0) continue;
                for (std::uint8_t v = 0; v < 2; ++v) {
                    if (!allowed(i, v)) continue;
                    if (v == b) {
                        if (r < run_limit_) next[state(v, r + 1)] += c;
                    } else {
                        next[state(v, 1)] += c;
                    }
                }
            }
        std::swap(cur, next);
    }
    std::uint64_t total = 0;
    for (auto c : cur) total += c;
    return total;
}

bool ConstrainedSampler::admits(const BitString& x) const {
    if (x.size() != mask_.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!allowed(i, x[i])) return false;
    return max_run_length(x) <= run_limit_;
}

BitString ConstrainedSampler::sample(RandomStream& stream) const {
    if (empty()) throw SamplingError("ConstrainedSampler: constraint set is empty");
    const std::size_t n = mask_.size();
    std::vector<std::uint8_t> out(n);

    auto pick = [&](double w0, double w1) -> std::uint8_t {
        const double total = w0 + w1;
        if (!(total > 0.0)) throw SamplingError("ConstrainedSampler: dead end while sampling");
        return uniform01(stream) * total < w0 ? 0 : 1;
    };

    std::uint8_t bit = pick(start_weight_[0], start_weight_[1]);
    std::size_t run = 1;
    out[0] = bit;
    for (std::size_t i = 1; i < n; ++i) {
        double w[2] = {0.0, 0.0};
        for (std::uint8_t v = 0; v < 2; ++v) {
            if (!allowed(i, v)) continue;
            if (v == bit) {
                if (run < run_limit_) w[v] = weight(i + 1, state(v, run + 1));
            } else {
                w[v] = weight(i + 1, state(v, 1));
            }
        }
        const std::uint8_t v = pick(w[0], w[1]);
        run = v == bit ? run + 1 : 1;
        bit = v;
        out[i] = v;
    }
    return BitString(std::move(out));
}

}  // namespace delcode
