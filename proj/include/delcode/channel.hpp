#pragma once

#include <cstdint>
#include <vector>

#include "delcode/core.hpp"
#include "delcode/rng.hpp"

namespace delcode {

/// Deletion probability p = k / n^alpha with k > 1, alpha in (0.5, 1], 0 < p < 0.5.
struct ChannelParams {
    double k = 0;
    double alpha = 0;
    std::size_t n = 0;
    double p = 0;

    static ChannelParams make(double k, double alpha, std::size_t n);
};

struct Transmission {
    BitString y;
    DeletionPattern deleted;
};

/// i.i.d. deletion channel: each bit dropped independently with probability p.
BitString transmit(const BitString& x, double p, RandomStream& stream);

/// As transmit, also reporting which positions were dropped.
Transmission transmit_tracked(const BitString& x, double p, RandomStream& stream);

struct TraceSet {
    std::vector<BitString> traces;
    std::vector<DeletionPattern> deleted;  // ground truth, one per trace
    std::uint64_t seed = 0;

    std::size_t t() const noexcept { return traces.size(); }
};

/// t independent traces. Trace i is drawn from substream(seed, i), so the
/// result does not depend on how the loop is scheduled.
TraceSet gen_traces(const BitString& x, double p, int t, std::uint64_t seed);
TraceSet gen_traces(const BitString& x, const ChannelParams& ch, int t, std::uint64_t seed);

}  // namespace delcode
