#include "delcode/channel.hpp"

#include <cmath>
#include <string>

namespace delcode {

ChannelParams ChannelParams::make(double k, double alpha, std::size_t n) {
    if (!(k > 1.0)) throw ParameterError("channel: need k > 1");
    if (!(alpha > 0.5 && alpha <= 1.0)) throw ParameterError("channel: need alpha in (0.5, 1]");
    if (n < 1) throw ParameterError("channel: need n >= 1");
    const double p = k / std::pow(static_cast<double>(n), alpha);
    if (!(p > 0.0 && p < 0.5))
        throw ParameterError("channel: p = k/n^alpha = " + std::to_string(p) + " not in (0, 0.5)");
    return ChannelParams{k, alpha, n, p};
}

namespace {
void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("transmit: p must lie in [0, 1]");
}
}  // namespace

BitString transmit(const BitString& x, double p, RandomStream& stream) {
    check_probability(p);
    std::vector<std::uint8_t> out;
    out.reserve(x.size());
    for (auto bit : x)
        if (!(uniform01(stream) < p)) out.push_back(bit);
    return BitString(std::move(out));
}

Transmission transmit_tracked(const BitString& x, double p, RandomStream& stream) {
    check_probability(p);
    std::vector<std::uint8_t> out;
    std::vector<std::size_t> deleted;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (uniform01(stream) < p)
            deleted.push_back(i + 1);
        else
            out.push_back(x[i]);
    }
    return Transmission{BitString(std::move(out)), DeletionPattern(std::move(deleted))};
}

TraceSet gen_traces(const BitString& x, double p, int t, std::uint64_t seed) {
    if (t < 1) throw ParameterError("gen_traces: need t >= 1");
    check_probability(p);
    TraceSet set;
    set.seed = seed;
    set.traces.resize(static_cast<std::size_t>(t));
    set.deleted.resize(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        auto stream = make_stream(substream(seed, static_cast<std::uint64_t>(i)));
        auto tx = transmit_tracked(x, p, stream);
        set.traces[static_cast<std::size_t>(i)] = std::move(tx.y);
        set.deleted[static_cast<std::size_t>(i)] = std::move(tx.deleted);
    }
    return set;
}

TraceSet gen_traces(const BitString& x, const ChannelParams& ch, int t, std::uint64_t seed) {
    return gen_traces(x, ch.p, t, seed);
}

}  // namespace delcode
