#include "delcode/trace_recon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "delcode/bma.hpp"

namespace delcode::trace {

namespace {

std::size_t isqrt(std::size_t v) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Whether writing v at free position i keeps every run within the limit,
// looking ahead through the forced bits that follow.
bool fits(const std::vector<std::uint8_t>& x, std::size_t i, std::uint8_t v,
          const std::vector<std::int8_t>& mask, std::size_t limit) {
    std::size_t run = 0;
    for (std::size_t j = i; j > 0 && x[j - 1] == v; --j) ++run;
    std::size_t ahead = 0;
    for (std::size_t j = i + 1; j < mask.size() && mask[j] == v; ++j) ++ahead;
    return run + 1 + ahead <= limit;
}

// -1: free position carries data, otherwise the stuffed bit.
int stuffed_bit(const std::vector<std::uint8_t>& x, std::size_t i,
                const std::vector<std::int8_t>& mask, std::size_t limit) {
    const bool ok0 = fits(x, i, 0, mask, limit);
    const bool ok1 = fits(x, i, 1, mask, limit);
    if (ok0 && ok1) return -1;
    if (!ok0 && !ok1) throw CapacityError("stuff: no bit fits at position " + std::to_string(i + 1));
    return ok0 ? 0 : 1;
}

ReconstructionReport reconstruct_impl(std::span<const BitString> traces, const TraceCodeParams& params,
                                      const ReconstructOptions& options, bool parallel) {
    const std::size_t t = traces.size();
    const std::size_t blocks = params.num_blocks();
    ReconstructionReport rep;
    rep.boundaries.resize(t);
    if (t == 0) {
        rep.x_hat = BitString(params.n, 0);
        rep.counts.assign(blocks, {});
        rep.suspect_blocks.assign(blocks, false);
        return rep;
    }

    const auto nt = static_cast<long long>(t);
#pragma omp parallel for schedule(static) if (parallel && t > 1)
    for (long long i = 0; i < nt; ++i)
        rep.boundaries[static_cast<std::size_t>(i)] =
            marker::decode_boundaries(traces[static_cast<std::size_t>(i)], params.detector,
                                      marker::DecodeMode::best_effort);

    rep.counts.assign(blocks, std::vector<int>(t, 0));
    rep.suspect_blocks.assign(blocks, false);
    std::vector<BitString> out(blocks);

    const auto nb = static_cast<long long>(blocks);
#pragma omp parallel for schedule(dynamic, 4) if (parallel && blocks > 1)
    for (long long jj = 0; jj < nb; ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        const std::size_t len = params.detector.block_length(j);
        bool suspect = false;
        int clean = -1;
        for (std::size_t i = 0; i < t; ++i) {
            const auto& b = rep.boundaries[i];
            rep.counts[j][i] = b.counts[j];
            suspect = suspect || b.suspect[j];
            if (clean < 0 && b.counts[j] == 0 && !b.suspect[j]) clean = static_cast<int>(i);
        }
        rep.suspect_blocks[j] = suspect;

        if (options.zero_del_shortcut && clean >= 0) {
            BitString seg = rep.boundaries[static_cast<std::size_t>(clean)].segments[j].substr(0, len);
            while (seg.size() < len) seg.push_back(0);
            out[j] = std::move(seg);
            continue;
        }
        TraceMatrix m(len);
        for (std::size_t i = 0; i < t; ++i) m.add_segment(rep.boundaries[i].segments[j]);
        out[j] = bma(m);
    }
    rep.x_hat = concat(out);
    return rep;
}

}  // namespace

TraceCodeParams TraceCodeParams::make(std::size_t n, double k, double alpha, int delta) {
    if (n < 2) throw ParameterError("trace code: n must be >= 2");
    if (!(k > 1.0)) throw ParameterError("trace code: k must be > 1");
    if (!(alpha > 0.5 && alpha <= 1.0)) throw ParameterError("trace code: alpha must lie in (0.5, 1]");
    if (delta < 2) throw ParameterError("trace code: delta must be >= 2");

    TraceCodeParams tp;
    tp.n = n;
    tp.k = k;
    tp.alpha = alpha;
    tp.delta = delta;
    const double na = std::pow(static_cast<double>(n), alpha);
    tp.p = k / na;
    if (!(tp.p > 0.0 && tp.p < 0.5))
        throw ParameterError("trace code: p = " + std::to_string(tp.p) + " outside (0, 0.5)");
    // Guard against pow landing just below an exact integer.
    tp.ell = static_cast<std::size_t>(std::floor(na / k * (1.0 + 1e-12)));
    const auto d2 = static_cast<std::size_t>(delta) * static_cast<std::size_t>(delta);
    if (tp.ell <= d2)
        throw ParameterError("trace code: ell = " + std::to_string(tp.ell) + " must exceed delta^2 = " +
                             std::to_string(d2));
    tp.run_limit = isqrt(tp.ell);
    const BlockMode mode = n % tp.ell == 0 ? BlockMode::strict : BlockMode::relaxed;
    tp.detector = CodeParams::make(delta - 1, tp.ell, n, mode);
    return tp;
}

bool is_member(const BitString& x, const TraceCodeParams& params) {
    return marker::is_codeword(x, params.detector) && max_run_length(x) <= params.run_limit;
}

ConstrainedSampler make_codeword_sampler(const TraceCodeParams& params) {
    return ConstrainedSampler(marker::layout(params.detector).mask(), params.run_limit);
}

BitString sample_codeword(const TraceCodeParams& params, std::uint64_t seed) {
    auto stream = make_stream(seed);
    return make_codeword_sampler(params).sample(stream);
}

BitString sample_codeword_rejection(const TraceCodeParams& params, std::uint64_t seed,
                                    std::size_t max_attempts) {
    const auto mask = marker::layout(params.detector).mask();
    auto stream = make_stream(seed);
    std::vector<std::uint8_t> x(params.n);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        for (std::size_t i = 0; i < params.n; ++i)
            x[i] = mask[i] < 0 ? static_cast<std::uint8_t>(stream() >> 63) : static_cast<std::uint8_t>(mask[i]);
        if (max_run_length(std::span<const std::uint8_t>(x)) <= params.run_limit) return BitString(x);
    }
    throw SamplingError("sample_codeword_rejection: " + std::to_string(max_attempts) +
                        " consecutive rejections");
}

ReconstructionReport reconstruct(std::span<const BitString> traces, const TraceCodeParams& params,
                                 const ReconstructOptions& options) {
    return reconstruct_impl(traces, params, options, true);
}

ReconstructionReport reconstruct_serial(std::span<const BitString> traces, const TraceCodeParams& params,
                                        const ReconstructOptions& options) {
    return reconstruct_impl(traces, params, options, false);
}

std::string report_to_json(const ReconstructionReport& report) {
    nlohmann::json j;
    j["x_hat"] = report.x_hat.str();
    j["counts"] = report.counts;
    j["suspect"] = report.suspect_blocks;
    auto starts = nlohmann::json::array();
    for (const auto& b : report.boundaries) starts.push_back(b.starts);
    j["starts"] = starts;
    return j.dump();
}

BitString stuff_encode(const BitString& info, const TraceCodeParams& params) {
    const std::size_t cap = stuff_capacity(params);
    if (info.size() > cap)
        throw CapacityError("stuff_encode: " + std::to_string(info.size()) + " info bits exceed capacity " +
                            std::to_string(cap));
    const auto mask = marker::layout(params.detector).mask();
    std::vector<std::uint8_t> x(params.n, 0);
    std::size_t used = 0;
    for (std::size_t i = 0; i < params.n; ++i) {
        if (mask[i] >= 0) {
            x[i] = static_cast<std::uint8_t>(mask[i]);
            continue;
        }
        const int s = stuffed_bit(x, i, mask, params.run_limit);
        if (s >= 0) {
            x[i] = static_cast<std::uint8_t>(s);
        } else if (used < info.size()) {
            x[i] = info[used++];
        } else {
            x[i] = i > 0 ? static_cast<std::uint8_t>(x[i - 1] ^ 1u) : 0;
        }
    }
    if (used < info.size()) throw CapacityError("stuff_encode: ran out of free positions");
    return BitString(std::move(x));
}

BitString stuff_decode(const BitString& x, std::size_t info_bits, const TraceCodeParams& params) {
    if (x.size() != params.n) throw ParameterError("stuff_decode: length mismatch");
    const auto mask = marker::layout(params.detector).mask();
    const std::vector<std::uint8_t> bits(x.begin(), x.end());
    std::vector<std::uint8_t> info;
    info.reserve(info_bits);
    for (std::size_t i = 0; i < params.n && info.size() < info_bits; ++i) {
        if (mask[i] >= 0) continue;
        if (stuffed_bit(bits, i, mask, params.run_limit) < 0) info.push_back(bits[i]);
    }
    if (info.size() < info_bits) throw CapacityError("stuff_decode: codeword holds fewer info bits");
    return BitString(std::move(info));
}

std::size_t stuff_capacity(const TraceCodeParams& params) {
    const std::size_t f = marker::info_length(params.detector);
    const std::size_t b = params.num_blocks();
    const std::size_t loss = (f + params.run_limit - 1) / params.run_limit + 2 * (b - 1);
    return f > loss ? f - loss : 0;
}

}  // namespace delcode::trace
