#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "delcode/channel.hpp"
#include "delcode/constrained.hpp"
#include "delcode/core.hpp"
#include "delcode/marker_code.hpp"

namespace delcode::trace {

/// Code for trace reconstruction over a deletion channel with p = k/n^alpha.
/// Blocks have length ell = floor(n^alpha / k) (i.e. floor(1/p)); codewords
/// carry the marker pattern for delta - 1 deletions per block and have no
/// run longer than floor(sqrt(ell)).
struct TraceCodeParams {
    std::size_t n = 0;
    double k = 0;
    double alpha = 0;
    int delta = 0;
    double p = 0;
    std::size_t ell = 0;
    std::size_t run_limit = 0;
    CodeParams detector;  // (delta - 1, ell, n), relaxed when ell does not divide n

    static TraceCodeParams make(std::size_t n, double k, double alpha, int delta);

    std::size_t num_blocks() const noexcept { return detector.num_blocks(); }
};

bool is_member(const BitString& x, const TraceCodeParams& params);

/// Exact uniform sampler over the code (markers fixed, run limit enforced).
ConstrainedSampler make_codeword_sampler(const TraceCodeParams& params);

/// Uniform codeword for `seed`. Builds a fresh sampler; reuse
/// make_codeword_sampler when drawing many codewords.
BitString sample_codeword(const TraceCodeParams& params, std::uint64_t seed);

/// Reference sampler: draws the free bits uniformly and rejects on a run
/// violation, giving up after max_attempts. Only practical when the run
/// constraint rarely bites; kept as an independent check of the DP sampler.
BitString sample_codeword_rejection(const TraceCodeParams& params, std::uint64_t seed,
                                    std::size_t max_attempts = 10'000);

struct ReconstructOptions {
    /// Emit a segment verbatim when some trace reports zero deletions for the
    /// block (and the block is not suspect) instead of running BMA.
    bool zero_del_shortcut = false;
};

struct ReconstructionReport {
    BitString x_hat;                                    // always length n
    std::vector<marker::BoundaryResult> boundaries;     // one per trace
    std::vector<std::vector<int>> counts;               // [block][trace]
    std::vector<bool> suspect_blocks;                   // any trace suspect for the block
};

/// Boundary recovery on every trace, BMA per block, concatenation.
/// Never throws on channel outcomes; mis-synchronised blocks are flagged.
ReconstructionReport reconstruct(std::span<const BitString> traces, const TraceCodeParams& params,
                                 const ReconstructOptions& options = {});
inline ReconstructionReport reconstruct(const TraceSet& traces, const TraceCodeParams& params,
                                        const ReconstructOptions& options = {}) {
    return reconstruct(traces.traces, params, options);
}

/// Single-threaded reference for reconstruct.
ReconstructionReport reconstruct_serial(std::span<const BitString> traces, const TraceCodeParams& params,
                                        const ReconstructOptions& options = {});

/// {"x_hat": "...", "counts": [[...], ...], "suspect": [...], "starts": [[...], ...]}
std::string report_to_json(const ReconstructionReport& report);

/// Deterministic information-to-codeword map for the trace code.
///
/// Free positions are filled left to right. Before each free position the
/// encoder checks both candidate bits against the run limit, counting the
/// current run and any forced bits that immediately follow. If one bit
/// would break the limit, the position is a stuffed bit holding the other
/// value and no information is consumed. Stuffing depends only on bits
/// already written, which makes stuff_decode its exact inverse. After the
/// info is consumed the rest is filled with alternating filler under the
/// same rule.
BitString stuff_encode(const BitString& info, const TraceCodeParams& params);

/// Recovers the first `info_bits` information bits from a stuffed codeword.
BitString stuff_decode(const BitString& x, std::size_t info_bits, const TraceCodeParams& params);

/// Info length that always fits:
///   F - ceil(F / run_limit) - 2 (B - 1)
/// where F is the number of free positions and B the number of blocks.
/// Stuffs away from block boundaries are at least run_limit free positions
/// apart, and each boundary adds at most two (one before the trailing ones,
/// one after the leading zeros). Returns 0 when the formula is not positive.
std::size_t stuff_capacity(const TraceCodeParams& params);

}  // namespace delcode::trace
