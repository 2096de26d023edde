#include "delcode/marker_code.hpp"

#include <algorithm>
#include <string>

namespace delcode::marker {

std::vector<std::int8_t> MarkerLayout::mask() const {
    std::vector<std::int8_t> m(params.n, -1);
    for (const auto& f : fixed) m[f.index - 1] = static_cast<std::int8_t>(f.value);
    return m;
}

MarkerLayout layout(const CodeParams& params) {
    MarkerLayout out{params, {}, {}};
    const std::size_t blocks = params.num_blocks();
    const auto d = static_cast<std::size_t>(params.delta);
    std::vector<std::int8_t> m(params.n, -1);
    for (std::size_t j = 0; j < blocks; ++j) {
        const std::size_t begin = params.block_begin(j);
        const std::size_t len = params.block_length(j);
        if (j > 0)
            for (std::size_t i = 0; i <= d; ++i) m[begin + i] = 0;
        if (j + 1 < blocks)
            for (std::size_t i = len - d; i < len; ++i) m[begin + i] = 1;
    }
    out.fixed.reserve((2 * d + 1) * (blocks - 1));
    out.free.reserve(params.n - (2 * d + 1) * (blocks - 1));
    for (std::size_t i = 0; i < params.n; ++i) {
        if (m[i] < 0)
            out.free.push_back(i + 1);
        else
            out.fixed.push_back({i + 1, static_cast<std::uint8_t>(m[i])});
    }
    return out;
}

std::size_t redundancy(const CodeParams& params) {
    return (2 * static_cast<std::size_t>(params.delta) + 1) * (params.num_blocks() - 1);
}

std::size_t info_length(const CodeParams& params) { return params.n - redundancy(params); }

BitString encode(const BitString& info, const CodeParams& params) {
    if (info.size() != info_length(params))
        throw ParameterError("encode: info has " + std::to_string(info.size()) +
                             " bits, expected " + std::to_string(info_length(params)));
    const auto m = layout(params).mask();
    std::vector<std::uint8_t> x(params.n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < params.n; ++i)
        x[i] = m[i] < 0 ? info[k++] : static_cast<std::uint8_t>(m[i]);
    return BitString(std::move(x));
}

BitString extract_info(const BitString& x, const CodeParams& params) {
    if (x.size() != params.n) throw ParameterError("extract_info: length mismatch");
    const auto lay = layout(params);
    std::vector<std::uint8_t> info;
    info.reserve(lay.free.size());
    for (std::size_t pos : lay.free) info.push_back(x[pos - 1]);
    return BitString(std::move(info));
}

bool is_codeword(const BitString& x, const CodeParams& params) {
    if (x.size() != params.n)
        throw ParameterError("is_codeword: length " + std::to_string(x.size()) +
                             " != n = " + std::to_string(params.n));
    for (const auto& f : layout(params).fixed)
        if (x[f.index - 1] != f.value) return false;
    return true;
}

BitString mirror(const BitString& x, const CodeParams& params) {
    if (x.size() != params.n) throw ParameterError("mirror: length mismatch");
    BitString out = x;
    for (const auto& f : layout(params).fixed) out.set(f.index - 1, x[f.index - 1] ^ 1u);
    return out;
}

BlockDecision detect_block(std::span<const std::uint8_t> window, std::size_t ell, int delta) {
    BlockDecision dec;
    const auto d = static_cast<std::size_t>(delta);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t pos = ell - d + i;
        std::uint8_t bit = 0;
        if (pos < window.size())
            bit = window[pos];
        else
            dec.truncated = true;
        if (bit == 0) {
            dec.count = delta - static_cast<int>(i);
            return dec;
        }
    }
    return dec;
}

BoundaryResult decode_boundaries(const BitString& y, const CodeParams& params, DecodeMode mode) {
    const bool strict = mode == DecodeMode::strict;
    const std::size_t blocks = params.num_blocks();
    const std::size_t len = y.size();
    if (strict) {
        const std::size_t min_len = params.n - std::min(params.n, blocks * static_cast<std::size_t>(params.delta));
        if (len < min_len || len > params.n)
            throw MalformedInputError("decode: |y| = " + std::to_string(len) + " outside [" +
                                      std::to_string(min_len) + ", " + std::to_string(params.n) + "]");
    }

    BoundaryResult r;
    r.counts.counts.assign(blocks, 0);
    r.starts.assign(blocks, 0);
    r.suspect.assign(blocks, false);

    const auto bits = y.bits();
    std::size_t a = 0;  // 0-based start of the current block
    for (std::size_t j = 0; j + 1 < blocks; ++j) {
        r.starts[j] = a + 1;
        const auto window = bits.subspan(std::min(a, len), std::min(params.ell, len - std::min(a, len)));
        const BlockDecision dec = detect_block(window, params.ell, params.delta);
        if (dec.truncated) {
            if (strict)
                throw DesyncError("decode: block " + std::to_string(j + 1) + " runs past the end of y");
            r.suspect[j] = true;
        }
        r.counts.counts[j] = dec.count;
        std::size_t next = a + params.ell - static_cast<std::size_t>(dec.count);
        if (next > len) {
            next = len;
            r.suspect[j] = true;
        }
        a = next;
    }

    const std::size_t last = blocks - 1;
    r.starts[last] = a + 1;
    const auto last_len = static_cast<long long>(params.block_length(last));
    long long c = last_len - static_cast<long long>(len - a);
    if (c < 0 || c > params.delta) {
        if (strict)
            throw DesyncError("decode: last block count " + std::to_string(c) + " outside [0, " +
                              std::to_string(params.delta) + "]");
        r.suspect[last] = true;
        c = std::clamp(c, 0LL, last_len);
    }
    r.counts.counts[last] = static_cast<int>(c);

    r.segments.reserve(blocks);
    for (std::size_t j = 0; j < blocks; ++j) {
        const std::size_t begin = r.starts[j] - 1;
        const std::size_t end = j + 1 < blocks ? r.starts[j + 1] - 1 : len;
        r.segments.push_back(y.substr(begin, end - begin));
    }
    return r;
}

}  // namespace delcode::marker
