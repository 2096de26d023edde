#include "delcode/verifier.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "delcode/marker_code.hpp"

namespace delcode::verify {
namespace {

// Subsets of {first, ..., first + len - 1} of size <= max_size, in
// lexicographic order by size then elements.
std::vector<std::vector<std::size_t>> block_subsets(std::size_t first, std::size_t len, int max_size) {
    std::vector<std::vector<std::size_t>> out{{}};
    std::vector<std::size_t> idx;
    for (int k = 1; k <= max_size && static_cast<std::size_t>(k) <= len; ++k) {
        idx.resize(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        while (true) {
            std::vector<std::size_t> s(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) s[i] = first + idx[i];
            out.push_back(std::move(s));
            std::size_t i = idx.size();
            while (i > 0 && idx[i - 1] == len - idx.size() + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t m = i; m < idx.size(); ++m) idx[m] = idx[m - 1] + 1;
        }
    }
    return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct Source {
    CountVector counts;
    std::uint32_t codeword;
    std::uint32_t pattern;

    bool earlier_than(const Source& o) const {
        return codeword != o.codeword ? codeword < o.codeword : pattern < o.pattern;
    }
};

using OutputMap = std::unordered_map<std::string, std::vector<Source>>;

void record(OutputMap& map, std::string key, const Source& src) {
    auto& sources = map[std::move(key)];
    for (auto& s : sources) {
        if (s.counts == src.counts) {
            if (src.earlier_than(s)) s = src;
            return;
        }
    }
    sources.push_back(src);
}

void merge_into(OutputMap& dst, OutputMap&& src) {
    for (auto& [key, sources] : src)
        for (const auto& s : sources) record(dst, key, s);
}

void accumulate(OutputMap& map, std::span<const BitString> code, std::size_t cw,
                const std::vector<DeletionPattern>& patterns, const std::vector<CountVector>& counts) {
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        const BitString y = apply_deletions(code[cw], patterns[p]);
        record(map, y.str(), Source{counts[p], static_cast<std::uint32_t>(cw), static_cast<std::uint32_t>(p)});
    }
}

DetectabilityVerdict finalize(const OutputMap& map, std::span<const BitString> code,
                              const std::vector<DeletionPattern>& patterns, std::size_t pairs) {
    DetectabilityVerdict v;
    v.pairs_checked = pairs;
    const std::string* best = nullptr;
    for (const auto& [key, sources] : map) {
        if (sources.size() < 2) continue;
        if (!best || key.size() < best->size() || (key.size() == best->size() && key < *best))
            best = &key;
    }
    if (!best) return v;

    auto sources = map.at(*best);
    std::sort(sources.begin(), sources.end(),
              [](const Source& a, const Source& b) { return a.earlier_than(b); });
    const Source& s1 = sources[0];
    const Source& s2 = sources[1];
    v.ok = false;
    v.witness = CollisionWitness{BitString::parse(*best), s1.counts, s2.counts,
                                 code[s1.codeword], code[s2.codeword],
                                 patterns[s1.pattern], patterns[s2.pattern]};
    return v;
}

struct Enumeration {
    std::vector<DeletionPattern> patterns;
    std::vector<CountVector> counts;
};

Enumeration prepare(std::span<const BitString> code, const CodeParams& params, std::size_t cap) {
    for (const auto& x : code)
        if (x.size() != params.n) throw ParameterError("detects_exhaustive: codeword length != n");
    const std::size_t per_word = count_patterns(params);
    if (!code.empty() && per_word > cap / code.size())
        throw CapacityError("detects_exhaustive: " + std::to_string(code.size()) + " codewords x " +
                            std::to_string(per_word) + " patterns exceeds cap " + std::to_string(cap));
    Enumeration e;
    e.patterns = enumerate_patterns(params);
    e.counts.reserve(e.patterns.size());
    for (const auto& p : e.patterns) e.counts.push_back(count_per_block(p, params).counts);
    return e;
}

}  // namespace

std::size_t count_patterns(const CodeParams& params) {
    std::size_t total = 1;
    for (std::size_t j = 0; j < params.num_blocks(); ++j) {
        std::size_t per_block = 0;
        for (int k = 0; k <= params.delta; ++k)
            per_block += binomial(params.block_length(j), static_cast<std::size_t>(k));
        total *= per_block;
    }
    return total;
}

std::vector<DeletionPattern> enumerate_patterns(const CodeParams& params) {
    const std::size_t blocks = params.num_blocks();
    std::vector<std::vector<std::vector<std::size_t>>> choices;
    choices.reserve(blocks);
    for (std::size_t j = 0; j < blocks; ++j)
        choices.push_back(block_subsets(params.block_begin(j) + 1, params.block_length(j), params.delta));

    std::vector<DeletionPattern> out;
    out.reserve(count_patterns(params));
    std::vector<std::size_t> odo(blocks, 0);
    while (true) {
        std::vector<std::size_t> pos;
        for (std::size_t j = 0; j < blocks; ++j)
            pos.insert(pos.end(), choices[j][odo[j]].begin(), choices[j][odo[j]].end());
        out.emplace_back(std::move(pos));
        std::size_t j = blocks;
        while (j > 0) {
            if (++odo[j - 1] < choices[j - 1].size()) break;
            odo[j - 1] = 0;
            --j;
        }
        if (j == 0) break;
    }
    return out;
}

std::vector<BitString> enumerate_marker_code(const CodeParams& params) {
    const std::size_t k = marker::info_length(params);
    if (k > 26) throw CapacityError("enumerate_marker_code: 2^" + std::to_string(k) + " codewords");
    std::vector<BitString> code;
    code.reserve(std::size_t{1} << k);
    for (std::size_t v = 0; v < (std::size_t{1} << k); ++v) {
        BitString info(k);
        for (std::size_t i = 0; i < k; ++i) info.set(i, static_cast<std::uint8_t>((v >> (k - 1 - i)) & 1u));
        code.push_back(marker::encode(info, params));
    }
    return code;
}

DetectabilityVerdict detects_exhaustive_serial(std::span<const BitString> code, const CodeParams& params,
                                               std::size_t cap) {
    const Enumeration e = prepare(code, params, cap);
    OutputMap map;
    for (std::size_t cw = 0; cw < code.size(); ++cw) accumulate(map, code, cw, e.patterns, e.counts);
    return finalize(map, code, e.patterns, code.size() * e.patterns.size());
}

DetectabilityVerdict detects_exhaustive(std::span<const BitString> code, const CodeParams& params,
                                        std::size_t cap) {
    const Enumeration e = prepare(code, params, cap);
    OutputMap global;
    const auto words = static_cast<long long>(code.size());
#pragma omp parallel
    {
        OutputMap local;
#pragma omp for schedule(dynamic, 4) nowait
        for (long long cw = 0; cw < words; ++cw)
            accumulate(local, code, static_cast<std::size_t>(cw), e.patterns, e.counts);
#pragma omp critical(delcode_verify_merge)
        merge_into(global, std::move(local));
    }
    return finalize(global, code, e.patterns, code.size() * e.patterns.size());
}

bool check_boundary_conditions(const BitString& x, const CodeParams& params) {
    if (x.size() != params.n) throw ParameterError("check_boundary_conditions: length mismatch");
    const auto d = static_cast<std::size_t>(params.delta);
    for (std::size_t j = 0; j + 1 < params.num_blocks(); ++j) {
        const std::size_t end = params.block_begin(j) + params.block_length(j);  // 0-based one past
        const std::size_t next = params.block_begin(j + 1);
        for (std::size_t i1 = end - d; i1 < end; ++i1)
            for (std::size_t i2 = next; i2 < next + d; ++i2)
                if (x[i1] == x[i2]) return false;
    }
    return true;
}

bool check_bbd_condition(const BitString& x, const CodeParams& params) {
    if (!check_boundary_conditions(x, params)) return false;
    const auto d = static_cast<std::size_t>(params.delta);
    for (std::size_t j = 0; j + 1 < params.num_blocks(); ++j) {
        const std::size_t end = params.block_begin(j) + params.block_length(j);
        const std::size_t probe = params.block_begin(j + 1) + d;
        if (probe >= params.n) continue;
        for (std::size_t i1 = end - d; i1 < end; ++i1)
            if (x[i1] == x[probe]) return false;
    }
    return true;
}

double epsilon(int delta, std::size_t ell) {
    if (delta < 1 || ell <= 2 * static_cast<std::size_t>(delta))
        throw ParameterError("epsilon: need ell > 2*delta");
    const double free_states = std::exp2(static_cast<double>(ell) - 2.0 * delta);
    return std::log2(free_states / (free_states - 1.0));
}

double lower_bound_general(const CodeParams& params) {
    if (params.mode != BlockMode::strict) throw ParameterError("lower_bound_general: strict params required");
    const double blocks = static_cast<double>(params.num_blocks());
    const double two_delta = 2.0 * params.delta;
    if (params.num_blocks() == 2) return two_delta;
    if (params.ell % (2 * static_cast<std::size_t>(params.delta)) != 0) return two_delta * (blocks - 1.0);
    const double eps = epsilon(params.delta, params.ell);
    return (two_delta + eps) * (blocks - 1.0) - eps;
}

std::size_t lower_bound_bbd(const CodeParams& params) {
    if (params.mode != BlockMode::strict) throw ParameterError("lower_bound_bbd: strict params required");
    return (2 * static_cast<std::size_t>(params.delta) + 1) * (params.num_blocks() - 1);
}

}  // namespace delcode::verify
