#include "delcode/levenshtein.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace delcode {

std::size_t levenshtein_dp(const BitString& a, const BitString& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::size_t levenshtein(const BitString& a, const BitString& b) {
    std::size_t lo = 0;
    std::size_t ha = a.size(), hb = b.size();
    while (lo < ha && lo < hb && a[lo] == b[lo]) ++lo;
    while (ha > lo && hb > lo && a[ha - 1] == b[hb - 1]) --ha, --hb;
    const std::size_t m = ha - lo;
    const std::size_t len = hb - lo;
    if (m == 0) return len;
    if (len == 0) return m;

    // Pattern = a[lo, ha), one bit-vector column per symbol of b.
    const std::size_t words = (m + 63) / 64;
    std::vector<std::uint64_t> peq[2] = {std::vector<std::uint64_t>(words, 0), std::vector<std::uint64_t>(words, 0)};
    for (std::size_t i = 0; i < m; ++i) peq[a[lo + i]][i / 64] |= std::uint64_t{1} << (i % 64);

    std::vector<std::uint64_t> pv(words, ~std::uint64_t{0}), mv(words, 0);
    const std::uint64_t last_bit = std::uint64_t{1} << ((m - 1) % 64);
    std::size_t score = m;

    for (std::size_t j = 0; j < len; ++j) {
        const auto& eqc = peq[b[lo + j]];
        int hin = 1;  // top row grows by one per column
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t eq = eqc[w];
            const std::uint64_t p = pv[w], mm = mv[w];
            const std::uint64_t xv = eq | mm;
            if (hin < 0) eq |= 1;
            const std::uint64_t xh = (((eq & p) + p) ^ p) | eq;
            std::uint64_t ph = mm | ~(xh | p);
            std::uint64_t mh = p & xh;
            const std::uint64_t high = w + 1 == words ? last_bit : std::uint64_t{1} << 63;
            int hout = 0;
            if (ph & high) hout = 1;
            else if (mh & high) hout = -1;
            ph <<= 1;
            mh <<= 1;
            if (hin < 0) mh |= 1;
            else if (hin > 0) ph |= 1;
            pv[w] = mh | ~(xv | ph);
            mv[w] = ph & xv;
            hin = hout;
        }
        score = static_cast<std::size_t>(static_cast<long long>(score) + hin);
    }
    return score;
}

}  // namespace delcode
