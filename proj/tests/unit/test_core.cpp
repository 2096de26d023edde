#include <doctest.h>

#include <random>

#include "delcode/core.hpp"
#include "oracles.hpp"

using namespace delcode;

namespace {
BitString B(const char* s) { return BitString::parse(s); }

BitString random_bits(std::mt19937_64& g, std::size_t n) {
    BitString x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(static_cast<std::uint8_t>(g() & 1));
    return x;
}

DeletionPattern random_pattern(std::mt19937_64& g, std::size_t n, double p) {
    std::bernoulli_distribution del(p);
    std::vector<std::size_t> pos;
    for (std::size_t i = 1; i <= n; ++i)
        if (del(g)) pos.push_back(i);
    return DeletionPattern(pos);
}
}  // namespace

TEST_CASE("bitstring parsing") {
    CHECK(B("10101 00111").str() == "1010100111");
    CHECK(B("").empty());
    CHECK_THROWS_AS(B("1021"), ParameterError);
    CHECK_THROWS_AS(BitString(std::vector<std::uint8_t>{0, 2}), ParameterError);
    CHECK(B("0110").substr(2, 10) == B("10"));
}

TEST_CASE("code params") {
    CHECK_NOTHROW(CodeParams::make(1, 5, 20));
    CHECK_THROWS_AS(CodeParams::make(1, 2, 20), ParameterError);   // 2 delta < ell
    CHECK_THROWS_AS(CodeParams::make(1, 11, 20), ParameterError);  // ell <= n/2
    CHECK_THROWS_AS(CodeParams::make(1, 6, 20), ParameterError);   // ell | n in strict mode
    CHECK_NOTHROW(CodeParams::make(1, 6, 20, BlockMode::relaxed));  // last block of 2 >= delta+1
    CHECK_THROWS_AS(CodeParams::make(2, 6, 20, BlockMode::relaxed), ParameterError);
    const auto p = CodeParams::make(1, 6, 20, BlockMode::relaxed);
    CHECK(p.num_blocks() == 4);
    CHECK(p.block_length(3) == 2);
}

TEST_CASE("split_blocks") {
    const auto blocks = split_blocks(B("10101 00111 00011 00100"), 5);
    REQUIRE(blocks.size() == 4);
    CHECK(blocks[0] == B("10101"));
    CHECK(blocks[1] == B("00111"));
    CHECK(blocks[2] == B("00011"));
    CHECK(blocks[3] == B("00100"));

    const auto x = B("0110");
    CHECK(split_blocks(x, 4) == std::vector<BitString>{x});

    const auto r = split_blocks(B("110"), 2, BlockMode::relaxed);
    CHECK(r == std::vector<BitString>{B("11"), B("0")});

    CHECK_THROWS_AS(split_blocks(x, 0), ParameterError);
    CHECK_THROWS_AS(split_blocks(B("110"), 2), ParameterError);
}

TEST_CASE("apply_deletions") {
    const auto x = B("10101001110001100100");
    CHECK(apply_deletions(x, DeletionPattern({3, 15, 16})) == B("10010011100010100"));
    CHECK(apply_deletions(x, DeletionPattern{}) == x);
    std::vector<std::size_t> all(x.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i + 1;
    CHECK(apply_deletions(x, DeletionPattern(all)).empty());
    CHECK_THROWS_AS(apply_deletions(x, DeletionPattern({21})), ParameterError);
    CHECK_THROWS_AS(DeletionPattern({3, 3}), ParameterError);
    CHECK_THROWS_AS(DeletionPattern({0}), ParameterError);
}

TEST_CASE("count_per_block") {
    const auto c = count_per_block(DeletionPattern({3, 15, 16}), CodeParams::make(1, 5, 20));
    CHECK(c.counts.counts == std::vector<int>{1, 0, 1, 1});
    CHECK_FALSE(c.exceeds_budget);
    CHECK(count_per_block(DeletionPattern{}, CodeParams::make(1, 5, 20)).counts.counts ==
          std::vector<int>{0, 0, 0, 0});
    const auto c2 = count_per_block(DeletionPattern({1, 2}), CodeParams{2, 3, 6, BlockMode::strict});
    CHECK(c2.counts.counts == std::vector<int>{2, 0});
    const auto over = count_per_block(DeletionPattern({1, 2}), CodeParams::make(1, 5, 20));
    CHECK(over.exceeds_budget);
}

TEST_CASE("max_run_length") {
    CHECK(max_run_length(B("0000")) == 4);
    CHECK(max_run_length(B("0101")) == 1);
    CHECK(max_run_length(B("10010011100010100")) == 3);
    CHECK(max_run_length(B("")) == 0);
    for (const auto& s : oracle::all_strings(8)) CHECK(max_run_length(B(s.c_str())) == oracle::longest_run(s));
}

TEST_CASE("deletion properties on random inputs") {
    std::mt19937_64 g(7);
    const auto params = CodeParams::make(3, 50, 500);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto x = random_bits(g, 500);
        const auto d = random_pattern(g, 500, 0.05);
        const auto y = apply_deletions(x, d);
        CHECK(y.size() == x.size() - d.size());
        CHECK(is_subsequence(y, x));
        CHECK(count_per_block(d, params).counts.total() == static_cast<int>(d.size()));
        CHECK(concat(split_blocks(x, 50)) == x);
        const auto r = split_blocks(x.substr(0, 437), 50, BlockMode::relaxed);
        CHECK(concat(r) == x.substr(0, 437));
    }
}

TEST_CASE("is_subsequence") {
    CHECK(is_subsequence(B("101"), B("1001")));
    CHECK_FALSE(is_subsequence(B("111"), B("1001")));
    CHECK(is_subsequence(B(""), B("")));
}
