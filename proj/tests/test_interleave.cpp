#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>

#include "correlation.hpp"
#include "doctest.h"
#include "interleave.hpp"

using namespace pcbi;

namespace {

std::vector<int> paper_corr_positions() {
    // K_c = 36 correlated positions out of K = 64; the block/bit arithmetic
    // depends only on the count, positions 29..64 keep checks readable.
    std::vector<int> v;
    for (int p = 29; p <= 64; ++p) v.push_back(p);
    return v;
}

std::vector<std::vector<uint8_t>> random_frame(std::mt19937& rng, int blocks, int len) {
    std::vector<std::vector<uint8_t>> f(blocks, std::vector<uint8_t>(len));
    for (auto& b : f)
        for (auto& bit : b) bit = rng() & 1;
    return f;
}

// Sources feeding one polar block, keyed by position.
std::vector<int> sources_of(const InterleaverMap& m, int polar_block) {
    std::vector<int> src(m.polar_info_len + 1, 0);
    for (int b = 1; b <= m.ldpc_blocks; ++b)
        for (int i = 1; i <= m.ldpc_len; ++i) {
            int p, q;
            m.forward_of(b, i, &p, &q);
            if (p == polar_block) src[q] = b;
        }
    return src;
}

void check_injective_total(const InterleaverMap& m) {
    std::set<int32_t> seen;
    for (int32_t f : m.forward) {
        REQUIRE(f >= 0);
        REQUIRE(f < int32_t(m.polar_blocks) * m.polar_info_len);
        CHECK(seen.insert(f).second);
    }
    CHECK(int(seen.size()) + m.padding_count == m.polar_blocks * m.polar_info_len);
    CHECK(int(m.forward.size()) == m.ldpc_blocks * m.ldpc_len);
}

}  // namespace

TEST_CASE("blind interleaving is the transpose map") {
    const InterleaverMap m = build_bi_map(155, 64);
    CHECK(m.ldpc_blocks == 64);
    CHECK(m.polar_blocks == 155);
    CHECK(m.padding_count == 0);
    for (int b = 1; b <= 64; ++b)
        for (int i = 1; i <= 155; ++i) {
            int p, q;
            m.forward_of(b, i, &p, &q);
            CHECK(p == i);
            CHECK(q == b);
        }
    // Every polar block draws its K bits from K distinct LDPC blocks.
    for (int p = 1; p <= m.polar_blocks; ++p) {
        const std::vector<int> src = sources_of(m, p);
        std::set<int> distinct(src.begin() + 1, src.end());
        CHECK(int(distinct.size()) == 64);
    }
    check_injective_total(m);
}

TEST_CASE("direct concatenation packs sequentially") {
    const InterleaverMap m = build_direct_map(155, 64);
    CHECK(m.ldpc_blocks == 64);
    CHECK(m.polar_blocks == 155);  // 64*155/64
    CHECK(m.padding_count == 0);
    int p, q;
    m.forward_of(1, 1, &p, &q);
    CHECK(p == 1);
    CHECK(q == 1);
    m.forward_of(1, 64, &p, &q);
    CHECK(p == 1);
    CHECK(q == 64);
    m.forward_of(1, 65, &p, &q);
    CHECK(p == 2);
    CHECK(q == 1);
    m.forward_of(1, 128, &p, &q);
    CHECK(p == 2);
    CHECK(q == 64);
    m.forward_of(1, 129, &p, &q);
    CHECK(p == 3);
    CHECK(q == 1);
    m.forward_of(1, 155, &p, &q);
    CHECK(p == 3);
    CHECK(q == 27);
    m.forward_of(2, 1, &p, &q);
    CHECK(p == 3);
    CHECK(q == 28);
    check_injective_total(m);
}

TEST_CASE("CBI reproduces the worked 155/64/36 frame") {
    const InterleaverMap m = build_cbi_map(155, 64, paper_corr_positions());
    CHECK(m.ldpc_blocks == 37);    // K_c + 1
    CHECK(m.polar_blocks == 101);  // 2*37 + 27
    CHECK(m.padding_count == 729);
    CHECK((m.polar_blocks + m.ldpc_blocks - 1) / m.ldpc_blocks == 3);  // average delay bound
    check_injective_total(m);

    int p, q;
    // First round, polar block i: run is bits i..i+27 of block i.
    for (int i = 1; i <= 37; ++i)
        for (int t = 0; t < 28; ++t) {
            m.forward_of(i, i + t, &p, &q);
            CHECK(p == i);
            CHECK(q == t + 1);  // uncorrelated positions are 1..28 here
        }
    // Polar block 1: correlated position #p takes bit 1 of block p+1.
    for (int b = 2; b <= 37; ++b) {
        m.forward_of(b, 1, &p, &q);
        CHECK(p == 1);
        CHECK(q == 28 + (b - 1));
    }
    // Second round: polar block 38's run starts at bit 65 of block 1.
    m.forward_of(1, 65, &p, &q);
    CHECK(p == 38);
    CHECK(q == 1);
    m.forward_of(1, 92, &p, &q);
    CHECK(p == 38);
    CHECK(q == 28);
    // And its correlated positions take bit 65 of every other block.
    for (int b = 2; b <= 37; ++b) {
        m.forward_of(b, 65, &p, &q);
        CHECK(p == 38);
        CHECK(q == 28 + (b - 1));
    }
    // Partial round: polar block 75 = tail run of block 1, bits 129..155.
    m.forward_of(1, 129, &p, &q);
    CHECK(p == 75);
    CHECK(q == 1);
    m.forward_of(1, 155, &p, &q);
    CHECK(p == 75);
    CHECK(q == 27);
}

TEST_CASE("CBI breaks correlation in every polar block") {
    const std::vector<int> positions = paper_corr_positions();
    const InterleaverMap m = build_cbi_map(155, 64, positions);
    const std::set<int> corr(positions.begin(), positions.end());
    for (int p = 1; p <= m.polar_blocks; ++p) {
        const std::vector<int> src = sources_of(m, p);
        std::set<int> corr_sources;
        std::set<int> run_sources;
        for (int q = 1; q <= m.polar_info_len; ++q) {
            if (src[q] == 0) continue;  // padding
            if (corr.count(q)) {
                CHECK(corr_sources.insert(src[q]).second);  // pairwise distinct
            } else {
                run_sources.insert(src[q]);
            }
        }
        CHECK(run_sources.size() <= 1);  // one uncorrelated source block
        if (!run_sources.empty()) CHECK(corr_sources.count(*run_sources.begin()) == 0);
        if (p <= 74) {  // full rounds touch all K_n blocks
            CHECK(int(corr_sources.size()) == 36);
            CHECK(run_sources.size() == 1);
        }
    }
}

TEST_CASE("apply and invert round trip") {
    std::mt19937 rng(3);
    const std::vector<int> corr = paper_corr_positions();
    for (int scheme = 0; scheme < 3; ++scheme) {
        const InterleaverMap m = scheme == 0   ? build_direct_map(155, 64)
                                 : scheme == 1 ? build_bi_map(155, 64)
                                               : build_cbi_map(155, 64, corr);
        for (int trial = 0; trial < 20; ++trial) {
            const auto frame = random_frame(rng, m.ldpc_blocks, m.ldpc_len);
            const auto polar = apply_map(m, frame, 0);
            CHECK(int(polar.size()) == m.polar_blocks);
            CHECK(invert_map(m, polar) == frame);
        }
    }
}

TEST_CASE("single flips map one to one, padding flips vanish") {
    std::mt19937 rng(4);
    const InterleaverMap m = build_cbi_map(155, 64, paper_corr_positions());
    const auto frame = random_frame(rng, m.ldpc_blocks, m.ldpc_len);
    auto polar = apply_map(m, frame, 0);

    int flips = 0;
    for (int p = 1; p <= m.polar_blocks && flips < 50; ++p)
        for (int q = 1; q <= m.polar_info_len && flips < 50; ++q) {
            if ((rng() % 97) != 0) continue;
            auto mutated = polar;
            mutated[p - 1][q - 1] ^= 1;
            const auto back = invert_map(m, mutated);
            int diff = 0;
            for (int b = 0; b < m.ldpc_blocks; ++b)
                for (int i = 0; i < m.ldpc_len; ++i) diff += back[b][i] != frame[b][i];
            CHECK(diff == (m.is_padding(p, q) ? 0 : 1));
            ++flips;
        }
}

TEST_CASE("padding positions are exactly the unmapped polar coordinates") {
    const InterleaverMap m = build_cbi_map(155, 64, paper_corr_positions());
    int pad = 0;
    for (int p = 1; p <= m.polar_blocks; ++p)
        for (int q = 1; q <= m.polar_info_len; ++q) pad += m.is_padding(p, q) ? 1 : 0;
    CHECK(pad == m.padding_count);

    // Pad value lands on every padding position.
    std::mt19937 rng(9);
    const auto frame = random_frame(rng, m.ldpc_blocks, m.ldpc_len);
    const auto polar = apply_map(m, frame, 1);
    for (int p = 1; p <= m.polar_blocks; ++p)
        for (int q = 1; q <= m.polar_info_len; ++q)
            if (m.is_padding(p, q)) CHECK(polar[p - 1][q - 1] == 1);
}

TEST_CASE("CBI parameter sweep keeps the bijection") {
    std::mt19937 rng(11);
    std::vector<std::tuple<int, int, int>> cases = {
        {155, 64, 36}, {155, 64, 0},  {64, 64, 10}, {8, 3, 1},   {100, 7, 3},
        {31, 8, 7},    {17, 4, 0},    {155, 64, 63}, {9, 2, 1},  {200, 64, 50},
        {10, 10, 4},   {1, 1, 0},     {7, 3, 2},     {1000, 64, 36}};
    for (int t = 0; t < 150; ++t) {
        const int k = 1 + int(rng() % 60);
        const int nl = 1 + int(rng() % 300);
        const int kc = int(rng() % k);
        cases.emplace_back(nl, k, kc);
    }
    for (const auto& [nl, k, kc] : cases) {
        std::vector<int> pool(k);
        for (int i = 0; i < k; ++i) pool[i] = i + 1;
        for (int i = 0; i < kc; ++i) std::swap(pool[i], pool[i + rng() % (k - i)]);
        std::vector<int> corr(pool.begin(), pool.begin() + kc);
        std::sort(corr.begin(), corr.end());
        const InterleaverMap m = build_cbi_map(nl, k, corr);
        const int n_d = nl / k, mo = nl % k, k_n = kc + 1;
        CHECK(m.ldpc_blocks == k_n);
        CHECK(m.polar_blocks == n_d * k_n + (mo ? mo : 0));
        check_injective_total(m);
        if (mo <= k_n && m.polar_blocks > 0) {
            const int delay = (m.polar_blocks + k_n - 1) / k_n;
            CHECK(delay <= n_d + 1);
        }
    }
}

TEST_CASE("map construction rejects bad parameters") {
    CHECK_THROWS_AS(build_cbi_map(155, 64, std::vector<int>(64, 1)), std::invalid_argument);
    CHECK_THROWS_AS(build_cbi_map(155, 64, {0, 5}), std::invalid_argument);
    CHECK_THROWS_AS(build_cbi_map(155, 64, {5, 5}), std::invalid_argument);
    CHECK_THROWS_AS(build_cbi_map(155, 64, {5, 65}), std::invalid_argument);
    CHECK_THROWS_AS(build_direct_map(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(apply_map(build_bi_map(10, 4),
                              std::vector<std::vector<uint8_t>>(3, std::vector<uint8_t>(10, 0)),
                              0),
                    std::invalid_argument);
}

TEST_CASE("CBI from a real correlation profile") {
    const PolarCodeSpec spec = construct_bec(16, 0.2, 8);
    const CorrelationProfile profile = analyze_code(spec);
    const InterleaverMap m = build_cbi_map(155, 8, profile.correlated_positions);
    CHECK(m.ldpc_blocks == profile.k_correlated() + 1);
    check_injective_total(m);
}

TEST_CASE("map csv lists forward table and padding") {
    const InterleaverMap m = build_cbi_map(9, 4, {3});
    const std::string csv = map_csv(m);
    CHECK(csv.find("ldpc_block,ldpc_bit,polar_block,polar_pos\n") == 0);
    CHECK(csv.find("# padding\n") != std::string::npos);
    // One line per LDPC bit plus header, padding header and padding rows.
    int lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 1 + m.ldpc_blocks * m.ldpc_len + 2 + m.padding_count);
}
