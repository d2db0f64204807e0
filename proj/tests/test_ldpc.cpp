#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <random>
#include <set>

#include "doctest.h"
#include "ldpc.hpp"
#include "polar.hpp"

using namespace pcbi;

namespace {

std::vector<double> hard_llr(const std::vector<uint8_t>& bits, double mag) {
    std::vector<double> llr(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) llr[i] = bits[i] ? -mag : mag;
    return llr;
}

}  // namespace

TEST_CASE("Tanner parity-check structure") {
    const LdpcCodeSpec spec = build_tanner_h();
    REQUIRE(spec.h.rows() == 93);
    REQUIRE(spec.h.cols() == 155);
    CHECK(spec.code_len == 155);
    CHECK(spec.info_len == 64);

    for (int r = 0; r < 93; ++r) CHECK(spec.h.row_weight(r) == 5);
    for (int c = 0; c < 155; ++c) {
        int w = 0;
        for (int r = 0; r < 93; ++r) w += spec.h.get(r, c);
        CHECK(w == 3);
    }
    CHECK(gf2_rank(spec.h) == 91);

    // Circulant shifts 5^i 2^j mod 31: block (0,0) is shift 1, block (2,4) is 28.
    CHECK(spec.h.get(0, 1) == 1);
    CHECK(spec.h.get(2 * 31, 4 * 31 + 28) == 1);

    // Girth >= 6: no two columns share more than one check.
    std::vector<std::set<int>> cols(155);
    for (int r = 0; r < 93; ++r)
        for (int c = 0; c < 155; ++c)
            if (spec.h.get(r, c)) cols[c].insert(r);
    for (int a = 0; a < 155; ++a)
        for (int b = a + 1; b < 155; ++b) {
            int shared = 0;
            for (int r : cols[a]) shared += cols[b].count(r) ? 1 : 0;
            CHECK(shared <= 1);
        }
}

TEST_CASE("LDPC encoding produces codewords") {
    const LdpcCodeSpec spec = build_tanner_h();
    CHECK(ldpc_encode(spec, std::vector<uint8_t>(64, 0)) == std::vector<uint8_t>(155, 0));

    std::mt19937 rng(2);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<uint8_t> a(64), b(64), s(64);
        for (int i = 0; i < 64; ++i) {
            a[i] = rng() & 1;
            b[i] = rng() & 1;
            s[i] = a[i] ^ b[i];
        }
        const auto ca = ldpc_encode(spec, a);
        const auto cb = ldpc_encode(spec, b);
        CHECK(syndrome_ok(spec.h, ca));
        // Info bits sit on the declared positions.
        for (int i = 0; i < 64; ++i) CHECK(ca[spec.info_positions[i] - 1] == a[i]);
        // Linearity.
        std::vector<uint8_t> sum(155);
        for (int i = 0; i < 155; ++i) sum[i] = ca[i] ^ cb[i];
        CHECK(sum == ldpc_encode(spec, s));
    }
    CHECK_THROWS_AS(ldpc_encode(spec, std::vector<uint8_t>(63, 0)), std::invalid_argument);
}

TEST_CASE("BP decodes the noiseless codeword immediately") {
    const LdpcCodeSpec spec = build_tanner_h();
    std::mt19937 rng(5);
    std::vector<uint8_t> info(64);
    for (auto& b : info) b = rng() & 1;
    const auto cw = ldpc_encode(spec, info);
    const BpResult res = bp_decode(spec, hard_llr(cw, kLlrCap), 50);
    CHECK(res.converged);
    CHECK(res.iterations <= 1);
    CHECK(res.codeword == cw);
    CHECK(res.info == info);
}

TEST_CASE("BP corrects single flips at high confidence") {
    const LdpcCodeSpec spec = build_tanner_h();
    std::mt19937 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<uint8_t> info(64);
        for (auto& b : info) b = rng() & 1;
        const auto cw = ldpc_encode(spec, info);
        auto noisy = cw;
        noisy[rng() % 155] ^= 1;
        const BpResult res = bp_decode(spec, hard_llr(noisy, 8.0), 50);
        CHECK(res.converged);
        CHECK(res.codeword == cw);
    }
}

TEST_CASE("total erasure never converges") {
    const LdpcCodeSpec spec = build_tanner_h();
    const BpResult res = bp_decode(spec, std::vector<double>(155, 0.0), 20);
    CHECK_FALSE(res.converged);
    CHECK(res.iterations == 20);
}

TEST_CASE("BP argument validation") {
    const LdpcCodeSpec spec = build_tanner_h();
    CHECK_THROWS_AS(bp_decode(spec, std::vector<double>(154, 0.0), 10), std::invalid_argument);
    CHECK_THROWS_AS(bp_decode(spec, std::vector<double>(155, 0.0), 0), std::invalid_argument);
}

TEST_CASE("alist round trip is bit exact") {
    const LdpcCodeSpec spec = build_tanner_h();
    const std::string text = alist_string(spec.h);
    const BitMatrix back = parse_alist(text);
    CHECK(back == spec.h);
    CHECK(alist_string(back) == text);

    const std::string path = "tanner_test.alist";
    write_alist(spec.h, path);
    const BitMatrix from_file = read_alist(path);
    CHECK(from_file == spec.h);
    std::remove(path.c_str());

    const LdpcCodeSpec reloaded = make_ldpc_spec(back);
    CHECK(reloaded.info_len == 64);
    CHECK(reloaded.info_positions == spec.info_positions);
}

TEST_CASE("alist parser accepts zero-padded lists") {
    // 3x4 matrix with uneven degrees, written in the padded convention.
    const std::string padded =
        "4 3\n2 3\n1 2 1 2\n2 3 1\n"
        "1 0\n1 2\n2 0\n2 3\n"
        "1 2 0\n2 3 4\n4 0 0\n";
    const BitMatrix h = parse_alist(padded);
    CHECK(h.rows() == 3);
    CHECK(h.cols() == 4);
    CHECK(h.get(0, 0) == 1);
    CHECK(h.get(0, 1) == 1);
    CHECK(h.get(1, 1) == 1);
    CHECK(h.get(1, 2) == 1);
    CHECK(h.get(1, 3) == 1);
    CHECK(h.get(2, 3) == 1);
}

TEST_CASE("alist parser rejects damaged input") {
    CHECK_THROWS_AS(parse_alist("0 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_alist("2 1\n1 2\n1 1\n2\n1\n1 2\n"), std::invalid_argument);
    // Check list contradicting the variable lists.
    CHECK_THROWS_AS(parse_alist("2 1\n1 1\n1 1\n2\n1\n1\n1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(read_alist("missing.alist"), std::runtime_error);
}
