// The (155,64,20) quasi-cyclic Tanner code: parity-check construction,
// systematic encoding via precomputed elimination, and flooding sum-product
// decoding. Arbitrary parity-check matrices are accepted through the same
// path (alist files included).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace pcbi {

struct LdpcCodeSpec {
    BitMatrix h;
    int code_len = 0;                         // columns of H
    int info_len = 0;                         // code_len - rank(H)
    std::vector<int> info_positions;          // free columns of the reduced H, 1-based
    std::vector<int> pivot_positions;         // 1-based
    std::vector<std::vector<int>> pivot_deps; // per pivot: indices into the info vector
    std::vector<std::vector<int>> check_vars; // adjacency, 0-based
    std::vector<std::vector<int>> var_checks;

    LdpcCodeSpec() : h(1, 1) {}
};

// Derives encoder and decoder structures from a parity-check matrix.
LdpcCodeSpec make_ldpc_spec(BitMatrix h);

// 3x5 grid of 31x31 circulants, block (i,j) shifted by 5^i 2^j mod 31.
LdpcCodeSpec build_tanner_h();

std::vector<uint8_t> ldpc_encode(const LdpcCodeSpec& spec, const std::vector<uint8_t>& info);

struct BpResult {
    std::vector<uint8_t> codeword;
    std::vector<uint8_t> info;
    bool converged = false;
    int iterations = 0;
};

// Flooding sum-product in the LLR domain with the exact tanh product rule and
// magnitude clamping. Converged means the hard decision satisfies every check
// and no posterior is exactly zero (so a total erasure never converges).
BpResult bp_decode(const LdpcCodeSpec& spec, const std::vector<double>& llr, int max_iters);

bool syndrome_ok(const BitMatrix& h, const std::vector<uint8_t>& codeword);

// alist text format (variable and check adjacency lists, 1-based).
std::string alist_string(const BitMatrix& h);
BitMatrix parse_alist(const std::string& text);
void write_alist(const BitMatrix& h, const std::string& path);
BitMatrix read_alist(const std::string& path);

}  // namespace pcbi
