// Bit mappings between outer LDPC code blocks and inner polar code blocks:
// direct concatenation, blind interleaving (one LDPC bit per polar block),
// and correlation-breaking interleaving, where every polar block's correlated
// information positions are fed from pairwise-distinct LDPC blocks.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcbi {

enum class InterleaveScheme { Direct, Bi, Cbi };

struct InterleaverMap {
    InterleaveScheme scheme = InterleaveScheme::Direct;
    int ldpc_len = 0;        // N_l, bits per LDPC block
    int polar_info_len = 0;  // K, info positions per polar block
    int ldpc_blocks = 0;     // LDPC blocks per frame
    int polar_blocks = 0;    // polar blocks per frame

    // forward[(b-1)*N_l + (i-1)] = (p-1)*K + (q-1): bit i of LDPC block b goes
    // to info position q of polar block p. Total and injective.
    std::vector<int32_t> forward;
    // inverse of forward over the polar side; -1 marks padding positions.
    std::vector<int32_t> inverse;

    int padding_count = 0;

    // 1-based coordinate lookup.
    void forward_of(int ldpc_block, int ldpc_bit, int* polar_block, int* polar_pos) const;
    bool is_padding(int polar_block, int polar_pos) const;
};

InterleaverMap build_direct_map(int ldpc_len, int polar_info_len);
InterleaverMap build_bi_map(int ldpc_len, int polar_info_len);

// correlated_positions: strictly increasing positions within 1..K that carry
// the correlated information bits; the rest take contiguous runs.
InterleaverMap build_cbi_map(int ldpc_len, int polar_info_len,
                             const std::vector<int>& correlated_positions);

// Routes a frame of LDPC codewords into per-polar-block info vectors.
std::vector<std::vector<uint8_t>> apply_map(const InterleaverMap& map,
                                            const std::vector<std::vector<uint8_t>>& ldpc_bits,
                                            uint8_t pad_value);
// Exact inverse over the mapped positions; padding is ignored.
std::vector<std::vector<uint8_t>> invert_map(const InterleaverMap& map,
                                             const std::vector<std::vector<uint8_t>>& polar_info);

std::string map_csv(const InterleaverMap& map);
void write_map_csv(const InterleaverMap& map, const std::string& path);

const char* scheme_tag(InterleaveScheme scheme);

}  // namespace pcbi
