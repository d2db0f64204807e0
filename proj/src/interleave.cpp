#include "interleave.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pcbi {

namespace {

InterleaverMap init_map(InterleaveScheme scheme, int ldpc_len, int polar_info_len,
                        int ldpc_blocks, int polar_blocks) {
    if (ldpc_len < 1 || polar_info_len < 1)
        throw std::invalid_argument("interleaver dimensions must be positive");
    InterleaverMap m;
    m.scheme = scheme;
    m.ldpc_len = ldpc_len;
    m.polar_info_len = polar_info_len;
    m.ldpc_blocks = ldpc_blocks;
    m.polar_blocks = polar_blocks;
    m.forward.assign(size_t(ldpc_blocks) * ldpc_len, -1);
    m.inverse.assign(size_t(polar_blocks) * polar_info_len, -1);
    return m;
}

// 1-based coordinates on both sides.
void place(InterleaverMap& m, int block, int bit, int polar, int pos) {
    const size_t src = size_t(block - 1) * m.ldpc_len + (bit - 1);
    const size_t dst = size_t(polar - 1) * m.polar_info_len + (pos - 1);
    if (m.forward[src] != -1 || m.inverse[dst] != -1)
        throw std::logic_error("interleaver map double assignment");
    m.forward[src] = int32_t(dst);
    m.inverse[dst] = int32_t(src);
}

void finish(InterleaverMap& m) {
    for (int32_t f : m.forward)
        if (f < 0) throw std::logic_error("interleaver map left an LDPC bit unrouted");
    int pad = 0;
    for (int32_t v : m.inverse)
        if (v < 0) ++pad;
    m.padding_count = pad;
}

}  // namespace

void InterleaverMap::forward_of(int ldpc_block, int ldpc_bit, int* polar_block,
                                int* polar_pos) const {
    if (ldpc_block < 1 || ldpc_block > ldpc_blocks || ldpc_bit < 1 || ldpc_bit > ldpc_len)
        throw std::invalid_argument("forward_of: coordinate out of range");
    const int32_t dst = forward[size_t(ldpc_block - 1) * ldpc_len + (ldpc_bit - 1)];
    *polar_block = int(dst) / polar_info_len + 1;
    *polar_pos = int(dst) % polar_info_len + 1;
}

bool InterleaverMap::is_padding(int polar_block, int polar_pos) const {
    if (polar_block < 1 || polar_block > polar_blocks || polar_pos < 1 ||
        polar_pos > polar_info_len)
        throw std::invalid_argument("is_padding: coordinate out of range");
    return inverse[size_t(polar_block - 1) * polar_info_len + (polar_pos - 1)] < 0;
}

InterleaverMap build_direct_map(int ldpc_len, int polar_info_len) {
    // Frame of K LDPC blocks cut into consecutive K-bit chunks; K*N_l bits
    // always fill exactly N_l polar blocks.
    const int k = polar_info_len;
    InterleaverMap m = init_map(InterleaveScheme::Direct, ldpc_len, k, k, ldpc_len);
    long long stream = 0;
    for (int b = 1; b <= k; ++b)
        for (int i = 1; i <= ldpc_len; ++i) {
            place(m, b, i, int(stream / k) + 1, int(stream % k) + 1);
            ++stream;
        }
    finish(m);
    return m;
}

InterleaverMap build_bi_map(int ldpc_len, int polar_info_len) {
    // Transpose: bit i of LDPC block b lands in polar block i, position b.
    const int k = polar_info_len;
    InterleaverMap m = init_map(InterleaveScheme::Bi, ldpc_len, k, k, ldpc_len);
    for (int b = 1; b <= k; ++b)
        for (int i = 1; i <= ldpc_len; ++i) place(m, b, i, i, b);
    finish(m);
    return m;
}

InterleaverMap build_cbi_map(int ldpc_len, int polar_info_len,
                             const std::vector<int>& correlated_positions) {
    const int k = polar_info_len;
    const int k_c = int(correlated_positions.size());
    if (k_c >= k) throw std::invalid_argument("cbi: correlated count must be below K");
    std::vector<uint8_t> is_corr(k + 1, 0);
    int prev = 0;
    for (int p : correlated_positions) {
        if (p < 1 || p > k || p <= prev)
            throw std::invalid_argument("cbi: correlated positions must be sorted within 1..K");
        is_corr[p] = 1;
        prev = p;
    }
    std::vector<int> unc;
    for (int p = 1; p <= k; ++p)
        if (!is_corr[p]) unc.push_back(p);
    const int k_uc = k - k_c;

    const int n_d = ldpc_len / k;
    const int mo = ldpc_len % k;
    const int k_n = k_c + 1;  // LDPC blocks per frame
    const int polar_blocks = n_d * k_n + (mo ? mo : 0);
    InterleaverMap m = init_map(InterleaveScheme::Cbi, ldpc_len, k, k_n,
                                polar_blocks ? polar_blocks : 1);
    if (polar_blocks == 0) throw std::invalid_argument("cbi: empty map");

    // Each round walks K_n (or, in the final partial round, mo) polar blocks
    // over one segment of every LDPC block. Block cursors advance strictly
    // left to right: block r feeds polar block r's uncorrelated run, all other
    // blocks contribute one bit each to the correlated positions, block b
    // landing on position b (before the run block) or b-1 (after it).
    int polar = 0;
    int base = 0;  // bits of each block consumed by earlier rounds
    for (int round = 0; round < n_d + (mo ? 1 : 0); ++round) {
        const bool partial = round == n_d;
        const int seg_len = partial ? mo : k;
        const int blocks_in_round = partial ? mo : k_n;
        std::vector<int> cursor(k_n + 1, 1);  // next unconsumed bit, segment-local
        for (int ip = 1; ip <= blocks_in_round; ++ip) {
            ++polar;
            const int run_block = (ip - 1) % k_n + 1;
            for (int b = 1; b <= k_n; ++b) {
                if (b == run_block) continue;
                if (cursor[b] > seg_len) continue;  // exhausted: position stays padded
                const int pos = b < run_block ? correlated_positions[b - 1]
                                              : correlated_positions[b - 2];
                place(m, b, base + cursor[b], polar, pos);
                ++cursor[b];
            }
            const int run_len = std::min(k_uc, seg_len - cursor[run_block] + 1);
            for (int t = 0; t < run_len; ++t) {
                place(m, run_block, base + cursor[run_block], polar, unc[t]);
                ++cursor[run_block];
            }
        }
        base += seg_len;
    }
    finish(m);
    return m;
}

std::vector<std::vector<uint8_t>> apply_map(const InterleaverMap& map,
                                            const std::vector<std::vector<uint8_t>>& ldpc_bits,
                                            uint8_t pad_value) {
    if (int(ldpc_bits.size()) != map.ldpc_blocks)
        throw std::invalid_argument("apply_map: frame block count mismatch");
    for (const auto& blk : ldpc_bits)
        if (int(blk.size()) != map.ldpc_len)
            throw std::invalid_argument("apply_map: LDPC block length mismatch");
    std::vector<std::vector<uint8_t>> out(map.polar_blocks,
                                          std::vector<uint8_t>(map.polar_info_len, pad_value));
    for (int b = 0; b < map.ldpc_blocks; ++b)
        for (int i = 0; i < map.ldpc_len; ++i) {
            const int32_t dst = map.forward[size_t(b) * map.ldpc_len + i];
            out[dst / map.polar_info_len][dst % map.polar_info_len] = ldpc_bits[b][i];
        }
    return out;
}

std::vector<std::vector<uint8_t>> invert_map(const InterleaverMap& map,
                                             const std::vector<std::vector<uint8_t>>& polar_info) {
    if (int(polar_info.size()) != map.polar_blocks)
        throw std::invalid_argument("invert_map: polar block count mismatch");
    for (const auto& blk : polar_info)
        if (int(blk.size()) != map.polar_info_len)
            throw std::invalid_argument("invert_map: polar info length mismatch");
    std::vector<std::vector<uint8_t>> out(map.ldpc_blocks,
                                          std::vector<uint8_t>(map.ldpc_len, 0));
    for (int b = 0; b < map.ldpc_blocks; ++b)
        for (int i = 0; i < map.ldpc_len; ++i) {
            const int32_t dst = map.forward[size_t(b) * map.ldpc_len + i];
            out[b][i] = polar_info[dst / map.polar_info_len][dst % map.polar_info_len];
        }
    return out;
}

const char* scheme_tag(InterleaveScheme scheme) {
    switch (scheme) {
        case InterleaveScheme::Direct: return "direct";
        case InterleaveScheme::Bi: return "bi";
        case InterleaveScheme::Cbi: return "cbi";
    }
    return "?";
}

std::string map_csv(const InterleaverMap& map) {
    std::ostringstream os;
    os << "ldpc_block,ldpc_bit,polar_block,polar_pos\n";
    for (int b = 1; b <= map.ldpc_blocks; ++b)
        for (int i = 1; i <= map.ldpc_len; ++i) {
            int p, q;
            map.forward_of(b, i, &p, &q);
            os << b << "," << i << "," << p << "," << q << "\n";
        }
    os << "# padding\n";
    os << "polar_block,polar_pos\n";
    for (int p = 1; p <= map.polar_blocks; ++p)
        for (int q = 1; q <= map.polar_info_len; ++q)
            if (map.is_padding(p, q)) os << p << "," << q << "\n";
    return os.str();
}

void write_map_csv(const InterleaverMap& map, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << map_csv(map);
    if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace pcbi
