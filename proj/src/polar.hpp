// Polar code construction, encoding (plain and systematic) and successive
// cancellation decoding for the natural-order transform G = F^(x)n.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace pcbi {

// Saturation magnitude, in natural-log LLR units, shared by the decoder
// combines and the hard-decision channel outputs.
inline constexpr double kLlrCap = 100.0;

struct PolarCodeSpec {
    int block_len = 0;                   // N, a power of two
    int stages = 0;                      // log2(N)
    std::vector<int> info_set;           // sorted 1-based indices, size K
    std::vector<uint8_t> frozen_values;  // over the complement of info_set, index order

    int info_len() const { return int(info_set.size()); }
    bool is_info(int index) const { return info_mask_[index - 1] != 0; }

    // Places info bits on the information positions and frozen values on the
    // rest; the result is the source word u.
    std::vector<uint8_t> assemble_source(const std::vector<uint8_t>& info) const;
    std::vector<uint8_t> info_part(const std::vector<uint8_t>& full) const;

    std::vector<uint8_t> info_mask_;    // size N, 0-based lookup
    std::vector<uint8_t> source_bits_;  // size N, frozen value or 0 at info slots
};

// Validates shape and the vanishing of G_{complement,info} before returning.
PolarCodeSpec make_polar_spec(int block_len, std::vector<int> info_set,
                              std::vector<uint8_t> frozen_values);

// Exact Bhattacharyya recursion from a BEC root parameter, natural bit order.
std::vector<double> bec_reliabilities(int block_len, double epsilon);
PolarCodeSpec construct_bec(int block_len, double epsilon, int info_len);

// Density-evolution mean-LLR recursion under the Gaussian approximation.
std::vector<double> awgn_reliabilities(int block_len, double design_snr_db, double rate);
PolarCodeSpec construct_awgn(int block_len, double design_snr_db, int info_len);

// In-place x = u F^(x)n (the stage order is immaterial; the factors commute).
void butterfly_transform(std::vector<uint8_t>& bits);

std::vector<uint8_t> encode(const PolarCodeSpec& spec, const std::vector<uint8_t>& info);

// Returns a codeword x with x restricted to the information set equal to the
// given bits. Uses the double-transform identity u_A = x_A G_AA, valid because
// G_AA is an involution once G_{complement,info} vanishes.
std::vector<uint8_t> encode_systematic(const PolarCodeSpec& spec,
                                       const std::vector<uint8_t>& info);

struct ScResult {
    std::vector<uint8_t> source;  // u_hat (or x_hat for the systematic variant)
    std::vector<uint8_t> info;    // restriction to the information set
};

// Positive LLR favors bit 0; an exactly-zero decision LLR resolves to 0.
ScResult sc_decode(const PolarCodeSpec& spec, const std::vector<double>& llr);
ScResult sc_decode_systematic(const PolarCodeSpec& spec, const std::vector<double>& llr);

double f_combine(double a, double b);
double g_combine(double a, double b, uint8_t bit);

// Code-spec text file: N=, K=, A= (comma separated), frozen= (bit string).
std::string format_spec(const PolarCodeSpec& spec);
PolarCodeSpec parse_spec(const std::string& text);
void write_spec_file(const PolarCodeSpec& spec, const std::string& path);
PolarCodeSpec read_spec_file(const std::string& path);

}  // namespace pcbi
