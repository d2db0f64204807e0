// Correlated-bit structure of a polar code: generator column supports, the
// correlated/uncorrelated split of the information set, and an empirical
// measurement of how strongly errors inside a column support co-occur.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "channel.hpp"
#include "gf2.hpp"
#include "polar.hpp"

namespace pcbi {

struct CorrelationProfile {
    std::vector<int> info_set;                // 1-based, sorted
    std::vector<std::vector<int>> supports;   // supports[r]: column support of info_set[r]
    std::vector<int> correlated;              // A_c, absolute 1-based indices
    std::vector<int> uncorrelated;            // complement of A_c within the info set
    std::vector<int> correlated_positions;    // positions within 1..K
    std::vector<int> uncorrelated_positions;

    int k_correlated() const { return int(correlated.size()); }
    int k_uncorrelated() const { return int(uncorrelated.size()); }
};

// Sorted row indices of the non-zero entries of one column (1-based).
std::vector<int> column_support(const BitMatrix& g, int column);

// Rows of G_AA with Hamming weight above one mark the correlated indices.
CorrelationProfile correlated_split(const BitMatrix& g, const std::vector<int>& info_set);

// Convenience: builds the generator for the spec and splits.
CorrelationProfile analyze_code(const PolarCodeSpec& spec);

struct CouplingRow {
    int column = 0;
    long long events = 0;    // trials with a decision error at this column
    long long coupled = 0;   // of those, some other support member also failed
    long long baseline_coupled = 0;  // trials where a random disjoint set failed
    bool defined = false;    // false when no conditioning event occurred
    double coefficient = 0.0;
    double baseline = 0.0;
};

struct CouplingReport {
    long long trials = 0;
    std::vector<CouplingRow> rows;
};

// Monte-Carlo coupling measurement over random codewords with SC decoding.
// For column i with S_i = support(i) intersected with the information set,
// the coefficient is P(another member of S_i \ {i} fails | bit i fails). The
// baseline is the no-structure reference level: the rate, over the same
// trials, at which a fresh uniformly random set of the same size, disjoint
// from S_i, contains a failure. Conditioning the baseline on the target-bit
// event would saturate it (any decision error selects erasure-heavy
// realizations in which random bits fail too), hiding the support structure.
// Bit-reproducible for a fixed seed and independent of the worker count.
CouplingReport measure_coupling(const PolarCodeSpec& spec, const ChannelParams& params,
                                const std::vector<int>& target_columns, long long trials,
                                uint64_t seed, int threads = 0);

std::string coupling_csv(const CouplingReport& report);

}  // namespace pcbi
