// Memoryless channel models emitting decoder-ready LLRs, with counter-derived
// per-stream randomness so parallel trials reproduce independent of schedule.
#pragma once

#include <cstdint>
#include <vector>

namespace pcbi {

struct ChannelParams {
    enum Kind { Bec, AwgnBpsk };
    Kind kind = Bec;
    double epsilon = 0.0;  // BEC erasure probability
    double ebn0_db = 0.0;  // AWGN energy per information bit over N0
    double rate = 1.0;     // overall code rate used for noise scaling

    static ChannelParams bec(double eps);
    static ChannelParams awgn(double ebn0_db, double rate);
};

class RngStream {
public:
    RngStream(uint64_t seed, uint64_t stream);

    uint64_t next_u64();
    double uniform();        // [0, 1)
    double gaussian();       // standard normal, Box-Muller
    uint8_t bit();
    // Fisher-Yates prefix: k distinct draws from 0..n-1.
    std::vector<int> sample_without_replacement(int n, int k);

private:
    uint64_t s_;
};

std::vector<double> bec_transmit(const std::vector<uint8_t>& codeword, double epsilon,
                                 RngStream& rng);
std::vector<double> awgn_transmit(const std::vector<uint8_t>& codeword, double ebn0_db,
                                  double rate, RngStream& rng);
std::vector<double> transmit(const std::vector<uint8_t>& codeword, const ChannelParams& params,
                             RngStream& rng);

}  // namespace pcbi
