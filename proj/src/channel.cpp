#include "channel.hpp"

#include <cmath>
#include <stdexcept>

#include "polar.hpp"

namespace pcbi {

ChannelParams ChannelParams::bec(double eps) {
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("erasure probability out of range");
    ChannelParams p;
    p.kind = Bec;
    p.epsilon = eps;
    return p;
}

ChannelParams ChannelParams::awgn(double ebn0_db, double rate) {
    if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("rate must be in (0,1]");
    ChannelParams p;
    p.kind = AwgnBpsk;
    p.ebn0_db = ebn0_db;
    p.rate = rate;
    return p;
}

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream) {
    s_ = splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
    if (s_ == 0) s_ = 0x6a09e667f3bcc909ULL;
}

uint64_t RngStream::next_u64() {
    // xorshift64* on splitmix-derived state
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545f4914f6cdd1dULL;
}

double RngStream::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

uint8_t RngStream::bit() { return uint8_t(next_u64() >> 63); }

std::vector<int> RngStream::sample_without_replacement(int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    if (k > n) k = n;
    for (int i = 0; i < k; ++i) {
        const int j = i + int(next_u64() % uint64_t(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

std::vector<double> bec_transmit(const std::vector<uint8_t>& codeword, double epsilon,
                                 RngStream& rng) {
    if (epsilon < 0.0 || epsilon > 1.0)
        throw std::invalid_argument("erasure probability out of range");
    std::vector<double> llr(codeword.size());
    for (size_t i = 0; i < codeword.size(); ++i) {
        if (rng.uniform() < epsilon)
            llr[i] = 0.0;
        else
            llr[i] = codeword[i] ? -kLlrCap : kLlrCap;
    }
    return llr;
}

std::vector<double> awgn_transmit(const std::vector<uint8_t>& codeword, double ebn0_db,
                                  double rate, RngStream& rng) {
    if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("rate must be in (0,1]");
    const double sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
    const double sigma = std::sqrt(sigma2);
    std::vector<double> llr(codeword.size());
    for (size_t i = 0; i < codeword.size(); ++i) {
        const double y = (codeword[i] ? -1.0 : 1.0) + sigma * rng.gaussian();
        llr[i] = 2.0 * y / sigma2;
    }
    return llr;
}

std::vector<double> transmit(const std::vector<uint8_t>& codeword, const ChannelParams& params,
                             RngStream& rng) {
    if (params.kind == ChannelParams::Bec) return bec_transmit(codeword, params.epsilon, rng);
    return awgn_transmit(codeword, params.ebn0_db, params.rate, rng);
}

}  // namespace pcbi
