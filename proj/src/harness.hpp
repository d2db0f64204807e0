// Monte-Carlo driver: runs encode/interleave/transmit/decode pipelines over a
// channel-parameter sweep and aggregates bit and block error rates with
// schedule-independent determinism.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "channel.hpp"
#include "interleave.hpp"
#include "ldpc.hpp"
#include "polar.hpp"

namespace pcbi {

enum class SimScheme { PolarOnly, LdpcDirectPolar, LdpcBiPolar, LdpcCbiPolar };

const char* scheme_name(SimScheme scheme);
SimScheme scheme_from_name(const std::string& name);

struct ExperimentConfig {
    SimScheme scheme = SimScheme::PolarOnly;
    PolarCodeSpec polar;
    bool systematic = false;
    ChannelParams::Kind channel = ChannelParams::Bec;
    std::vector<double> sweep;          // epsilon values or Eb/N0 points in dB
    long long min_frames = 10;
    long long max_frames = 1000000;
    long long target_errors = 100;      // block-error events per sweep point
    int bp_max_iters = 50;
    uint64_t seed = 1;
    int threads = 0;                    // 0 selects hardware concurrency
};

struct SweepPoint {
    double channel_param = 0.0;
    long long frames = 0;
    long long bits = 0;
    long long bit_errors = 0;
    long long blocks = 0;
    long long block_errors = 0;
    double ber = 0.0;
    double ber_ci = 0.0;   // 95% half-width, normal approximation
    double bler = 0.0;
    double bler_ci = 0.0;
    double seconds = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
};

// rate = errors/total with the 1.96 sqrt(p(1-p)/n) normal half-width.
std::pair<double, double> estimate_stats(long long errors, long long total);

// Eb/N0 noise scaling uses the product of the polar and LDPC rates for the
// concatenated schemes and the polar rate alone for polar-only runs.
double overall_rate(const ExperimentConfig& config);

SweepResult run_experiment(const ExperimentConfig& config);

// CSV with # metadata comments followed by one data row per sweep point.
std::string results_csv(const ExperimentConfig& config, const SweepResult& result);
void write_results_csv(const ExperimentConfig& config, const SweepResult& result,
                       const std::string& path);
// Plot-ready companion: "<param> <ber>" per line.
std::string plot_data(const SweepResult& result);
void write_plot_data(const SweepResult& result, const std::string& path);

}  // namespace pcbi
