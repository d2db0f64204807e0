#include "harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "correlation.hpp"

namespace pcbi {

namespace {

// LLR magnitude handed to the LDPC decoder for the hard bits coming out of
// the polar stage: log((1-p)/p) at a nominal 5% crossover.
const double kHardDecisionLlr = std::log(0.95 / 0.05);

constexpr int kBatchFrames = 64;

struct FrameCounts {
    long long bits = 0, bit_errors = 0, blocks = 0, block_errors = 0;

    void operator+=(const FrameCounts& o) {
        bits += o.bits;
        bit_errors += o.bit_errors;
        blocks += o.blocks;
        block_errors += o.block_errors;
    }
};

struct RunContext {
    const ExperimentConfig* config = nullptr;
    std::unique_ptr<LdpcCodeSpec> ldpc;
    std::unique_ptr<InterleaverMap> map;
};

FrameCounts run_polar_frame(const RunContext& ctx, const ChannelParams& params, RngStream& rng) {
    const PolarCodeSpec& polar = ctx.config->polar;
    const int k = polar.info_len();
    std::vector<uint8_t> info(k);
    for (int i = 0; i < k; ++i) info[i] = rng.bit();
    const bool sys = ctx.config->systematic;
    const std::vector<uint8_t> x = sys ? encode_systematic(polar, info) : encode(polar, info);
    const std::vector<double> llr = transmit(x, params, rng);
    const ScResult dec = sys ? sc_decode_systematic(polar, llr) : sc_decode(polar, llr);
    FrameCounts c;
    c.bits = k;
    c.blocks = 1;
    for (int i = 0; i < k; ++i) c.bit_errors += dec.info[i] != info[i];
    c.block_errors = c.bit_errors > 0 ? 1 : 0;
    return c;
}

FrameCounts run_concat_frame(const RunContext& ctx, const ChannelParams& params,
                             RngStream& rng) {
    const PolarCodeSpec& polar = ctx.config->polar;
    const LdpcCodeSpec& ldpc = *ctx.ldpc;
    const InterleaverMap& map = *ctx.map;
    const bool sys = ctx.config->systematic;

    std::vector<std::vector<uint8_t>> info(map.ldpc_blocks,
                                           std::vector<uint8_t>(ldpc.info_len));
    std::vector<std::vector<uint8_t>> coded(map.ldpc_blocks);
    for (int b = 0; b < map.ldpc_blocks; ++b) {
        for (int i = 0; i < ldpc.info_len; ++i) info[b][i] = rng.bit();
        coded[b] = ldpc_encode(ldpc, info[b]);
    }

    std::vector<std::vector<uint8_t>> polar_in = apply_map(map, coded, 0);
    std::vector<std::vector<uint8_t>> polar_out(map.polar_blocks);
    for (int p = 0; p < map.polar_blocks; ++p) {
        const std::vector<uint8_t> x =
            sys ? encode_systematic(polar, polar_in[p]) : encode(polar, polar_in[p]);
        const std::vector<double> llr = transmit(x, params, rng);
        const ScResult dec = sys ? sc_decode_systematic(polar, llr) : sc_decode(polar, llr);
        polar_out[p] = dec.info;
    }

    const std::vector<std::vector<uint8_t>> deint = invert_map(map, polar_out);
    FrameCounts c;
    std::vector<double> llr(ldpc.code_len);
    for (int b = 0; b < map.ldpc_blocks; ++b) {
        for (int i = 0; i < ldpc.code_len; ++i)
            llr[i] = deint[b][i] ? -kHardDecisionLlr : kHardDecisionLlr;
        const BpResult bp = bp_decode(ldpc, llr, ctx.config->bp_max_iters);
        long long errs = 0;
        for (int i = 0; i < ldpc.info_len; ++i) errs += bp.info[i] != info[b][i];
        c.bits += ldpc.info_len;
        c.bit_errors += errs;
        c.blocks += 1;
        c.block_errors += errs > 0 ? 1 : 0;
    }
    return c;
}

}  // namespace

const char* scheme_name(SimScheme scheme) {
    switch (scheme) {
        case SimScheme::PolarOnly: return "polar-only";
        case SimScheme::LdpcDirectPolar: return "ldpc-direct-polar";
        case SimScheme::LdpcBiPolar: return "ldpc-bi-polar";
        case SimScheme::LdpcCbiPolar: return "ldpc-cbi-polar";
    }
    return "?";
}

SimScheme scheme_from_name(const std::string& name) {
    if (name == "polar-only") return SimScheme::PolarOnly;
    if (name == "ldpc-direct-polar") return SimScheme::LdpcDirectPolar;
    if (name == "ldpc-bi-polar") return SimScheme::LdpcBiPolar;
    if (name == "ldpc-cbi-polar") return SimScheme::LdpcCbiPolar;
    throw std::invalid_argument("unknown scheme: " + name);
}

std::pair<double, double> estimate_stats(long long errors, long long total) {
    if (total < 1) throw std::invalid_argument("estimate_stats: total must be >= 1");
    const double rate = double(errors) / double(total);
    const double half = 1.96 * std::sqrt(rate * (1.0 - rate) / double(total));
    return {rate, half};
}

double overall_rate(const ExperimentConfig& config) {
    const double polar_rate = double(config.polar.info_len()) / config.polar.block_len;
    if (config.scheme == SimScheme::PolarOnly) return polar_rate;
    return polar_rate * (64.0 / 155.0);
}

SweepResult run_experiment(const ExperimentConfig& config) {
    if (config.sweep.empty()) throw std::invalid_argument("sweep must be non-empty");
    if (config.min_frames < 1 || config.max_frames < config.min_frames ||
        config.target_errors < 1)
        throw std::invalid_argument("invalid trial budget");
    if (config.polar.block_len == 0) throw std::invalid_argument("polar spec not constructed");

    RunContext ctx;
    ctx.config = &config;
    if (config.scheme != SimScheme::PolarOnly) {
        ctx.ldpc = std::make_unique<LdpcCodeSpec>(build_tanner_h());
        const int k = config.polar.info_len();
        switch (config.scheme) {
            case SimScheme::LdpcDirectPolar:
                ctx.map = std::make_unique<InterleaverMap>(build_direct_map(ctx.ldpc->code_len, k));
                break;
            case SimScheme::LdpcBiPolar:
                ctx.map = std::make_unique<InterleaverMap>(build_bi_map(ctx.ldpc->code_len, k));
                break;
            default: {
                const CorrelationProfile profile = analyze_code(config.polar);
                ctx.map = std::make_unique<InterleaverMap>(
                    build_cbi_map(ctx.ldpc->code_len, k, profile.correlated_positions));
                break;
            }
        }
    }

    int threads = config.threads > 0 ? config.threads : int(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;

    const double rate = overall_rate(config);
    SweepResult result;
    for (size_t point = 0; point < config.sweep.size(); ++point) {
        const auto t0 = std::chrono::steady_clock::now();
        ChannelParams params = config.channel == ChannelParams::Bec
                                   ? ChannelParams::bec(config.sweep[point])
                                   : ChannelParams::awgn(config.sweep[point], rate);
        FrameCounts totals;
        long long frames = 0;
        while (true) {
            const long long batch =
                std::min<long long>(kBatchFrames, config.max_frames - frames);
            std::vector<FrameCounts> partial(threads);
            auto worker = [&](int t) {
                for (long long f = t; f < batch; f += threads) {
                    RngStream rng(config.seed, (uint64_t(point) << 40) | uint64_t(frames + f));
                    partial[t] += ctx.config->scheme == SimScheme::PolarOnly
                                      ? run_polar_frame(ctx, params, rng)
                                      : run_concat_frame(ctx, params, rng);
                }
            };
            if (threads == 1) {
                worker(0);
            } else {
                std::vector<std::thread> pool;
                for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
                for (auto& th : pool) th.join();
            }
            for (const FrameCounts& p : partial) totals += p;
            frames += batch;
            const bool enough =
                frames >= config.min_frames && totals.block_errors >= config.target_errors;
            if (enough || frames >= config.max_frames) break;
        }

        SweepPoint sp;
        sp.channel_param = config.sweep[point];
        sp.frames = frames;
        sp.bits = totals.bits;
        sp.bit_errors = totals.bit_errors;
        sp.blocks = totals.blocks;
        sp.block_errors = totals.block_errors;
        std::tie(sp.ber, sp.ber_ci) = estimate_stats(totals.bit_errors, totals.bits);
        std::tie(sp.bler, sp.bler_ci) = estimate_stats(totals.block_errors, totals.blocks);
        sp.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.points.push_back(sp);
    }
    return result;
}

namespace {

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_line(const ExperimentConfig& config) {
    std::ostringstream os;
    os << "scheme=" << scheme_name(config.scheme)
       << " channel=" << (config.channel == ChannelParams::Bec ? "bec" : "awgn")
       << " rate_convention="
       << (config.scheme == SimScheme::PolarOnly ? "polar_rate" : "polar_rate*ldpc_rate")
       << " overall_rate=" << overall_rate(config) << " systematic=" << int(config.systematic)
       << " ldpc=" << (config.scheme == SimScheme::PolarOnly ? "none" : "tanner(155,64)")
       << " bp_iters=" << config.bp_max_iters << " seed=" << config.seed
       << " min_frames=" << config.min_frames << " max_frames=" << config.max_frames
       << " target_errors=" << config.target_errors;
    return os.str();
}

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

std::string results_csv(const ExperimentConfig& config, const SweepResult& result) {
    std::ostringstream os;
    const std::string cfg = config_line(config);
    std::ostringstream spec_os;
    spec_os << "polar N=" << config.polar.block_len << " K=" << config.polar.info_len() << " A=";
    for (size_t i = 0; i < config.polar.info_set.size(); ++i)
        spec_os << (i ? "," : "") << config.polar.info_set[i];
    os << "# polarcbi simulation results\n";
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      (unsigned long long)fnv1a64(cfg + "|" + spec_os.str()));
        os << "# config_hash=" << buf << "\n";
    }
    os << "# " << cfg << "\n";
    os << "# " << spec_os.str() << "\n";
    os << "scheme,channel_param,frames,bits,bit_errors,ber,ber_ci,block_errors,bler,seed\n";
    for (const SweepPoint& p : result.points) {
        os << scheme_name(config.scheme) << "," << fmt(p.channel_param, "%.12g") << ","
           << p.frames << "," << p.bits << "," << p.bit_errors << "," << fmt(p.ber, "%.6e")
           << "," << fmt(p.ber_ci, "%.6e") << "," << p.block_errors << ","
           << fmt(p.bler, "%.6e") << "," << config.seed << "\n";
    }
    return os.str();
}

void write_results_csv(const ExperimentConfig& config, const SweepResult& result,
                       const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << results_csv(config, result);
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string plot_data(const SweepResult& result) {
    std::ostringstream os;
    for (const SweepPoint& p : result.points)
        os << fmt(p.channel_param, "%.12g") << " " << fmt(p.ber, "%.6e") << "\n";
    return os.str();
}

void write_plot_data(const SweepResult& result, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << plot_data(result);
    if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace pcbi
