// extern "C" surface of the shared library. Handles wrap the core value types;
// exceptions are converted to status codes with a thread-local message.
#include "polarcbi.h"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "channel.hpp"
#include "correlation.hpp"
#include "gf2.hpp"
#include "harness.hpp"
#include "interleave.hpp"
#include "ldpc.hpp"
#include "polar.hpp"

struct pcbi_polar {
    pcbi::PolarCodeSpec spec;
};
struct pcbi_profile {
    pcbi::CorrelationProfile profile;
};
struct pcbi_ldpc {
    pcbi::LdpcCodeSpec spec;
};
struct pcbi_imap {
    pcbi::InterleaverMap map;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
int wrap(Fn&& fn) {
    try {
        fn();
        return PCBI_OK;
    } catch (const std::domain_error& e) {
        return fail(PCBI_ERR_SINGULAR, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(PCBI_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(PCBI_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(PCBI_ERR_INTERNAL, e.what());
    }
}

int require(bool ok, const char* what) {
    return ok ? PCBI_OK : fail(PCBI_ERR_INVALID_ARGUMENT, what);
}

pcbi::ChannelParams make_params(int kind, double param, double rate) {
    if (kind == PCBI_CHANNEL_BEC) return pcbi::ChannelParams::bec(param);
    if (kind == PCBI_CHANNEL_AWGN) return pcbi::ChannelParams::awgn(param, rate);
    throw std::invalid_argument("unknown channel kind");
}

}  // namespace

extern "C" {

const char* pcbi_last_error(void) { return g_last_error.c_str(); }

const char* pcbi_status_name(int status) {
    switch (status) {
        case PCBI_OK: return "ok";
        case PCBI_ERR_INVALID_ARGUMENT: return "invalid argument";
        case PCBI_ERR_IO: return "i/o error";
        case PCBI_ERR_SINGULAR: return "singular matrix";
        case PCBI_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

int pcbi_polar_construct_bec(int block_len, double epsilon, int info_len, pcbi_polar** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] { *out = new pcbi_polar{pcbi::construct_bec(block_len, epsilon, info_len)}; });
}

int pcbi_polar_construct_awgn(int block_len, double design_snr_db, int info_len,
                              pcbi_polar** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap(
        [&] { *out = new pcbi_polar{pcbi::construct_awgn(block_len, design_snr_db, info_len)}; });
}

int pcbi_polar_read(const char* path, pcbi_polar** out) {
    if (int rc = require(out != nullptr && path != nullptr, "null argument")) return rc;
    return wrap([&] { *out = new pcbi_polar{pcbi::read_spec_file(path)}; });
}

int pcbi_polar_write(const pcbi_polar* code, const char* path) {
    if (int rc = require(code != nullptr && path != nullptr, "null argument")) return rc;
    return wrap([&] { pcbi::write_spec_file(code->spec, path); });
}

void pcbi_polar_free(pcbi_polar* code) { delete code; }

int pcbi_polar_block_len(const pcbi_polar* code) { return code ? code->spec.block_len : 0; }

int pcbi_polar_info_len(const pcbi_polar* code) { return code ? code->spec.info_len() : 0; }

int pcbi_polar_info_set(const pcbi_polar* code, int32_t* out) {
    if (int rc = require(code != nullptr && out != nullptr, "null argument")) return rc;
    for (size_t i = 0; i < code->spec.info_set.size(); ++i)
        out[i] = int32_t(code->spec.info_set[i]);
    return PCBI_OK;
}

int pcbi_polar_encode(const pcbi_polar* code, const uint8_t* info, uint8_t* codeword) {
    if (int rc = require(code && info && codeword, "null argument")) return rc;
    return wrap([&] {
        std::vector<uint8_t> in(info, info + code->spec.info_len());
        std::vector<uint8_t> x = pcbi::encode(code->spec, in);
        std::memcpy(codeword, x.data(), x.size());
    });
}

int pcbi_polar_encode_systematic(const pcbi_polar* code, const uint8_t* info,
                                 uint8_t* codeword) {
    if (int rc = require(code && info && codeword, "null argument")) return rc;
    return wrap([&] {
        std::vector<uint8_t> in(info, info + code->spec.info_len());
        std::vector<uint8_t> x = pcbi::encode_systematic(code->spec, in);
        std::memcpy(codeword, x.data(), x.size());
    });
}

namespace {

int decode_common(const pcbi_polar* code, const double* llr, uint8_t* full, uint8_t* info,
                  bool systematic) {
    if (int rc = require(code && llr && info, "null argument")) return rc;
    return wrap([&] {
        std::vector<double> in(llr, llr + code->spec.block_len);
        const pcbi::ScResult res = systematic ? pcbi::sc_decode_systematic(code->spec, in)
                                              : pcbi::sc_decode(code->spec, in);
        if (full) std::memcpy(full, res.source.data(), res.source.size());
        std::memcpy(info, res.info.data(), res.info.size());
    });
}

}  // namespace

int pcbi_polar_sc_decode(const pcbi_polar* code, const double* llr, uint8_t* source_hat,
                         uint8_t* info_hat) {
    return decode_common(code, llr, source_hat, info_hat, false);
}

int pcbi_polar_sc_decode_systematic(const pcbi_polar* code, const double* llr,
                                    uint8_t* codeword_hat, uint8_t* info_hat) {
    return decode_common(code, llr, codeword_hat, info_hat, true);
}

double pcbi_llr_cap(void) { return pcbi::kLlrCap; }

int pcbi_profile_create(const pcbi_polar* code, pcbi_profile** out) {
    if (int rc = require(code != nullptr && out != nullptr, "null argument")) return rc;
    return wrap([&] { *out = new pcbi_profile{pcbi::analyze_code(code->spec)}; });
}

void pcbi_profile_free(pcbi_profile* profile) { delete profile; }

int pcbi_profile_correlated_len(const pcbi_profile* profile) {
    return profile ? profile->profile.k_correlated() : 0;
}

int pcbi_profile_uncorrelated_len(const pcbi_profile* profile) {
    return profile ? profile->profile.k_uncorrelated() : 0;
}

namespace {

int copy_ints(const std::vector<int>& src, int32_t* out) {
    if (int rc = require(out != nullptr, "null output buffer")) return rc;
    for (size_t i = 0; i < src.size(); ++i) out[i] = int32_t(src[i]);
    return PCBI_OK;
}

}  // namespace

int pcbi_profile_correlated(const pcbi_profile* profile, int32_t* out) {
    if (int rc = require(profile != nullptr, "null handle")) return rc;
    return copy_ints(profile->profile.correlated, out);
}

int pcbi_profile_uncorrelated(const pcbi_profile* profile, int32_t* out) {
    if (int rc = require(profile != nullptr, "null handle")) return rc;
    return copy_ints(profile->profile.uncorrelated, out);
}

int pcbi_profile_correlated_positions(const pcbi_profile* profile, int32_t* out) {
    if (int rc = require(profile != nullptr, "null handle")) return rc;
    return copy_ints(profile->profile.correlated_positions, out);
}

int pcbi_column_support(const pcbi_polar* code, int column, int32_t* out, int cap, int* len) {
    if (int rc = require(code != nullptr && len != nullptr, "null argument")) return rc;
    return wrap([&] {
        const std::vector<int> support =
            pcbi::column_support(pcbi::polar_generator(code->spec.stages), column);
        *len = int(support.size());
        if (out == nullptr || cap < int(support.size()))
            throw std::invalid_argument("support buffer too small");
        for (size_t i = 0; i < support.size(); ++i) out[i] = int32_t(support[i]);
    });
}

int pcbi_measure_coupling(const pcbi_polar* code, int channel_kind, double channel_param,
                          const int32_t* columns, int n_columns, long long trials,
                          uint64_t seed, int threads, pcbi_coupling_row* rows_out) {
    if (int rc = require(code && columns && rows_out && n_columns > 0, "null argument"))
        return rc;
    return wrap([&] {
        const double rate = double(code->spec.info_len()) / code->spec.block_len;
        const pcbi::ChannelParams params = make_params(channel_kind, channel_param, rate);
        std::vector<int> cols(columns, columns + n_columns);
        const pcbi::CouplingReport report =
            pcbi::measure_coupling(code->spec, params, cols, trials, seed, threads);
        for (size_t i = 0; i < report.rows.size(); ++i) {
            const pcbi::CouplingRow& r = report.rows[i];
            rows_out[i] = {r.column, r.events, r.coupled, r.coefficient, r.baseline};
        }
    });
}

int pcbi_ldpc_tanner(pcbi_ldpc** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] { *out = new pcbi_ldpc{pcbi::build_tanner_h()}; });
}

int pcbi_ldpc_read_alist(const char* path, pcbi_ldpc** out) {
    if (int rc = require(out != nullptr && path != nullptr, "null argument")) return rc;
    return wrap([&] { *out = new pcbi_ldpc{pcbi::make_ldpc_spec(pcbi::read_alist(path))}; });
}

int pcbi_ldpc_write_alist(const pcbi_ldpc* code, const char* path) {
    if (int rc = require(code != nullptr && path != nullptr, "null argument")) return rc;
    return wrap([&] { pcbi::write_alist(code->spec.h, path); });
}

void pcbi_ldpc_free(pcbi_ldpc* code) { delete code; }

int pcbi_ldpc_code_len(const pcbi_ldpc* code) { return code ? code->spec.code_len : 0; }

int pcbi_ldpc_info_len(const pcbi_ldpc* code) { return code ? code->spec.info_len : 0; }

int pcbi_ldpc_check_count(const pcbi_ldpc* code) { return code ? code->spec.h.rows() : 0; }

int pcbi_ldpc_info_positions(const pcbi_ldpc* code, int32_t* out) {
    if (int rc = require(code != nullptr, "null handle")) return rc;
    return copy_ints(code->spec.info_positions, out);
}

int pcbi_ldpc_encode(const pcbi_ldpc* code, const uint8_t* info, uint8_t* codeword) {
    if (int rc = require(code && info && codeword, "null argument")) return rc;
    return wrap([&] {
        std::vector<uint8_t> in(info, info + code->spec.info_len);
        std::vector<uint8_t> c = pcbi::ldpc_encode(code->spec, in);
        std::memcpy(codeword, c.data(), c.size());
    });
}

int pcbi_ldpc_bp_decode(const pcbi_ldpc* code, const double* llr, int max_iters,
                        uint8_t* codeword_hat, uint8_t* info_hat, int* converged) {
    if (int rc = require(code && llr && info_hat, "null argument")) return rc;
    return wrap([&] {
        std::vector<double> in(llr, llr + code->spec.code_len);
        const pcbi::BpResult res = pcbi::bp_decode(code->spec, in, max_iters);
        if (codeword_hat) std::memcpy(codeword_hat, res.codeword.data(), res.codeword.size());
        std::memcpy(info_hat, res.info.data(), res.info.size());
        if (converged) *converged = res.converged ? 1 : 0;
    });
}

int pcbi_imap_build(int scheme, int ldpc_len, int polar_info_len,
                    const int32_t* correlated_positions, int n_correlated, pcbi_imap** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] {
        switch (scheme) {
            case PCBI_MAP_DIRECT:
                *out = new pcbi_imap{pcbi::build_direct_map(ldpc_len, polar_info_len)};
                break;
            case PCBI_MAP_BI:
                *out = new pcbi_imap{pcbi::build_bi_map(ldpc_len, polar_info_len)};
                break;
            case PCBI_MAP_CBI: {
                if (correlated_positions == nullptr && n_correlated > 0)
                    throw std::invalid_argument("null correlated positions");
                std::vector<int> pos(correlated_positions, correlated_positions + n_correlated);
                *out = new pcbi_imap{pcbi::build_cbi_map(ldpc_len, polar_info_len, pos)};
                break;
            }
            default: throw std::invalid_argument("unknown interleaver scheme");
        }
    });
}

void pcbi_imap_free(pcbi_imap* map) { delete map; }

int pcbi_imap_ldpc_blocks(const pcbi_imap* map) { return map ? map->map.ldpc_blocks : 0; }

int pcbi_imap_polar_blocks(const pcbi_imap* map) { return map ? map->map.polar_blocks : 0; }

int pcbi_imap_padding_count(const pcbi_imap* map) { return map ? map->map.padding_count : 0; }

int pcbi_imap_forward(const pcbi_imap* map, int ldpc_block, int ldpc_bit, int* polar_block,
                      int* polar_pos) {
    if (int rc = require(map && polar_block && polar_pos, "null argument")) return rc;
    return wrap([&] { map->map.forward_of(ldpc_block, ldpc_bit, polar_block, polar_pos); });
}

int pcbi_imap_write_csv(const pcbi_imap* map, const char* path) {
    if (int rc = require(map != nullptr && path != nullptr, "null argument")) return rc;
    return wrap([&] { pcbi::write_map_csv(map->map, path); });
}

int pcbi_imap_apply(const pcbi_imap* map, const uint8_t* ldpc_bits, int pad_value,
                    uint8_t* polar_info_out) {
    if (int rc = require(map && ldpc_bits && polar_info_out, "null argument")) return rc;
    return wrap([&] {
        const pcbi::InterleaverMap& m = map->map;
        std::vector<std::vector<uint8_t>> blocks(m.ldpc_blocks,
                                                 std::vector<uint8_t>(m.ldpc_len));
        for (int b = 0; b < m.ldpc_blocks; ++b)
            std::memcpy(blocks[b].data(), ldpc_bits + size_t(b) * m.ldpc_len, m.ldpc_len);
        const auto polar = pcbi::apply_map(m, blocks, uint8_t(pad_value ? 1 : 0));
        for (int p = 0; p < m.polar_blocks; ++p)
            std::memcpy(polar_info_out + size_t(p) * m.polar_info_len, polar[p].data(),
                        m.polar_info_len);
    });
}

int pcbi_imap_invert(const pcbi_imap* map, const uint8_t* polar_info, uint8_t* ldpc_bits_out) {
    if (int rc = require(map && polar_info && ldpc_bits_out, "null argument")) return rc;
    return wrap([&] {
        const pcbi::InterleaverMap& m = map->map;
        std::vector<std::vector<uint8_t>> polar(m.polar_blocks,
                                                std::vector<uint8_t>(m.polar_info_len));
        for (int p = 0; p < m.polar_blocks; ++p)
            std::memcpy(polar[p].data(), polar_info + size_t(p) * m.polar_info_len,
                        m.polar_info_len);
        const auto blocks = pcbi::invert_map(m, polar);
        for (int b = 0; b < m.ldpc_blocks; ++b)
            std::memcpy(ldpc_bits_out + size_t(b) * m.ldpc_len, blocks[b].data(), m.ldpc_len);
    });
}

int pcbi_channel_transmit(int channel_kind, double param, double code_rate,
                          const uint8_t* bits, int n, uint64_t seed, uint64_t stream,
                          double* llr_out) {
    if (int rc = require(bits && llr_out && n > 0, "null argument")) return rc;
    return wrap([&] {
        const pcbi::ChannelParams params = make_params(channel_kind, param, code_rate);
        pcbi::RngStream rng(seed, stream);
        std::vector<uint8_t> in(bits, bits + n);
        const std::vector<double> llr = pcbi::transmit(in, params, rng);
        std::memcpy(llr_out, llr.data(), sizeof(double) * llr.size());
    });
}

namespace {

pcbi::ExperimentConfig to_core_config(const pcbi_sim_config& c) {
    pcbi::ExperimentConfig cfg;
    switch (c.scheme) {
        case PCBI_SIM_POLAR_ONLY: cfg.scheme = pcbi::SimScheme::PolarOnly; break;
        case PCBI_SIM_LDPC_DIRECT_POLAR: cfg.scheme = pcbi::SimScheme::LdpcDirectPolar; break;
        case PCBI_SIM_LDPC_BI_POLAR: cfg.scheme = pcbi::SimScheme::LdpcBiPolar; break;
        case PCBI_SIM_LDPC_CBI_POLAR: cfg.scheme = pcbi::SimScheme::LdpcCbiPolar; break;
        default: throw std::invalid_argument("unknown simulation scheme");
    }
    if (c.polar == nullptr) throw std::invalid_argument("null polar handle");
    cfg.polar = c.polar->spec;
    cfg.systematic = c.systematic != 0;
    if (c.channel == PCBI_CHANNEL_BEC)
        cfg.channel = pcbi::ChannelParams::Bec;
    else if (c.channel == PCBI_CHANNEL_AWGN)
        cfg.channel = pcbi::ChannelParams::AwgnBpsk;
    else
        throw std::invalid_argument("unknown channel kind");
    if (c.params == nullptr || c.n_params < 1) throw std::invalid_argument("empty sweep");
    cfg.sweep.assign(c.params, c.params + c.n_params);
    cfg.seed = c.seed;
    cfg.min_frames = c.min_frames;
    cfg.max_frames = c.max_frames;
    cfg.target_errors = c.target_errors;
    cfg.bp_max_iters = c.bp_max_iters;
    cfg.threads = c.threads;
    return cfg;
}

pcbi::SweepResult to_core_result(const pcbi_sim_point* points, int n) {
    pcbi::SweepResult r;
    for (int i = 0; i < n; ++i) {
        pcbi::SweepPoint p;
        p.channel_param = points[i].channel_param;
        p.frames = points[i].frames;
        p.bits = points[i].bits;
        p.bit_errors = points[i].bit_errors;
        p.ber = points[i].ber;
        p.ber_ci = points[i].ber_ci;
        p.blocks = points[i].blocks;
        p.block_errors = points[i].block_errors;
        p.bler = points[i].bler;
        p.seconds = points[i].seconds;
        r.points.push_back(p);
    }
    return r;
}

}  // namespace

int pcbi_simulate(const pcbi_sim_config* config, pcbi_sim_point* points_out) {
    if (int rc = require(config != nullptr && points_out != nullptr, "null argument")) return rc;
    return wrap([&] {
        const pcbi::ExperimentConfig cfg = to_core_config(*config);
        const pcbi::SweepResult res = pcbi::run_experiment(cfg);
        for (size_t i = 0; i < res.points.size(); ++i) {
            const pcbi::SweepPoint& p = res.points[i];
            points_out[i] = {p.channel_param, p.frames,       p.bits, p.bit_errors, p.ber,
                             p.ber_ci,        p.blocks,       p.block_errors,
                             p.bler,          p.seconds};
        }
    });
}

int pcbi_sim_write_csv(const pcbi_sim_config* config, const pcbi_sim_point* points,
                       int n_points, const char* path) {
    if (int rc = require(config && points && path && n_points >= 0, "null argument")) return rc;
    return wrap([&] {
        const pcbi::ExperimentConfig cfg = to_core_config(*config);
        pcbi::write_results_csv(cfg, to_core_result(points, n_points), path);
    });
}

int pcbi_sim_write_plot(const pcbi_sim_point* points, int n_points, const char* path) {
    if (int rc = require(points != nullptr && path != nullptr, "null argument")) return rc;
    return wrap([&] { pcbi::write_plot_data(to_core_result(points, n_points), path); });
}

int pcbi_estimate_stats(long long errors, long long total, double* rate, double* half_width) {
    if (int rc = require(rate != nullptr && half_width != nullptr, "null argument")) return rc;
    return wrap([&] {
        const auto [r, h] = pcbi::estimate_stats(errors, total);
        *rate = r;
        *half_width = h;
    });
}

}  // extern "C"
