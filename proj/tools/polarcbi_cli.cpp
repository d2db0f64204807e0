// Command-line front end. Talks to the library exclusively through the C
// interface in polarcbi.h.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polarcbi.h"

namespace {

struct CliError {
    int code;
};

void check(int rc) {
    if (rc != PCBI_OK) {
        std::cerr << "error: " << pcbi_status_name(rc) << ": " << pcbi_last_error() << "\n";
        throw CliError{1};
    }
}

struct PolarHandle {
    pcbi_polar* p = nullptr;
    ~PolarHandle() { pcbi_polar_free(p); }
};

struct ProfileHandle {
    pcbi_profile* p = nullptr;
    ~ProfileHandle() { pcbi_profile_free(p); }
};

struct MapHandle {
    pcbi_imap* p = nullptr;
    ~MapHandle() { pcbi_imap_free(p); }
};

int channel_kind(const std::string& name) {
    if (name == "bec") return PCBI_CHANNEL_BEC;
    if (name == "awgn") return PCBI_CHANNEL_AWGN;
    std::cerr << "error: unknown channel '" << name << "'\n";
    throw CliError{1};
}

std::string join(const std::vector<int32_t>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

void load_spec(const std::string& path, PolarHandle& polar) {
    check(pcbi_polar_read(path.c_str(), &polar.p));
}

std::vector<int32_t> info_set_of(const pcbi_polar* p) {
    std::vector<int32_t> a(pcbi_polar_info_len(p));
    check(pcbi_polar_info_set(p, a.data()));
    return a;
}

int cmd_construct(const std::string& channel, int n, double rate, int k_flag, double param,
                  const std::string& spec_path) {
    int k = k_flag;
    if (k <= 0) k = int(std::llround(rate * n));
    PolarHandle polar;
    if (channel_kind(channel) == PCBI_CHANNEL_BEC)
        check(pcbi_polar_construct_bec(n, param, k, &polar.p));
    else
        check(pcbi_polar_construct_awgn(n, param, k, &polar.p));
    check(pcbi_polar_write(polar.p, spec_path.c_str()));
    std::cout << "wrote " << spec_path << " (N=" << n << ", K=" << k << ")\n";
    return 0;
}

int cmd_analyze(const std::string& spec_path, const std::string& out_path) {
    PolarHandle polar;
    load_spec(spec_path, polar);
    ProfileHandle profile;
    check(pcbi_profile_create(polar.p, &profile.p));
    std::vector<int32_t> ac(pcbi_profile_correlated_len(profile.p));
    std::vector<int32_t> auc(pcbi_profile_uncorrelated_len(profile.p));
    check(pcbi_profile_correlated(profile.p, ac.data()));
    check(pcbi_profile_uncorrelated(profile.p, auc.data()));
    std::string text = "K_c=" + std::to_string(ac.size()) + "\n" +
                       "K_uc=" + std::to_string(auc.size()) + "\n" + "A_c=" + join(ac) + "\n" +
                       "A_uc=" + join(auc) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        os << text;
        if (!os) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
    }
    return 0;
}

int cmd_coupling(const std::string& spec_path, const std::string& channel, double param,
                 std::vector<int> columns, long long trials, uint64_t seed, int threads,
                 const std::string& out_path) {
    PolarHandle polar;
    load_spec(spec_path, polar);
    if (columns.empty()) {
        // Default to every information index whose generator-column support
        // meets at least one other information index.
        const std::vector<int32_t> a = info_set_of(polar.p);
        const std::set<int32_t> a_set(a.begin(), a.end());
        const int n = pcbi_polar_block_len(polar.p);
        std::vector<int32_t> support(n);
        for (int32_t col : a) {
            int len = 0;
            check(pcbi_column_support(polar.p, col, support.data(), n, &len));
            int in_a = 0;
            for (int i = 0; i < len; ++i) in_a += a_set.count(support[i]) ? 1 : 0;
            if (in_a >= 2) columns.push_back(col);
        }
        if (columns.empty()) {
            std::cerr << "error: no correlated columns to measure\n";
            return 1;
        }
    }
    std::vector<int32_t> cols(columns.begin(), columns.end());
    std::vector<pcbi_coupling_row> rows(cols.size());
    check(pcbi_measure_coupling(polar.p, channel_kind(channel), param, cols.data(),
                                int(cols.size()), trials, seed, threads, rows.data()));
    std::string csv = "column,events,coupled,coefficient,baseline\n";
    for (const pcbi_coupling_row& r : rows) {
        char buf[160];
        if (r.events > 0)
            std::snprintf(buf, sizeof(buf), "%d,%lld,%lld,%g,%g\n", int(r.column),
                          (long long)r.events, (long long)r.coupled, r.coefficient, r.baseline);
        else
            std::snprintf(buf, sizeof(buf), "%d,0,0,nan,nan\n", int(r.column));
        csv += buf;
    }
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream os(out_path);
        os << csv;
        if (!os) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
    }
    return 0;
}

int cmd_interleave_map(const std::string& scheme, const std::string& spec_path, int nl,
                       int k_flag, const std::string& out_path) {
    int k = k_flag;
    std::vector<int32_t> corr;
    if (!spec_path.empty()) {
        PolarHandle polar;
        load_spec(spec_path, polar);
        k = pcbi_polar_info_len(polar.p);
        ProfileHandle profile;
        check(pcbi_profile_create(polar.p, &profile.p));
        corr.resize(pcbi_profile_correlated_len(profile.p));
        check(pcbi_profile_correlated_positions(profile.p, corr.data()));
    }
    if (k <= 0) {
        std::cerr << "error: need --spec or --k\n";
        return 1;
    }
    int kind;
    if (scheme == "direct")
        kind = PCBI_MAP_DIRECT;
    else if (scheme == "bi")
        kind = PCBI_MAP_BI;
    else if (scheme == "cbi")
        kind = PCBI_MAP_CBI;
    else {
        std::cerr << "error: unknown interleaver scheme '" << scheme << "'\n";
        return 1;
    }
    if (kind == PCBI_MAP_CBI && spec_path.empty()) {
        std::cerr << "error: cbi needs --spec for the correlated positions\n";
        return 1;
    }
    MapHandle map;
    check(pcbi_imap_build(kind, nl, k, corr.empty() ? nullptr : corr.data(), int(corr.size()),
                          &map.p));
    check(pcbi_imap_write_csv(map.p, out_path.c_str()));
    std::cout << "wrote " << out_path << " (" << pcbi_imap_ldpc_blocks(map.p)
              << " ldpc blocks -> " << pcbi_imap_polar_blocks(map.p) << " polar blocks, "
              << pcbi_imap_padding_count(map.p) << " padding)\n";
    return 0;
}

int cmd_simulate(const std::string& scheme, const std::string& spec_path, int n, double rate,
                 double design_snr, bool have_design, const std::string& channel,
                 const std::vector<double>& params, uint64_t seed, long long min_frames,
                 long long max_frames, long long target_errors, int bp_iters, bool systematic,
                 int threads, const std::string& out_path) {
    if (params.empty()) {
        std::cerr << "error: --param list is empty\n";
        return 1;
    }
    const int kind = channel_kind(channel);
    PolarHandle polar;
    if (!spec_path.empty()) {
        load_spec(spec_path, polar);
    } else {
        const int k = int(std::llround(rate * n));
        if (kind == PCBI_CHANNEL_BEC) {
            check(pcbi_polar_construct_bec(n, params[0], k, &polar.p));
        } else {
            // Default design SNR: the lowest sweep point.
            double snr = have_design ? design_snr : *std::min_element(params.begin(), params.end());
            check(pcbi_polar_construct_awgn(n, snr, k, &polar.p));
        }
    }

    int sim_scheme;
    if (scheme == "polar-only")
        sim_scheme = PCBI_SIM_POLAR_ONLY;
    else if (scheme == "ldpc-direct-polar")
        sim_scheme = PCBI_SIM_LDPC_DIRECT_POLAR;
    else if (scheme == "ldpc-bi-polar")
        sim_scheme = PCBI_SIM_LDPC_BI_POLAR;
    else if (scheme == "ldpc-cbi-polar")
        sim_scheme = PCBI_SIM_LDPC_CBI_POLAR;
    else {
        std::cerr << "error: unknown scheme '" << scheme << "'\n";
        return 1;
    }

    pcbi_sim_config cfg{};
    cfg.scheme = sim_scheme;
    cfg.polar = polar.p;
    cfg.systematic = systematic ? 1 : 0;
    cfg.channel = kind;
    cfg.params = params.data();
    cfg.n_params = int(params.size());
    cfg.seed = seed;
    cfg.min_frames = min_frames;
    cfg.max_frames = max_frames;
    cfg.target_errors = target_errors;
    cfg.bp_max_iters = bp_iters;
    cfg.threads = threads;

    std::vector<pcbi_sim_point> points(params.size());
    check(pcbi_simulate(&cfg, points.data()));
    for (const pcbi_sim_point& p : points) {
        std::printf("%-18s param=%-8g frames=%-8lld ber=%.4e (+/- %.1e) bler=%.4e [%lld/%lld] %.1fs\n",
                    scheme.c_str(), p.channel_param, (long long)p.frames, p.ber, p.ber_ci,
                    p.bler, (long long)p.block_errors, (long long)p.blocks, p.seconds);
    }
    if (!out_path.empty()) {
        check(pcbi_sim_write_csv(&cfg, points.data(), int(points.size()), out_path.c_str()));
        const std::string plot = out_path + "." + scheme + ".dat";
        check(pcbi_sim_write_plot(points.data(), int(points.size()), plot.c_str()));
        std::cout << "wrote " << out_path << " and " << plot << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar/LDPC concatenated coding with correlation-breaking interleaving"};
    app.require_subcommand(1);
    app.set_config("--config");

    // construct
    auto* construct = app.add_subcommand("construct", "construct a polar code spec file");
    int c_n = 256;
    double c_rate = 0.25;
    int c_k = 0;
    std::string c_channel = "awgn";
    double c_param = 1.0;
    std::string c_spec = "code.spec";
    construct->add_option("--n", c_n, "block length (power of two)");
    construct->add_option("--rate", c_rate, "code rate, K = round(rate*N)");
    construct->add_option("--k", c_k, "information length (overrides --rate)");
    construct->add_option("--channel", c_channel, "bec or awgn");
    construct->add_option("--param", c_param,
                          "erasure probability (bec) or design Eb/N0 in dB (awgn)");
    construct->add_option("--spec", c_spec, "output code-spec path");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "correlated/uncorrelated split of a code");
    std::string a_spec, a_out;
    analyze->add_option("--spec", a_spec, "code-spec file")->required();
    analyze->add_option("--out", a_out, "output path (default stdout)");

    // coupling
    auto* coupling = app.add_subcommand("coupling", "Monte-Carlo error-coupling measurement");
    std::string k_spec, k_channel = "bec", k_out;
    double k_param = 0.2;
    std::vector<int> k_columns;
    long long k_trials = 1000000;
    uint64_t k_seed = 1;
    int k_threads = 0;
    coupling->add_option("--spec", k_spec, "code-spec file")->required();
    coupling->add_option("--channel", k_channel, "bec or awgn");
    coupling->add_option("--param", k_param, "erasure probability or Eb/N0 in dB");
    coupling->add_option("--columns", k_columns, "generator columns to measure")->delimiter(',');
    coupling->add_option("--trials", k_trials, "number of Monte-Carlo trials");
    coupling->add_option("--seed", k_seed, "master seed");
    coupling->add_option("--threads", k_threads, "worker threads (0 = hardware)");
    coupling->add_option("--out", k_out, "CSV output path (default stdout)");

    // interleave-map
    auto* imap = app.add_subcommand("interleave-map", "emit an interleaver map as CSV");
    std::string m_scheme = "cbi", m_spec, m_out = "map.csv";
    int m_nl = 155, m_k = 0;
    imap->add_option("--scheme", m_scheme, "direct, bi or cbi");
    imap->add_option("--spec", m_spec, "code-spec file (supplies K and the correlated split)");
    imap->add_option("--nl", m_nl, "LDPC block length");
    imap->add_option("--k", m_k, "polar information length (when no --spec)");
    imap->add_option("--out", m_out, "CSV output path");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo BER/BLER sweep");
    std::string s_scheme = "ldpc-cbi-polar", s_spec, s_channel = "awgn", s_out;
    int s_n = 256;
    double s_rate = 0.25;
    double s_design = 0.0;
    std::vector<double> s_params;
    uint64_t s_seed = 1;
    long long s_min = 10, s_max = 1000000, s_target = 100;
    int s_bp = 50, s_threads = 0;
    bool s_sys = false;
    sim->add_option("--scheme", s_scheme,
                    "polar-only, ldpc-direct-polar, ldpc-bi-polar or ldpc-cbi-polar");
    sim->add_option("--spec", s_spec, "code-spec file (otherwise constructed from --n/--rate)");
    sim->add_option("--n", s_n, "polar block length when constructing");
    sim->add_option("--rate", s_rate, "polar code rate when constructing");
    auto* design_opt =
        sim->add_option("--design-snr", s_design,
                        "AWGN construction design Eb/N0 (default: lowest sweep point)");
    sim->add_option("--channel", s_channel, "bec or awgn");
    sim->add_option("--param", s_params, "sweep points (erasure probabilities or Eb/N0 dB)")
        ->delimiter(',')
        ->required();
    sim->add_option("--seed", s_seed, "master seed");
    sim->add_option("--min-frames", s_min, "minimum frames per point");
    sim->add_option("--max-frames", s_max, "maximum frames per point");
    sim->add_option("--target-errors", s_target, "block-error events per point");
    sim->add_option("--bp-iters", s_bp, "LDPC decoder iteration cap");
    sim->add_flag("--systematic", s_sys, "systematic polar encoding/decoding");
    sim->add_option("--threads", s_threads, "worker threads (0 = hardware)");
    sim->add_option("--out", s_out, "CSV output path (plus a .dat plot file per scheme)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed())
            return cmd_construct(c_channel, c_n, c_rate, c_k, c_param, c_spec);
        if (analyze->parsed()) return cmd_analyze(a_spec, a_out);
        if (coupling->parsed())
            return cmd_coupling(k_spec, k_channel, k_param, k_columns, k_trials, k_seed,
                                k_threads, k_out);
        if (imap->parsed()) return cmd_interleave_map(m_scheme, m_spec, m_nl, m_k, m_out);
        if (sim->parsed())
            return cmd_simulate(s_scheme, s_spec, s_n, s_rate, s_design, design_opt->count() > 0,
                                s_channel, s_params, s_seed, s_min, s_max, s_target, s_bp, s_sys,
                                s_threads, s_out);
    } catch (const CliError& e) {
        return e.code;
    }
    return 1;
}
