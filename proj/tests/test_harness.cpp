#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "harness.hpp"

using namespace pcbi;

namespace {

ExperimentConfig small_config(SimScheme scheme) {
    ExperimentConfig cfg;
    cfg.scheme = scheme;
    cfg.polar = construct_bec(16, 0.2, 8);
    cfg.channel = ChannelParams::Bec;
    cfg.sweep = {0.2};
    cfg.min_frames = 4;
    cfg.max_frames = 4;
    cfg.target_errors = 1;
    cfg.bp_max_iters = 20;
    cfg.seed = 99;
    cfg.threads = 1;
    return cfg;
}

std::string data_rows(const std::string& csv) {
    std::istringstream is(csv);
    std::string line, out;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#' && line.find("scheme,") != 0) out += line + "\n";
    return out;
}

}  // namespace

TEST_CASE("estimate_stats") {
    CHECK(estimate_stats(0, 100) == std::pair<double, double>{0.0, 0.0});
    CHECK(estimate_stats(100, 100) == std::pair<double, double>{1.0, 0.0});
    const auto [rate, half] = estimate_stats(100, 1000000);
    CHECK(rate == doctest::Approx(1e-4));
    CHECK(half == doctest::Approx(1.96 * std::sqrt(1e-4 * (1.0 - 1e-4) / 1e6)));
    CHECK_THROWS_AS(estimate_stats(0, 0), std::invalid_argument);
}

TEST_CASE("scheme names round trip") {
    for (SimScheme s : {SimScheme::PolarOnly, SimScheme::LdpcDirectPolar,
                        SimScheme::LdpcBiPolar, SimScheme::LdpcCbiPolar})
        CHECK(scheme_from_name(scheme_name(s)) == s);
    CHECK_THROWS_AS(scheme_from_name("nope"), std::invalid_argument);
}

TEST_CASE("overall rate convention") {
    ExperimentConfig cfg = small_config(SimScheme::PolarOnly);
    CHECK(overall_rate(cfg) == doctest::Approx(0.5));
    cfg.scheme = SimScheme::LdpcCbiPolar;
    CHECK(overall_rate(cfg) == doctest::Approx(0.5 * 64.0 / 155.0));
}

TEST_CASE("perfect channel gives zero errors for every scheme") {
    for (SimScheme s : {SimScheme::PolarOnly, SimScheme::LdpcDirectPolar,
                        SimScheme::LdpcBiPolar, SimScheme::LdpcCbiPolar}) {
        ExperimentConfig cfg = small_config(s);
        cfg.sweep = {0.0};  // erasure-free BEC
        const SweepResult res = run_experiment(cfg);
        REQUIRE(res.points.size() == 1);
        CHECK(res.points[0].bit_errors == 0);
        CHECK(res.points[0].block_errors == 0);
        CHECK(res.points[0].ber == 0.0);
        CHECK(res.points[0].bler == 0.0);
        CHECK(res.points[0].frames == 4);
        // Conservation: bits counted equal the frame info payload.
        if (s == SimScheme::PolarOnly) {
            CHECK(res.points[0].bits == 4 * 8);
        } else {
            CHECK(res.points[0].bits == res.points[0].blocks * 64);
        }
    }
}

TEST_CASE("noisy polar-only run is reproducible and error-bearing") {
    ExperimentConfig cfg = small_config(SimScheme::PolarOnly);
    cfg.min_frames = 2000;
    cfg.max_frames = 2000;
    cfg.target_errors = 1000000;
    const SweepResult a = run_experiment(cfg);
    const SweepResult b = run_experiment(cfg);
    CHECK(a.points[0].bit_errors > 0);
    CHECK(a.points[0].bit_errors == b.points[0].bit_errors);
    CHECK(a.points[0].block_errors == b.points[0].block_errors);
}

TEST_CASE("aggregation does not depend on the thread count") {
    for (SimScheme s : {SimScheme::PolarOnly, SimScheme::LdpcCbiPolar}) {
        ExperimentConfig cfg = small_config(s);
        cfg.min_frames = s == SimScheme::PolarOnly ? 600 : 12;
        cfg.max_frames = cfg.min_frames;
        cfg.sweep = {0.2, 0.35};
        cfg.threads = 1;
        const SweepResult one = run_experiment(cfg);
        cfg.threads = 4;
        const SweepResult four = run_experiment(cfg);
        const std::string rows1 = data_rows(results_csv(cfg, one));
        const std::string rows4 = data_rows(results_csv(cfg, four));
        CHECK(rows1 == rows4);
    }
}

TEST_CASE("error-event stopping keeps running until the target") {
    ExperimentConfig cfg = small_config(SimScheme::PolarOnly);
    cfg.sweep = {0.4};
    cfg.min_frames = 10;
    cfg.max_frames = 100000;
    cfg.target_errors = 50;
    const SweepResult res = run_experiment(cfg);
    CHECK(res.points[0].block_errors >= 50);
    CHECK(res.points[0].frames < 100000);
}

TEST_CASE("csv format") {
    ExperimentConfig cfg = small_config(SimScheme::LdpcBiPolar);
    cfg.sweep = {0.05};
    const SweepResult res = run_experiment(cfg);
    const std::string csv = results_csv(cfg, res);
    CHECK(csv.find("# polarcbi simulation results\n") == 0);
    CHECK(csv.find("# config_hash=") != std::string::npos);
    CHECK(csv.find("rate_convention=polar_rate*ldpc_rate") != std::string::npos);
    CHECK(csv.find("scheme,channel_param,frames,bits,bit_errors,ber,ber_ci,block_errors,bler,"
                   "seed\n") != std::string::npos);
    CHECK(csv.find("ldpc-bi-polar,0.05,") != std::string::npos);
    const std::string rows = data_rows(csv);
    int commas = 0;
    for (char c : rows) commas += c == ',';
    CHECK(commas == 9);  // ten fields per data row

    const std::string plot = plot_data(res);
    CHECK(plot.find("0.05 ") == 0);
}

TEST_CASE("empty sweep writes a header-only file") {
    ExperimentConfig cfg = small_config(SimScheme::PolarOnly);
    const SweepResult empty;
    const std::string csv = results_csv(cfg, empty);
    CHECK(data_rows(csv).empty());
    CHECK(csv.find("scheme,channel_param,") != std::string::npos);
    CHECK_THROWS_AS(run_experiment(ExperimentConfig{}), std::invalid_argument);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = small_config(SimScheme::PolarOnly);
    cfg.sweep.clear();
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_config(SimScheme::PolarOnly);
    cfg.min_frames = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_config(SimScheme::PolarOnly);
    cfg.max_frames = 1;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
