#include "correlation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pcbi {

std::vector<int> column_support(const BitMatrix& g, int column) {
    if (column < 1 || column > g.cols()) throw std::invalid_argument("column out of range");
    std::vector<int> support;
    for (int r = 0; r < g.rows(); ++r)
        if (g.get(r, column - 1)) support.push_back(r + 1);
    return support;
}

CorrelationProfile correlated_split(const BitMatrix& g, const std::vector<int>& info_set) {
    CorrelationProfile p;
    p.info_set = info_set;
    const BitMatrix gaa = submatrix(g, info_set, info_set);
    for (int r = 0; r < int(info_set.size()); ++r) {
        p.supports.push_back(column_support(g, info_set[r]));
        if (gaa.row_weight(r) > 1) {
            p.correlated.push_back(info_set[r]);
            p.correlated_positions.push_back(r + 1);
        } else {
            p.uncorrelated.push_back(info_set[r]);
            p.uncorrelated_positions.push_back(r + 1);
        }
    }
    return p;
}

CorrelationProfile analyze_code(const PolarCodeSpec& spec) {
    return correlated_split(polar_generator(spec.stages), spec.info_set);
}

namespace {

struct TargetContext {
    int column = 0;
    int position = -1;               // 0-based position of the column within the info set
    std::vector<int> peer_positions; // 0-based positions of S_i \ {i}
    std::vector<int> pool_positions; // 0-based positions of A \ S_i
};

struct Counts {
    long long events = 0, coupled = 0, baseline_coupled = 0;
};

}  // namespace

CouplingReport measure_coupling(const PolarCodeSpec& spec, const ChannelParams& params,
                                const std::vector<int>& target_columns, long long trials,
                                uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const int k = spec.info_len();
    std::vector<int> pos_of(spec.block_len + 1, -1);
    for (int r = 0; r < k; ++r) pos_of[spec.info_set[r]] = r;

    const BitMatrix g = polar_generator(spec.stages);
    std::vector<TargetContext> targets;
    for (int col : target_columns) {
        TargetContext t;
        t.column = col;
        if (col < 1 || col > spec.block_len || pos_of[col] < 0)
            throw std::invalid_argument("target column is not an information index");
        t.position = pos_of[col];
        std::vector<uint8_t> in_support(spec.block_len + 1, 0);
        for (int row : column_support(g, col)) {
            in_support[row] = 1;
            if (row != col && pos_of[row] >= 0) t.peer_positions.push_back(pos_of[row]);
        }
        for (int idx : spec.info_set)
            if (!in_support[idx]) t.pool_positions.push_back(pos_of[idx]);
        targets.push_back(std::move(t));
    }

    // Trials are split over a fixed number of logical workers; each owns an RNG
    // stream keyed by its index, so totals do not depend on thread scheduling.
    const int kWorkers = 64;
    std::vector<std::vector<Counts>> per_worker(kWorkers,
                                                std::vector<Counts>(targets.size()));
    int hw = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;

    auto run_worker = [&](int w) {
        const long long base = trials / kWorkers;
        const long long extra = w < int(trials % kWorkers) ? 1 : 0;
        const long long my_trials = base + extra;
        RngStream rng(seed, uint64_t(w));
        std::vector<Counts>& counts = per_worker[w];
        std::vector<uint8_t> info(k), err(k);
        for (long long t = 0; t < my_trials; ++t) {
            for (int i = 0; i < k; ++i) info[i] = rng.bit();
            const std::vector<uint8_t> x = encode(spec, info);
            const std::vector<double> llr = transmit(x, params, rng);
            const ScResult dec = sc_decode(spec, llr);
            for (int i = 0; i < k; ++i) err[i] = uint8_t(dec.info[i] != info[i]);
            for (size_t ti = 0; ti < targets.size(); ++ti) {
                const TargetContext& tc = targets[ti];
                Counts& c = counts[ti];
                const std::vector<int> draw = rng.sample_without_replacement(
                    int(tc.pool_positions.size()), int(tc.peer_positions.size()));
                for (int d : draw)
                    if (err[tc.pool_positions[d]]) {
                        ++c.baseline_coupled;
                        break;
                    }
                if (!err[tc.position]) continue;
                ++c.events;
                for (int p : tc.peer_positions)
                    if (err[p]) {
                        ++c.coupled;
                        break;
                    }
            }
        }
    };

    std::vector<std::thread> pool;
    std::atomic_int next_worker{0};
    const int n_threads = std::min(hw, kWorkers);
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back([&] {
            for (int w = next_worker.fetch_add(1); w < kWorkers; w = next_worker.fetch_add(1))
                run_worker(w);
        });
    for (auto& th : pool) th.join();

    CouplingReport report;
    report.trials = trials;
    for (size_t ti = 0; ti < targets.size(); ++ti) {
        CouplingRow row;
        row.column = targets[ti].column;
        for (int w = 0; w < kWorkers; ++w) {
            row.events += per_worker[w][ti].events;
            row.coupled += per_worker[w][ti].coupled;
            row.baseline_coupled += per_worker[w][ti].baseline_coupled;
        }
        row.defined = row.events > 0;
        row.coefficient = row.defined ? double(row.coupled) / double(row.events) : std::nan("");
        row.baseline = double(row.baseline_coupled) / double(trials);
        report.rows.push_back(row);
    }
    return report;
}

std::string coupling_csv(const CouplingReport& report) {
    std::ostringstream os;
    os << "column,events,coupled,coefficient,baseline\n";
    for (const CouplingRow& r : report.rows) {
        os << r.column << "," << r.events << "," << r.coupled << ",";
        if (r.defined)
            os << r.coefficient;
        else
            os << "nan";
        os << "," << r.baseline << "\n";
    }
    return os.str();
}

}  // namespace pcbi
