#include "ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pcbi {

namespace {

constexpr double kBpClamp = 25.0;

long long mod_pow(long long b, int e, long long m) {
    long long r = 1 % m;
    b %= m;
    for (int i = 0; i < e; ++i) r = r * b % m;
    return r;
}

}  // namespace

LdpcCodeSpec make_ldpc_spec(BitMatrix h) {
    LdpcCodeSpec spec;
    spec.code_len = h.cols();

    // Row-reduce a copy with the leftmost-pivot rule; free columns become the
    // information positions and the reduced rows give the parity solve.
    BitMatrix r = h;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < r.cols() && rank < r.rows(); ++c) {
        int pivot = -1;
        for (int i = rank; i < r.rows(); ++i)
            if (r.get(i, c)) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        r.swap_rows(rank, pivot);
        for (int i = 0; i < r.rows(); ++i)
            if (i != rank && r.get(i, c)) r.xor_row(i, rank);
        pivot_col.push_back(c);
        ++rank;
    }
    spec.info_len = spec.code_len - rank;
    if (spec.info_len < 1) throw std::invalid_argument("parity-check matrix leaves no free bits");

    std::vector<int> col_kind(spec.code_len, -1);  // index into info vector, or -1 for pivots
    {
        size_t p = 0;
        int info_idx = 0;
        for (int c = 0; c < spec.code_len; ++c) {
            if (p < pivot_col.size() && pivot_col[p] == c) {
                ++p;
                continue;
            }
            col_kind[c] = info_idx++;
            spec.info_positions.push_back(c + 1);
        }
    }
    for (int row = 0; row < rank; ++row) {
        spec.pivot_positions.push_back(pivot_col[row] + 1);
        std::vector<int> deps;
        for (int c = 0; c < spec.code_len; ++c)
            if (col_kind[c] >= 0 && r.get(row, c)) deps.push_back(col_kind[c]);
        spec.pivot_deps.push_back(std::move(deps));
    }

    spec.check_vars.resize(h.rows());
    spec.var_checks.resize(h.cols());
    for (int row = 0; row < h.rows(); ++row)
        for (int c = 0; c < h.cols(); ++c)
            if (h.get(row, c)) {
                spec.check_vars[row].push_back(c);
                spec.var_checks[c].push_back(row);
            }
    spec.h = std::move(h);
    return spec;
}

LdpcCodeSpec build_tanner_h() {
    const int p = 31;
    BitMatrix h(3 * p, 5 * p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 5; ++j) {
            const int shift = int(mod_pow(5, i, p) * mod_pow(2, j, p) % p);
            for (int r = 0; r < p; ++r) h.set(i * p + r, j * p + (r + shift) % p, 1);
        }
    return make_ldpc_spec(std::move(h));
}

std::vector<uint8_t> ldpc_encode(const LdpcCodeSpec& spec, const std::vector<uint8_t>& info) {
    if (int(info.size()) != spec.info_len)
        throw std::invalid_argument("info length does not match the code dimension");
    std::vector<uint8_t> c(spec.code_len, 0);
    for (int i = 0; i < spec.info_len; ++i) c[spec.info_positions[i] - 1] = info[i];
    for (size_t row = 0; row < spec.pivot_positions.size(); ++row) {
        uint8_t acc = 0;
        for (int d : spec.pivot_deps[row]) acc ^= info[d];
        c[spec.pivot_positions[row] - 1] = acc;
    }
    return c;
}

bool syndrome_ok(const BitMatrix& h, const std::vector<uint8_t>& codeword) {
    if (int(codeword.size()) != h.cols())
        throw std::invalid_argument("codeword length does not match H");
    for (int row = 0; row < h.rows(); ++row) {
        uint8_t acc = 0;
        for (int c = 0; c < h.cols(); ++c) acc ^= uint8_t(h.get(row, c) & codeword[c]);
        if (acc) return false;
    }
    return true;
}

namespace {

bool checks_satisfied(const LdpcCodeSpec& spec, const std::vector<uint8_t>& hard) {
    for (const std::vector<int>& vars : spec.check_vars) {
        uint8_t acc = 0;
        for (int v : vars) acc ^= hard[v];
        if (acc) return false;
    }
    return true;
}

}  // namespace

BpResult bp_decode(const LdpcCodeSpec& spec, const std::vector<double>& llr, int max_iters) {
    if (int(llr.size()) != spec.code_len)
        throw std::invalid_argument("LLR length does not match the code length");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

    const int n_checks = int(spec.check_vars.size());
    std::vector<std::vector<double>> c2v(n_checks);
    for (int c = 0; c < n_checks; ++c) c2v[c].assign(spec.check_vars[c].size(), 0.0);

    std::vector<double> posterior = llr;
    BpResult res;
    auto harden = [&] {
        std::vector<uint8_t> hard(spec.code_len);
        bool decided = true;
        for (int v = 0; v < spec.code_len; ++v) {
            hard[v] = posterior[v] < 0.0 ? 1 : 0;
            if (posterior[v] == 0.0) decided = false;
        }
        res.codeword = std::move(hard);
        return decided;
    };

    for (int iter = 0; iter <= max_iters; ++iter) {
        const bool decided = harden();
        res.iterations = iter;
        if (decided && checks_satisfied(spec, res.codeword)) {
            res.converged = true;
            break;
        }
        if (iter == max_iters) break;

        for (int c = 0; c < n_checks; ++c) {
            const std::vector<int>& vars = spec.check_vars[c];
            const size_t deg = vars.size();
            // tanh of each incoming extrinsic, then leave-one-out products.
            static thread_local std::vector<double> t, prefix, suffix;
            t.resize(deg);
            prefix.resize(deg + 1);
            suffix.resize(deg + 1);
            for (size_t e = 0; e < deg; ++e) {
                const double m =
                    std::clamp(posterior[vars[e]] - c2v[c][e], -kBpClamp, kBpClamp);
                t[e] = std::tanh(0.5 * m);
            }
            prefix[0] = 1.0;
            for (size_t e = 0; e < deg; ++e) prefix[e + 1] = prefix[e] * t[e];
            suffix[deg] = 1.0;
            for (size_t e = deg; e > 0; --e) suffix[e - 1] = suffix[e] * t[e - 1];
            for (size_t e = 0; e < deg; ++e) {
                double prod = prefix[e] * suffix[e + 1];
                prod = std::clamp(prod, -(1.0 - 1e-12), 1.0 - 1e-12);
                c2v[c][e] = std::clamp(2.0 * std::atanh(prod), -kBpClamp, kBpClamp);
            }
        }
        posterior = llr;
        for (int c = 0; c < n_checks; ++c)
            for (size_t e = 0; e < spec.check_vars[c].size(); ++e)
                posterior[spec.check_vars[c][e]] += c2v[c][e];
    }

    res.info.resize(spec.info_len);
    for (int i = 0; i < spec.info_len; ++i)
        res.info[i] = res.codeword[spec.info_positions[i] - 1];
    return res;
}

std::string alist_string(const BitMatrix& h) {
    std::ostringstream os;
    const int n = h.cols(), m = h.rows();
    std::vector<std::vector<int>> var_deg(n), chk_deg(m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c)
            if (h.get(r, c)) {
                var_deg[c].push_back(r + 1);
                chk_deg[r].push_back(c + 1);
            }
    size_t dv = 0, dc = 0;
    for (const auto& v : var_deg) dv = std::max(dv, v.size());
    for (const auto& v : chk_deg) dc = std::max(dc, v.size());
    os << n << " " << m << "\n" << dv << " " << dc << "\n";
    for (int c = 0; c < n; ++c) os << var_deg[c].size() << (c + 1 < n ? " " : "\n");
    for (int r = 0; r < m; ++r) os << chk_deg[r].size() << (r + 1 < m ? " " : "\n");
    for (int c = 0; c < n; ++c) {
        for (size_t i = 0; i < var_deg[c].size(); ++i) os << (i ? " " : "") << var_deg[c][i];
        os << "\n";
    }
    for (int r = 0; r < m; ++r) {
        for (size_t i = 0; i < chk_deg[r].size(); ++i) os << (i ? " " : "") << chk_deg[r][i];
        os << "\n";
    }
    return os.str();
}

BitMatrix parse_alist(const std::string& text) {
    std::istringstream is(text);
    long long n = 0, m = 0, dv = 0, dc = 0;
    if (!(is >> n >> m >> dv >> dc) || n < 1 || m < 1)
        throw std::invalid_argument("alist: bad header");
    std::vector<int> var_deg(n), chk_deg(m);
    for (long long c = 0; c < n; ++c)
        if (!(is >> var_deg[c]) || var_deg[c] < 0 || var_deg[c] > dv)
            throw std::invalid_argument("alist: bad variable degree");
    for (long long r = 0; r < m; ++r)
        if (!(is >> chk_deg[r]) || chk_deg[r] < 0 || chk_deg[r] > dc)
            throw std::invalid_argument("alist: bad check degree");
    std::vector<long long> tokens;
    long long tok;
    while (is >> tok) tokens.push_back(tok);
    long long unpadded = 0;
    for (int d : var_deg) unpadded += d;
    for (int d : chk_deg) unpadded += d;
    // Writers either list exactly the degree per node or pad every list with
    // zeros to the maximum degree; the total token count tells them apart.
    long long stride_v = -1, stride_c = -1;
    const long long n_tokens = static_cast<long long>(tokens.size());
    if (n_tokens == unpadded) {
        stride_v = 0;  // per-node degree
        stride_c = 0;
    } else if (n_tokens == n * dv + m * dc) {
        stride_v = dv;
        stride_c = dc;
    } else {
        throw std::invalid_argument("alist: adjacency token count mismatch");
    }
    BitMatrix h{int(m), int(n)};
    size_t p = 0;
    for (long long c = 0; c < n; ++c) {
        const long long count = stride_v ? stride_v : var_deg[c];
        int seen = 0;
        for (long long i = 0; i < count; ++i) {
            const long long row = tokens[p++];
            if (row == 0) continue;
            if (row < 1 || row > m) throw std::invalid_argument("alist: row index out of range");
            h.set(int(row - 1), int(c), 1);
            ++seen;
        }
        if (seen != var_deg[c]) throw std::invalid_argument("alist: variable degree mismatch");
    }
    for (long long r = 0; r < m; ++r) {
        const long long count = stride_c ? stride_c : chk_deg[r];
        int seen = 0;
        for (long long i = 0; i < count; ++i) {
            const long long col = tokens[p++];
            if (col == 0) continue;
            if (col < 1 || col > n || !h.get(int(r), int(col - 1)))
                throw std::invalid_argument("alist: check list disagrees with variable lists");
            ++seen;
        }
        if (seen != chk_deg[r]) throw std::invalid_argument("alist: check degree mismatch");
    }
    return h;
}

void write_alist(const BitMatrix& h, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << alist_string(h);
    if (!os) throw std::runtime_error("write failed: " + path);
}

BitMatrix read_alist(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_alist(buf.str());
}

}  // namespace pcbi
