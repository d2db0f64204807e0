#include "polar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pcbi {

namespace {

int log2_exact(int n) {
    if (n < 1 || (n & (n - 1)) != 0)
        throw std::invalid_argument("block length must be a power of two");
    int s = 0;
    while ((1 << s) < n) ++s;
    return s;
}

// Chung et al. approximation of phi(m) = 1 - E[tanh(L/2)] for L ~ N(m, 2m).
double ga_phi(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 10.0) return std::exp(-0.4527 * std::pow(x, 0.86) + 0.0218);
    return std::sqrt(M_PI / x) * std::exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x));
}

double ga_phi_inv(double y) {
    if (y >= 1.0) return 0.0;
    double lo = 1e-12, hi = 1.0;
    while (ga_phi(hi) > y) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ga_phi(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

template <typename Better>
std::vector<int> select_info(const std::vector<double>& metric, int k, Better better) {
    std::vector<int> order(metric.size());
    std::iota(order.begin(), order.end(), 0);
    // Equal metrics prefer the larger index: later bit channels polarize better.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (metric[a] != metric[b]) return better(metric[a], metric[b]);
        return a > b;
    });
    std::vector<int> info(order.begin(), order.begin() + k);
    for (int& i : info) ++i;
    std::sort(info.begin(), info.end());
    return info;
}

}  // namespace

std::vector<uint8_t> PolarCodeSpec::assemble_source(const std::vector<uint8_t>& info) const {
    if (int(info.size()) != info_len())
        throw std::invalid_argument("info length does not match K");
    std::vector<uint8_t> u = source_bits_;
    for (int r = 0; r < info_len(); ++r) u[info_set[r] - 1] = info[r];
    return u;
}

std::vector<uint8_t> PolarCodeSpec::info_part(const std::vector<uint8_t>& full) const {
    std::vector<uint8_t> out(info_len());
    for (int r = 0; r < info_len(); ++r) out[r] = full[info_set[r] - 1];
    return out;
}

PolarCodeSpec make_polar_spec(int block_len, std::vector<int> info_set,
                              std::vector<uint8_t> frozen_values) {
    PolarCodeSpec spec;
    spec.block_len = block_len;
    spec.stages = log2_exact(block_len);
    const int k = int(info_set.size());
    if (k < 1 || k > block_len) throw std::invalid_argument("K out of range");
    if (int(frozen_values.size()) != block_len - k)
        throw std::invalid_argument("frozen value length must be N - K");
    spec.info_mask_.assign(block_len, 0);
    int prev = 0;
    for (int idx : info_set) {
        if (idx < 1 || idx > block_len || idx <= prev)
            throw std::invalid_argument("information set must be sorted within 1..N");
        spec.info_mask_[idx - 1] = 1;
        prev = idx;
    }
    // Corollary-1 structure: no information index may be a bit-subset of a
    // frozen index, otherwise G_{complement,info} has a non-zero entry.
    for (int f = 0; f < block_len; ++f) {
        if (spec.info_mask_[f]) continue;
        for (int a : info_set)
            if (((a - 1) & ~f) == 0)
                throw std::invalid_argument(
                    "information set violates the vanishing-submatrix structure");
    }
    spec.source_bits_.assign(block_len, 0);
    int fi = 0;
    for (int i = 0; i < block_len; ++i)
        if (!spec.info_mask_[i]) {
            if (frozen_values[fi] > 1) throw std::invalid_argument("frozen values must be bits");
            spec.source_bits_[i] = frozen_values[fi++];
        }
    spec.info_set = std::move(info_set);
    spec.frozen_values = std::move(frozen_values);
    return spec;
}

std::vector<double> bec_reliabilities(int block_len, double epsilon) {
    const int stages = log2_exact(block_len);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("erasure probability must be in (0,1)");
    std::vector<double> z{epsilon};
    for (int s = 0; s < stages; ++s) {
        std::vector<double> next(z.size() * 2);
        for (size_t i = 0; i < z.size(); ++i) {
            next[2 * i] = 2.0 * z[i] - z[i] * z[i];
            next[2 * i + 1] = z[i] * z[i];
        }
        z = std::move(next);
    }
    return z;
}

PolarCodeSpec construct_bec(int block_len, double epsilon, int info_len) {
    if (info_len < 1 || info_len > block_len) throw std::invalid_argument("K out of range");
    const std::vector<double> z = bec_reliabilities(block_len, epsilon);
    std::vector<int> info = select_info(z, info_len, std::less<double>());
    return make_polar_spec(block_len, std::move(info),
                           std::vector<uint8_t>(block_len - info_len, 0));
}

std::vector<double> awgn_reliabilities(int block_len, double design_snr_db, double rate) {
    const int stages = log2_exact(block_len);
    if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("rate must be in (0,1]");
    const double sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, design_snr_db / 10.0));
    std::vector<double> m{2.0 / sigma2};
    for (int s = 0; s < stages; ++s) {
        std::vector<double> next(m.size() * 2);
        for (size_t i = 0; i < m.size(); ++i) {
            const double p = ga_phi(m[i]);
            next[2 * i] = ga_phi_inv(1.0 - (1.0 - p) * (1.0 - p));
            next[2 * i + 1] = 2.0 * m[i];
        }
        m = std::move(next);
    }
    return m;
}

PolarCodeSpec construct_awgn(int block_len, double design_snr_db, int info_len) {
    if (info_len < 1 || info_len > block_len) throw std::invalid_argument("K out of range");
    const std::vector<double> m =
        awgn_reliabilities(block_len, design_snr_db, double(info_len) / block_len);
    std::vector<int> info = select_info(m, info_len, std::greater<double>());
    return make_polar_spec(block_len, std::move(info),
                           std::vector<uint8_t>(block_len - info_len, 0));
}

void butterfly_transform(std::vector<uint8_t>& bits) {
    const int n = int(bits.size());
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("butterfly length must be a power of two");
    for (int h = 1; h < n; h <<= 1)
        for (int j = 0; j < n; ++j)
            if ((j & h) == 0) bits[j] ^= bits[j + h];
}

std::vector<uint8_t> encode(const PolarCodeSpec& spec, const std::vector<uint8_t>& info) {
    std::vector<uint8_t> x = spec.assemble_source(info);
    butterfly_transform(x);
    return x;
}

std::vector<uint8_t> encode_systematic(const PolarCodeSpec& spec,
                                       const std::vector<uint8_t>& info) {
    if (int(info.size()) != spec.info_len())
        throw std::invalid_argument("info length does not match K");
    std::vector<uint8_t> t(spec.block_len, 0);
    for (int r = 0; r < spec.info_len(); ++r) t[spec.info_set[r] - 1] = info[r];
    butterfly_transform(t);  // t_A = x_A * G_AA = u_A
    std::vector<uint8_t> x = spec.assemble_source(spec.info_part(t));
    butterfly_transform(x);
    return x;
}

double f_combine(double a, double b) {
    a = std::clamp(a, -kLlrCap, kLlrCap);
    b = std::clamp(b, -kLlrCap, kLlrCap);
    const double sign = (a < 0) == (b < 0) ? 1.0 : -1.0;
    const double mag = std::min(std::abs(a), std::abs(b));
    // Exact 2*atanh(tanh(a/2)tanh(b/2)) in a form that stays finite and maps
    // an erased input (exactly 0) to exactly 0.
    return sign * mag + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

double g_combine(double a, double b, uint8_t bit) {
    return bit ? b - a : b + a;
}

namespace {

struct ScWork {
    const PolarCodeSpec* spec = nullptr;
    std::vector<std::vector<double>> llr;   // llr[level] has N >> level entries
    std::vector<std::vector<uint8_t>> bits;
    std::vector<uint8_t> u_hat;
    int next = 0;  // 0-based source position being decided

    // Decides the sub-block rooted at `level`; leaves bits[level] holding the
    // re-encoded partial codeword used by the parent g-combines.
    void descend(int level) {
        const int len = spec->block_len >> level;
        if (len == 1) {
            uint8_t b;
            if (spec->info_mask_[next])
                b = llr[level][0] >= 0.0 ? 0 : 1;
            else
                b = spec->source_bits_[next];
            u_hat[next] = b;
            bits[level][0] = b;
            ++next;
            return;
        }
        const int half = len / 2;
        const std::vector<double>& in = llr[level];
        for (int i = 0; i < half; ++i) llr[level + 1][i] = f_combine(in[i], in[i + half]);
        descend(level + 1);
        for (int i = 0; i < half; ++i) bits[level][i] = bits[level + 1][i];
        for (int i = 0; i < half; ++i)
            llr[level + 1][i] = g_combine(in[i], in[i + half], bits[level][i]);
        descend(level + 1);
        for (int i = 0; i < half; ++i) {
            bits[level][i] ^= bits[level + 1][i];
            bits[level][i + half] = bits[level + 1][i];
        }
    }
};

}  // namespace

ScResult sc_decode(const PolarCodeSpec& spec, const std::vector<double>& llr) {
    if (int(llr.size()) != spec.block_len)
        throw std::invalid_argument("LLR length does not match N");
    ScWork w;
    w.spec = &spec;
    w.llr.resize(spec.stages + 1);
    w.bits.resize(spec.stages + 1);
    for (int level = 0; level <= spec.stages; ++level) {
        w.llr[level].resize(spec.block_len >> level);
        w.bits[level].resize(spec.block_len >> level);
    }
    w.llr[0] = llr;
    w.u_hat.resize(spec.block_len);
    w.descend(0);
    ScResult res;
    res.info = spec.info_part(w.u_hat);
    res.source = std::move(w.u_hat);
    return res;
}

ScResult sc_decode_systematic(const PolarCodeSpec& spec, const std::vector<double>& llr) {
    ScResult res = sc_decode(spec, llr);
    butterfly_transform(res.source);  // x_hat = u_hat G
    res.info = spec.info_part(res.source);
    return res;
}

std::string format_spec(const PolarCodeSpec& spec) {
    std::ostringstream os;
    os << "N=" << spec.block_len << "\n";
    os << "K=" << spec.info_len() << "\n";
    os << "A=";
    for (size_t i = 0; i < spec.info_set.size(); ++i)
        os << (i ? "," : "") << spec.info_set[i];
    os << "\nfrozen=";
    for (uint8_t b : spec.frozen_values) os << int(b);
    os << "\n";
    return os.str();
}

PolarCodeSpec parse_spec(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int n = -1, k = -1;
    std::vector<int> info;
    std::string frozen_str;
    bool have_frozen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad code-spec line: " + line);
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "N")
            n = std::stoi(val);
        else if (key == "K")
            k = std::stoi(val);
        else if (key == "A") {
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ','))
                if (!tok.empty()) info.push_back(std::stoi(tok));
        } else if (key == "frozen") {
            frozen_str = val;
            have_frozen = true;
        } else
            throw std::invalid_argument("unknown code-spec key: " + key);
    }
    if (n <= 0 || k <= 0 || !have_frozen)
        throw std::invalid_argument("code-spec file missing N, K or frozen");
    if (int(info.size()) != k)
        throw std::invalid_argument("code-spec A length does not match K");
    std::vector<uint8_t> frozen;
    frozen.reserve(frozen_str.size());
    for (char c : frozen_str) {
        if (c == '\r') continue;
        if (c != '0' && c != '1') throw std::invalid_argument("frozen string must be bits");
        frozen.push_back(uint8_t(c - '0'));
    }
    return make_polar_spec(n, std::move(info), std::move(frozen));
}

void write_spec_file(const PolarCodeSpec& spec, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << format_spec(spec);
    if (!os) throw std::runtime_error("write failed: " + path);
}

PolarCodeSpec read_spec_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_spec(buf.str());
}

}  // namespace pcbi
