#include "gf2.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace pcbi {

namespace {

void check_index_set(const std::vector<int>& set, int bound, const char* what) {
    int prev = 0;
    for (int idx : set) {
        if (idx < 1 || idx > bound)
            throw std::invalid_argument(std::string(what) + " index out of range");
        if (idx <= prev)
            throw std::invalid_argument(std::string(what) + " index set not sorted");
        prev = idx;
    }
}

}  // namespace

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("BitMatrix dimensions must be positive");
    wpr_ = (cols + 63) / 64;
    w_.assign(size_t(rows) * wpr_, 0);
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void BitMatrix::xor_row(int dst, int src) {
    uint64_t* d = row(dst);
    const uint64_t* s = row(src);
    for (int w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    uint64_t* ra = row(a);
    uint64_t* rb = row(b);
    for (int w = 0; w < wpr_; ++w) std::swap(ra[w], rb[w]);
}

int BitMatrix::row_weight(int r) const {
    const uint64_t* p = row(r);
    int n = 0;
    for (int w = 0; w < wpr_; ++w) n += std::popcount(p[w]);
    return n;
}

BitMatrix kronecker_power(const BitMatrix& base, int n) {
    if (n < 0) throw std::invalid_argument("kronecker power order must be >= 0");
    long long r = 1, c = 1;
    for (int i = 0; i < n; ++i) {
        r *= base.rows();
        c *= base.cols();
        if (r > (1 << 20) || c > (1 << 20))
            throw std::invalid_argument("kronecker power dimensions too large");
    }
    BitMatrix out = BitMatrix::identity(1);
    for (int step = 0; step < n; ++step) {
        BitMatrix next(base.rows() * out.rows(), base.cols() * out.cols());
        for (int i1 = 0; i1 < base.rows(); ++i1)
            for (int j1 = 0; j1 < base.cols(); ++j1) {
                if (!base.get(i1, j1)) continue;
                for (int i2 = 0; i2 < out.rows(); ++i2)
                    for (int j2 = 0; j2 < out.cols(); ++j2)
                        if (out.get(i2, j2))
                            next.set(i1 * out.rows() + i2, j1 * out.cols() + j2, 1);
            }
        out = std::move(next);
    }
    return out;
}

std::vector<uint8_t> mat_vec_mul(const std::vector<uint8_t>& v, const BitMatrix& m) {
    if (int(v.size()) != m.rows())
        throw std::invalid_argument("mat_vec_mul: vector length does not match rows");
    std::vector<uint64_t> acc(m.words_per_row(), 0);
    for (int r = 0; r < m.rows(); ++r) {
        if (!v[r]) continue;
        const uint64_t* src = m.row(r);
        for (int w = 0; w < m.words_per_row(); ++w) acc[w] ^= src[w];
    }
    std::vector<uint8_t> out(m.cols());
    for (int c = 0; c < m.cols(); ++c) out[c] = uint8_t((acc[c >> 6] >> (c & 63)) & 1u);
    return out;
}

BitMatrix submatrix(const BitMatrix& m, const std::vector<int>& row_set,
                    const std::vector<int>& col_set) {
    check_index_set(row_set, m.rows(), "row");
    check_index_set(col_set, m.cols(), "col");
    if (row_set.empty() || col_set.empty())
        throw std::invalid_argument("submatrix index sets must be non-empty");
    BitMatrix out(int(row_set.size()), int(col_set.size()));
    for (size_t i = 0; i < row_set.size(); ++i)
        for (size_t j = 0; j < col_set.size(); ++j)
            out.set(int(i), int(j), m.get(row_set[i] - 1, col_set[j] - 1));
    return out;
}

int gf2_rank(const BitMatrix& m) {
    BitMatrix a = m;
    int rank = 0;
    for (int c = 0; c < a.cols() && rank < a.rows(); ++c) {
        int pivot = -1;
        for (int r = rank; r < a.rows(); ++r)
            if (a.get(r, c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        a.swap_rows(rank, pivot);
        for (int r = 0; r < a.rows(); ++r)
            if (r != rank && a.get(r, c)) a.xor_row(r, rank);
        ++rank;
    }
    return rank;
}

BitMatrix gf2_invert(const BitMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("gf2_invert: matrix must be square");
    const int n = m.rows();
    BitMatrix a = m;
    BitMatrix inv = BitMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (a.get(r, c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::domain_error("gf2_invert: singular matrix");
        a.swap_rows(c, pivot);
        inv.swap_rows(c, pivot);
        for (int r = 0; r < n; ++r)
            if (r != c && a.get(r, c)) {
                a.xor_row(r, c);
                inv.xor_row(r, c);
            }
    }
    return inv;
}

BitMatrix polar_generator(int stages) {
    if (stages < 0 || stages > 20)
        throw std::invalid_argument("polar_generator: unsupported stage count");
    const int n = 1 << stages;
    BitMatrix g(n, n);
    // G[j][i] = 1 iff the bits of i are a subset of the bits of j.
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i)
            if ((i & ~j) == 0) g.set(j, i, 1);
    return g;
}

}  // namespace pcbi
