// Dense binary matrix algebra over GF(2), bit-packed in 64-bit words.
#pragma once

#include <cstdint>
#include <vector>

namespace pcbi {

class BitMatrix {
public:
    BitMatrix(int rows, int cols);
    static BitMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int get(int r, int c) const {
        return int((w_[size_t(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1u);
    }
    void set(int r, int c, int v) {
        uint64_t& w = w_[size_t(r) * wpr_ + (c >> 6)];
        const uint64_t m = uint64_t(1) << (c & 63);
        w = v ? (w | m) : (w & ~m);
    }

    int words_per_row() const { return wpr_; }
    const uint64_t* row(int r) const { return &w_[size_t(r) * wpr_]; }
    uint64_t* row(int r) { return &w_[size_t(r) * wpr_]; }

    void xor_row(int dst, int src);
    void swap_rows(int a, int b);
    int row_weight(int r) const;

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
    }
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

private:
    int rows_;
    int cols_;
    int wpr_;
    std::vector<uint64_t> w_;
};

// n-fold Kronecker power; n = 0 gives the 1x1 identity.
BitMatrix kronecker_power(const BitMatrix& base, int n);

// Row vector times matrix over GF(2); length of v must equal m.rows().
std::vector<uint8_t> mat_vec_mul(const std::vector<uint8_t>& v, const BitMatrix& m);

// Entry selection by sorted 1-based index sets, order preserving.
BitMatrix submatrix(const BitMatrix& m, const std::vector<int>& row_set,
                    const std::vector<int>& col_set);

int gf2_rank(const BitMatrix& m);

// Inverse of a square full-rank matrix; throws std::domain_error when singular.
BitMatrix gf2_invert(const BitMatrix& m);

// The polar transform F^(x)n with F = [[1,0],[1,1]], in natural bit order.
BitMatrix polar_generator(int stages);

}  // namespace pcbi
