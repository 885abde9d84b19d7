#pragma once

#include "bnp/rational.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace bnp {

// Element of the prime field F_p with runtime modulus; value kept in [0, p).
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(long v, long p);

    long value() const { return v_; }
    long modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const { return Fp(p_ - v_, p_); }
    Fp inv() const;

    friend Fp operator+(const Fp& a, const Fp& b) { a.match(b); return Fp(a.v_ + b.v_, a.p_); }
    friend Fp operator-(const Fp& a, const Fp& b) { a.match(b); return Fp(a.v_ - b.v_ + a.p_, a.p_); }
    friend Fp operator*(const Fp& a, const Fp& b) { a.match(b); return Fp(a.v_ * b.v_, a.p_); }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
    friend bool operator==(const Fp& a, const Fp& b) { a.match(b); return a.v_ == b.v_; }

private:
    void match(const Fp& o) const {
        if (p_ != o.p_) throw std::logic_error("mixed field moduli");
    }
    long v_, p_;
};

bool is_prime(long p);

template <class K>
using Mat = std::vector<std::vector<K>>;

template <class K> struct field_traits;
template <> struct field_traits<Rat> {
    static Rat zero(const Rat&) { return Rat(0); }
    static Rat one(const Rat&) { return Rat(1); }
};
template <> struct field_traits<Fp> {
    static Fp zero(const Fp& x) { return Fp(0, x.modulus()); }
    static Fp one(const Fp& x) { return Fp(1, x.modulus()); }
};

// In-place reduced row echelon form; returns the rank.
template <class K>
int rref(Mat<K>& m) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (!m[i][col].is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        K lead = m[rank][col];
        for (int j = col; j < cols; ++j) m[rank][j] = m[rank][j] / lead;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || m[i][col].is_zero()) continue;
            K f = m[i][col];
            for (int j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

template <class K>
int rank_of(Mat<K> m) { return rref(m); }

template <class K>
Mat<K> mat_mul(const Mat<K>& a, const Mat<K>& b) {
    if (a.empty() || b.empty()) return {};
    const size_t n = a.size(), m = b.size(), c = b[0].size();
    if (a[0].size() != m) throw std::logic_error("matrix shape mismatch");
    K z = field_traits<K>::zero(a[0][0]);
    Mat<K> r(n, std::vector<K>(c, z));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < m; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < c; ++j)
                r[i][j] = r[i][j] + a[i][k] * b[k][j];
        }
    return r;
}

template <class K>
Mat<K> transpose(const Mat<K>& a) {
    if (a.empty() || a[0].empty()) return {};
    Mat<K> r(a[0].size(), std::vector<K>(a.size(), a[0][0]));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

// Inverse of a square matrix; throws invalid_argument if singular.
template <class K>
Mat<K> mat_inverse(const Mat<K>& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0 || m[0].size() != static_cast<size_t>(n))
        throw std::invalid_argument("inverse of non-square matrix");
    K z = field_traits<K>::zero(m[0][0]), o = field_traits<K>::one(m[0][0]);
    Mat<K> aug(n, std::vector<K>(2 * n, z));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = o;
    }
    rref(aug);
    // the identity block keeps the augmented rank at n even when m is
    // singular; singularity shows up as a zero on the reduced diagonal
    for (int i = 0; i < n; ++i)
        if (aug[i][i].is_zero()) throw std::invalid_argument("singular matrix");
    Mat<K> inv(n, std::vector<K>(n, z));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

// Basis of {x : m x = 0}, returned as columns of the result. `one` supplies
// the field constants (matters for F_p, whose elements carry their modulus).
template <class K>
Mat<K> nullspace(const Mat<K>& m, int cols, K one) {
    if (cols == 0) return {};
    K o = one, z = one - one;
    Mat<K> a = m;
    int rank = rref(a);
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(cols, false);
    for (int i = 0; i < rank; ++i) {
        int j = 0;
        while (j < cols && a[i][j].is_zero()) ++j;
        pivot_col.push_back(j);
        is_pivot[j] = true;
    }
    Mat<K> basis(cols, std::vector<K>(cols - rank, z));
    int idx = 0;
    for (int j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        basis[j][idx] = o;
        for (int i = 0; i < rank; ++i) basis[pivot_col[i]][idx] = z - a[i][j];
        ++idx;
    }
    return basis; // cols x (cols-rank)
}

// Number of u-dimensional subspaces of F_p^n (Gaussian binomial coefficient).
mpz_class subspace_count(long p, int n, int u);

// Visits every u-dimensional subspace of F_p^n exactly once, presented as its
// canonical reduced-row-echelon basis (u x n, rows are the basis vectors).
void for_each_subspace(long p, int n, int u, const std::function<void(const Mat<Fp>&)>& visit);

Mat<Fp> to_fp(const Mat<Rat>& m, long p);
Mat<Rat> to_rat(const Mat<Fp>& m);

} // namespace bnp
