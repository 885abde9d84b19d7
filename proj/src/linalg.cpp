#include "bnp/linalg.hpp"

namespace bnp {

Fp::Fp(long v, long p) : p_(p) {
    if (p < 2) throw std::invalid_argument("field modulus must be >= 2");
    v_ = v % p;
    if (v_ < 0) v_ += p;
}

Fp Fp::inv() const {
    if (v_ == 0) throw std::invalid_argument("inverse of zero in F_p");
    // extended euclid on (v_, p_)
    long a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
        long q = a / b;
        long t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return Fp(x0, p_);
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

mpz_class subspace_count(long p, int n, int u) {
    if (u < 0 || u > n) return 0;
    // prod_{i=0}^{u-1} (p^{n-i} - 1) / (p^{u-i} - 1)
    mpz_class num = 1, den = 1, P(p);
    for (int i = 0; i < u; ++i) {
        mpz_class a, b;
        mpz_pow_ui(a.get_mpz_t(), P.get_mpz_t(), n - i);
        mpz_pow_ui(b.get_mpz_t(), P.get_mpz_t(), u - i);
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

void for_each_subspace(long p, int n, int u, const std::function<void(const Mat<Fp>&)>& visit) {
    if (u <= 0 || u > n) return;
    std::vector<int> piv(u);
    for (int i = 0; i < u; ++i) piv[i] = i;

    auto emit_all = [&](const std::vector<int>& pv) {
        // free entries: (i, j) with j > pv[i] and j not a pivot column
        std::vector<bool> is_piv(n, false);
        for (int c : pv) is_piv[c] = true;
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < u; ++i)
            for (int j = pv[i] + 1; j < n; ++j)
                if (!is_piv[j]) free_pos.emplace_back(i, j);

        Mat<Fp> basis(u, std::vector<Fp>(n, Fp(0, p)));
        for (int i = 0; i < u; ++i) basis[i][pv[i]] = Fp(1, p);

        std::vector<long> odo(free_pos.size(), 0);
        while (true) {
            for (size_t t = 0; t < free_pos.size(); ++t)
                basis[free_pos[t].first][free_pos[t].second] = Fp(odo[t], p);
            visit(basis);
            size_t t = 0;
            while (t < odo.size() && odo[t] == p - 1) { odo[t] = 0; ++t; }
            if (t == odo.size()) break;
            ++odo[t];
        }
    };

    // enumerate pivot-column combinations in lexicographic order
    while (true) {
        emit_all(piv);
        int i = u - 1;
        while (i >= 0 && piv[i] == n - u + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < u; ++j) piv[j] = piv[j - 1] + 1;
    }
}

Mat<Fp> to_fp(const Mat<Rat>& m, long p) {
    Mat<Fp> r(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        r[i].reserve(m[i].size());
        for (const Rat& x : m[i]) {
            if (!x.is_integer())
                throw std::invalid_argument("non-integral entry over F_p: " + x.str());
            mpz_class v = x.num() % p;
            r[i].emplace_back(v.get_si(), p);
        }
    }
    return r;
}

Mat<Rat> to_rat(const Mat<Fp>& m) {
    Mat<Rat> r(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        r[i].reserve(m[i].size());
        for (const Fp& x : m[i]) r[i].emplace_back(x.value());
    }
    return r;
}

} // namespace bnp
