#include "bnp/git.hpp"

#include "bnp/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <type_traits>

namespace bnp::git {

namespace {

int rank_over_field(const Mat<Rat>& m, long q) {
    if (m.empty() || m[0].empty()) return 0;
    if (q == 0) return rank_of(m);
    return rank_of(to_fp(m, q));
}

void check_entries(const Mat<Rat>& m, long q, const char* what) {
    if (q == 0) return;
    for (const auto& row : m)
        for (const Rat& x : row) {
            if (!x.is_integer() || x < Rat(0) || x >= Rat(q))
                throw std::invalid_argument(std::string(what) +
                                            " entry not reduced mod field order: " + x.str());
        }
}

} // namespace

void GrassPoint::validate() const {
    if (q != 0 && !is_prime(q)) throw std::invalid_argument("field order must be 0 or a prime");
    if (dim_v < 1 || dim_h < 1 || k < 1 || l < 1)
        throw std::invalid_argument("dimensions must be positive");
    if (l > dim_v) throw std::invalid_argument("l must be <= dim_v");
    if (k > dim_v * dim_h) throw std::invalid_argument("k must be <= dim_v*dim_h");
    if (kappa1.size() != static_cast<size_t>(k))
        throw std::invalid_argument("kappa1 must have k rows");
    for (const auto& row : kappa1)
        if (row.size() != static_cast<size_t>(dim_v * dim_h))
            throw std::invalid_argument("kappa1 must have dim_v*dim_h columns");
    if (kappa2.size() != static_cast<size_t>(dim_v))
        throw std::invalid_argument("kappa2 must have dim_v rows");
    for (const auto& row : kappa2)
        if (row.size() != static_cast<size_t>(l))
            throw std::invalid_argument("kappa2 must have l columns");
    check_entries(kappa1, q, "kappa1");
    check_entries(kappa2, q, "kappa2");
    if (rank_over_field(kappa1, q) != k)
        throw std::invalid_argument("kappa1 must have full row rank (a quotient map)");
    if (rank_over_field(kappa2, q) != l)
        throw std::invalid_argument("kappa2 must have full column rank (an inclusion)");
}

void Linearization::validate() const {
    if (!(p > Rat(0)) || !(q_lin > Rat(0)))
        throw std::invalid_argument("linearisation weights must both be positive");
}

Linearization linearization_from_type(const PairTypeNum& t, const Rat& alpha, long n,
                                      const CurveData& curve) {
    if (!(alpha > Rat(0))) throw std::invalid_argument("alpha must be > 0");
    Linearization lin{hilbert_value(t, curve, n) + alpha * Rat(t.l), alpha * t.r};
    if (!(lin.p > Rat(0)))
        throw std::invalid_argument("twist too small: P(n) + alpha*l must be positive");
    lin.validate();
    return lin;
}

static int subspace_dim(const GrassPoint& pt, const Mat<Rat>& U) {
    if (U.size() != static_cast<size_t>(pt.dim_v))
        throw std::invalid_argument("subspace basis must have dim_v rows");
    int u = U.empty() ? 0 : static_cast<int>(U[0].size());
    if (u == 0) return 0;
    if (rank_over_field(U, pt.q) != u)
        throw std::invalid_argument("subspace basis has dependent columns");
    return u;
}

Rat theta1(const GrassPoint& pt, const Mat<Rat>& U) {
    int u = subspace_dim(pt, U);
    if (u == 0) return Rat(0);
    // restriction of kappa1 to U (x) H, in the basis (u_j (x) h_b)
    Mat<Rat> R(pt.k, std::vector<Rat>(static_cast<size_t>(u) * pt.dim_h, Rat(0)));
    for (int row = 0; row < pt.k; ++row)
        for (int j = 0; j < u; ++j)
            for (int b = 0; b < pt.dim_h; ++b) {
                Rat acc(0);
                for (int i = 0; i < pt.dim_v; ++i)
                    acc += pt.kappa1[row][i * pt.dim_h + b] * U[i][j];
                R[row][j * pt.dim_h + b] = acc;
            }
    int image_dim = rank_over_field(R, pt.q);
    return Rat(image_dim) - Rat(pt.k, pt.dim_v) * Rat(u);
}

Rat theta2(const GrassPoint& pt, const Mat<Rat>& U) {
    int u = subspace_dim(pt, U);
    if (u == 0) return Rat(0);
    Mat<Rat> J(pt.dim_v, std::vector<Rat>(pt.l + u, Rat(0)));
    for (int i = 0; i < pt.dim_v; ++i) {
        for (int j = 0; j < pt.l; ++j) J[i][j] = pt.kappa2[i][j];
        for (int j = 0; j < u; ++j) J[i][pt.l + j] = U[i][j];
    }
    long meet = pt.l + u - rank_over_field(J, pt.q);
    return Rat(pt.l, pt.dim_v) * Rat(u) - Rat(meet);
}

Rat theta_combined(const GrassPoint& pt, const Linearization& lin, const Mat<Rat>& U) {
    return lin.p * theta1(pt, U) + lin.q_lin * theta2(pt, U);
}

HmVerdict hm_check(const GrassPoint& pt, const Linearization& lin, long budget) {
    pt.validate();
    lin.validate();
    if (pt.q == 0)
        throw std::invalid_argument(
            "exhaustive check needs a finite field; use hm_check_family over the rationals");
    mpz_class vectors;
    mpz_ui_pow_ui(vectors.get_mpz_t(), pt.q, pt.dim_v);
    if (vectors > budget)
        throw BudgetExceeded("q^dim_v exceeds the enumeration budget; "
                             "reduce dimensions or the field order");

    HmVerdict out;
    bool first = true;
    for (int u = 1; u < pt.dim_v; ++u) {
        for_each_subspace(pt.q, pt.dim_v, u, [&](const Mat<Fp>& rows) {
            Mat<Rat> U = transpose(to_rat(rows));
            Rat val = theta_combined(pt, lin, U);
            if (first || val < out.min_value) {
                out.min_value = val;
                out.witness = to_rat(rows);
                first = false;
            }
        });
    }
    if (first) { // dim_v = 1: no proper subspaces, vacuously stable
        out.kind = VerdictKind::Stable;
        out.min_value = Rat(0);
        return out;
    }
    out.kind = out.min_value < Rat(0)   ? VerdictKind::Unstable
               : out.min_value == Rat(0) ? VerdictKind::StrictlySemistable
                                         : VerdictKind::Stable;
    return out;
}

HmVerdict hm_check_family(const GrassPoint& pt, const Linearization& lin,
                          const std::vector<Mat<Rat>>& subspaces) {
    pt.validate();
    lin.validate();
    HmVerdict out;
    bool first = true;
    for (const auto& U : subspaces) {
        int u = U.empty() ? 0 : static_cast<int>(U[0].size());
        if (u == 0 || u >= pt.dim_v)
            throw std::invalid_argument("family must consist of proper nonzero subspaces");
        Rat val = theta_combined(pt, lin, U);
        if (first || val < out.min_value) {
            out.min_value = val;
            out.witness = transpose(U);
            first = false;
        }
    }
    if (first) {
        out.kind = VerdictKind::Stable;
        out.min_value = Rat(0);
        return out;
    }
    out.kind = out.min_value < Rat(0)   ? VerdictKind::Unstable
               : out.min_value == Rat(0) ? VerdictKind::StrictlySemistable
                                         : VerdictKind::Stable;
    return out;
}

Rat mu_oneps(const GrassPoint& pt, const OnePS& lam, const Linearization& lin) {
    pt.validate();
    lin.validate();
    if (lam.weights.size() != static_cast<size_t>(pt.dim_v))
        throw std::invalid_argument("need one weight per basis vector of V");
    long sum = 0;
    for (long w : lam.weights) sum += w;
    if (sum != 0) throw std::invalid_argument("1-PS weights must sum to zero (SL(V))");

    // distinct weights descending; V_{(>=w)} grows as w drops
    std::vector<long> ws = lam.weights;
    std::sort(ws.begin(), ws.end(), std::greater<>());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());

    Rat total(0);
    for (size_t j = 0; j + 1 < ws.size(); ++j) {
        std::vector<int> idx;
        for (int i = 0; i < pt.dim_v; ++i)
            if (lam.weights[i] >= ws[j]) idx.push_back(i);
        Mat<Rat> U(pt.dim_v, std::vector<Rat>(idx.size(), Rat(0)));
        for (size_t c = 0; c < idx.size(); ++c) U[idx[c]][c] = Rat(1);
        total += Rat(ws[j] - ws[j + 1]) * theta_combined(pt, lin, U);
    }
    return total;
}

Rat theta_alpha_eval(long dim_u, const Rat& rk_f, long dim_meet, const Rat& chi_f_n,
                     const Rat& p_n, const Rat& alpha, long l, const Rat& r) {
    if (dim_u < 0 || dim_meet < 0 || l < 0 || rk_f < Rat(0))
        throw std::invalid_argument("dimensions must be >= 0");
    if (!(alpha > Rat(0))) throw std::invalid_argument("alpha must be > 0");
    (void)chi_f_n; // carried alongside for the boundary tie-break, not part of the value
    return (p_n + alpha * Rat(l)) * rk_f - r * (Rat(dim_u) + alpha * Rat(dim_meet));
}

ThetaVerdict theta_verdict(const std::vector<ThetaEntry>& entries) {
    ThetaVerdict out;
    std::vector<size_t> tight;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.theta < Rat(0) || (e.theta == Rat(0) && e.chi_f_n < Rat(e.dim_u))) {
            out.witnesses.push_back(i);
        } else if (e.proper && e.theta == Rat(0) && e.chi_f_n == Rat(e.dim_u)) {
            tight.push_back(i);
        }
    }
    if (!out.witnesses.empty()) {
        out.kind = VerdictKind::Unstable;
    } else if (!tight.empty()) {
        out.kind = VerdictKind::StrictlySemistable;
        out.witnesses = std::move(tight);
    } else {
        out.kind = VerdictKind::Stable;
    }
    return out;
}

GrassPoint change_basis(const GrassPoint& pt, const Mat<Rat>& B) {
    pt.validate();
    if (B.size() != static_cast<size_t>(pt.dim_v))
        throw std::invalid_argument("basis change must be dim_v x dim_v");
    for (const auto& row : B)
        if (row.size() != static_cast<size_t>(pt.dim_v))
            throw std::invalid_argument("basis change must be dim_v x dim_v");

    GrassPoint out = pt;
    auto apply = [&](auto field_b, auto field_k1, auto field_k2, auto back) {
        auto binv = mat_inverse(field_b);
        // kappa1' = kappa1 * (B (x) I_H)
        auto& k1 = field_k1;
        std::remove_reference_t<decltype(k1)> nk1 = k1;
        for (int row = 0; row < pt.k; ++row)
            for (int j = 0; j < pt.dim_v; ++j)
                for (int b = 0; b < pt.dim_h; ++b) {
                    auto acc = k1[row][0] - k1[row][0]; // zero of the field
                    for (int i = 0; i < pt.dim_v; ++i)
                        acc = acc + k1[row][i * pt.dim_h + b] * field_b[i][j];
                    nk1[row][j * pt.dim_h + b] = acc;
                }
        out.kappa1 = back(nk1);
        out.kappa2 = back(mat_mul(binv, field_k2));
    };

    if (pt.q == 0) {
        apply(B, pt.kappa1, pt.kappa2, [](const Mat<Rat>& m) { return m; });
    } else {
        apply(to_fp(B, pt.q), to_fp(pt.kappa1, pt.q), to_fp(pt.kappa2, pt.q),
              [](const Mat<Fp>& m) { return to_rat(m); });
    }
    return out;
}

} // namespace bnp::git
