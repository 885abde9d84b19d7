#pragma once

#include "bnp/core.hpp"
#include "bnp/linalg.hpp"
#include "bnp/stability.hpp"

#include <vector>

namespace bnp::git {

inline constexpr long kDefaultBudget = 1L << 12;

// A point of Gr(V (x) H, k) x Gr(l, V): kappa1 is the quotient map V(x)H -> L1
// (k rows, dim_v*dim_h columns, full row rank), kappa2 the inclusion L2 -> V
// (dim_v rows, l columns, full column rank). q is the field order for
// enumeration, or 0 for exact rational coefficients.
struct GrassPoint {
    long q = 2;
    int dim_v = 1, dim_h = 1, k = 1, l = 1;
    Mat<Rat> kappa1;
    Mat<Rat> kappa2;

    void validate() const;
};

// Integer weights on a basis of V; a 1-parameter subgroup of SL(V), so the
// weights must sum to zero.
struct OnePS {
    std::vector<long> weights;
};

// Weights (p, q_lin) of the ample line bundle O(p, q_lin) on the product.
struct Linearization {
    Rat p, q_lin;
    void validate() const;
};

// Built from a pair type at twist n: p = P(n) + alpha*l, q_lin = alpha*r.
Linearization linearization_from_type(const PairTypeNum& t, const Rat& alpha, long n,
                                      const CurveData& curve);

// theta1(U) = dim kappa1(U (x) H) - (k/dim_v)*dim U for a subspace U given by a
// dim_v x dim U matrix of independent columns.
Rat theta1(const GrassPoint& pt, const Mat<Rat>& U);

// theta2(U) = (l/dim_v)*dim U - dim(L2 cap U).
Rat theta2(const GrassPoint& pt, const Mat<Rat>& U);

Rat theta_combined(const GrassPoint& pt, const Linearization& lin, const Mat<Rat>& U);

struct HmVerdict {
    VerdictKind kind = VerdictKind::Stable;
    Rat min_value;
    Mat<Rat> witness; // row basis (canonical echelon form) of a minimizing proper subspace
};

// Exhaustive Hilbert-Mumford test over every proper nonzero subspace of V,
// enumerated by canonical echelon representatives over F_q. Requires a finite
// field and q^dim_v within the budget.
HmVerdict hm_check(const GrassPoint& pt, const Linearization& lin, long budget = kDefaultBudget);

// Same fold over a caller-supplied family of subspaces (each a dim_v x u
// column basis); works over the rationals. The verdict is family-relative.
HmVerdict hm_check_family(const GrassPoint& pt, const Linearization& lin,
                          const std::vector<Mat<Rat>>& subspaces);

// Mumford's numerical function for the 1-PS with the given weights: the sum of
// p*theta1 + q*theta2 over the weight filtration's proper steps, each step
// counted with its weight gap.
Rat mu_oneps(const GrassPoint& pt, const OnePS& lam, const Linearization& lin);

// theta_alpha(U) = (P_n + alpha*l)*rk F_U - r*(dim U + alpha*dim_meet); chi_f_n
// rides along for the verdict's tie-break and is not used in the value.
Rat theta_alpha_eval(long dim_u, const Rat& rk_f, long dim_meet, const Rat& chi_f_n,
                     const Rat& p_n, const Rat& alpha, long l, const Rat& r);

struct ThetaEntry {
    Rat theta;   // theta_alpha value
    Rat chi_f_n; // chi(F_U(n))
    long dim_u = 0;
    bool proper = true;
};

struct ThetaVerdict {
    VerdictKind kind = VerdictKind::Stable;
    std::vector<size_t> witnesses; // indices of violating (Unstable) or tight (SS) entries
};

// Verdict over a family of subspace entries: Unstable on theta < 0 or
// (theta = 0 and chi < dimU); StrictlySemistable when some proper entry has
// theta = 0 and chi = dimU; Stable when every proper entry has one of the two
// inequalities strict.
ThetaVerdict theta_verdict(const std::vector<ThetaEntry>& entries);

// Simultaneous change of basis of V: kappa1 -> kappa1*(B (x) I), kappa2 -> B^{-1}*kappa2.
GrassPoint change_basis(const GrassPoint& pt, const Mat<Rat>& B);

} // namespace bnp::git
