#pragma once

#include "bnp/core.hpp"

#include <string>
#include <vector>

namespace bnp {

enum class VerdictKind { Stable, StrictlySemistable, Unstable };

const char* verdict_kind_name(VerdictKind k); // "stable" | "strictly_semistable" | "unstable"

// Verdict relative to an explicit family of subobject types. Witnesses carry
// the subtype together with its delta value: the violating ones (delta < 0)
// for Unstable, the tight ones (delta = 0) for StrictlySemistable.
struct Verdict {
    VerdictKind kind = VerdictKind::Stable;
    std::vector<std::pair<PairTypeNum, Rat>> witnesses;
};

// The object-level semistability quantity (d + alpha*l)*r' - r*(d' + alpha*l').
// The parent is semistable against the subtype iff this is >= 0.
Rat delta_alpha(const PairTypeNum& parent, const PairTypeNum& sub, const Rat& alpha);

// Folds delta_alpha over the supplied list; every sub must be proper
// (neither the zero type nor the parent itself).
Verdict verdict_against(const PairTypeNum& parent, const Rat& alpha,
                        const std::vector<PairTypeNum>& subs);

// Upper bound for dim H^0(E) given rk E and an upper bound b for the slopes of
// all subsheaves: rk*(b + beta + m_x*n_x), or 0 when b + beta < 0 (forced
// vanishing of sections).
Rat section_bound(const CurveData& curve, const Rat& rk, const Rat& b);

// Necessary numerical conditions for an alpha-semistable pair of this type to
// exist: (i) l > 0 implies d/r >= -beta; (ii) 0 < l < r implies
// alpha*(1 - l/r) <= d/r + beta, strictly for a stable pair.
struct ExistenceReport {
    bool feasible_semistable = true;
    bool feasible_stable = true;
    std::vector<std::string> violated; // subset of {"i", "ii", "ii_strict"}
};

ExistenceReport existence_check(const PairTypeNum& t, const Rat& alpha, const CurveData& curve);

// Numerical data of a subsheaf F at a twist n: rank, chi(F(n)) and
// dim(Lambda cap H^0(F)).
struct SubsheafData {
    Rat rk_f;
    Rat chi_f_n;
    long dim_meet = 0;
};

// The twisted-criterion margin (P(n) + alpha*l)*rk F - r*(chi(F(n)) + alpha*meet)
// with P(n) the parent's Hilbert value; >= 0 against all subsheaves iff
// semistable. Independent of n when chi is supplied consistently.
Rat cor252_margin(const PairTypeNum& parent, const SubsheafData& sub, const Rat& alpha,
                  long n, const CurveData& curve);

} // namespace bnp
