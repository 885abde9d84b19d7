#pragma once

#include "bnp/core.hpp"
#include "bnp/stability.hpp"

#include <optional>
#include <vector>

namespace bnp {

// A critical value of alpha, with the proper subtypes achieving slope equality.
struct Wall {
    Rat alpha;
    std::vector<PairTypeNum> witnesses; // sorted lexicographically
};

// Open interval (lo, hi), except that the final chamber of a report may be
// closed on the right when the search interval's endpoint is not a wall.
struct Chamber {
    Rat lo, hi;
    bool hi_closed = false;
};

struct ChamberReport {
    std::vector<Wall> walls;       // strictly increasing alpha
    std::vector<Chamber> chambers; // partition of the interval minus wall points
};

// The alpha > 0 with mu_alpha(sub) = mu_alpha(parent), if any: the two slopes
// agree at exactly one alpha unless the types are alpha-parallel (r*l' = r'*l).
std::optional<Rat> alpha_of_equal_slope(const PairTypeNum& parent, const PairTypeNum& sub);

// All walls in (lo, hi]: enumerates subtypes (r', d', l') with 0 < r' < r in
// (1/m_x)Z and 0 <= l' <= l, solving the slope equality exactly for d', then
// filters each candidate and its complementary type through the existence
// condition (i) and the section bound at b = mu_alpha(parent, alpha).
// Requires 0 <= lo < hi.
std::vector<Wall> wall_candidates(const PairTypeNum& parent, const CurveData& curve,
                                  const Rat& lo, const Rat& hi);

ChamberReport chambers(const PairTypeNum& parent, const CurveData& curve,
                       const Rat& lo, const Rat& hi);

// All multisets {t_1,...,t_k}, 2 <= k <= max_parts, of nonzero positive-rank
// types summing to the parent with every part of equal alpha-slope, each part
// passing the existence and section filters. Nonempty only on a wall.
std::vector<std::vector<PairTypeNum>> numerical_jh(const PairTypeNum& parent, const Rat& alpha,
                                                   const CurveData& curve, long max_parts);

// Default bound on the number of factors: ranks strictly decrease along a
// filtration, so at most floor(m_x * r) parts.
long default_max_parts(const PairTypeNum& parent, const CurveData& curve);

std::vector<std::vector<PairTypeNum>> numerical_jh(const PairTypeNum& parent, const Rat& alpha,
                                                   const CurveData& curve);

} // namespace bnp
