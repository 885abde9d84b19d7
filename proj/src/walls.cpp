#include "bnp/walls.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bnp {

std::optional<Rat> alpha_of_equal_slope(const PairTypeNum& parent, const PairTypeNum& sub) {
    // mu_alpha(sub) = mu_alpha(parent) is linear in alpha:
    // (r'*d - r*d') = alpha * (r*l' - r'*l)
    Rat denom = parent.r * Rat(sub.l) - sub.r * Rat(parent.l);
    if (denom.is_zero()) return std::nullopt;
    Rat a = (sub.r * parent.d - parent.r * sub.d) / denom;
    if (!(a > Rat(0))) return std::nullopt;
    return a;
}

namespace {

// Integers k with x <op> k/m <op'> y resolved exactly.
mpz_class least_geq(const Rat& x) { return x.ceil_z(); }               // min k >= x
mpz_class least_gt(const Rat& x) { return x.floor_z() + 1; }           // min k > x
mpz_class greatest_leq(const Rat& x) { return x.floor_z(); }           // max k <= x
mpz_class greatest_lt(const Rat& x) { return x.ceil_z() - 1; }         // max k < x

bool passes_i(const PairTypeNum& t, const CurveData& curve) {
    if (t.l <= 0) return true;
    return t.d / t.r >= -curve.beta; // t.r > 0 for every type we filter
}

bool passes_section_filter(const PairTypeNum& t, const CurveData& curve, const Rat& b) {
    return Rat(t.l) <= Rat(section_bound(curve, t.r, b).floor_z());
}

// A critical value needs a semistable pair of the parent type to exist there,
// so candidate alphas are gated through the parent's own necessary conditions.
bool parent_feasible_at(const PairTypeNum& parent, const CurveData& curve, const Rat& alpha) {
    if (!passes_i(parent, curve)) return false;
    if (parent.l > 0 && Rat(parent.l) < parent.r)
        return alpha * (Rat(1) - Rat(parent.l) / parent.r) <= parent.d / parent.r + curve.beta;
    return true;
}

} // namespace

std::vector<Wall> wall_candidates(const PairTypeNum& parent, const CurveData& curve,
                                  const Rat& lo, const Rat& hi) {
    validate_type(parent, curve);
    if (!(parent.r > Rat(0))) throw std::invalid_argument("parent rank must be positive");
    if (lo < Rat(0) || !(lo < hi)) throw std::invalid_argument("interval must satisfy 0 <= lo < hi");

    const long m = curve.m_x;
    const Rat r = parent.r, d = parent.d;
    const long l = parent.l;
    const long r_units = (r * Rat(m)).floor_long(); // m_x * r, an integer

    std::map<Rat, std::vector<PairTypeNum>> by_alpha;
    for (long j = 1; j < r_units; ++j) {
        Rat rp = Rat(j, m);
        for (long lp = 0; lp <= l; ++lp) {
            Rat denom = r * Rat(lp) - rp * Rat(l);
            if (denom.is_zero()) continue; // alpha-parallel: no isolated equality
            // alpha(d') = (r'*d - r*d')/denom must lie in (lo, hi]
            Rat A = (rp * d - hi * denom) / r;
            Rat B = (rp * d - lo * denom) / r;
            mpz_class k_lo, k_hi; // k = m*d'
            if (denom > Rat(0)) { // d' in [A, B)
                k_lo = least_geq(A * Rat(m));
                k_hi = greatest_lt(B * Rat(m));
            } else {              // d' in (B, A]
                k_lo = least_gt(B * Rat(m));
                k_hi = greatest_leq(A * Rat(m));
            }
            for (mpz_class k = k_lo; k <= k_hi; ++k) {
                Rat dp = Rat(k) / Rat(m);
                Rat alpha = (rp * d - r * dp) / denom;
                if (!parent_feasible_at(parent, curve, alpha)) continue;
                PairTypeNum sub(rp, dp, lp);
                PairTypeNum comp(r - rp, d - dp, l - lp);
                if (!passes_i(sub, curve) || !passes_i(comp, curve)) continue;
                Rat b = mu_alpha(parent, alpha);
                if (!passes_section_filter(sub, curve, b) ||
                    !passes_section_filter(comp, curve, b))
                    continue;
                by_alpha[alpha].push_back(sub);
            }
        }
    }

    std::vector<Wall> walls;
    walls.reserve(by_alpha.size());
    for (auto& [a, ws] : by_alpha) {
        std::sort(ws.begin(), ws.end());
        walls.push_back(Wall{a, std::move(ws)});
    }
    return walls;
}

ChamberReport chambers(const PairTypeNum& parent, const CurveData& curve,
                       const Rat& lo, const Rat& hi) {
    ChamberReport rep;
    rep.walls = wall_candidates(parent, curve, lo, hi);
    Rat prev = lo;
    for (const auto& w : rep.walls) {
        if (w.alpha > prev) rep.chambers.push_back(Chamber{prev, w.alpha, false});
        prev = w.alpha;
    }
    if (prev < hi) rep.chambers.push_back(Chamber{prev, hi, true});
    return rep;
}

long default_max_parts(const PairTypeNum& parent, const CurveData& curve) {
    return (parent.r * Rat(curve.m_x)).floor_long();
}

std::vector<std::vector<PairTypeNum>> numerical_jh(const PairTypeNum& parent, const Rat& alpha,
                                                   const CurveData& curve, long max_parts) {
    validate_type(parent, curve);
    if (!(parent.r > Rat(0))) throw std::invalid_argument("parent rank must be positive");
    if (!(alpha > Rat(0))) throw std::invalid_argument("alpha must be > 0");
    if (max_parts < 2) throw std::invalid_argument("max_parts must be >= 2");
    if (!parent_feasible_at(parent, curve, alpha)) return {}; // no semistable parent, no factors

    const long m = curve.m_x;
    const Rat target = mu_alpha(parent, alpha);
    const long r_units = (parent.r * Rat(m)).floor_long();

    // candidate factors: rank j/m, l' sections, degree forced by the slope
    std::vector<PairTypeNum> cands;
    for (long j = 1; j < r_units; ++j) {
        Rat rho = Rat(j, m);
        for (long lp = 0; lp <= parent.l; ++lp) {
            Rat delta = target * rho - alpha * Rat(lp);
            if (!(delta * Rat(m)).is_integer()) continue;
            PairTypeNum t(rho, delta, lp);
            if (!passes_i(t, curve)) continue;
            if (!passes_section_filter(t, curve, target)) continue;
            cands.push_back(t);
        }
    }
    std::sort(cands.begin(), cands.end());

    std::vector<std::vector<PairTypeNum>> out;
    std::vector<PairTypeNum> cur;
    // nondecreasing index sequences => each multiset exactly once
    auto rec = [&](auto&& self, size_t start, Rat rank_left, long l_left) -> void {
        if (cur.size() >= 2 && rank_left.is_zero() && l_left == 0) out.push_back(cur);
        if (static_cast<long>(cur.size()) >= max_parts) return;
        for (size_t i = start; i < cands.size(); ++i) {
            if (cands[i].r > rank_left || cands[i].l > l_left) continue;
            cur.push_back(cands[i]);
            self(self, i, rank_left - cands[i].r, l_left - cands[i].l);
            cur.pop_back();
        }
    };
    rec(rec, 0, parent.r, parent.l);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<PairTypeNum>> numerical_jh(const PairTypeNum& parent, const Rat& alpha,
                                                   const CurveData& curve) {
    return numerical_jh(parent, alpha, curve, default_max_parts(parent, curve));
}

} // namespace bnp
