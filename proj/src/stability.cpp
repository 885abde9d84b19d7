#include "bnp/stability.hpp"

#include <algorithm>
#include <stdexcept>

namespace bnp {

const char* verdict_kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Stable: return "stable";
        case VerdictKind::StrictlySemistable: return "strictly_semistable";
        case VerdictKind::Unstable: return "unstable";
    }
    return "?";
}

Rat delta_alpha(const PairTypeNum& parent, const PairTypeNum& sub, const Rat& alpha) {
    if (!(parent.r > Rat(0))) throw std::invalid_argument("parent rank must be positive");
    if (!(alpha > Rat(0))) throw std::invalid_argument("alpha must be > 0");
    return (parent.d + alpha * Rat(parent.l)) * sub.r - parent.r * (sub.d + alpha * Rat(sub.l));
}

Verdict verdict_against(const PairTypeNum& parent, const Rat& alpha,
                        const std::vector<PairTypeNum>& subs) {
    for (const auto& s : subs)
        if (s.is_zero() || s == parent)
            throw std::invalid_argument("subobject list must contain only proper subtypes");

    std::vector<std::pair<PairTypeNum, Rat>> tight, violating;
    for (const auto& s : subs) {
        Rat dl = delta_alpha(parent, s, alpha);
        if (dl < Rat(0)) violating.emplace_back(s, dl);
        else if (dl == Rat(0)) tight.emplace_back(s, dl);
    }
    auto by_type = [](const auto& a, const auto& b) { return a.first < b.first; };
    Verdict v;
    if (!violating.empty()) {
        v.kind = VerdictKind::Unstable;
        std::sort(violating.begin(), violating.end(), by_type);
        v.witnesses = std::move(violating);
    } else if (!tight.empty()) {
        v.kind = VerdictKind::StrictlySemistable;
        std::sort(tight.begin(), tight.end(), by_type);
        v.witnesses = std::move(tight);
    } else {
        v.kind = VerdictKind::Stable;
    }
    return v;
}

Rat section_bound(const CurveData& curve, const Rat& rk, const Rat& b) {
    curve.validate();
    if (rk < Rat(0)) throw std::invalid_argument("rank must be >= 0");
    if (b + curve.beta < Rat(0)) return Rat(0);
    return rk * (b + curve.beta + Rat(curve.m_x) * Rat(curve.n_x));
}

ExistenceReport existence_check(const PairTypeNum& t, const Rat& alpha, const CurveData& curve) {
    validate_type(t, curve);
    if (!(t.r > Rat(0))) throw std::invalid_argument("existence check needs positive rank");
    if (!(alpha > Rat(0))) throw std::invalid_argument("alpha must be > 0");

    ExistenceReport rep;
    Rat slope = t.d / t.r;
    if (t.l > 0 && slope < -curve.beta) {
        rep.violated.push_back("i");
        rep.feasible_semistable = rep.feasible_stable = false;
    }
    if (t.l > 0 && Rat(t.l) < t.r) {
        Rat lhs = alpha * (Rat(1) - Rat(t.l) / t.r);
        Rat rhs = slope + curve.beta;
        if (lhs > rhs) {
            rep.violated.push_back("ii");
            rep.feasible_semistable = rep.feasible_stable = false;
        } else if (lhs == rhs) {
            rep.violated.push_back("ii_strict");
            rep.feasible_stable = false;
        }
    }
    return rep;
}

Rat cor252_margin(const PairTypeNum& parent, const SubsheafData& sub, const Rat& alpha,
                  long n, const CurveData& curve) {
    if (!(parent.r > Rat(0))) throw std::invalid_argument("parent rank must be positive");
    if (!(alpha > Rat(0))) throw std::invalid_argument("alpha must be > 0");
    Rat pn = hilbert_value(parent, curve, n);
    return (pn + alpha * Rat(parent.l)) * sub.rk_f - parent.r * (sub.chi_f_n + alpha * Rat(sub.dim_meet));
}

} // namespace bnp
