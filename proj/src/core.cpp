#include "bnp/core.hpp"

#include <stdexcept>

namespace bnp {

CurveData CurveData::p1() { return CurveData{1, 1, Rat(0), 1, 0}; }

CurveData CurveData::smooth_genus(long g, long n_x) { return CurveData{1, 1 - g, Rat(0), n_x, g}; }

void CurveData::validate() const {
    if (m_x < 1) throw std::invalid_argument("curve multiplicity must be >= 1");
    if (beta < Rat(0)) throw std::invalid_argument("curve constant beta must be >= 0");
    if (!(beta * Rat(m_x)).is_integer())
        throw std::invalid_argument("m_x*beta must be an integer");
    if (n_x < 1) throw std::invalid_argument("curve constant n_x must be >= 1");
    if (g < 0) throw std::invalid_argument("curve genus datum must be >= 0");
}

void validate_type(const PairTypeNum& t, const CurveData& c) {
    c.validate();
    if (t.l < 0) throw std::invalid_argument("section count must be >= 0");
    if (t.r < Rat(0)) throw std::invalid_argument("rank must be >= 0");
    if (!(t.r * Rat(c.m_x)).is_integer())
        throw std::invalid_argument("rank not in (1/m_x)Z: " + t.r.str());
    if (!(t.d * Rat(c.m_x)).is_integer())
        throw std::invalid_argument("degree not in (1/m_x)Z: " + t.d.str());
}

std::pair<Rat, Rat> rank_degree_from_hilbert(long m, long chi, const CurveData& c) {
    c.validate();
    if (m < 0) throw std::invalid_argument("leading Hilbert coefficient must be >= 0");
    Rat r = Rat(m) / Rat(c.m_x);
    Rat d = Rat(chi) - r * Rat(c.chi_o);
    return {r, d};
}

Rat hilbert_value(const PairTypeNum& t, const CurveData& c, long n) {
    validate_type(t, c);
    return t.r * (Rat(c.m_x) * Rat(n) + Rat(c.chi_o)) + t.d;
}

Rat mu(const PairTypeNum& t) {
    if (!(t.r > Rat(0))) throw std::invalid_argument("slope needs positive rank");
    return t.d / t.r;
}

Rat mu_alpha(const PairTypeNum& t, const Rat& alpha) {
    if (!(alpha > Rat(0))) throw std::invalid_argument("alpha must be > 0");
    if (!(t.r > Rat(0))) throw std::invalid_argument("slope needs positive rank");
    return (t.d + alpha * Rat(t.l)) / t.r;
}

} // namespace bnp
