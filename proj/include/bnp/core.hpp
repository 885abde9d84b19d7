#pragma once

#include "bnp/rational.hpp"

#include <utility>
#include <vector>

namespace bnp {

// Numerical data of a polarised curve X: multiplicity m_x and Euler
// characteristic chi_o of the structure sheaf (so chi(O_X(n)) = m_x*n + chi_o),
// the section-bound constants beta >= 0 and n_x >= 1, and g = h^0 of the
// dualising sheaf. Smooth curves have beta = 0.
struct CurveData {
    long m_x = 1;
    long chi_o = 1;
    Rat beta = Rat(0);
    long n_x = 1;
    long g = 0;

    static CurveData p1();                              // (1, 1, 0, 1, 0)
    static CurveData smooth_genus(long g, long n_x);    // (1, 1-g, 0, n_x, g)

    void validate() const;

    friend bool operator==(const CurveData&, const CurveData&) = default;
};

// Numerical type (rank, degree, #sections) of a pair. Rank and degree live in
// (1/m_x)Z and may be rational; l counts an honest vector space dimension.
struct PairTypeNum {
    Rat r = Rat(0);
    Rat d = Rat(0);
    long l = 0;

    PairTypeNum() = default;
    PairTypeNum(Rat r_, Rat d_, long l_) : r(std::move(r_)), d(std::move(d_)), l(l_) {}

    bool is_zero() const { return r.is_zero() && d.is_zero() && l == 0; }

    friend bool operator==(const PairTypeNum&, const PairTypeNum&) = default;
    friend std::strong_ordering operator<=>(const PairTypeNum& a, const PairTypeNum& b) {
        if (auto c = a.r <=> b.r; c != 0) return c;
        if (auto c = a.d <=> b.d; c != 0) return c;
        return a.l <=> b.l;
    }
};

// Checks l >= 0, r >= 0 and integrality of m_x*r, m_x*d; throws otherwise.
void validate_type(const PairTypeNum& t, const CurveData& c);

// Recovers (rank, degree) from the Hilbert polynomial chi(E(n)) = m*n + chi:
// rank = m/m_x, degree = chi - rank*chi_o.
std::pair<Rat, Rat> rank_degree_from_hilbert(long m, long chi, const CurveData& c);

// chi(E(n)) for a sheaf of the given type: r*(m_x*n + chi_o) + d.
Rat hilbert_value(const PairTypeNum& t, const CurveData& c, long n);

Rat mu(const PairTypeNum& t);                      // d/r, requires r > 0
Rat mu_alpha(const PairTypeNum& t, const Rat& alpha); // (d + alpha*l)/r, alpha > 0

} // namespace bnp
