#include <doctest.h>

#include "bnp/core.hpp"
#include "bnp/errors.hpp"
#include "bnp/git.hpp"
#include "bnp/stability.hpp"

#include <vector>

using namespace bnp;
using namespace bnp::git;

namespace {

// dim_v=2, dim_h=1 point over GF(2) with kappa1 given by its rows and L2 by
// its single column.
GrassPoint point2(Mat<Rat> k1, std::vector<Rat> l2col) {
    GrassPoint pt;
    pt.q = 2;
    pt.dim_v = 2;
    pt.dim_h = 1;
    pt.k = static_cast<int>(k1.size());
    pt.l = 1;
    pt.kappa1 = std::move(k1);
    pt.kappa2 = {{l2col[0]}, {l2col[1]}};
    pt.validate();
    return pt;
}

Mat<Rat> col(std::vector<Rat> v) {
    Mat<Rat> m;
    for (auto& x : v) m.push_back({x});
    return m;
}

} // namespace

TEST_CASE("theta1 on lines of a two-dimensional V") {
    // kappa1 invertible: every line maps to a line, theta1 = 1 - (2/2)*1 = 0
    GrassPoint pt = point2({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(0)});
    CHECK(theta1(pt, col({Rat(1), Rat(0)})) == Rat(0));
    CHECK(theta1(pt, col({Rat(0), Rat(1)})) == Rat(0));
    CHECK(theta1(pt, col({Rat(1), Rat(1)})) == Rat(0));

    // k=1, kernel of kappa1 = span e2: the kernel line drops to 0 - 1/2
    GrassPoint pk = point2({{Rat(1), Rat(0)}}, {Rat(1), Rat(0)});
    CHECK(theta1(pk, col({Rat(0), Rat(1)})) == Rat(-1, 2));
    CHECK(theta1(pk, col({Rat(1), Rat(0)})) == Rat(1, 2));
    CHECK(theta1(pk, col({Rat(1), Rat(1)})) == Rat(1, 2));
}

TEST_CASE("theta2 measures the meet with L2") {
    GrassPoint pt = point2({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(0)});
    CHECK(theta2(pt, col({Rat(1), Rat(0)})) == Rat(-1, 2)); // U = L2
    CHECK(theta2(pt, col({Rat(0), Rat(1)})) == Rat(1, 2));  // U meets L2 trivially
    // U = V: theta2(V) = l - l = 0
    CHECK(theta2(pt, Mat<Rat>{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}) == Rat(0));
}

TEST_CASE("subspace bases with dependent columns are rejected") {
    GrassPoint pt = point2({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(0)});
    CHECK_THROWS_AS(theta1(pt, Mat<Rat>{{Rat(1), Rat(1)}, {Rat(0), Rat(0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(theta2(pt, Mat<Rat>{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}),
                    std::invalid_argument);
    // wrong row count
    CHECK_THROWS_AS(theta1(pt, Mat<Rat>{{Rat(1)}}), std::invalid_argument);
}

TEST_CASE("point validation") {
    GrassPoint pt = point2({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(0)});

    GrassPoint bad = pt;
    bad.q = 4; // not prime
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = pt;
    bad.l = 3; // exceeds dim_v
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = pt;
    bad.kappa1 = {{Rat(1), Rat(0)}}; // k rows expected
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = pt;
    bad.kappa1 = {{Rat(1), Rat(0)}, {Rat(1), Rat(0)}}; // rank 1 < k
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = pt;
    bad.kappa2 = {{Rat(0)}, {Rat(0)}}; // rank 0 < l
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = pt;
    bad.kappa1[0][0] = Rat(2); // not reduced mod 2
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = pt;
    bad.kappa1[0][0] = Rat(1, 2); // non-integral over a finite field
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("linearization construction and validation") {
    CHECK_THROWS_AS((Linearization{Rat(0), Rat(1)}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Linearization{Rat(1), Rat(-1)}.validate()), std::invalid_argument);

    CurveData p1 = CurveData::p1();
    PairTypeNum t{Rat(2), Rat(3), 1};
    Linearization lin = linearization_from_type(t, Rat(1), 5, p1);
    CHECK(lin.p == Rat(16)); // P(5) + alpha*l = 15 + 1
    CHECK(lin.q_lin == Rat(2));

    CHECK_THROWS_AS(linearization_from_type(t, Rat(0), 5, p1), std::invalid_argument);
    CHECK_THROWS_AS(linearization_from_type(t, Rat(1), -10, p1), std::invalid_argument);
}

TEST_CASE("exhaustive check over GF(2): invertible kappa1, verdict set by L2") {
    GrassPoint pt = point2({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(0)});
    for (Rat p : {Rat(1, 2), Rat(1), Rat(3)})
        for (Rat q : {Rat(1, 2), Rat(1), Rat(3)}) {
            HmVerdict v = hm_check(pt, {p, q});
            CHECK(v.kind == VerdictKind::Unstable);
            CHECK(v.min_value == -q / 2);
            CHECK(v.witness == Mat<Rat>{{Rat(1), Rat(0)}}); // the line L2
        }
}

TEST_CASE("exhaustive check: balanced weights make the boundary lines tight") {
    // k=1, ker kappa1 = e2, L2 = e1: at p=q the two special lines both score 0
    GrassPoint pt = point2({{Rat(1), Rat(0)}}, {Rat(1), Rat(0)});
    HmVerdict v = hm_check(pt, {Rat(1), Rat(1)});
    CHECK(v.kind == VerdictKind::StrictlySemistable);
    CHECK(v.min_value == Rat(0));

    // tipping the weight towards theta2 destabilises along L2
    HmVerdict w = hm_check(pt, {Rat(1), Rat(2)});
    CHECK(w.kind == VerdictKind::Unstable);
    CHECK(w.min_value == Rat(-1, 2));
    CHECK(w.witness == Mat<Rat>{{Rat(1), Rat(0)}});

    // and towards theta1 the minimum goes positive only off the two lines,
    // so the kernel line still pins the minimum at -1/2+1/2*... check exactly:
    HmVerdict s = hm_check(pt, {Rat(2), Rat(1)});
    CHECK(s.kind == VerdictKind::Unstable);
    CHECK(s.min_value == Rat(-1, 2)); // kernel line: 2*(-1/2) + 1*(1/2)
    CHECK(s.witness == Mat<Rat>{{Rat(0), Rat(1)}});
}

TEST_CASE("exhaustive check guards") {
    GrassPoint pt = point2({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(0)});
    CHECK_THROWS_AS(hm_check(pt, {Rat(1), Rat(1)}, 3), BudgetExceeded); // 2^2 > 3

    GrassPoint rat_pt = pt;
    rat_pt.q = 0;
    CHECK_THROWS_AS(hm_check(rat_pt, {Rat(1), Rat(1)}), std::invalid_argument);

    // dim_v = 1: no proper subspaces, vacuously stable at minimum 0
    GrassPoint tiny;
    tiny.q = 2;
    tiny.dim_v = 1;
    tiny.dim_h = 1;
    tiny.k = 1;
    tiny.l = 1;
    tiny.kappa1 = {{Rat(1)}};
    tiny.kappa2 = {{Rat(1)}};
    HmVerdict v = hm_check(tiny, {Rat(1), Rat(1)});
    CHECK(v.kind == VerdictKind::Stable);
    CHECK(v.min_value == Rat(0));
}

TEST_CASE("family check works over the rationals and is family-relative") {
    GrassPoint pt = point2({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(0)});
    pt.q = 0;

    // the destabilising line is found as soon as it is in the family
    HmVerdict v = hm_check_family(pt, {Rat(1), Rat(1)}, {col({Rat(1), Rat(0)})});
    CHECK(v.kind == VerdictKind::Unstable);
    CHECK(v.min_value == Rat(-1, 2));

    // a family missing it reports the relative minimum
    HmVerdict w = hm_check_family(pt, {Rat(1), Rat(1)},
                                  {col({Rat(0), Rat(1)}), col({Rat(1), Rat(7)})});
    CHECK(w.kind == VerdictKind::Stable);
    CHECK(w.min_value == Rat(1, 2));

    // empty family: vacuous
    HmVerdict e = hm_check_family(pt, {Rat(1), Rat(1)}, {});
    CHECK(e.kind == VerdictKind::Stable);
    CHECK(e.min_value == Rat(0));

    // improper members are rejected
    CHECK_THROWS_AS(hm_check_family(pt, {Rat(1), Rat(1)},
                                    {Mat<Rat>{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}}),
                    std::invalid_argument);
}

TEST_CASE("verdict scales with the linearization") {
    GrassPoint pt = point2({{Rat(1), Rat(0)}}, {Rat(0), Rat(1)});
    for (auto [p, q] : std::vector<std::pair<Rat, Rat>>{
             {Rat(1), Rat(1)}, {Rat(1), Rat(2)}, {Rat(3), Rat(2)}}) {
        HmVerdict a = hm_check(pt, {p, q});
        HmVerdict b = hm_check(pt, {p * 6, q * 6});
        CHECK(a.kind == b.kind);
        CHECK(b.min_value == a.min_value * 6);
    }
}

TEST_CASE("one-parameter-subgroup weight pairing") {
    GrassPoint pt = point2({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(1), Rat(0)});
    Linearization lin{Rat(1), Rat(1)};

    // weights (1,-1): one filtration step at U = span e1 with gap 2
    CHECK(mu_oneps(pt, {{1, -1}}, lin) == Rat(-1));

    // trivial weights: empty filtration
    CHECK(mu_oneps(pt, {{0, 0}}, lin) == Rat(0));

    // moving L2 to e2 flips the sign of the e1 step
    GrassPoint pt2 = point2({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(0), Rat(1)});
    CHECK(mu_oneps(pt2, {{1, -1}}, lin) == Rat(1));

    CHECK_THROWS_AS(mu_oneps(pt, {{1, 0}}, lin), std::invalid_argument);  // sum != 0
    CHECK_THROWS_AS(mu_oneps(pt, {{1, -1, 0}}, lin), std::invalid_argument); // size
}

TEST_CASE("subspaces and adapted one-parameter subgroups give matching scores") {
    // recipe: weights dim_v-u on a basis of U and -u on a complement; the
    // pairing then equals dim_v times the combined theta of U
    GrassPoint pt;
    pt.q = 2;
    pt.dim_v = 3;
    pt.dim_h = 2;
    pt.k = 3;
    pt.l = 2;
    pt.kappa1 = {{Rat(1), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0)},
                 {Rat(0), Rat(1), Rat(0), Rat(0), Rat(1), Rat(1)},
                 {Rat(0), Rat(0), Rat(1), Rat(1), Rat(0), Rat(1)}};
    pt.kappa2 = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
    pt.validate();
    Linearization lin{Rat(3, 2), Rat(2)};

    for (int u = 1; u < pt.dim_v; ++u) {
        for_each_subspace(2, pt.dim_v, u, [&](const Mat<Fp>& rows) {
            Mat<Rat> rrows = to_rat(rows);
            Mat<Rat> U = transpose(rrows);
            // complete the echelon basis by the non-pivot unit vectors
            std::vector<bool> pivot(pt.dim_v, false);
            for (int i = 0; i < u; ++i) {
                int j = 0;
                while (rrows[i][j].is_zero()) ++j;
                pivot[j] = true;
            }
            Mat<Rat> B(pt.dim_v, std::vector<Rat>(pt.dim_v, Rat(0)));
            for (int i = 0; i < pt.dim_v; ++i)
                for (int c = 0; c < u; ++c) B[i][c] = U[i][c];
            int next = u;
            for (int j = 0; j < pt.dim_v; ++j)
                if (!pivot[j]) B[j][next++] = Rat(1);

            GrassPoint moved = change_basis(pt, B);
            OnePS lam;
            lam.weights.assign(pt.dim_v, -u);
            for (int c = 0; c < u; ++c) lam.weights[c] = pt.dim_v - u;

            CHECK(mu_oneps(moved, lam, lin) == Rat(pt.dim_v) * theta_combined(pt, lin, U));
        });
    }
}

TEST_CASE("verdict is invariant under a change of basis") {
    GrassPoint pt = point2({{Rat(1), Rat(1)}}, {Rat(1), Rat(1)});
    Linearization lin{Rat(2), Rat(3)};
    HmVerdict base = hm_check(pt, lin);

    for (Mat<Rat> b : {Mat<Rat>{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}},
                       Mat<Rat>{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}},
                       Mat<Rat>{{Rat(1), Rat(0)}, {Rat(1), Rat(1)}}}) {
        GrassPoint moved = change_basis(pt, b);
        HmVerdict v = hm_check(moved, lin);
        CHECK(v.kind == base.kind);
        CHECK(v.min_value == base.min_value);
    }

    CHECK_THROWS_AS(change_basis(pt, Mat<Rat>{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}),
                    std::invalid_argument); // singular mod 2
    CHECK_THROWS_AS(change_basis(pt, Mat<Rat>{{Rat(1)}}), std::invalid_argument);

    // rational path
    GrassPoint rat_pt = pt;
    rat_pt.q = 0;
    GrassPoint moved = change_basis(rat_pt, Mat<Rat>{{Rat(2), Rat(1)}, {Rat(1), Rat(1)}});
    Mat<Rat> line = col({Rat(1), Rat(1)}); // image check: theta values transported
    Mat<Rat> pre = col({Rat(0), Rat(1)});  // B*pre = line
    CHECK(theta_combined(moved, lin, pre) == theta_combined(rat_pt, lin, line));
}

TEST_CASE("twisted margin evaluation") {
    CHECK(theta_alpha_eval(7, Rat(1), 1, Rat(7), Rat(15), Rat(1), 1, Rat(2)) == Rat(0));
    CHECK(theta_alpha_eval(1, Rat(0), 0, Rat(0), Rat(15), Rat(1), 1, Rat(2)) == Rat(-2));
    // dim U = 0: only the sheaf part contributes
    CHECK(theta_alpha_eval(0, Rat(1), 0, Rat(0), Rat(15), Rat(1), 1, Rat(2)) == Rat(16));

    CHECK_THROWS_AS(theta_alpha_eval(-1, Rat(1), 0, Rat(0), Rat(15), Rat(1), 1, Rat(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(theta_alpha_eval(1, Rat(1), 0, Rat(0), Rat(15), Rat(0), 1, Rat(2)),
                    std::invalid_argument);
}

TEST_CASE("verdict over twisted-margin entries, with the section-count tie-break") {
    auto entry = [](Rat theta, Rat chi, long dim_u, bool proper = true) {
        ThetaEntry e;
        e.theta = theta;
        e.chi_f_n = chi;
        e.dim_u = dim_u;
        e.proper = proper;
        return e;
    };

    ThetaVerdict ss = theta_verdict({entry(Rat(0), Rat(7), 7)});
    CHECK(ss.kind == VerdictKind::StrictlySemistable);
    CHECK(ss.witnesses == std::vector<size_t>{0});

    CHECK(theta_verdict({entry(Rat(0), Rat(8), 7)}).kind == VerdictKind::Stable);

    ThetaVerdict un = theta_verdict({entry(Rat(3), Rat(0), 0), entry(Rat(-2), Rat(5), 3)});
    CHECK(un.kind == VerdictKind::Unstable);
    CHECK(un.witnesses == std::vector<size_t>{1});

    // theta = 0 with too few chi: unstable by the tie-break
    CHECK(theta_verdict({entry(Rat(0), Rat(6), 7)}).kind == VerdictKind::Unstable);

    // a non-proper tight entry does not force strict semistability
    CHECK(theta_verdict({entry(Rat(0), Rat(7), 7, false)}).kind == VerdictKind::Stable);

    CHECK(theta_verdict({}).kind == VerdictKind::Stable);
}

TEST_CASE("two-level consistency of the ambient scores and the twisted margin") {
    // With dim V = P(n), k = P(n+m), image dimension chi(F(n+m)) and meet
    // dim(Lambda cap U):
    //   p_a*theta1 + mx*m*q_a*theta2 = mx*m*theta_alpha + (P(n)+alpha*l)*(chi(F(n)) - dim U)
    for (long mx : {1L, 2L})
        for (long m : {1L, 3L})
            for (long rkf : {0L, 1L, 2L})
                for (long dim_u : {0L, 2L, 5L})
                    for (long meet : {0L, 1L}) {
                        const Rat r(3), alpha(2, 3), P_n(9);
                        const long l = 2, chi_f_n = dim_u - 1;
                        const Rat P_nm = P_n + r * mx * m;
                        const Rat chi_f_nm = Rat(chi_f_n) + Rat(rkf) * mx * m;
                        const Rat theta1_v = chi_f_nm - P_nm / P_n * dim_u;
                        const Rat theta2_v = Rat(l) / P_n * dim_u - meet;
                        const Rat p_a = P_n + alpha * l, q_a = alpha * r;
                        const Rat theta_a = theta_alpha_eval(dim_u, Rat(rkf), meet,
                                                             Rat(chi_f_n), P_n, alpha, l, r);
                        CHECK(p_a * theta1_v + Rat(mx * m) * q_a * theta2_v ==
                              Rat(mx * m) * theta_a + p_a * (Rat(chi_f_n) - Rat(dim_u)));
                    }
}

TEST_CASE("twisted margin equals the intrinsic margin at the expected section count") {
    // When dim U = chi(F(n)) and meet = l', theta_alpha reduces to delta_alpha
    CurveData curves[] = {CurveData::p1(), CurveData::smooth_genus(2, 5)};
    for (const CurveData& c : curves)
        for (long n : {2L, 7L}) {
            PairTypeNum parent{Rat(3), Rat(4), 2};
            for (const PairTypeNum& sub :
                 {PairTypeNum{Rat(1), Rat(1), 1}, PairTypeNum{Rat(2), Rat(-1), 0},
                  PairTypeNum{Rat(1), Rat(3), 2}}) {
                for (Rat alpha : {Rat(1, 2), Rat(2)}) {
                    Rat chi = hilbert_value(sub, c, n);
                    long dim_u = chi.floor_long();
                    REQUIRE(Rat(dim_u) == chi);
                    Rat theta = theta_alpha_eval(dim_u, sub.r, sub.l, chi,
                                                 hilbert_value(parent, c, n), alpha,
                                                 parent.l, parent.r);
                    CHECK(theta == delta_alpha(parent, sub, alpha));
                }
            }
        }
}
