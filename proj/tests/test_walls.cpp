#include "bnp/walls.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace bnp;

namespace {
const CurveData kP1 = CurveData::p1();
const PairTypeNum t231(Rat(2), Rat(3), 1);
const PairTypeNum t221(Rat(2), Rat(2), 1);

bool has_witness(const Wall& w, const PairTypeNum& t) {
    for (const auto& x : w.witnesses)
        if (x == t) return true;
    return false;
}
} // namespace

TEST_CASE("walls of (2,3,1) on P1 over (0,10]") {
    auto walls = wall_candidates(t231, kP1, Rat(0), Rat(10));
    REQUIRE(walls.size() == 2);
    CHECK(walls[0].alpha == Rat(1));
    CHECK(walls[1].alpha == Rat(3));
    CHECK(has_witness(walls[0], PairTypeNum(Rat(1), Rat(1), 1)));
    CHECK(has_witness(walls[0], PairTypeNum(Rat(1), Rat(2), 0)));
}

TEST_CASE("walls of (2,2,1): complement filter kills alpha = 4, 6, ...") {
    auto walls = wall_candidates(t221, kP1, Rat(0), Rat(10));
    REQUIRE(walls.size() == 1);
    CHECK(walls[0].alpha == Rat(2));
    // the candidate (1,3,0) at alpha 4 has complement (1,-1,1) violating the
    // slope condition, so no wall shows up there
    for (const auto& w : walls) CHECK(w.alpha != Rat(4));
}

TEST_CASE("rank-1 types have no walls") {
    CHECK(wall_candidates(PairTypeNum(Rat(1), Rat(5), 2), kP1, Rat(0), Rat(100)).empty());
}

TEST_CASE("interval validation") {
    CHECK_THROWS_AS(wall_candidates(t231, kP1, Rat(10), Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(wall_candidates(t231, kP1, Rat(-1), Rat(5)), std::invalid_argument);
    CHECK_THROWS_AS(wall_candidates(t231, kP1, Rat(2), Rat(2)), std::invalid_argument);
}

TEST_CASE("walls agree with the independent scan oracle") {
    std::vector<PairTypeNum> parents;
    for (long r = 2; r <= 4; ++r)
        for (long d = -4; d <= 6; ++d)
            for (long l = 0; l <= 3; ++l) parents.emplace_back(Rat(r), Rat(d), l);

    for (const auto& parent : parents) {
        auto walls = wall_candidates(parent, kP1, Rat(0), Rat(8));
        long dmax = 8 * (1 + parent.l) + 20; // generous: covers every root in (0,8]
        auto scan = oracle::wall_scan(parent, kP1, Rat(0), Rat(8), dmax);
        REQUIRE(walls.size() == scan.size());
        size_t i = 0;
        for (const auto& [alpha, wits] : scan) {
            CHECK(walls[i].alpha == alpha);
            CHECK(walls[i].witnesses == wits);
            ++i;
        }
    }
}

TEST_CASE("walls on a multiplicity-2 curve agree with the oracle") {
    CurveData c;
    c.m_x = 2;
    c.chi_o = -1;
    c.n_x = 2;
    PairTypeNum parent(Rat(3, 2), Rat(5, 2), 2);
    auto walls = wall_candidates(parent, c, Rat(0), Rat(6));
    auto scan = oracle::wall_scan(parent, c, Rat(0), Rat(6), 40);
    REQUIRE(walls.size() == scan.size());
    size_t i = 0;
    for (const auto& [alpha, wits] : scan) {
        CHECK(walls[i].alpha == alpha);
        CHECK(walls[i].witnesses == wits);
        ++i;
    }
}

TEST_CASE("every witness has vanishing delta at its wall") {
    for (const auto& parent : {t231, t221, PairTypeNum(Rat(3), Rat(4), 2)}) {
        for (const auto& w : wall_candidates(parent, kP1, Rat(0), Rat(10))) {
            CHECK(w.alpha > Rat(0));
            CHECK(!w.witnesses.empty());
            for (const auto& sub : w.witnesses) {
                CHECK(delta_alpha(parent, sub, w.alpha) == Rat(0));
                CHECK(sub.r > Rat(0));
                CHECK(sub.r < parent.r);
                CHECK(sub.l >= 0);
                CHECK(sub.l <= parent.l);
            }
        }
    }
}

TEST_CASE("no wall beyond the existence bound when 0 < l < r") {
    for (long d = -2; d <= 6; ++d) {
        PairTypeNum parent(Rat(3), Rat(d), 2);
        Rat amax = (parent.d / parent.r) / (Rat(1) - Rat(parent.l) / parent.r);
        for (const auto& w : wall_candidates(parent, kP1, Rat(0), Rat(50)))
            CHECK(w.alpha <= amax);
    }
}

TEST_CASE("twist equivariance of the slope-equality locus") {
    for (long c = -2; c <= 2; ++c) {
        for (long dp = -3; dp <= 3; ++dp) {
            PairTypeNum parent = t231;
            PairTypeNum sub(Rat(1), Rat(dp), 1);
            PairTypeNum parent_tw(parent.r, parent.d + parent.r * Rat(c), parent.l);
            PairTypeNum sub_tw(sub.r, sub.d + sub.r * Rat(c), sub.l);
            CHECK(alpha_of_equal_slope(parent, sub) == alpha_of_equal_slope(parent_tw, sub_tw));
        }
    }
}

TEST_CASE("chamber examples") {
    ChamberReport r1 = chambers(t231, kP1, Rat(0), Rat(10));
    REQUIRE(r1.chambers.size() == 3);
    CHECK(r1.chambers[0].lo == Rat(0));
    CHECK(r1.chambers[0].hi == Rat(1));
    CHECK_FALSE(r1.chambers[0].hi_closed);
    CHECK(r1.chambers[1].lo == Rat(1));
    CHECK(r1.chambers[1].hi == Rat(3));
    CHECK_FALSE(r1.chambers[1].hi_closed);
    CHECK(r1.chambers[2].lo == Rat(3));
    CHECK(r1.chambers[2].hi == Rat(10));
    CHECK(r1.chambers[2].hi_closed);

    ChamberReport r2 = chambers(PairTypeNum(Rat(1), Rat(5), 2), kP1, Rat(0), Rat(10));
    REQUIRE(r2.chambers.size() == 1);
    CHECK(r2.chambers[0].lo == Rat(0));
    CHECK(r2.chambers[0].hi == Rat(10));
    CHECK(r2.chambers[0].hi_closed);

    ChamberReport r3 = chambers(t221, kP1, Rat(0), Rat(3));
    REQUIRE(r3.chambers.size() == 2);
    CHECK(r3.chambers[0].hi == Rat(2));
    CHECK(r3.chambers[1].lo == Rat(2));
    CHECK(r3.chambers[1].hi == Rat(3));
    CHECK(r3.chambers[1].hi_closed);
}

TEST_CASE("interval endpoint on a wall closes nothing") {
    // hi = 2 is itself a wall of (2,2,1): the last chamber must be open
    ChamberReport r = chambers(t221, kP1, Rat(0), Rat(2));
    REQUIRE(r.walls.size() == 1);
    REQUIRE(r.chambers.size() == 1);
    CHECK(r.chambers[0].lo == Rat(0));
    CHECK(r.chambers[0].hi == Rat(2));
    CHECK_FALSE(r.chambers[0].hi_closed);
}

TEST_CASE("numerical JH examples") {
    auto d1 = numerical_jh(t221, Rat(2), kP1);
    REQUIRE(d1.size() == 1);
    REQUIRE(d1[0].size() == 2);
    CHECK(d1[0][0] == PairTypeNum(Rat(1), Rat(0), 1));
    CHECK(d1[0][1] == PairTypeNum(Rat(1), Rat(2), 0));

    auto d2 = numerical_jh(t231, Rat(1), kP1);
    REQUIRE(d2.size() == 1);
    REQUIRE(d2[0].size() == 2);
    CHECK(d2[0][0] == PairTypeNum(Rat(1), Rat(1), 1));
    CHECK(d2[0][1] == PairTypeNum(Rat(1), Rat(2), 0));

    CHECK(numerical_jh(t231, Rat(2), kP1).empty());
    CHECK_THROWS_AS(numerical_jh(t231, Rat(1), kP1, 1), std::invalid_argument);
}

TEST_CASE("JH factors sum to the parent and share the slope") {
    for (const auto& parent :
         {t221, t231, PairTypeNum(Rat(3), Rat(3), 2), PairTypeNum(Rat(4), Rat(2), 1)}) {
        for (const auto& w : wall_candidates(parent, kP1, Rat(0), Rat(6))) {
            auto decs = numerical_jh(parent, w.alpha, kP1);
            CHECK(!decs.empty());
            for (const auto& dec : decs) {
                CHECK(dec.size() >= 2);
                Rat rs(0), ds(0);
                long ls = 0;
                for (const auto& t : dec) {
                    rs += t.r;
                    ds += t.d;
                    ls += t.l;
                    CHECK(t.r > Rat(0));
                    CHECK(mu_alpha(t, w.alpha) == mu_alpha(parent, w.alpha));
                }
                CHECK(rs == parent.r);
                CHECK(ds == parent.d);
                CHECK(ls == parent.l);
            }
        }
    }
}

TEST_CASE("JH is empty off the walls") {
    ChamberReport rep = chambers(t231, kP1, Rat(0), Rat(10));
    for (const auto& c : rep.chambers) {
        Rat mid = (c.lo + c.hi) / Rat(2);
        CHECK(numerical_jh(t231, mid, kP1).empty());
    }
}
