#pragma once

#include "bnp/core.hpp"
#include "bnp/linalg.hpp"
#include "bnp/stability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bnp::p1 {

// Homogeneous binary form of degree size()-1 listed as coefficients of
// x^a, x^{a-1}y, ..., y^a. The empty vector is the zero form of any degree.
using Form = std::vector<Rat>;

// E = O(a_1) + ... + O(a_r) with a_1 >= a_2 >= ... >= a_r.
struct SplitBundle {
    std::vector<long> degrees;

    int rank() const { return static_cast<int>(degrees.size()); }
    long degree() const;
    void validate() const;
};

// Element of H^0(E(n)): component i is a form of degree a_i + n, or zero.
struct PolySection {
    std::vector<Form> comps;
};

bool is_zero_section(const PolySection& s);
void validate_section(const SplitBundle& e, const PolySection& s, long twist);

// An explicit pair on the projective line: split bundle plus an independent
// basis of a subspace of H^0(E).
struct PairP1 {
    SplitBundle bundle;
    std::vector<PolySection> lambda;

    PairTypeNum type() const;
    void validate() const;
};

long h0_split(const SplitBundle& e);

struct GeneratedData {
    int rank = 0;
    long degree = 0;
    long stab_n = 0;
};

// Rank, degree and stabilisation level of the subsheaf generated by the given
// sections: rank is the generic rank of the r x #gens polynomial matrix, the
// degree is read off the section-space dimensions at two consecutive levels
// >= stab_n (an internal error is raised if the increments disagree).
GeneratedData generated_subsheaf_data(const SplitBundle& e, const std::vector<PolySection>& gens);

// The saturation of the generated subsheaf: membership of a section in the
// generic column span of the generators, decided exactly by evaluating at
// enough sample points to exceed every relevant minor degree.
class Saturation {
public:
    Saturation(const SplitBundle& e, std::vector<PolySection> gens);

    const SplitBundle& ambient() const { return e_; }
    int rank() const { return rank_; }
    long degree() const { return degree_; }
    long gen_degree() const { return gen_.degree; }
    long stab_n() const { return gen_.stab_n; }
    bool is_everything() const { return rank_ == e_.rank(); }

    // Is s (a section of E(twist)) generically in the span, i.e. in H^0 of the
    // saturation twisted by `twist`?
    bool contains(const PolySection& s, long twist) const;

    // dim H^0 of the twisted saturation.
    long section_space_dim(long twist) const;

    // Constraint matrix on coefficients of a linear combination of the given
    // sections; its null space is the intersection with the saturation.
    Mat<Rat> membership_matrix(const std::vector<PolySection>& sections, long twist) const;

private:
    void ensure_points(long need) const;

    SplitBundle e_;
    std::vector<PolySection> gens_; // nonzero generators only
    GeneratedData gen_;
    int rank_ = 0;
    long degree_ = 0;
    long minor_degree_ = 0; // max degree of a full-rank minor of the generator matrix
    mutable std::vector<Rat> good_ts_;
    mutable std::vector<Mat<Rat>> kernels_; // rows spanning the left kernel at each good point
    mutable long next_t_ = 0;
};

// Basis of {s in Lambda : s lies in the saturation}.
std::vector<PolySection> lambda_cap_h0(const PairP1& pair, const Saturation& sat);

struct SubpairInfo {
    PairTypeNum type; // (rank, degree of the saturated subsheaf, dim Lambda cap H^0)
    long stab_n = 0;
    std::string origin;
};

// The search family: saturations of spans of Lambda-subspaces enumerated over
// F_p (coefficients lifted to exact integers), plus the direct-summand
// subpairs O(a_1)+...+O(a_k) for k < r.
std::vector<SubpairInfo> enumerate_subpairs(const PairP1& pair, long field_order, long budget);

struct SearchWitness {
    PairTypeNum type;
    Rat delta;
    std::string origin;
};

// Family-relative stability verdict; instability certificates are absolute.
struct SearchVerdict {
    VerdictKind kind = VerdictKind::Stable;
    bool family_relative = true;
    std::optional<Rat> min_delta; // empty when the family is empty
    long family_size = 0;
    std::vector<SearchWitness> witnesses;
};

inline constexpr long kDefaultSearchBudget = 1L << 12;

SearchVerdict destabilizer_search(const PairP1& pair, const Rat& alpha, long field_order = 2,
                                  long budget = kDefaultSearchBudget);

struct SweepEntry {
    bool is_wall = false;
    Rat lo, hi; // chamber bounds; for walls both equal alpha
    bool hi_closed = false;
    Rat alpha;  // wall position, or the chamber's sample point
    SearchVerdict verdict;
};

// Chamber decomposition of the pair's numerical type over (lo, hi], with a
// destabilizer search at one sample per chamber and at each wall.
std::vector<SweepEntry> alpha_range_report(const PairP1& pair, const Rat& lo, const Rat& hi,
                                           long field_order = 2,
                                           long budget = kDefaultSearchBudget);

} // namespace bnp::p1
