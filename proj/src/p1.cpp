#include "bnp/p1.hpp"

#include "bnp/errors.hpp"
#include "bnp/walls.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bnp::p1 {

namespace {

long pos_sum(const SplitBundle& e) {
    long s = 0;
    for (long a : e.degrees)
        if (a > 0) s += a;
    return s;
}

long abs_sum(const SplitBundle& e) {
    long s = 0;
    for (long a : e.degrees) s += (a < 0 ? -a : a);
    return s;
}

Rat eval_form(const Form& f, const Rat& t) {
    Rat acc(0);
    for (const Rat& c : f) acc = acc * t + c; // Horner over x^{deg-u} y^u at (t, 1)
    return acc;
}

std::vector<Rat> eval_section(const PolySection& s, const Rat& t) {
    std::vector<Rat> v;
    v.reserve(s.comps.size());
    for (const Form& f : s.comps) v.push_back(eval_form(f, t));
    return v;
}

long block_size(long a, long twist) { return std::max(a + twist + 1, 0L); }

long coeff_space_dim(const SplitBundle& e, long twist) {
    long n = 0;
    for (long a : e.degrees) n += block_size(a, twist);
    return n;
}

std::vector<Rat> flatten(const SplitBundle& e, const PolySection& s, long twist) {
    std::vector<Rat> out;
    out.reserve(coeff_space_dim(e, twist));
    for (int i = 0; i < e.rank(); ++i) {
        long bs = block_size(e.degrees[i], twist);
        const Form& f = s.comps[i];
        for (long u = 0; u < bs; ++u)
            out.push_back(u < static_cast<long>(f.size()) ? f[u] : Rat(0));
    }
    return out;
}

PolySection unflatten(const SplitBundle& e, const std::vector<Rat>& flat, long twist) {
    PolySection s;
    size_t pos = 0;
    for (int i = 0; i < e.rank(); ++i) {
        long bs = block_size(e.degrees[i], twist);
        Form f(flat.begin() + pos, flat.begin() + pos + bs);
        pos += bs;
        if (std::all_of(f.begin(), f.end(), [](const Rat& x) { return x.is_zero(); })) f.clear();
        s.comps.push_back(std::move(f));
    }
    return s;
}

// rows spanning the level-n piece of the module generated by the sections:
// every monomial multiple x^{n-j} y^j * gen, flattened into H^0(E(n))
Mat<Rat> span_rows(const SplitBundle& e, const std::vector<PolySection>& gens, long n) {
    Mat<Rat> rows;
    rows.reserve(gens.size() * (n + 1));
    for (const auto& g : gens) {
        for (long j = 0; j <= n; ++j) {
            std::vector<Rat> row;
            row.reserve(coeff_space_dim(e, n));
            for (int i = 0; i < e.rank(); ++i) {
                long bs = block_size(e.degrees[i], n);
                std::vector<Rat> blk(bs, Rat(0));
                const Form& f = g.comps[i];
                for (long u = 0; u < static_cast<long>(f.size()); ++u) blk[u + j] = f[u];
                row.insert(row.end(), blk.begin(), blk.end());
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

Mat<Rat> gen_matrix_at(const std::vector<PolySection>& gens, int r, const Rat& t) {
    Mat<Rat> m(r, std::vector<Rat>(gens.size(), Rat(0)));
    for (size_t j = 0; j < gens.size(); ++j) {
        auto v = eval_section(gens[j], t);
        for (int i = 0; i < r; ++i) m[i][j] = v[i];
    }
    return m;
}

// rank over the function field: evaluation at more points than any minor degree
int generic_rank(const SplitBundle& e, const std::vector<PolySection>& gens) {
    long pts = pos_sum(e) + 2;
    int best = 0;
    for (long t = 0; t < pts; ++t)
        best = std::max(best, rank_of(gen_matrix_at(gens, e.rank(), Rat(t))));
    return best;
}

PolySection combine(const SplitBundle& e, const std::vector<PolySection>& lambda,
                    const std::vector<Rat>& c) {
    std::vector<Rat> acc(coeff_space_dim(e, 0), Rat(0));
    for (size_t j = 0; j < lambda.size(); ++j) {
        if (c[j].is_zero()) continue;
        auto flat = flatten(e, lambda[j], 0);
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += c[j] * flat[i];
    }
    return unflatten(e, acc, 0);
}

} // namespace

long SplitBundle::degree() const {
    long s = 0;
    for (long a : degrees) s += a;
    return s;
}

void SplitBundle::validate() const {
    if (degrees.empty()) throw std::invalid_argument("bundle must have positive rank");
    for (size_t i = 1; i < degrees.size(); ++i)
        if (degrees[i] > degrees[i - 1])
            throw std::invalid_argument("bundle degrees must be non-increasing");
}

bool is_zero_section(const PolySection& s) {
    for (const Form& f : s.comps)
        for (const Rat& c : f)
            if (!c.is_zero()) return false;
    return true;
}

void validate_section(const SplitBundle& e, const PolySection& s, long twist) {
    if (s.comps.size() != static_cast<size_t>(e.rank()))
        throw std::invalid_argument("section must have one component per bundle summand");
    for (int i = 0; i < e.rank(); ++i) {
        const Form& f = s.comps[i];
        long deg = e.degrees[i] + twist;
        if (f.empty()) continue;
        if (deg < 0)
            throw std::invalid_argument("component of a negative-degree summand must be zero");
        if (static_cast<long>(f.size()) != deg + 1)
            throw std::invalid_argument("component degree does not match its summand");
    }
}

PairTypeNum PairP1::type() const {
    return PairTypeNum(Rat(bundle.rank()), Rat(bundle.degree()),
                       static_cast<long>(lambda.size()));
}

void PairP1::validate() const {
    bundle.validate();
    for (const auto& s : lambda) validate_section(bundle, s, 0);
    if (lambda.empty()) return;
    Mat<Rat> m;
    m.reserve(lambda.size());
    for (const auto& s : lambda) m.push_back(flatten(bundle, s, 0));
    if (rank_of(m) != static_cast<int>(lambda.size()))
        throw std::invalid_argument("lambda basis is linearly dependent");
}

long h0_split(const SplitBundle& e) {
    long s = 0;
    for (long a : e.degrees)
        if (a >= 0) s += a + 1;
    return s;
}

GeneratedData generated_subsheaf_data(const SplitBundle& e, const std::vector<PolySection>& gens) {
    e.validate();
    for (const auto& g : gens) validate_section(e, g, 0);
    std::vector<PolySection> nz;
    for (const auto& g : gens)
        if (!is_zero_section(g)) nz.push_back(g);
    if (nz.empty()) return GeneratedData{0, 0, 0};

    GeneratedData out;
    out.stab_n = abs_sum(e) + static_cast<long>(gens.size()) + 1;
    out.rank = generic_rank(e, nz);
    long d0 = rank_of(span_rows(e, nz, out.stab_n));
    long d1 = rank_of(span_rows(e, nz, out.stab_n + 1));
    if (d1 - d0 != out.rank)
        throw std::logic_error("section-space increments did not stabilise at the expected level");
    out.degree = d0 - out.rank * (out.stab_n + 1);
    if (out.degree < 0)
        throw std::logic_error("section-generated subsheaf computed a negative degree");
    return out;
}

Saturation::Saturation(const SplitBundle& e, std::vector<PolySection> gens) : e_(e) {
    gen_ = generated_subsheaf_data(e, gens); // also validates inputs
    for (auto& g : gens)
        if (!is_zero_section(g)) gens_.push_back(std::move(g));
    rank_ = gen_.rank;
    minor_degree_ = pos_sum(e_);
    if (rank_ == 0) return;
    if (is_everything()) {
        degree_ = e_.degree();
        return;
    }
    long n = gen_.stab_n;
    long d0 = section_space_dim(n), d1 = section_space_dim(n + 1);
    if (d1 - d0 != rank_)
        throw std::logic_error("saturation dimension increments did not stabilise");
    degree_ = d0 - rank_ * (n + 1);
    if (degree_ < gen_.degree)
        throw std::logic_error("saturation degree fell below the generated degree");
}

void Saturation::ensure_points(long need) const {
    // bad points are roots of one fixed maximal minor, so at most minor_degree_ of them
    long guard = need + minor_degree_ + 4;
    while (static_cast<long>(good_ts_.size()) < need) {
        if (next_t_ > guard) throw std::logic_error("failed to collect enough generic sample points");
        Rat t(next_t_++);
        Mat<Rat> m = gen_matrix_at(gens_, e_.rank(), t);
        if (rank_of(m) != rank_) continue;
        Mat<Rat> lk = transpose(nullspace(transpose(m), e_.rank(), Rat(1)));
        good_ts_.push_back(t);
        kernels_.push_back(std::move(lk));
    }
}

bool Saturation::contains(const PolySection& s, long twist) const {
    validate_section(e_, s, twist);
    if (rank_ == 0) return is_zero_section(s);
    if (is_everything()) return true;
    long need = minor_degree_ + std::max(twist, 0L) + 1;
    ensure_points(need);
    for (long ix = 0; ix < need; ++ix) {
        auto v = eval_section(s, good_ts_[ix]);
        for (const auto& w : kernels_[ix]) {
            Rat acc(0);
            for (size_t i = 0; i < v.size(); ++i) acc += w[i] * v[i];
            if (!acc.is_zero()) return false;
        }
    }
    return true;
}

Mat<Rat> Saturation::membership_matrix(const std::vector<PolySection>& sections,
                                       long twist) const {
    if (rank_ == 0 || is_everything())
        throw std::logic_error("membership matrix only applies to proper nonzero saturations");
    for (const auto& s : sections) validate_section(e_, s, twist);
    long need = minor_degree_ + std::max(twist, 0L) + 1;
    ensure_points(need);
    Mat<Rat> K;
    for (long ix = 0; ix < need; ++ix) {
        std::vector<std::vector<Rat>> evals;
        evals.reserve(sections.size());
        for (const auto& s : sections) evals.push_back(eval_section(s, good_ts_[ix]));
        for (const auto& w : kernels_[ix]) {
            std::vector<Rat> row;
            row.reserve(sections.size());
            for (const auto& v : evals) {
                Rat acc(0);
                for (size_t i = 0; i < v.size(); ++i) acc += w[i] * v[i];
                row.push_back(acc);
            }
            K.push_back(std::move(row));
        }
    }
    return K;
}

long Saturation::section_space_dim(long twist) const {
    if (rank_ == 0) return 0;
    long n_coeffs = coeff_space_dim(e_, twist);
    if (is_everything() || n_coeffs == 0) return n_coeffs;
    long need = minor_degree_ + std::max(twist, 0L) + 1;
    ensure_points(need);
    Mat<Rat> c;
    for (long ix = 0; ix < need; ++ix) {
        const Rat& t = good_ts_[ix];
        // powers of t per coefficient slot, highest power first within a block
        for (const auto& w : kernels_[ix]) {
            std::vector<Rat> row;
            row.reserve(n_coeffs);
            for (int i = 0; i < e_.rank(); ++i) {
                long bs = block_size(e_.degrees[i], twist);
                if (bs == 0) continue;
                Rat p(1);
                std::vector<Rat> powers(bs, Rat(1));
                for (long u = 1; u < bs; ++u) { p *= t; powers[u] = p; }
                for (long u = 0; u < bs; ++u) row.push_back(w[i] * powers[bs - 1 - u]);
            }
            c.push_back(std::move(row));
        }
    }
    return n_coeffs - rank_of(c);
}

std::vector<PolySection> lambda_cap_h0(const PairP1& pair, const Saturation& sat) {
    pair.validate();
    if (sat.ambient().degrees != pair.bundle.degrees)
        throw std::invalid_argument("saturation was built from a different bundle");
    if (sat.rank() == 0 || pair.lambda.empty()) return {};
    if (sat.is_everything()) return pair.lambda;
    long l = static_cast<long>(pair.lambda.size());
    Mat<Rat> k = sat.membership_matrix(pair.lambda, 0);
    Mat<Rat> basis = nullspace(k, static_cast<int>(l), Rat(1)); // l x dim
    std::vector<PolySection> out;
    if (basis.empty()) return out;
    size_t dim = basis[0].size();
    for (size_t col = 0; col < dim; ++col) {
        std::vector<Rat> c(l);
        for (long j = 0; j < l; ++j) c[j] = basis[j][col];
        out.push_back(combine(pair.bundle, pair.lambda, c));
    }
    return out;
}

namespace {

std::string subspace_origin(const Mat<Rat>& rows) {
    std::ostringstream os;
    os << "sat(span{";
    for (size_t i = 0; i < rows.size(); ++i) {
        os << (i ? "," : "") << "(";
        for (size_t j = 0; j < rows[i].size(); ++j) os << (j ? "," : "") << rows[i][j].str();
        os << ")";
    }
    os << "})";
    return os.str();
}

} // namespace

std::vector<SubpairInfo> enumerate_subpairs(const PairP1& pair, long field_order, long budget) {
    pair.validate();
    if (!is_prime(field_order))
        throw std::invalid_argument("enumeration field order must be prime");
    if (budget < 1) throw std::invalid_argument("budget must be positive");

    const int r = pair.bundle.rank();
    const int l = static_cast<int>(pair.lambda.size());

    mpz_class total = 0;
    for (int u = 1; u <= l; ++u) total += subspace_count(field_order, l, u);
    if (total > budget)
        throw BudgetExceeded("destabilizer family has " + total.get_str() +
                             " section subspaces, over the budget of " + std::to_string(budget));

    std::vector<SubpairInfo> out;
    for (int u = 1; u <= l; ++u) {
        for_each_subspace(field_order, l, u, [&](const Mat<Fp>& rows) {
            Mat<Rat> lift = to_rat(rows);
            std::vector<PolySection> gens;
            gens.reserve(lift.size());
            for (const auto& row : lift) gens.push_back(combine(pair.bundle, pair.lambda, row));
            Saturation sat(pair.bundle, gens);
            if (sat.rank() == r) return; // saturation is all of E: not a proper subpair
            long meet = static_cast<long>(lambda_cap_h0(pair, sat).size());
            out.push_back(SubpairInfo{
                PairTypeNum(Rat(sat.rank()), Rat(sat.degree()), meet),
                sat.stab_n(),
                subspace_origin(lift)});
        });
    }

    // honest direct-summand subpairs O(a_1)+...+O(a_k)
    for (int k = 1; k < r; ++k) {
        long deg = 0;
        for (int i = 0; i < k; ++i) deg += pair.bundle.degrees[i];
        long meet = 0;
        if (l > 0) {
            // sections of Lambda whose components beyond the k-th vanish
            Mat<Rat> a;
            for (int j = 0; j < l; ++j) {
                std::vector<Rat> col;
                for (int i = k; i < r; ++i) {
                    long bs = block_size(pair.bundle.degrees[i], 0);
                    const Form& f = pair.lambda[j].comps[i];
                    for (long u = 0; u < bs; ++u)
                        col.push_back(u < static_cast<long>(f.size()) ? f[u] : Rat(0));
                }
                a.push_back(std::move(col));
            }
            a = transpose(a);
            meet = l - (a.empty() ? 0 : rank_of(a));
        }
        long stab = std::max(0L, -pair.bundle.degrees[k - 1] - 1);
        out.push_back(SubpairInfo{PairTypeNum(Rat(k), Rat(deg), meet), stab,
                                  "summand(top " + std::to_string(k) + ")"});
    }
    return out;
}

SearchVerdict destabilizer_search(const PairP1& pair, const Rat& alpha, long field_order,
                                  long budget) {
    if (!(alpha > Rat(0))) throw std::invalid_argument("alpha must be > 0");
    auto family = enumerate_subpairs(pair, field_order, budget);
    PairTypeNum parent = pair.type();

    SearchVerdict v;
    v.family_size = static_cast<long>(family.size());
    std::map<PairTypeNum, std::pair<Rat, std::string>> seen;
    for (const auto& f : family) {
        Rat dl = delta_alpha(parent, f.type, alpha);
        if (!v.min_delta || dl < *v.min_delta) v.min_delta = dl;
        seen.try_emplace(f.type, dl, f.origin);
    }
    if (!v.min_delta) {
        v.kind = VerdictKind::Stable; // empty family: rank-1 pairs have no proper subpairs
        v.family_relative = true;
        return v;
    }
    v.kind = *v.min_delta < Rat(0)   ? VerdictKind::Unstable
             : *v.min_delta == Rat(0) ? VerdictKind::StrictlySemistable
                                      : VerdictKind::Stable;
    v.family_relative = v.kind != VerdictKind::Unstable;
    for (const auto& [t, rest] : seen) {
        const auto& [dl, origin] = rest;
        if ((v.kind == VerdictKind::Unstable && dl < Rat(0)) ||
            (v.kind == VerdictKind::StrictlySemistable && dl == Rat(0)))
            v.witnesses.push_back(SearchWitness{t, dl, origin});
    }
    return v;
}

std::vector<SweepEntry> alpha_range_report(const PairP1& pair, const Rat& lo, const Rat& hi,
                                           long field_order, long budget) {
    pair.validate();
    auto rep = chambers(pair.type(), CurveData::p1(), lo, hi);
    std::vector<SweepEntry> out;
    size_t ci = 0, wi = 0;
    while (ci < rep.chambers.size() || wi < rep.walls.size()) {
        bool chamber_next = ci < rep.chambers.size() &&
                            (wi >= rep.walls.size() || rep.chambers[ci].lo < rep.walls[wi].alpha);
        if (chamber_next) {
            const auto& ch = rep.chambers[ci++];
            Rat sample = (ch.lo + ch.hi) / Rat(2);
            out.push_back(SweepEntry{false, ch.lo, ch.hi, ch.hi_closed, sample,
                                     destabilizer_search(pair, sample, field_order, budget)});
        } else {
            const auto& w = rep.walls[wi++];
            out.push_back(SweepEntry{true, w.alpha, w.alpha, false, w.alpha,
                                     destabilizer_search(pair, w.alpha, field_order, budget)});
        }
    }
    return out;
}

} // namespace bnp::p1
