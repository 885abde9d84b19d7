#include "bnp/json_io.hpp"

#include <stdexcept>

namespace bnp::io {

namespace {

VerdictKind kind_from_name(const std::string& s) {
    if (s == "stable") return VerdictKind::Stable;
    if (s == "strictly_semistable") return VerdictKind::StrictlySemistable;
    if (s == "unstable") return VerdictKind::Unstable;
    throw std::invalid_argument("unknown verdict kind '" + s + "'");
}

long int_from_json(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw std::invalid_argument(std::string(what) + " must be an integer, got " + j.dump());
    return j.get<long>();
}

// matrices over exact scalars; entries accepted as integers or "p/q" strings
json mat_to_json(const Mat<Rat>& m, bool as_int) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const Rat& x : r) {
            if (as_int && x.is_integer() && x.num().fits_slong_p())
                row.push_back(x.num().get_si());
            else
                row.push_back(x.str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat<Rat> mat_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    Mat<Rat> m;
    for (const auto& row : j) {
        if (!row.is_array())
            throw std::invalid_argument(std::string(what) + " rows must be arrays");
        std::vector<Rat> r;
        for (const auto& x : row) r.push_back(rat_from_json(x));
        m.push_back(std::move(r));
    }
    return m;
}

} // namespace

json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const json& j) {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw std::invalid_argument("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

json curve_to_json(const CurveData& c) {
    return json{{"m_x", c.m_x}, {"chi_o", c.chi_o}, {"beta", c.beta.str()},
                {"n_x", c.n_x}, {"g", c.g}};
}

CurveData curve_from_json(const json& j) {
    CurveData c;
    c.m_x = int_from_json(j.at("m_x"), "m_x");
    c.chi_o = int_from_json(j.at("chi_o"), "chi_o");
    c.beta = rat_from_json(j.at("beta"));
    c.n_x = int_from_json(j.at("n_x"), "n_x");
    c.g = int_from_json(j.at("g"), "g");
    c.validate();
    return c;
}

json type_to_json(const PairTypeNum& t) {
    return json{{"r", t.r.str()}, {"d", t.d.str()}, {"l", t.l}};
}

PairTypeNum type_from_json(const json& j) {
    return PairTypeNum(rat_from_json(j.at("r")), rat_from_json(j.at("d")),
                       int_from_json(j.at("l"), "l"));
}

json verdict_to_json(const Verdict& v) {
    json w = json::array();
    for (const auto& [t, dl] : v.witnesses)
        w.push_back(json{{"type", type_to_json(t)}, {"delta", dl.str()}});
    return json{{"kind", verdict_kind_name(v.kind)}, {"witnesses", std::move(w)}};
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    v.kind = kind_from_name(j.at("kind").get<std::string>());
    for (const auto& w : j.at("witnesses"))
        v.witnesses.emplace_back(type_from_json(w.at("type")), rat_from_json(w.at("delta")));
    return v;
}

json existence_to_json(const ExistenceReport& r) {
    return json{{"feasible_semistable", r.feasible_semistable},
                {"feasible_stable", r.feasible_stable},
                {"violated", r.violated}};
}

ExistenceReport existence_from_json(const json& j) {
    ExistenceReport r;
    r.feasible_semistable = j.at("feasible_semistable").get<bool>();
    r.feasible_stable = j.at("feasible_stable").get<bool>();
    r.violated = j.at("violated").get<std::vector<std::string>>();
    return r;
}

json wall_to_json(const Wall& w) {
    json ws = json::array();
    for (const auto& t : w.witnesses) ws.push_back(type_to_json(t));
    return json{{"alpha", w.alpha.str()}, {"witnesses", std::move(ws)}};
}

Wall wall_from_json(const json& j) {
    Wall w;
    w.alpha = rat_from_json(j.at("alpha"));
    for (const auto& t : j.at("witnesses")) w.witnesses.push_back(type_from_json(t));
    return w;
}

json chambers_to_json(const ChamberReport& r) {
    json walls = json::array(), chs = json::array();
    for (const auto& w : r.walls) walls.push_back(wall_to_json(w));
    for (const auto& c : r.chambers)
        chs.push_back(json{{"lo", c.lo.str()}, {"hi", c.hi.str()}, {"hi_closed", c.hi_closed}});
    return json{{"walls", std::move(walls)}, {"chambers", std::move(chs)}};
}

ChamberReport chambers_from_json(const json& j) {
    ChamberReport r;
    for (const auto& w : j.at("walls")) r.walls.push_back(wall_from_json(w));
    for (const auto& c : j.at("chambers"))
        r.chambers.push_back(Chamber{rat_from_json(c.at("lo")), rat_from_json(c.at("hi")),
                                     c.at("hi_closed").get<bool>()});
    return r;
}

json jh_to_json(const std::vector<std::vector<PairTypeNum>>& decs) {
    json out = json::array();
    for (const auto& dec : decs) {
        json parts = json::array();
        for (const auto& t : dec) parts.push_back(type_to_json(t));
        out.push_back(std::move(parts));
    }
    return out;
}

std::vector<std::vector<PairTypeNum>> jh_from_json(const json& j) {
    std::vector<std::vector<PairTypeNum>> out;
    for (const auto& dec : j) {
        std::vector<PairTypeNum> parts;
        for (const auto& t : dec) parts.push_back(type_from_json(t));
        out.push_back(std::move(parts));
    }
    return out;
}

json grass_to_json(const git::GrassPoint& p) {
    return json{{"q", p.q},
                {"dim_v", p.dim_v},
                {"dim_h", p.dim_h},
                {"k", p.k},
                {"l", p.l},
                {"kappa1", mat_to_json(p.kappa1, p.q > 0)},
                {"kappa2", mat_to_json(p.kappa2, p.q > 0)}};
}

git::GrassPoint grass_from_json(const json& j) {
    git::GrassPoint p;
    p.q = int_from_json(j.at("q"), "q");
    p.dim_v = static_cast<int>(int_from_json(j.at("dim_v"), "dim_v"));
    p.dim_h = static_cast<int>(int_from_json(j.at("dim_h"), "dim_h"));
    p.k = static_cast<int>(int_from_json(j.at("k"), "k"));
    p.l = static_cast<int>(int_from_json(j.at("l"), "l"));
    p.kappa1 = mat_from_json(j.at("kappa1"), "kappa1");
    p.kappa2 = mat_from_json(j.at("kappa2"), "kappa2");
    p.validate();
    return p;
}

json hm_to_json(const git::HmVerdict& v) {
    return json{{"kind", verdict_kind_name(v.kind)},
                {"min_value", v.min_value.str()},
                {"witness",
                 json{{"dim", v.witness.size()}, {"basis", mat_to_json(v.witness, true)}}}};
}

git::HmVerdict hm_from_json(const json& j) {
    git::HmVerdict v;
    v.kind = kind_from_name(j.at("kind").get<std::string>());
    v.min_value = rat_from_json(j.at("min_value"));
    v.witness = mat_from_json(j.at("witness").at("basis"), "witness basis");
    return v;
}

json pair_to_json(const p1::PairP1& p) {
    json degs = json::array();
    for (long a : p.bundle.degrees) degs.push_back(a);
    json lam = json::array();
    for (const auto& s : p.lambda) {
        json comps = json::array();
        for (const auto& f : s.comps) {
            json coeffs = json::array();
            for (const Rat& c : f) {
                if (c.is_integer() && c.num().fits_slong_p())
                    coeffs.push_back(c.num().get_si());
                else
                    coeffs.push_back(c.str());
            }
            comps.push_back(std::move(coeffs));
        }
        lam.push_back(std::move(comps));
    }
    return json{{"degrees", std::move(degs)}, {"lambda", std::move(lam)}};
}

p1::PairP1 pair_from_json(const json& j) {
    p1::PairP1 p;
    for (const auto& a : j.at("degrees")) p.bundle.degrees.push_back(int_from_json(a, "degree"));
    for (const auto& s : j.at("lambda")) {
        p1::PolySection sec;
        if (!s.is_array()) throw std::invalid_argument("each section must be an array of forms");
        for (const auto& f : s) {
            p1::Form form;
            if (!f.is_array())
                throw std::invalid_argument("each form must be an array of coefficients");
            for (const auto& c : f) form.push_back(rat_from_json(c));
            sec.comps.push_back(std::move(form));
        }
        p.lambda.push_back(std::move(sec));
    }
    p.validate();
    return p;
}

json search_to_json(const p1::SearchVerdict& v) {
    json w = json::array();
    for (const auto& sw : v.witnesses)
        w.push_back(json{{"type", type_to_json(sw.type)},
                         {"delta", sw.delta.str()},
                         {"origin", sw.origin}});
    json out{{"kind", verdict_kind_name(v.kind)},
             {"family_relative", v.family_relative},
             {"family_size", v.family_size}};
    out["min_delta"] = v.min_delta ? json(v.min_delta->str()) : json(nullptr);
    out["witnesses"] = std::move(w);
    return out;
}

p1::SearchVerdict search_from_json(const json& j) {
    p1::SearchVerdict v;
    v.kind = kind_from_name(j.at("kind").get<std::string>());
    v.family_relative = j.at("family_relative").get<bool>();
    v.family_size = int_from_json(j.at("family_size"), "family_size");
    if (!j.at("min_delta").is_null()) v.min_delta = rat_from_json(j.at("min_delta"));
    for (const auto& w : j.at("witnesses"))
        v.witnesses.push_back(p1::SearchWitness{type_from_json(w.at("type")),
                                                rat_from_json(w.at("delta")),
                                                w.at("origin").get<std::string>()});
    return v;
}

json sweep_to_json(const std::vector<p1::SweepEntry>& entries) {
    json out = json::array();
    for (const auto& e : entries) {
        if (e.is_wall) {
            out.push_back(json{{"kind", "wall"},
                               {"alpha", e.alpha.str()},
                               {"verdict", search_to_json(e.verdict)}});
        } else {
            out.push_back(json{{"kind", "chamber"},
                               {"lo", e.lo.str()},
                               {"hi", e.hi.str()},
                               {"hi_closed", e.hi_closed},
                               {"sample_alpha", e.alpha.str()},
                               {"verdict", search_to_json(e.verdict)}});
        }
    }
    return out;
}

std::vector<p1::SweepEntry> sweep_from_json(const json& j) {
    std::vector<p1::SweepEntry> out;
    for (const auto& e : j) {
        p1::SweepEntry se;
        std::string kind = e.at("kind").get<std::string>();
        if (kind == "wall") {
            se.is_wall = true;
            se.alpha = rat_from_json(e.at("alpha"));
            se.lo = se.hi = se.alpha;
        } else if (kind == "chamber") {
            se.is_wall = false;
            se.lo = rat_from_json(e.at("lo"));
            se.hi = rat_from_json(e.at("hi"));
            se.hi_closed = e.at("hi_closed").get<bool>();
            se.alpha = rat_from_json(e.at("sample_alpha"));
        } else {
            throw std::invalid_argument("unknown sweep entry kind '" + kind + "'");
        }
        se.verdict = search_from_json(e.at("verdict"));
        out.push_back(std::move(se));
    }
    return out;
}

} // namespace bnp::io
