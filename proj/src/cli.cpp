#include "bnp/cli.hpp"

#include "bnp/errors.hpp"
#include "bnp/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

namespace bnp::cli {

namespace {

using io::json;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Rat parse_rat_arg(const std::string& s, const std::string& what) {
    try {
        return Rat::parse(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(what + ": invalid rational '" + s + "'");
    }
}

long parse_long_arg(const std::string& s, const std::string& what) {
    Rat r = parse_rat_arg(s, what);
    if (!r.is_integer()) throw std::invalid_argument(what + ": expected an integer, got '" + s + "'");
    if (!r.num().fits_slong_p()) throw std::invalid_argument(what + ": integer out of range '" + s + "'");
    return r.num().get_si();
}

PairTypeNum parse_type_arg(const std::string& s) {
    auto parts = split_csv(s);
    if (parts.size() != 3)
        throw std::invalid_argument("--type expects r,d,l (e.g. 2,3,1), got '" + s + "'");
    return PairTypeNum(parse_rat_arg(parts[0], "--type rank"), parse_rat_arg(parts[1], "--type degree"),
                       parse_long_arg(parts[2], "--type section count"));
}

std::pair<Rat, Rat> parse_interval_arg(const std::string& s) {
    auto parts = split_csv(s);
    if (parts.size() != 2)
        throw std::invalid_argument("--interval expects lo,hi (e.g. 0,10), got '" + s + "'");
    return {parse_rat_arg(parts[0], "--interval lo"), parse_rat_arg(parts[1], "--interval hi")};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

// Shared command options, resolved after parsing.
struct Options {
    std::string type_str, interval_str, alpha_str, lin_p_str, lin_q_str;
    std::string curve_name = "P1", curve_file;
    long genus = -1, n_x = -1;
    std::string point_file, pair_file;
    long budget = -1; // -1: use the env override or the module default
    long field = 2;
    long sample = 64, seed = 0;
    long max_parts = -1;
    bool csv = false, decimal = false;
};

long resolve_budget(const Options& opt, long fallback) {
    if (opt.budget > 0) return opt.budget;
    if (const char* env = std::getenv("BNPAIRS_BUDGET")) {
        long v = parse_long_arg(env, "BNPAIRS_BUDGET");
        if (v < 1) throw std::invalid_argument("BNPAIRS_BUDGET must be positive");
        return v;
    }
    return fallback;
}

CurveData resolve_curve(const Options& opt) {
    if (!opt.curve_file.empty()) return io::curve_from_json(read_json_file(opt.curve_file));
    if (opt.genus >= 0) {
        long nx = opt.n_x >= 1 ? opt.n_x : 2 * opt.genus + 1;
        return CurveData::smooth_genus(opt.genus, nx);
    }
    if (opt.curve_name == "P1") return CurveData::p1();
    throw std::invalid_argument("unknown curve preset '" + opt.curve_name + "' (supported: P1)");
}

void add_decimal(json& obj, const std::string& key, const Rat& v) {
    obj[key + "_decimal"] = v.approx();
}

json envelope(const std::string& command, json config, json result) {
    return json{{"tool", kVersion},
                {"command", command},
                {"config", std::move(config)},
                {"result", std::move(result)}};
}

void emit_json(std::ostream& out, const json& report) { out << report.dump(2) << "\n"; }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    return q + "\"";
}

// ---- walls -----------------------------------------------------------------

int cmd_walls(const Options& opt, std::ostream& out) {
    PairTypeNum type = parse_type_arg(opt.type_str);
    CurveData curve = resolve_curve(opt);
    auto [lo, hi] = parse_interval_arg(opt.interval_str);
    ChamberReport report = chambers(type, curve, lo, hi);

    json config{{"type", io::type_to_json(type)},
                {"curve", io::curve_to_json(curve)},
                {"interval", json{{"lo", lo.str()}, {"hi", hi.str()}}}};
    json result = io::chambers_to_json(report);
    if (opt.decimal) {
        for (size_t i = 0; i < report.walls.size(); ++i)
            add_decimal(result["walls"][i], "alpha", report.walls[i].alpha);
        for (size_t i = 0; i < report.chambers.size(); ++i) {
            add_decimal(result["chambers"][i], "lo", report.chambers[i].lo);
            add_decimal(result["chambers"][i], "hi", report.chambers[i].hi);
        }
    }

    if (opt.csv) {
        out << "record,alpha,lo,hi,hi_closed,witness_r,witness_d,witness_l\n";
        for (const auto& w : report.walls)
            for (const auto& t : w.witnesses)
                out << "wall," << w.alpha.str() << ",,,," << t.r.str() << "," << t.d.str() << ","
                    << t.l << "\n";
        for (const auto& c : report.chambers)
            out << "chamber,," << c.lo.str() << "," << c.hi.str() << ","
                << (c.hi_closed ? "true" : "false") << ",,,\n";
        return 0;
    }
    emit_json(out, envelope("walls", std::move(config), std::move(result)));
    return 0;
}

// ---- check -----------------------------------------------------------------

int cmd_check(const Options& opt, std::ostream& out) {
    PairTypeNum type = parse_type_arg(opt.type_str);
    CurveData curve = resolve_curve(opt);
    Rat alpha = parse_rat_arg(opt.alpha_str, "--alpha");
    ExistenceReport rep = existence_check(type, alpha, curve);

    json config{{"type", io::type_to_json(type)},
                {"curve", io::curve_to_json(curve)},
                {"alpha", alpha.str()}};
    json result = io::existence_to_json(rep);
    if (type.r > Rat(0)) {
        result["mu_alpha"] = mu_alpha(type, alpha).str();
        if (opt.decimal) add_decimal(result, "mu_alpha", mu_alpha(type, alpha));
    }

    if (opt.csv) {
        out << "key,value\n";
        out << "feasible_semistable," << (rep.feasible_semistable ? "true" : "false") << "\n";
        out << "feasible_stable," << (rep.feasible_stable ? "true" : "false") << "\n";
        std::string v;
        for (const auto& s : rep.violated) {
            if (!v.empty()) v += ";";
            v += s;
        }
        out << "violated," << csv_escape(v) << "\n";
        return 0;
    }
    emit_json(out, envelope("check", std::move(config), std::move(result)));
    return 0;
}

// ---- jh --------------------------------------------------------------------

int cmd_jh(const Options& opt, std::ostream& out) {
    PairTypeNum type = parse_type_arg(opt.type_str);
    CurveData curve = resolve_curve(opt);
    Rat alpha = parse_rat_arg(opt.alpha_str, "--alpha");
    long parts = opt.max_parts > 0 ? opt.max_parts : default_max_parts(type, curve);
    auto decs = numerical_jh(type, alpha, curve, parts);

    json config{{"type", io::type_to_json(type)},
                {"curve", io::curve_to_json(curve)},
                {"alpha", alpha.str()},
                {"max_parts", parts}};
    json result{{"alpha", alpha.str()}, {"decompositions", io::jh_to_json(decs)}};
    if (opt.decimal) add_decimal(result, "alpha", alpha);

    if (opt.csv) {
        out << "decomposition,part,r,d,l\n";
        for (size_t i = 0; i < decs.size(); ++i)
            for (size_t p = 0; p < decs[i].size(); ++p)
                out << i << "," << p << "," << decs[i][p].r.str() << "," << decs[i][p].d.str()
                    << "," << decs[i][p].l << "\n";
        return 0;
    }
    emit_json(out, envelope("jh", std::move(config), std::move(result)));
    return 0;
}

// ---- git-check -------------------------------------------------------------

std::vector<Mat<Rat>> sample_subspaces(const git::GrassPoint& pt, long count, long seed) {
    std::vector<Mat<Rat>> out;
    if (pt.dim_v < 2) return out;
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> dim(1, pt.dim_v - 1);
    while (static_cast<long>(out.size()) < count) {
        int u = dim(rng);
        Mat<Rat> U(pt.dim_v, std::vector<Rat>(u, Rat(0)));
        for (auto& row : U)
            for (auto& x : row) x = Rat(entry(rng));
        if (rank_of(U) == u) out.push_back(std::move(U));
    }
    return out;
}

int cmd_git_check(const Options& opt, std::ostream& out) {
    git::GrassPoint pt = io::grass_from_json(read_json_file(opt.point_file));
    git::Linearization lin{parse_rat_arg(opt.lin_p_str, "--p"),
                           parse_rat_arg(opt.lin_q_str, "--q")};
    long budget = resolve_budget(opt, git::kDefaultBudget);

    json config{{"point", opt.point_file},
                {"lin", json{{"p", lin.p.str()}, {"q", lin.q_lin.str()}}},
                {"budget", budget}};
    git::HmVerdict v;
    bool exhaustive = pt.q > 0;
    if (exhaustive) {
        v = git::hm_check(pt, lin, budget);
    } else {
        if (opt.sample < 1) throw std::invalid_argument("--sample must be positive");
        config["sample"] = opt.sample;
        config["seed"] = opt.seed;
        v = git::hm_check_family(pt, lin, sample_subspaces(pt, opt.sample, opt.seed));
    }
    json result = io::hm_to_json(v);
    result["exhaustive"] = exhaustive;
    if (opt.decimal) add_decimal(result, "min_value", v.min_value);

    if (opt.csv) {
        out << "key,value\n";
        out << "kind," << verdict_kind_name(v.kind) << "\n";
        out << "min_value," << csv_escape(v.min_value.str()) << "\n";
        out << "exhaustive," << (exhaustive ? "true" : "false") << "\n";
        out << "witness_dim," << v.witness.size() << "\n";
        return 0;
    }
    emit_json(out, envelope("git-check", std::move(config), std::move(result)));
    return 0;
}

// ---- p1-check / p1-sweep ---------------------------------------------------

json search_result_json(const p1::SearchVerdict& v, bool decimal) {
    json result = io::search_to_json(v);
    if (decimal && v.min_delta) add_decimal(result, "min_delta", *v.min_delta);
    return result;
}

int cmd_p1_check(const Options& opt, std::ostream& out) {
    p1::PairP1 pair = io::pair_from_json(read_json_file(opt.pair_file));
    Rat alpha = parse_rat_arg(opt.alpha_str, "--alpha");
    long budget = resolve_budget(opt, p1::kDefaultSearchBudget);
    p1::SearchVerdict v = p1::destabilizer_search(pair, alpha, opt.field, budget);

    json config{{"pair", opt.pair_file},
                {"type", io::type_to_json(pair.type())},
                {"alpha", alpha.str()},
                {"field", opt.field},
                {"budget", budget}};
    json result = search_result_json(v, opt.decimal);

    if (opt.csv) {
        out << "key,value\n";
        out << "kind," << verdict_kind_name(v.kind) << "\n";
        out << "family_relative," << (v.family_relative ? "true" : "false") << "\n";
        out << "min_delta," << (v.min_delta ? csv_escape(v.min_delta->str()) : "") << "\n";
        out << "family_size," << v.family_size << "\n";
        for (const auto& w : v.witnesses)
            out << "witness," << csv_escape(w.type.r.str() + "," + w.type.d.str() + "," +
                                            std::to_string(w.type.l) + " delta=" + w.delta.str())
                << "\n";
        return 0;
    }
    emit_json(out, envelope("p1-check", std::move(config), std::move(result)));
    return 0;
}

int cmd_p1_sweep(const Options& opt, std::ostream& out) {
    p1::PairP1 pair = io::pair_from_json(read_json_file(opt.pair_file));
    auto [lo, hi] = parse_interval_arg(opt.interval_str);
    long budget = resolve_budget(opt, p1::kDefaultSearchBudget);
    auto entries = p1::alpha_range_report(pair, lo, hi, opt.field, budget);

    json config{{"pair", opt.pair_file},
                {"type", io::type_to_json(pair.type())},
                {"interval", json{{"lo", lo.str()}, {"hi", hi.str()}}},
                {"field", opt.field},
                {"budget", budget}};
    json result{{"entries", io::sweep_to_json(entries)}};
    if (opt.decimal)
        for (size_t i = 0; i < entries.size(); ++i) {
            json& e = result["entries"][i];
            add_decimal(e, entries[i].is_wall ? "alpha" : "sample_alpha", entries[i].alpha);
        }

    if (opt.csv) {
        out << "kind,lo,hi,hi_closed,alpha,verdict,min_delta,family_size\n";
        for (const auto& e : entries) {
            if (e.is_wall)
                out << "wall,,,," << e.alpha.str();
            else
                out << "chamber," << e.lo.str() << "," << e.hi.str() << ","
                    << (e.hi_closed ? "true" : "false") << "," << e.alpha.str();
            out << "," << verdict_kind_name(e.verdict.kind) << ","
                << (e.verdict.min_delta ? csv_escape(e.verdict.min_delta->str()) : "") << ","
                << e.verdict.family_size << "\n";
        }
        return 0;
    }
    emit_json(out, envelope("p1-sweep", std::move(config), std::move(result)));
    return 0;
}

void add_curve_flags(CLI::App* sub, Options& opt) {
    sub->add_option("--curve", opt.curve_name, "curve preset (P1)");
    sub->add_option("--curve-file", opt.curve_file, "JSON file with curve data");
    sub->add_option("--genus", opt.genus, "smooth curve of this genus (n_x defaults to 2g+1)");
    sub->add_option("--nx", opt.n_x, "bound n_X for the genus preset");
}

void add_format_flags(CLI::App* sub, Options& opt) {
    auto* csv = sub->add_flag("--csv", opt.csv, "emit CSV instead of JSON");
    sub->add_flag("--json", "emit JSON (the default)")->excludes(csv);
    sub->add_flag("--decimal", opt.decimal, "add decimal approximations next to exact values");
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"exact alpha-stability calculator for section-decorated sheaves on curves"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(0, 1);

    CLI::App* walls = app.add_subcommand("walls", "critical values and chambers for a type");
    walls->add_option("--type", opt.type_str, "numerical type r,d,l")->required();
    walls->add_option("--interval", opt.interval_str, "alpha interval lo,hi")->required();
    add_curve_flags(walls, opt);
    add_format_flags(walls, opt);

    CLI::App* check = app.add_subcommand("check", "necessary existence conditions at alpha");
    check->add_option("--type", opt.type_str, "numerical type r,d,l")->required();
    check->add_option("--alpha", opt.alpha_str, "stability parameter")->required();
    add_curve_flags(check, opt);
    add_format_flags(check, opt);

    CLI::App* jh = app.add_subcommand("jh", "numerical Jordan-Holder decompositions at alpha");
    jh->add_option("--type", opt.type_str, "numerical type r,d,l")->required();
    jh->add_option("--alpha", opt.alpha_str, "stability parameter")->required();
    jh->add_option("--max-parts", opt.max_parts, "cap on the number of factors");
    add_curve_flags(jh, opt);
    add_format_flags(jh, opt);

    CLI::App* gitc = app.add_subcommand("git-check", "Hilbert-Mumford test at a Grassmannian point");
    gitc->add_option("--point", opt.point_file, "JSON file with the point")->required();
    gitc->add_option("--p", opt.lin_p_str, "linearization weight on the quotient factor")->required();
    gitc->add_option("--q", opt.lin_q_str, "linearization weight on the section factor")->required();
    gitc->add_option("--budget", opt.budget, "enumeration budget (overrides BNPAIRS_BUDGET)");
    gitc->add_option("--sample", opt.sample, "family size for rational points");
    gitc->add_option("--seed", opt.seed, "sampling seed for rational points");
    add_format_flags(gitc, opt);

    CLI::App* p1c = app.add_subcommand("p1-check", "destabilizer search for an explicit pair");
    p1c->add_option("--pair", opt.pair_file, "JSON file with the pair")->required();
    p1c->add_option("--alpha", opt.alpha_str, "stability parameter")->required();
    p1c->add_option("--field", opt.field, "field order for section-subspace enumeration");
    p1c->add_option("--budget", opt.budget, "enumeration budget (overrides BNPAIRS_BUDGET)");
    add_format_flags(p1c, opt);

    CLI::App* p1s = app.add_subcommand("p1-sweep", "chamber-by-chamber verdicts for an explicit pair");
    p1s->add_option("--pair", opt.pair_file, "JSON file with the pair")->required();
    p1s->add_option("--interval", opt.interval_str, "alpha interval lo,hi")->required();
    p1s->add_option("--field", opt.field, "field order for section-subspace enumeration");
    p1s->add_option("--budget", opt.budget, "enumeration budget (overrides BNPAIRS_BUDGET)");
    add_format_flags(p1s, opt);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (walls->parsed()) return cmd_walls(opt, out);
        if (check->parsed()) return cmd_check(opt, out);
        if (jh->parsed()) return cmd_jh(opt, out);
        if (gitc->parsed()) return cmd_git_check(opt, out);
        if (p1c->parsed()) return cmd_p1_check(opt, out);
        if (p1s->parsed()) return cmd_p1_sweep(opt, out);
        out << app.help();
        return 0;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace bnp::cli
