#pragma once

#include "bnp/core.hpp"
#include "bnp/git.hpp"
#include "bnp/p1.hpp"
#include "bnp/stability.hpp"
#include "bnp/walls.hpp"

#include <json.hpp>

namespace bnp::io {

// ordered_json keeps insertion order, so emitted reports are byte-stable
using json = nlohmann::ordered_json;

json rat_to_json(const Rat& r); // always the exact "p/q" (or "p") string
Rat rat_from_json(const json& j);

json curve_to_json(const CurveData& c);
CurveData curve_from_json(const json& j);

json type_to_json(const PairTypeNum& t);
PairTypeNum type_from_json(const json& j);

json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

json existence_to_json(const ExistenceReport& r);
ExistenceReport existence_from_json(const json& j);

json wall_to_json(const Wall& w);
Wall wall_from_json(const json& j);

json chambers_to_json(const ChamberReport& r);
ChamberReport chambers_from_json(const json& j);

json jh_to_json(const std::vector<std::vector<PairTypeNum>>& decs);
std::vector<std::vector<PairTypeNum>> jh_from_json(const json& j);

json grass_to_json(const git::GrassPoint& p);
git::GrassPoint grass_from_json(const json& j);

json hm_to_json(const git::HmVerdict& v);
git::HmVerdict hm_from_json(const json& j);

json pair_to_json(const p1::PairP1& p);
p1::PairP1 pair_from_json(const json& j);

json search_to_json(const p1::SearchVerdict& v);
p1::SearchVerdict search_from_json(const json& j);

json sweep_to_json(const std::vector<p1::SweepEntry>& entries);
std::vector<p1::SweepEntry> sweep_from_json(const json& j);

} // namespace bnp::io
