#include "evcg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace evcg::io {

using nlohmann::json;

namespace {

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError("missing or non-numeric field \"" + key + "\"");
  return j[key].get<double>();
}

int require_int(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParseError("missing or non-integer field \"" + key + "\"");
  return j[key].get<int>();
}

DissatisfactionFn parse_dissat(const json& j, const std::string& where) {
  if (!j.is_object())
    throw ParseError(where + " must be an object");
  const std::string kind = j.value("kind", std::string());
  if (kind == "none") return DissatisfactionFn::none();
  const double alpha = require_number(j, "alpha");
  const double beta = require_number(j, "beta");
  if (kind == "linear") return DissatisfactionFn::linear(alpha, beta);
  if (kind == "logistic") return DissatisfactionFn::logistic(alpha, beta);
  throw ParseError(where + ": unknown dissatisfaction kind \"" + kind +
                   "\" (expected none|linear|logistic)");
}

json dissat_to_json(const DissatisfactionFn& f) {
  switch (f.kind) {
    case DissatKind::None:
      return {{"kind", "none"}};
    case DissatKind::Linear:
      return {{"kind", "linear"}, {"alpha", f.alpha}, {"beta", f.beta}};
    case DissatKind::Logistic:
      return {{"kind", "logistic"}, {"alpha", f.alpha}, {"beta", f.beta}};
    case DissatKind::Custom:
      break;
  }
  throw ParseError("custom dissatisfaction functions are not serializable");
}

GameInstance parse_discrete(const json& j) {
  GameInstance game;
  game.periods = require_int(j, "T");
  game.offpeak_periods = require_int(j, "T_offpeak");
  if (!j.contains("capacities") || !j["capacities"].is_array())
    throw ParseError("missing capacities array");
  for (const json& c : j["capacities"]) {
    if (!c.is_number()) throw ParseError("capacities must be numeric");
    game.capacities.push_back(c.get<double>());
  }
  if (!j["players"].is_array() || j["players"].empty())
    throw ParseError("players must be a non-empty array");
  int id = 0;
  for (const json& pj : j["players"]) {
    Player p;
    p.id = id++;
    p.demand = require_int(pj, "d");
    p.rating = pj.contains("r") ? require_number(pj, "r") : 1.0;
    p.price_peak = require_number(pj, "bD");
    p.price_offpeak = require_number(pj, "bN");
    p.f_peak = parse_dissat(pj.contains("f_peak") ? pj["f_peak"] : json(),
                            "f_peak");
    p.f_offpeak = parse_dissat(
        pj.contains("f_offpeak") ? pj["f_offpeak"] : json(), "f_offpeak");
    game.players.push_back(std::move(p));
  }
  return game;
}

ContinuousGame parse_continuous(const json& j) {
  ContinuousGame game;
  game.n = require_int(j, "n");
  game.M = require_number(j, "M");
  game.M_D = require_number(j, "M_D");
  game.M_N = require_number(j, "M_N");
  game.bD = require_number(j, "bD");
  game.bN = require_number(j, "bN");
  game.aD = require_number(j, "aD");
  game.aN = require_number(j, "aN");
  game.rD = j.contains("rD") ? require_number(j, "rD") : 0.0;
  game.rN = j.contains("rN") ? require_number(j, "rN") : 0.0;
  if (game.n < 1) throw ParseError("n must be at least 1");
  if (!(game.M > 0.0 && game.M_D > 0.0 && game.M_N > 0.0))
    throw ParseError("M, M_D and M_N must be positive");
  return game;
}

const char* classification_name(geom::RegionClass c) {
  switch (c) {
    case geom::RegionClass::Empty:
      return "empty";
    case geom::RegionClass::Point:
      return "point";
    case geom::RegionClass::LineSegment:
      return "line_segment";
    case geom::RegionClass::Polyhedron:
      return "polyhedron";
  }
  return "unknown";
}

json deviation_vector_to_json(const DeviationVector& v) {
  json out{{"player", v.player},
           {"deltaD", v.delta_peak},
           {"deltaN", v.delta_offpeak},
           {"gamma", v.gamma}};
  if (!v.deviation.empty()) out["deviation"] = v.deviation;
  return out;
}

}  // namespace

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");
  const bool discrete = j.contains("players");
  const bool continuous = j.contains("M_D") || j.contains("aD");
  if (discrete == continuous)
    throw ParseError(
        "scenario must contain exactly one of a discrete game "
        "(\"players\") or a continuous game (\"M_D\", \"aD\", ...)");
  Scenario s;
  if (discrete)
    s.discrete = parse_discrete(j);
  else
    s.continuous = parse_continuous(j);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_scenario(j);
}

json scenario_to_json(const Scenario& s) {
  if (s.discrete) {
    const GameInstance& g = *s.discrete;
    json players = json::array();
    for (const Player& p : g.players) {
      players.push_back({{"d", p.demand},
                         {"r", p.rating},
                         {"bD", p.price_peak},
                         {"bN", p.price_offpeak},
                         {"f_peak", dissat_to_json(p.f_peak)},
                         {"f_offpeak", dissat_to_json(p.f_offpeak)}});
    }
    return {{"T", g.periods},
            {"T_offpeak", g.offpeak_periods},
            {"capacities", g.capacities},
            {"players", players}};
  }
  if (s.continuous) {
    const ContinuousGame& g = *s.continuous;
    return {{"n", g.n},   {"M", g.M},   {"M_D", g.M_D}, {"M_N", g.M_N},
            {"bD", g.bD}, {"bN", g.bN}, {"aD", g.aD},   {"aN", g.aN},
            {"rD", g.rD}, {"rN", g.rN}};
  }
  throw ParseError("empty scenario");
}

StrategyProfile parse_profile(const json& j) {
  if (!j.is_array()) throw ParseError("profile must be an array of rows");
  StrategyProfile p;
  for (const json& row : j) {
    if (!row.is_array()) throw ParseError("profile rows must be arrays");
    std::vector<int> r;
    for (const json& v : row) {
      if (!v.is_number_integer())
        throw ParseError("profile entries must be integers");
      const int b = v.get<int>();
      if (b != 0 && b != 1) throw ParseError("profile entries must be 0 or 1");
      r.push_back(b);
    }
    p.rows.push_back(std::move(r));
  }
  return p;
}

StrategyProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open profile file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_profile(j);
}

json profile_to_json(const StrategyProfile& p) {
  json out = json::array();
  for (const auto& row : p.rows) out.push_back(row);
  return out;
}

json violations_to_json(const std::vector<Violation>& v) {
  json out = json::array();
  for (const Violation& item : v)
    out.push_back({{"field", item.field},
                   {"rule", item.rule},
                   {"warning", item.warning}});
  return out;
}

json cost_table_json(const GameInstance& game,
                     const StrategyProfile& profile) {
  json players = json::array();
  for (int i = 0; i < game.n(); ++i) {
    const CostBreakdown b = player_cost(game, profile, i);
    json periods = json::array();
    for (int t = 0; t < game.periods; ++t) {
      const PeriodCost& pc = b.per_period[t];
      json row{{"period", t},
               {"load", pc.load},
               {"energy", pc.energy},
               {"direct", pc.direct},
               {"dissat", pc.dissat}};
      if (pc.allocation)
        row["x"] = *pc.allocation;
      else
        row["x"] = "uncongested";
      periods.push_back(std::move(row));
    }
    players.push_back({{"player", i},
                       {"per_period", periods},
                       {"total_direct", b.total_direct},
                       {"total_dissat", b.total_dissat},
                       {"total", b.total}});
  }
  return {{"players", players}};
}

json deviation_report_to_json(const DeviationReport& r) {
  return {{"player", r.player},
          {"current_cost", r.current_cost},
          {"best_row", r.best_row},
          {"best_cost", r.best_cost},
          {"improving", r.improving}};
}

json equilibrium_set_to_json(const EquilibriumSet& set) {
  json profiles = json::array();
  for (const ClassifiedProfile& cp : set.profiles) {
    profiles.push_back(
        {{"matrix", profile_to_json(cp.profile)},
         {"classification", cp.classification == ProfileClass::Distributed
                                ? "distributed"
                                : "non_distributed"},
         {"herding", cp.herding}});
  }
  return {{"count", set.profiles.size()}, {"profiles", profiles}};
}

json threshold_to_json(const ThresholdResult& r) {
  json out{{"f_at_0", r.f_at_0},
           {"f_at_1", r.f_at_1},
           {"rhs_at_0", r.rhs_at_0},
           {"rhs_at_1", r.rhs_at_1}};
  switch (r.kind) {
    case ThresholdKind::AlwaysStable:
      out["kind"] = "always_stable";
      break;
    case ThresholdKind::AlwaysDeviated:
      out["kind"] = "always_deviated";
      break;
    case ThresholdKind::Threshold:
      out["kind"] = "threshold";
      out["x_hat"] = r.x_hat;
      break;
  }
  return out;
}

json price_region_to_json(const PriceRegion& region) {
  json halfplanes = json::array();
  for (const geom::HalfPlane& h : region.halfplanes)
    halfplanes.push_back({{"coefD", h.a}, {"coefN", h.b}, {"rhs", h.c}});
  json certificates = json::array();
  for (const DeviationVector& v : region.infeasibility_certificates)
    certificates.push_back(deviation_vector_to_json(v));
  json out{{"classification", classification_name(region.classification)},
           {"halfplanes", halfplanes},
           {"infeasibility_certificates", certificates}};
  if (region.representative)
    out["representative"] = {{"bD", (*region.representative)[0]},
                             {"bN", (*region.representative)[1]}};
  else
    out["representative"] = nullptr;
  return out;
}

json induced_prices_to_json(const InducedPrices& result) {
  json regions = json::array();
  for (std::size_t i = 0; i < result.regions.size(); ++i) {
    json r = price_region_to_json(result.regions[i]);
    r["player"] = i;
    regions.push_back(std::move(r));
  }
  return {{"feasible", result.feasible},
          {"verified", result.verified},
          {"regions", regions}};
}

json continuous_summary_json(const ContinuousGame& game) {
  return {{"n", game.n},     {"M", game.M},     {"M_D", game.M_D},
          {"M_N", game.M_N}, {"bD", game.bD},   {"bN", game.bN},
          {"aD", game.aD},   {"aN", game.aN},   {"W", game.W()},
          {"A", game.A()},   {"B", game.B()},   {"R", game.R()},
          {"eta", game.eta()}};
}

json cce_scan_to_json(const CceScanResult& scan) {
  return {{"feasible_count", scan.feasible.size()},
          {"q_star", scan.q_star},
          {"grid_step", scan.grid_step},
          {"interior", scan.interior},
          {"coincides", scan.coincides},
          {"max_g1_deviation", scan.max_g1_deviation}};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string cost_table_csv(const GameInstance& game,
                           const StrategyProfile& profile) {
  std::ostringstream out;
  out << "player,period,load,x,energy,direct,dissat\n";
  for (int i = 0; i < game.n(); ++i) {
    const CostBreakdown b = player_cost(game, profile, i);
    for (int t = 0; t < game.periods; ++t) {
      const PeriodCost& pc = b.per_period[t];
      out << i << ',' << t << ',' << format_double(pc.load) << ',';
      if (pc.allocation)
        out << format_double(*pc.allocation);
      else
        out << "uncongested";
      out << ',' << format_double(pc.energy) << ','
          << format_double(pc.direct) << ',' << format_double(pc.dissat)
          << '\n';
    }
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "n,x,herding_is_nash,threshold_prediction\n";
  for (const SweepRow& r : rows)
    out << r.n << ',' << format_double(r.x) << ','
        << (r.herding_is_nash ? 1 : 0) << ','
        << (r.threshold_prediction ? 1 : 0) << '\n';
  return out.str();
}

std::string threshold_curve_csv(const DissatisfactionFn& f, double bD,
                                double bN, int samples) {
  std::ostringstream out;
  out << "x,f(x),bD-bN*x\n";
  for (int i = 0; i <= samples; ++i) {
    const double x = static_cast<double>(i) / samples;
    out << format_double(x) << ',' << format_double(f(x)) << ','
        << format_double(bD - bN * x) << '\n';
  }
  return out.str();
}

}  // namespace evcg::io
