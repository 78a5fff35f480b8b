// Scenario/profile JSON formats and result serializers.
//
// A scenario file carries either a discrete game
//   {"T", "T_offpeak", "capacities", "players": [{"d", "r", "bD", "bN",
//    "f_peak": {"kind", "alpha", "beta"}, "f_offpeak": {...}}]}
// or a continuous game
//   {"n", "M", "M_D", "M_N", "bD", "bN", "aD", "aN", "rD", "rN"},
// never both. Profiles are arrays of T-length 0/1 arrays.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "evcg/cevgame.hpp"
#include "evcg/equilibrium.hpp"
#include "evcg/herding.hpp"
#include "evcg/model.hpp"
#include "evcg/pricing.hpp"

namespace evcg::io {

class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::optional<GameInstance> discrete;
  std::optional<ContinuousGame> continuous;
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const Scenario& s);

StrategyProfile parse_profile(const nlohmann::json& j);
StrategyProfile load_profile(const std::string& path);
nlohmann::json profile_to_json(const StrategyProfile& p);

nlohmann::json violations_to_json(const std::vector<Violation>& v);
nlohmann::json cost_table_json(const GameInstance& game,
                               const StrategyProfile& profile);
nlohmann::json deviation_report_to_json(const DeviationReport& r);
nlohmann::json equilibrium_set_to_json(const EquilibriumSet& set);
nlohmann::json threshold_to_json(const ThresholdResult& r);
nlohmann::json price_region_to_json(const PriceRegion& region);
nlohmann::json induced_prices_to_json(const InducedPrices& result);
nlohmann::json continuous_summary_json(const ContinuousGame& game);
nlohmann::json cce_scan_to_json(const CceScanResult& scan);

/// Fixed 12-significant-digit formatting used for CSV cells.
std::string format_double(double v);

std::string cost_table_csv(const GameInstance& game,
                           const StrategyProfile& profile);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string threshold_curve_csv(const DissatisfactionFn& f, double bD,
                                double bN, int samples = 200);

}  // namespace evcg::io
