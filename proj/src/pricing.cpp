#include "evcg/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace evcg {

AggregateOutcome aggregate_outcome(const GameInstance& game,
                                   const StrategyProfile& profile,
                                   int player) {
  AggregateOutcome out;
  for (int t = 0; t < game.periods; ++t) {
    const double e = period_energy(game, profile, player, t);
    const double f = period_dissatisfaction(game, profile, player, t);
    if (game.is_offpeak(t)) {
      out.energy_offpeak += e;
      out.dissat_offpeak += f;
    } else {
      out.energy_peak += e;
      out.dissat_peak += f;
    }
  }
  return out;
}

namespace {

void push_deviation(DeviationSet& set, DeviationVector v) {
  if (std::abs(v.delta_peak) <= kDeltaZeroTol &&
      std::abs(v.delta_offpeak) <= kDeltaZeroTol) {
    if (v.gamma < -kDeltaZeroTol)
      set.infeasibility_certificates.push_back(std::move(v));
    // vacuous otherwise
    return;
  }
  set.constraints.push_back(std::move(v));
}

}  // namespace

DeviationSet deviation_vectors(const GameInstance& game,
                               const StrategyProfile& profile, int player,
                               const EquilibriumOptions& opts) {
  const auto rows =
      enumerate_strategies(game.periods, game.players[player].demand);
  if (rows.size() > opts.enumeration_cap)
    throw CapExceededError(rows.size());

  const AggregateOutcome at_x = aggregate_outcome(game, profile, player);
  DeviationSet set;
  StrategyProfile scratch = profile;
  for (const auto& row : rows) {
    if (row == profile.rows[player]) continue;
    scratch.rows[player] = row;
    const AggregateOutcome at_y = aggregate_outcome(game, scratch, player);
    DeviationVector v;
    v.player = player;
    v.deviation = row;
    v.delta_peak = at_x.energy_peak - at_y.energy_peak;
    v.delta_offpeak = at_x.energy_offpeak - at_y.energy_offpeak;
    v.gamma = at_y.dissat_total() - at_x.dissat_total();
    push_deviation(set, std::move(v));
  }
  return set;
}

DeviationVector aggregate_deviation(const DissatisfactionFn& f_peak,
                                    const DissatisfactionFn& f_offpeak,
                                    double xD, double xN, double yD,
                                    double yN) {
  DeviationVector v;
  v.delta_peak = xD - yD;
  v.delta_offpeak = xN - yN;
  v.gamma = (f_peak(yD) + f_offpeak(yN)) - (f_peak(xD) + f_offpeak(xN));
  return v;
}

DeviationPattern classify_pattern(const DeviationVector& v) {
  const bool peak_zero = std::abs(v.delta_peak) <= kDeltaZeroTol;
  const bool offpeak_zero = std::abs(v.delta_offpeak) <= kDeltaZeroTol;
  if (peak_zero && offpeak_zero)
    throw std::invalid_argument("zero deviation has no pattern");
  if (offpeak_zero) return DeviationPattern::WithinPeak;
  if (peak_zero) return DeviationPattern::WithinOffpeak;
  if (v.delta_peak > 0.0)
    return v.delta_offpeak > 0.0 ? DeviationPattern::BothPositive
                                 : DeviationPattern::PeakToOffpeak;
  return v.delta_offpeak > 0.0 ? DeviationPattern::OffpeakToPeak
                               : DeviationPattern::BothNegative;
}

PatternReport classify_patterns(const DeviationSet& set) {
  PatternReport report;
  report.tags.reserve(set.constraints.size());
  for (const DeviationVector& v : set.constraints) {
    const DeviationPattern p = classify_pattern(v);
    report.tags.push_back(p);
    switch (p) {
      case DeviationPattern::PeakToOffpeak:
        report.has_peak_to_offpeak = true;
        break;
      case DeviationPattern::OffpeakToPeak:
        report.has_offpeak_to_peak = true;
        break;
      case DeviationPattern::BothPositive:
        report.has_both_positive = true;
        break;
      case DeviationPattern::BothNegative:
        report.has_both_negative = true;
        break;
      case DeviationPattern::WithinPeak:
        report.has_within_peak = true;
        break;
      case DeviationPattern::WithinOffpeak:
        report.has_within_offpeak = true;
        break;
    }
  }
  return report;
}

PatternReport representative_deviations(const GameInstance& game,
                                        const StrategyProfile& profile,
                                        int player,
                                        const EquilibriumOptions& opts) {
  return classify_patterns(deviation_vectors(game, profile, player, opts));
}

bool PriceRegion::contains(double bD, double bN, double tol) const {
  if (!infeasibility_certificates.empty()) return false;
  if (!(bD >= kFeasEps)) return false;  // bD > 0 is an open cut
  return geom::contains(halfplanes, {bD, bN}, tol);
}

PriceRegion price_region_from_deviations(const DeviationSet& set) {
  PriceRegion region;
  region.infeasibility_certificates = set.infeasibility_certificates;
  region.halfplanes.reserve(set.constraints.size());
  for (const DeviationVector& v : set.constraints)
    region.halfplanes.push_back({v.delta_peak, v.delta_offpeak, v.gamma});

  if (!region.infeasibility_certificates.empty()) {
    region.classification = geom::RegionClass::Empty;
    return region;
  }

  std::vector<geom::HalfPlane> system = region.halfplanes;
  system.push_back({-1.0, 0.0, -kFeasEps});  // bD > 0
  const geom::RegionSummary summary = geom::classify_region(system);
  region.classification = summary.classification;
  region.representative = summary.representative;
  return region;
}

PriceRegion price_region(const GameInstance& game,
                         const StrategyProfile& profile, int player,
                         const EquilibriumOptions& opts) {
  return price_region_from_deviations(
      deviation_vectors(game, profile, player, opts));
}

InducedPrices induce_prices(const GameInstance& game,
                            const StrategyProfile& profile,
                            const EquilibriumOptions& opts) {
  InducedPrices out;
  out.regions.reserve(game.n());
  out.feasible = true;
  for (int i = 0; i < game.n(); ++i) {
    out.regions.push_back(price_region(game, profile, i, opts));
    if (out.regions.back().empty()) out.feasible = false;
  }
  if (!out.feasible) return out;

  GameInstance priced = game;
  for (int i = 0; i < game.n(); ++i) {
    const auto& rep = *out.regions[i].representative;
    priced.players[i].price_peak = rep[0];
    priced.players[i].price_offpeak = rep[1];
  }
  out.verified = is_nash(priced, profile, nullptr, opts);
  out.priced_game = std::move(priced);
  return out;
}

}  // namespace evcg
