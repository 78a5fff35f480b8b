// Price synthesis: the set of two-slab price profiles (bD, bN) under which
// a target strategy profile is a Nash equilibrium.
//
// Each unilateral deviation Y of player i induces the half-plane
//   bD * (x_i^D - y_i^D) + bN * (x_i^N - y_i^N) <= dissat(Y) - dissat(X)
// in price space; the admissible prices are the intersection of these
// half-planes cut with bD > 0. Regions are per player, so price
// discrimination across players is allowed.

#pragma once

#include <optional>
#include <vector>

#include "evcg/equilibrium.hpp"
#include "evcg/halfplane.hpp"
#include "evcg/model.hpp"

namespace evcg {

inline constexpr double kFeasEps = 1e-9;       // bD > 0 handled as bD >= eps
inline constexpr double kDeltaZeroTol = 1e-12;

/// Energy received and dissatisfaction incurred by one player, summed per
/// period class.
struct AggregateOutcome {
  double energy_peak = 0.0;     // x^D
  double energy_offpeak = 0.0;  // x^N
  double dissat_peak = 0.0;
  double dissat_offpeak = 0.0;

  double dissat_total() const { return dissat_peak + dissat_offpeak; }
};

AggregateOutcome aggregate_outcome(const GameInstance& game,
                                   const StrategyProfile& profile,
                                   int player);

struct DeviationVector {
  double delta_peak = 0.0;     // x^D(X) - x^D(Y)
  double delta_offpeak = 0.0;  // x^N(X) - x^N(Y)
  double gamma = 0.0;          // dissat(Y) - dissat(X)
  int player = 0;
  std::vector<int> deviation;  // alternative row; empty for abstract vectors
};

/// Deviations with no energy change are never stored as constraints: with
/// gamma >= 0 they are vacuous, with gamma < 0 they certify that no prices
/// can work.
struct DeviationSet {
  std::vector<DeviationVector> constraints;
  std::vector<DeviationVector> infeasibility_certificates;
};

/// One deviation vector per alternative row of the player, rows in
/// lexicographic order.
DeviationSet deviation_vectors(const GameInstance& game,
                               const StrategyProfile& profile, int player,
                               const EquilibriumOptions& opts = {});

/// Deviation between two aggregate outcomes with class dissatisfaction
/// evaluated on the aggregates; used for configurations stated directly in
/// outcome space rather than through a discrete instance.
DeviationVector aggregate_deviation(const DissatisfactionFn& f_peak,
                                    const DissatisfactionFn& f_offpeak,
                                    double xD, double xN, double yD,
                                    double yN);

enum class DeviationPattern {
  PeakToOffpeak,  // delta_peak > 0, delta_offpeak < 0
  OffpeakToPeak,  // delta_peak < 0, delta_offpeak > 0
  BothPositive,   // shifts into more congested periods everywhere
  BothNegative,   // shifts into less congested periods everywhere
  WithinPeak,     // off-peak energy unchanged
  WithinOffpeak,  // peak energy unchanged
};

DeviationPattern classify_pattern(const DeviationVector& v);

struct PatternReport {
  std::vector<DeviationPattern> tags;  // parallel to set.constraints
  bool has_peak_to_offpeak = false;
  bool has_offpeak_to_peak = false;
  bool has_both_positive = false;
  bool has_both_negative = false;
  bool has_within_peak = false;
  bool has_within_offpeak = false;
};

PatternReport classify_patterns(const DeviationSet& set);
PatternReport representative_deviations(const GameInstance& game,
                                        const StrategyProfile& profile,
                                        int player,
                                        const EquilibriumOptions& opts = {});

struct PriceRegion {
  geom::RegionClass classification = geom::RegionClass::Empty;
  std::optional<geom::Point2> representative;  // (bD, bN)
  std::vector<geom::HalfPlane> halfplanes;     // (coefD, coefN, rhs)
  std::vector<DeviationVector> infeasibility_certificates;

  bool empty() const {
    return classification == geom::RegionClass::Empty;
  }
  /// Membership against the stored half-planes plus the bD > 0 cut.
  bool contains(double bD, double bN, double tol = geom::kGeomTol) const;
};

PriceRegion price_region_from_deviations(const DeviationSet& set);

/// Per-player admissible region for the target profile; the prices stored
/// in the game are ignored.
PriceRegion price_region(const GameInstance& game,
                         const StrategyProfile& profile, int player,
                         const EquilibriumOptions& opts = {});

struct InducedPrices {
  std::vector<PriceRegion> regions;  // one per player, in id order
  bool feasible = false;             // every region nonempty
  std::optional<GameInstance> priced_game;  // representatives installed
  bool verified = false;             // is_nash re-check on the priced game
};

/// Synthesizes per-player prices making the target a Nash equilibrium and
/// re-verifies the result with the equilibrium oracle.
InducedPrices induce_prices(const GameInstance& game,
                            const StrategyProfile& profile,
                            const EquilibriumOptions& opts = {});

}  // namespace evcg
