// Herding analysis: the congestion threshold below which every player
// abandoning the all-off-peak profile becomes profitable.
//
// Under the homogeneous herding profile every off-peak period carries the
// same allocation ratio x = min(1, P/n). A player gains by moving periods
// into the empty peak slots exactly when f(x) >= bD - bN*x, and the gain
// per moved period is constant, so the comparison is independent of how
// many periods move.

#pragma once

#include <functional>
#include <vector>

#include "evcg/equilibrium.hpp"
#include "evcg/model.hpp"

namespace evcg {

enum class ThresholdKind { AlwaysStable, AlwaysDeviated, Threshold };

struct ThresholdResult {
  ThresholdKind kind = ThresholdKind::AlwaysStable;
  double x_hat = 0.0;  // meaningful only when kind == Threshold
  double f_at_0 = 0.0;
  double f_at_1 = 0.0;
  double rhs_at_0 = 0.0;  // bD
  double rhs_at_1 = 0.0;  // bD - bN
};

inline constexpr double kRootTol = 1e-10;

/// Allocation ratio under the homogeneous herding profile, capped at 1
/// since load <= capacity means no congestion.
double herding_x(int n, double capacity);

/// Deviation condition f(x) >= bD - bN*x at congestion level x; the
/// threshold point itself counts as deviated.
bool deviation_test(const std::function<double(double)>& f, double x,
                    double bD, double bN);
bool deviation_test(const DissatisfactionFn& f, double x, double bD,
                    double bN);

/// Threshold for f(x) = alpha - beta*x. Requires beta > 0 and
/// bD > bN >= 0. Below the threshold herding is deviated; alpha <= bD
/// yields stability everywhere on (0,1).
ThresholdResult linear_threshold(double alpha, double beta, double bD,
                                 double bN);

/// Threshold for f(x) = alpha / (1 + e^{beta(2x-1)}) via bisection on
/// (0,1) to kRootTol. Requires alpha, beta > 0 and bD > bN >= 0; bD >= alpha
/// yields stability everywhere.
ThresholdResult logistic_threshold(double alpha, double beta, double bD,
                                   double bN);

/// Maximal subintervals of (0,1) where the deviation condition holds, for
/// arbitrary curves (a single threshold need not exist). Sign changes on a
/// uniform grid are refined by bisection.
struct DeviationInterval {
  double lo = 0.0;
  double hi = 0.0;
};
std::vector<DeviationInterval> scan_deviation_region(
    const std::function<double(double)>& f, double bD, double bN,
    int grid_points = 10'000);

/// Homogeneous sweep template: n identical players with demand equal to
/// the off-peak period count, uniform capacity.
struct HerdingTemplate {
  int periods = 0;
  int offpeak_periods = 0;
  double capacity = 1.0;
  Player player;  // demand must equal offpeak_periods
};

struct SweepRow {
  int n = 0;
  double x = 0.0;
  bool herding_is_nash = false;
  bool threshold_prediction = false;
};

GameInstance homogeneous_instance(const HerdingTemplate& tpl, int n);
StrategyProfile herding_profile(const GameInstance& game);

/// Runs the full Nash oracle on the herding profile for each n and pairs it
/// with the threshold prediction.
std::vector<SweepRow> herding_sweep(const HerdingTemplate& tpl, int n_from,
                                    int n_to,
                                    const EquilibriumOptions& opts = {});

}  // namespace evcg
