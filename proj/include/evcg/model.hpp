// Discrete EV charging game: data model, per-period energy allocation and
// cost evaluation.
//
// A game has T charging periods, the first `offpeak_periods` of which are
// billed at the off-peak rate. Each player commits to a binary T-vector
// (a strategy row) with exactly `demand` ones. When total plugged rating in
// a period exceeds the period capacity, power is shared proportionally and
// players incur a dissatisfaction cost f(x) on the allocation ratio x.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace evcg {

enum class DissatKind { None, Linear, Logistic, Custom };

/// Dissatisfaction curve f(x) on the allocation ratio x = P_t / load.
/// Linear:   f(x) = max(0, alpha - beta*x) for x < 1, 0 for x >= 1.
/// Logistic: f(x) = alpha / (1 + e^{beta*(2x-1)}).
/// Custom holds an arbitrary handle for analysis routines; it is never
/// serialized.
struct DissatisfactionFn {
  DissatKind kind = DissatKind::None;
  double alpha = 0.0;
  double beta = 0.0;
  std::function<double(double)> custom;

  double operator()(double x) const;

  static DissatisfactionFn none();
  static DissatisfactionFn linear(double alpha, double beta);
  static DissatisfactionFn logistic(double alpha, double beta);
  static DissatisfactionFn custom_fn(std::function<double(double)> f);
};

struct Player {
  int id = 0;
  int demand = 1;           // periods of charge required (row sum)
  double rating = 1.0;      // power rating in kW; the model fixes this at 1
  double price_peak = 0.0;  // b^D
  double price_offpeak = 0.0;  // b^N
  DissatisfactionFn f_peak;
  DissatisfactionFn f_offpeak;
};

struct GameInstance {
  int periods = 0;          // T
  int offpeak_periods = 0;  // first offpeak_periods indices are off-peak
  std::vector<double> capacities;  // P_t, one per period
  std::vector<Player> players;

  int n() const { return static_cast<int>(players.size()); }
  bool is_offpeak(int t) const { return t < offpeak_periods; }
  double price(const Player& p, int t) const {
    return is_offpeak(t) ? p.price_offpeak : p.price_peak;
  }
  const DissatisfactionFn& dissat(const Player& p, int t) const {
    return is_offpeak(t) ? p.f_offpeak : p.f_peak;
  }
};

/// n x T binary charging matrix; row i is player i's strategy.
struct StrategyProfile {
  std::vector<std::vector<int>> rows;

  int n() const { return static_cast<int>(rows.size()); }
  bool operator==(const StrategyProfile&) const = default;
};

struct Violation {
  std::string field;
  std::string rule;
  bool warning = false;  // warnings flag non-structural conventions
};

/// Diagnoses invariant breaches; never throws. Empty iff the instance is
/// well formed. The peak>off-peak price ordering is reported as a warning
/// only, since price synthesis explores the whole price plane.
std::vector<Violation> validate(const GameInstance& game);

/// Checks a profile against a game: row count, row length, binary entries,
/// and row sums equal to each player's demand.
std::vector<Violation> validate_profile(const GameInstance& game,
                                        const StrategyProfile& profile);

/// Total plugged rating in period t.
double period_load(const GameInstance& game, const StrategyProfile& profile,
                   int t);

/// Energy received by player i in period t: 0 when unplugged, the full
/// rating when load <= capacity, and the proportional share
/// P_t * r_i / load under congestion (load strictly above capacity).
double period_energy(const GameInstance& game, const StrategyProfile& profile,
                     int player, int t);

/// Dissatisfaction incurred by player i in period t; nonzero only when
/// plugged and congested, in which case it is f(P_t / load) for the
/// period-class curve.
double period_dissatisfaction(const GameInstance& game,
                              const StrategyProfile& profile, int player,
                              int t);

struct PeriodCost {
  double load = 0.0;
  std::optional<double> allocation;  // P_t / load when congested, else empty
  double energy = 0.0;
  double direct = 0.0;
  double dissat = 0.0;
};

struct CostBreakdown {
  std::vector<PeriodCost> per_period;
  double total_direct = 0.0;
  double total_dissat = 0.0;
  double total = 0.0;
};

/// Per-period and total cost for one player: direct cost bills the energy
/// actually received at the period-class price, plus dissatisfaction.
CostBreakdown player_cost(const GameInstance& game,
                          const StrategyProfile& profile, int player);

/// Total cost shortcut used by equilibrium scans.
double player_total_cost(const GameInstance& game,
                         const StrategyProfile& profile, int player);

}  // namespace evcg
