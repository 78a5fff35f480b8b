#include "evcg/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace evcg {

double DissatisfactionFn::operator()(double x) const {
  switch (kind) {
    case DissatKind::None:
      return 0.0;
    case DissatKind::Linear:
      if (x >= 1.0) return 0.0;
      return std::max(0.0, alpha - beta * x);
    case DissatKind::Logistic:
      return alpha / (1.0 + std::exp(beta * (2.0 * x - 1.0)));
    case DissatKind::Custom:
      return custom(x);
  }
  return 0.0;
}

DissatisfactionFn DissatisfactionFn::none() { return {}; }

DissatisfactionFn DissatisfactionFn::linear(double alpha, double beta) {
  DissatisfactionFn f;
  f.kind = DissatKind::Linear;
  f.alpha = alpha;
  f.beta = beta;
  return f;
}

DissatisfactionFn DissatisfactionFn::logistic(double alpha, double beta) {
  DissatisfactionFn f;
  f.kind = DissatKind::Logistic;
  f.alpha = alpha;
  f.beta = beta;
  return f;
}

DissatisfactionFn DissatisfactionFn::custom_fn(
    std::function<double(double)> fn) {
  DissatisfactionFn f;
  f.kind = DissatKind::Custom;
  f.custom = std::move(fn);
  return f;
}

namespace {

void check_dissat(const DissatisfactionFn& f, const std::string& field,
                  std::vector<Violation>& out) {
  if (f.alpha < 0.0)
    out.push_back({field, "alpha must be nonnegative"});
  if ((f.kind == DissatKind::Linear || f.kind == DissatKind::Logistic) &&
      !(f.beta > 0.0))
    out.push_back({field, "beta must be positive for linear/logistic curves"});
}

}  // namespace

std::vector<Violation> validate(const GameInstance& game) {
  std::vector<Violation> out;
  if (game.periods < 1)
    out.push_back({"T", "at least one period required"});
  if (game.offpeak_periods < 1 || game.offpeak_periods > game.periods)
    out.push_back({"T_offpeak", "must satisfy 1 <= T_offpeak <= T"});
  if (static_cast<int>(game.capacities.size()) != game.periods)
    out.push_back({"capacities", "length must equal T"});
  for (std::size_t t = 0; t < game.capacities.size(); ++t) {
    if (!(game.capacities[t] >= 1.0))
      out.push_back({"capacities[" + std::to_string(t) + "]",
                     "every P_t must be at least 1"});
  }
  if (game.players.empty())
    out.push_back({"players", "at least one player required"});
  for (const Player& p : game.players) {
    const std::string who = "players[" + std::to_string(p.id) + "]";
    if (p.demand < 1 || p.demand > game.periods)
      out.push_back({who + ".d", "demand must satisfy 1 <= d <= T"});
    if (p.rating != 1.0)
      out.push_back({who + ".r", "rating is fixed at 1 kW"});
    check_dissat(p.f_peak, who + ".f_peak", out);
    check_dissat(p.f_offpeak, who + ".f_offpeak", out);
    if (!(p.price_peak > p.price_offpeak))
      out.push_back({who + ".bD",
                     "peak price does not exceed off-peak price "
                     "(default ordering, not enforced)",
                     /*warning=*/true});
  }
  return out;
}

std::vector<Violation> validate_profile(const GameInstance& game,
                                        const StrategyProfile& profile) {
  std::vector<Violation> out;
  if (profile.n() != game.n()) {
    out.push_back({"profile", "row count must equal player count"});
    return out;
  }
  for (int i = 0; i < game.n(); ++i) {
    const auto& row = profile.rows[i];
    const std::string who = "profile[" + std::to_string(i) + "]";
    if (static_cast<int>(row.size()) != game.periods) {
      out.push_back({who, "row length must equal T"});
      continue;
    }
    int sum = 0;
    bool binary = true;
    for (int v : row) {
      if (v != 0 && v != 1) binary = false;
      sum += v;
    }
    if (!binary) out.push_back({who, "entries must be 0 or 1"});
    if (sum != game.players[i].demand)
      out.push_back({who, "row sum must equal the player's demand"});
  }
  return out;
}

namespace {

void check_index(const GameInstance& game, const StrategyProfile& profile,
                 int player, int t) {
  if (player < 0 || player >= game.n())
    throw std::out_of_range("player index out of range");
  if (t < 0 || t >= game.periods)
    throw std::out_of_range("period index out of range");
  if (profile.n() != game.n() ||
      static_cast<int>(profile.rows[player].size()) != game.periods)
    throw std::invalid_argument("profile shape does not match game");
}

}  // namespace

double period_load(const GameInstance& game, const StrategyProfile& profile,
                   int t) {
  double load = 0.0;
  for (int k = 0; k < game.n(); ++k)
    if (profile.rows[k][t]) load += game.players[k].rating;
  return load;
}

double period_energy(const GameInstance& game, const StrategyProfile& profile,
                     int player, int t) {
  check_index(game, profile, player, t);
  if (!profile.rows[player][t]) return 0.0;
  const double load = period_load(game, profile, t);
  const double cap = game.capacities[t];
  const double r = game.players[player].rating;
  if (load > cap) return cap * r / load;  // congestion is strict
  return r;
}

double period_dissatisfaction(const GameInstance& game,
                              const StrategyProfile& profile, int player,
                              int t) {
  check_index(game, profile, player, t);
  if (!profile.rows[player][t]) return 0.0;
  const double load = period_load(game, profile, t);
  const double cap = game.capacities[t];
  if (!(load > cap)) return 0.0;
  return game.dissat(game.players[player], t)(cap / load);
}

CostBreakdown player_cost(const GameInstance& game,
                          const StrategyProfile& profile, int player) {
  check_index(game, profile, player, 0);
  CostBreakdown out;
  out.per_period.resize(game.periods);
  for (int t = 0; t < game.periods; ++t) {
    PeriodCost& pc = out.per_period[t];
    pc.load = period_load(game, profile, t);
    const double cap = game.capacities[t];
    if (pc.load > cap) pc.allocation = cap / pc.load;
    pc.energy = period_energy(game, profile, player, t);
    pc.direct = game.price(game.players[player], t) * pc.energy;
    pc.dissat = period_dissatisfaction(game, profile, player, t);
    out.total_direct += pc.direct;
    out.total_dissat += pc.dissat;
  }
  out.total = out.total_direct + out.total_dissat;
  return out;
}

double player_total_cost(const GameInstance& game,
                         const StrategyProfile& profile, int player) {
  double total = 0.0;
  const Player& p = game.players[player];
  const auto& row = profile.rows[player];
  for (int t = 0; t < game.periods; ++t) {
    if (!row[t]) continue;
    const double load = period_load(game, profile, t);
    const double cap = game.capacities[t];
    if (load > cap) {
      const double x = cap / load;
      total += game.price(p, t) * x * p.rating + game.dissat(p, t)(x);
    } else {
      total += game.price(p, t) * p.rating;
    }
  }
  return total;
}

}  // namespace evcg
