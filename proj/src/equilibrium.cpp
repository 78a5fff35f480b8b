#include "evcg/equilibrium.hpp"

#include <algorithm>
#include <stdexcept>

namespace evcg {

std::vector<std::vector<int>> enumerate_strategies(int periods, int demand) {
  if (demand < 0 || demand > periods)
    throw std::invalid_argument("demand must satisfy 0 <= d <= T");
  std::vector<int> row(periods, 0);
  std::fill(row.end() - demand, row.end(), 1);  // lexicographically smallest
  std::vector<std::vector<int>> out;
  do {
    out.push_back(row);
  } while (std::next_permutation(row.begin(), row.end()));
  return out;
}

bool is_distributed_row(const std::vector<int>& row, int offpeak_periods) {
  bool offpeak = false, peak = false;
  for (int t = 0; t < static_cast<int>(row.size()); ++t) {
    if (!row[t]) continue;
    (t < offpeak_periods ? offpeak : peak) = true;
  }
  return offpeak && peak;
}

ProfileClass classify_profile(const GameInstance& game,
                              const StrategyProfile& profile) {
  for (const auto& row : profile.rows)
    if (is_distributed_row(row, game.offpeak_periods))
      return ProfileClass::Distributed;
  return ProfileClass::NonDistributed;
}

bool is_herding_profile(const GameInstance& game,
                        const StrategyProfile& profile) {
  for (const auto& row : profile.rows)
    for (int t = game.offpeak_periods; t < game.periods; ++t)
      if (row[t]) return false;
  return true;
}

DeviationReport best_response(const GameInstance& game,
                              const StrategyProfile& profile, int player,
                              const EquilibriumOptions& opts) {
  if (player < 0 || player >= game.n())
    throw std::out_of_range("player index out of range");
  DeviationReport report;
  report.player = player;
  report.current_cost = player_total_cost(game, profile, player);

  StrategyProfile scratch = profile;
  bool first = true;
  for (auto& row : enumerate_strategies(game.periods,
                                        game.players[player].demand)) {
    scratch.rows[player] = row;
    const double cost = player_total_cost(game, scratch, player);
    if (first || cost < report.best_cost) {
      report.best_cost = cost;
      report.best_row = std::move(row);
      first = false;
    }
  }
  report.improving =
      report.best_cost < report.current_cost - opts.tie_epsilon;
  return report;
}

bool is_nash(const GameInstance& game, const StrategyProfile& profile,
             DeviationReport* witness, const EquilibriumOptions& opts) {
  for (int i = 0; i < game.n(); ++i) {
    DeviationReport report = best_response(game, profile, i, opts);
    if (report.improving) {
      if (witness) *witness = std::move(report);
      return false;
    }
  }
  return true;
}

namespace {

constexpr std::uint64_t kSaturated = UINT64_MAX / 4;

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    if (n > 0 && r > kSaturated / static_cast<std::uint64_t>(n))
      return kSaturated;
    r = r * (n - k + i) / i;
  }
  return r;
}

}  // namespace

std::uint64_t joint_profile_count(const GameInstance& game,
                                  std::uint64_t cap) {
  std::uint64_t product = 1;
  for (const Player& p : game.players) {
    const std::uint64_t c = binomial(game.periods, p.demand);
    if (c == 0) return 0;
    if (product > cap / c) return cap + 1;
    product *= c;
  }
  return product;
}

EquilibriumSet enumerate_nash(const GameInstance& game,
                              const EquilibriumOptions& opts) {
  const std::uint64_t count = joint_profile_count(game, opts.enumeration_cap);
  if (count > opts.enumeration_cap) throw CapExceededError(count);

  std::vector<std::vector<std::vector<int>>> rows;
  rows.reserve(game.n());
  for (const Player& p : game.players)
    rows.push_back(enumerate_strategies(game.periods, p.demand));

  EquilibriumSet out;
  StrategyProfile profile;
  profile.rows.resize(game.n());
  std::vector<std::size_t> idx(game.n(), 0);
  for (;;) {
    for (int i = 0; i < game.n(); ++i) profile.rows[i] = rows[i][idx[i]];
    if (is_nash(game, profile, nullptr, opts)) {
      out.profiles.push_back({profile, classify_profile(game, profile),
                              is_herding_profile(game, profile)});
    }
    // odometer over per-player strategy lists, last player fastest
    int pos = game.n() - 1;
    while (pos >= 0 && ++idx[pos] == rows[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace evcg
