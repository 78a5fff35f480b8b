// Best responses, Nash verification and exhaustive pure-Nash enumeration.
//
// A profile fails to be a Nash equilibrium exactly when some player has an
// alternative row that strictly lowers their total cost; indifferent
// alternatives do not destroy an equilibrium.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "evcg/model.hpp"

namespace evcg {

struct EquilibriumOptions {
  double tie_epsilon = 1e-12;       // improvements below this are ties
  std::uint64_t enumeration_cap = 10'000'000;
};

class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(std::uint64_t product)
      : std::runtime_error("joint strategy space of " +
                           std::to_string(product) +
                           " profiles exceeds the enumeration cap"),
        product_(product) {}
  std::uint64_t product() const { return product_; }

 private:
  std::uint64_t product_;
};

struct DeviationReport {
  int player = 0;
  double current_cost = 0.0;
  std::vector<int> best_row;
  double best_cost = 0.0;
  bool improving = false;
};

enum class ProfileClass { Distributed, NonDistributed };

struct ClassifiedProfile {
  StrategyProfile profile;
  ProfileClass classification = ProfileClass::NonDistributed;
  bool herding = false;  // every player charges off-peak only
};

struct EquilibriumSet {
  std::vector<ClassifiedProfile> profiles;
};

/// All binary T-vectors with exactly d ones, in lexicographic order.
std::vector<std::vector<int>> enumerate_strategies(int periods, int demand);

/// A row straddles both period classes.
bool is_distributed_row(const std::vector<int>& row, int offpeak_periods);

ProfileClass classify_profile(const GameInstance& game,
                              const StrategyProfile& profile);

/// Every player charges only off-peak periods.
bool is_herding_profile(const GameInstance& game,
                        const StrategyProfile& profile);

/// Scans every alternative row of one player with the rest of the profile
/// fixed. The reported row is the cost-minimal one, ties broken toward the
/// lexicographically smallest row; `improving` holds when it beats the
/// current row by more than tie_epsilon.
DeviationReport best_response(const GameInstance& game,
                              const StrategyProfile& profile, int player,
                              const EquilibriumOptions& opts = {});

/// True iff no player has an improving best response. When false, `witness`
/// (if non-null) receives the first improving deviation found.
bool is_nash(const GameInstance& game, const StrategyProfile& profile,
             DeviationReport* witness = nullptr,
             const EquilibriumOptions& opts = {});

/// Number of joint profiles, saturated just above the cap.
std::uint64_t joint_profile_count(const GameInstance& game,
                                  std::uint64_t cap);

/// Exhaustively enumerates all pure Nash profiles, classified and
/// herding-flagged, in lexicographic profile order. Throws CapExceededError
/// when the joint strategy space exceeds opts.enumeration_cap.
EquilibriumSet enumerate_nash(const GameInstance& game,
                              const EquilibriumOptions& opts = {});

}  // namespace evcg
