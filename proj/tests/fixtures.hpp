// Shared game instances for tests: the three-player reference games (one
// linear, one logistic) and the profile where player 0 charges only at peak
// and players 1-2 only off-peak.

#pragma once

#include "evcg/model.hpp"

namespace evcg::testing {

inline GameInstance linear_reference_game() {
  GameInstance game;
  game.periods = 4;
  game.offpeak_periods = 2;
  game.capacities = {2.0, 2.0, 2.0, 2.0};
  const DissatisfactionFn f = DissatisfactionFn::linear(1.0, 1.0);
  Player p1{0, 2, 1.0, 0.3, 0.2, f, f};
  Player p2{1, 2, 1.0, 0.4, 0.3, f, f};
  Player p3{2, 2, 1.0, 0.4, 0.3, f, f};
  game.players = {p1, p2, p3};
  return game;
}

inline GameInstance logistic_reference_game() {
  GameInstance game = linear_reference_game();
  const DissatisfactionFn f = DissatisfactionFn::logistic(1.5, 5.0);
  for (Player& p : game.players) {
    p.f_peak = f;
    p.f_offpeak = f;
  }
  return game;
}

inline StrategyProfile reference_split_profile() {
  return StrategyProfile{{{0, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 0, 0}}};
}

}  // namespace evcg::testing
