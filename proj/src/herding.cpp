#include "evcg/herding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evcg {

namespace {

constexpr int kMaxBisectIter = 200;

double gap(const std::function<double(double)>& f, double x, double bD,
           double bN) {
  return f(x) - (bD - bN * x);
}

// Bisects gap() between the endpoints, which must satisfy gap(lo) > 0 and
// gap(hi) < 0; lo and hi need not be ordered.
double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double bD, double bN) {
  for (int i = 0; i < kMaxBisectIter && std::abs(hi - lo) > kRootTol; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(f, mid, bD, bN) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ThresholdResult make_result(ThresholdKind kind, double x_hat,
                            const std::function<double(double)>& f,
                            double bD, double bN) {
  ThresholdResult r;
  r.kind = kind;
  r.x_hat = x_hat;
  r.f_at_0 = f(0.0);
  r.f_at_1 = f(1.0);
  r.rhs_at_0 = bD;
  r.rhs_at_1 = bD - bN;
  return r;
}

}  // namespace

double herding_x(int n, double capacity) {
  if (n < 1 || capacity < 1.0)
    throw std::invalid_argument("herding_x requires n >= 1 and P >= 1");
  return std::min(1.0, capacity / n);
}

bool deviation_test(const std::function<double(double)>& f, double x,
                    double bD, double bN) {
  if (!(x > 0.0 && x <= 1.0))
    throw std::invalid_argument("congestion level must lie in (0, 1]");
  return gap(f, x, bD, bN) >= 0.0;
}

bool deviation_test(const DissatisfactionFn& f, double x, double bD,
                    double bN) {
  return deviation_test([&f](double v) { return f(v); }, x, bD, bN);
}

ThresholdResult linear_threshold(double alpha, double beta, double bD,
                                 double bN) {
  if (!(beta > 0.0) || !(bD > bN) || !(bN >= 0.0))
    throw std::invalid_argument(
        "linear_threshold requires beta > 0 and bD > bN >= 0");
  const DissatisfactionFn f = DissatisfactionFn::linear(alpha, beta);
  auto eval = [&f](double x) { return f(x); };
  // alpha = bD puts the crossing at 0, which leaves (0,1) stable.
  if (alpha <= bD)
    return make_result(ThresholdKind::AlwaysStable, 0.0, eval, bD, bN);
  if (beta <= bN)  // gap positive at 0 and nondecreasing
    return make_result(ThresholdKind::AlwaysDeviated, 0.0, eval, bD, bN);
  const double x_hat = (alpha - bD) / (beta - bN);
  if (x_hat >= 1.0)
    return make_result(ThresholdKind::AlwaysDeviated, 0.0, eval, bD, bN);
  return make_result(ThresholdKind::Threshold, x_hat, eval, bD, bN);
}

ThresholdResult logistic_threshold(double alpha, double beta, double bD,
                                   double bN) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(bD > bN) || !(bN >= 0.0))
    throw std::invalid_argument(
        "logistic_threshold requires alpha, beta > 0 and bD > bN >= 0");
  const DissatisfactionFn f = DissatisfactionFn::logistic(alpha, beta);
  auto eval = [&f](double x) { return f(x); };
  if (bD >= alpha)
    return make_result(ThresholdKind::AlwaysStable, 0.0, eval, bD, bN);
  const double g0 = gap(eval, 0.0, bD, bN);
  const double g1 = gap(eval, 1.0, bD, bN);
  if (g0 > 0.0 && g1 < 0.0) {
    const double x_hat = bisect_root(eval, 0.0, 1.0, bD, bN);
    return make_result(ThresholdKind::Threshold, x_hat, eval, bD, bN);
  }
  // Outside the bracket regime the convention follows the endpoint signs.
  if (g1 >= 0.0)
    return make_result(ThresholdKind::AlwaysDeviated, 0.0, eval, bD, bN);
  return make_result(ThresholdKind::AlwaysStable, 0.0, eval, bD, bN);
}

std::vector<DeviationInterval> scan_deviation_region(
    const std::function<double(double)>& f, double bD, double bN,
    int grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("scan needs at least two grid points");
  const double step = 1.0 / grid_points;
  std::vector<DeviationInterval> out;
  double prev_x = 1e-12;  // left sentinel just inside (0, 1)
  bool prev_pos = gap(f, prev_x, bD, bN) >= 0.0;
  bool inside = prev_pos;
  double lo = 0.0;
  for (int i = 1; i <= grid_points; ++i) {
    const double x = std::min(1.0, i * step);
    const bool pos = gap(f, x, bD, bN) >= 0.0;
    if (pos != prev_pos) {
      const double crossing = prev_pos
                                  ? bisect_root(f, prev_x, x, bD, bN)
                                  : bisect_root(f, x, prev_x, bD, bN);
      if (prev_pos) {
        out.push_back({lo, crossing});
        inside = false;
      } else {
        lo = crossing;
        inside = true;
      }
    }
    prev_x = x;
    prev_pos = pos;
  }
  if (inside) out.push_back({lo, 1.0});
  return out;
}

GameInstance homogeneous_instance(const HerdingTemplate& tpl, int n) {
  if (tpl.player.demand != tpl.offpeak_periods)
    throw std::invalid_argument(
        "herding template requires demand == offpeak period count");
  if (n < 1) throw std::invalid_argument("need at least one player");
  GameInstance game;
  game.periods = tpl.periods;
  game.offpeak_periods = tpl.offpeak_periods;
  game.capacities.assign(tpl.periods, tpl.capacity);
  game.players.resize(n, tpl.player);
  for (int i = 0; i < n; ++i) game.players[i].id = i;
  return game;
}

StrategyProfile herding_profile(const GameInstance& game) {
  StrategyProfile profile;
  profile.rows.resize(game.n());
  for (int i = 0; i < game.n(); ++i) {
    auto& row = profile.rows[i];
    row.assign(game.periods, 0);
    const int d = game.players[i].demand;
    std::fill(row.begin(), row.begin() + std::min(d, game.offpeak_periods),
              1);
  }
  return profile;
}

std::vector<SweepRow> herding_sweep(const HerdingTemplate& tpl, int n_from,
                                    int n_to,
                                    const EquilibriumOptions& opts) {
  if (n_from < 1 || n_to < n_from)
    throw std::invalid_argument("bad sweep range");
  std::vector<SweepRow> out;
  out.reserve(n_to - n_from + 1);
  const DissatisfactionFn& f = tpl.player.f_offpeak;
  for (int n = n_from; n <= n_to; ++n) {
    const GameInstance game = homogeneous_instance(tpl, n);
    const StrategyProfile profile = herding_profile(game);
    SweepRow row;
    row.n = n;
    row.x = herding_x(n, tpl.capacity);
    row.herding_is_nash = is_nash(game, profile, nullptr, opts);
    row.threshold_prediction =
        row.x >= 1.0 || !deviation_test(f, row.x, tpl.player.price_peak,
                                        tpl.player.price_offpeak);
    out.push_back(row);
  }
  return out;
}

}  // namespace evcg
