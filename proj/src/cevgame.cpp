#include "evcg/cevgame.hpp"

#include <algorithm>
#include <cmath>

namespace evcg {

namespace {

constexpr double kBZeroTol = 1e-12;

void check_quantities(const ContinuousGame& game,
                      const std::vector<double>& q) {
  if (static_cast<int>(q.size()) != game.n)
    throw std::invalid_argument("need one quantity per player");
  for (double v : q)
    if (!(v >= 0.0 && v <= game.M))
      throw std::invalid_argument("quantities must lie in [0, M]");
}

void require_positive_B(const ContinuousGame& game) {
  if (std::abs(game.B()) <= kBZeroTol)
    throw DegenerateError("B = 0: quadratic coefficient vanishes");
  if (game.B() < 0.0)
    throw DegenerateError("B < 0: cost is concave in own quantity");
}

}  // namespace

std::vector<double> total_cost(const ContinuousGame& game,
                               const std::vector<double>& q) {
  check_quantities(game, q);
  const double A = game.A(), B = game.B(), R = game.R(), eta = game.eta();
  double sum = 0.0;
  for (double v : q) sum += v;
  std::vector<double> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    out[i] = A * q[i] + B * q[i] * q[i] + B * q[i] * (sum - q[i]) -
             R * sum + eta;
  return out;
}

std::vector<double> two_part_cost(const ContinuousGame& game,
                                  const std::vector<double>& q) {
  check_quantities(game, q);
  double Q_D = 0.0;
  for (double v : q) Q_D += v;
  const double offpeak_total = game.W() - Q_D;
  std::vector<double> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double cD = game.bD * q[i] * (1.0 - Q_D / game.M_D) +
                      game.aD * q[i] * (Q_D / game.M_D) + game.rD;
    const double rest = game.M - q[i];
    const double cN = game.bN * rest * (1.0 - offpeak_total / game.M_N) +
                      game.aN * rest * (offpeak_total / game.M_N) + game.rN;
    out[i] = cD + cN;
  }
  return out;
}

double nash_quantity(const ContinuousGame& game) {
  require_positive_B(game);
  const double interior =
      (game.R() - game.A()) / (game.B() * (game.n + 1));
  return std::clamp(interior, 0.0, game.M);
}

InnerMinimum cce_lhs_min(const ContinuousGame& game, double g1) {
  require_positive_B(game);
  const double B = game.B();
  const double slope = game.A() - game.R() + B * (game.n - 1) * g1;
  InnerMinimum out;
  out.minimizer = std::clamp(-slope / (2.0 * B), 0.0, game.M);
  out.value = slope * out.minimizer + B * out.minimizer * out.minimizer;
  return out;
}

CceCheck is_cce(const ContinuousGame& game, const MomentTriple& m) {
  require_positive_B(game);
  const double A = game.A(), B = game.B(), R = game.R();
  const double combined = m.g2 + (game.n - 1) * m.g3;
  const double lin = (R - A) - B * (game.n - 1) * m.g1;
  const double opt_out_rhs =
      ((R - A) * m.g1 - lin * lin / (4.0 * B)) / B;

  CceCheck check;
  auto add = [&check](const char* name, double slack) {
    ConstraintCheck c;
    c.name = name;
    c.slack = slack;
    c.satisfied = slack >= -kCceTol;
    c.binding = std::abs(slack) <= kCceTol;
    check.constraints.push_back(c);
  };
  add("g2 >= g3", m.g2 - m.g3);
  add("g2 <= M*g1", game.M * m.g1 - m.g2);
  add("g2 + (n-1)g3 >= n*g1^2", combined - game.n * m.g1 * m.g1);
  add("opt-out bound", opt_out_rhs - combined);
  add("g1 >= 0", m.g1);
  add("g3 >= 0", m.g3);

  check.is_cce = true;
  for (const ConstraintCheck& c : check.constraints)
    if (!c.satisfied) check.is_cce = false;
  return check;
}

double cce_gap(const ContinuousGame& game, double g1) {
  require_positive_B(game);
  const double A = game.A(), B = game.B(), R = game.R();
  const double lin = (R - A) - B * (game.n - 1) * g1;
  return ((R - A) * g1 - lin * lin / (4.0 * B)) / B -
         game.n * g1 * g1;
}

CceScanResult cce_scan(const ContinuousGame& game, int resolution) {
  require_positive_B(game);
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");

  CceScanResult out;
  out.q_star = nash_quantity(game);
  out.grid_step = game.M / resolution;
  out.interior = out.q_star > 0.0 && out.q_star < game.M;

  const double M2 = game.M * game.M;
  const double step1 = game.M / resolution;
  const double step2 = M2 / resolution;

  auto consider = [&](const MomentTriple& m) {
    if (is_cce(game, m).is_cce) out.feasible.push_back(m);
  };

  for (int i = 0; i <= resolution; ++i) {
    const double g1 = i * step1;
    // The opt-out bound caps g2+(n-1)g3 by n*g1^2 + gap(g1); a negative
    // gap beyond tolerance leaves no room, so the whole slice is skipped.
    if (cce_gap(game, g1) < -2.0 * kCceTol) continue;
    for (int j = 0; j <= resolution; ++j)
      for (int k = 0; k <= resolution; ++k)
        consider({g1, j * step2, k * step2});
  }
  // Exact Nash point mass, always a candidate regardless of the grid.
  consider({out.q_star, out.q_star * out.q_star, out.q_star * out.q_star});

  out.max_g1_deviation = 0.0;
  bool on_manifold = true;
  for (const MomentTriple& m : out.feasible) {
    out.max_g1_deviation =
        std::max(out.max_g1_deviation, std::abs(m.g1 - out.q_star));
    const double combined = m.g2 + (game.n - 1) * m.g3;
    if (std::abs(combined - game.n * m.g1 * m.g1) > 2.0 * kCceTol)
      on_manifold = false;
  }
  out.coincides = !out.feasible.empty() &&
                  out.max_g1_deviation <= out.grid_step + kCceTol &&
                  on_manifold;
  return out;
}

}  // namespace evcg
