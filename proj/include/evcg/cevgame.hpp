// Continuous symmetric EV game: each of n identical players splits an
// all-day demand M between a peak quantity q in [0, M] and the off-peak
// remainder M - q. Costs reduce to a symmetric quadratic game with
// coefficients A, B, R; the closed-form symmetric Nash quantity and the
// moment characterization of coarse correlated equilibria both live here.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace evcg {

inline constexpr double kCceTol = 1e-9;

class DegenerateError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContinuousGame {
  int n = 2;
  double M = 1.0;    // per-player all-day demand
  double M_D = 1.0;  // peak capacity constant
  double M_N = 1.0;  // off-peak capacity constant
  double bD = 0.0;   // peak price
  double bN = 0.0;   // off-peak price
  double aD = 0.0;   // peak dissatisfaction slope
  double aN = 0.0;   // off-peak dissatisfaction slope
  double rD = 0.0;   // constant peak cost offset
  double rN = 0.0;   // constant off-peak cost offset

  // Derived coefficients, always recomputed from the primitives.
  double W() const { return n * M; }
  double A() const {
    return bD - aN * W() / M_N - bN * (M_N - W()) / M_N;
  }
  double B() const { return (aD - bD) / M_D - (aN - bN) / M_N; }
  double R() const { return (aN - bN) * M / M_N; }
  double eta() const { return rD + rN; }

  /// Convexity of both cost parts requires aD > bD and aN > bN.
  bool convex() const { return aD > bD && aN > bN; }
};

/// Reduced quadratic cost A*q_i + B*q_i^2 + B*q_i*sum_{j!=i} q_j
/// - R*sum_j q_j + eta for every player. This form is the game of record
/// for all equilibrium analysis. Quantities must lie in [0, M].
std::vector<double> total_cost(const ContinuousGame& game,
                               const std::vector<double>& q);

/// The two-part peak/off-peak cost evaluation (direct price on energy
/// received plus slope-weighted shortfall per class). Kept for reporting;
/// it differs from the reduced form by 2*(aN-bN)/M_N * q_i * sum_j q_j plus
/// a profile-independent constant, so equilibrium analysis uses the reduced
/// form only.
std::vector<double> two_part_cost(const ContinuousGame& game,
                                  const std::vector<double>& q);

/// Symmetric Nash peak quantity max(0, min((R-A)/(B(n+1)), M)).
/// Throws DegenerateError unless B > 0 (the closed form characterizes the
/// minimum of a convex cost only).
double nash_quantity(const ContinuousGame& game);

struct InnerMinimum {
  double minimizer = 0.0;  // clamped to [0, M]
  double value = 0.0;
};

/// min over z in [0, M] of (A - R + B(n-1)*g1)*z + B*z^2, the best
/// opt-out payoff against a committed mean recommendation g1.
InnerMinimum cce_lhs_min(const ContinuousGame& game, double g1);

/// Symmetric distribution moments: g1 = E[Z_i], g2 = E[Z_i^2],
/// g3 = E[Z_i Z_j] for i != j.
struct MomentTriple {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
};

struct ConstraintCheck {
  const char* name = "";
  double slack = 0.0;  // >= -kCceTol means satisfied
  bool satisfied = false;
  bool binding = false;
};

struct CceCheck {
  bool is_cce = false;
  std::vector<ConstraintCheck> constraints;
};

/// Moment-constraint test for coarse correlated equilibria: distribution
/// shape constraints (second moment bounds, exchangeable PSD condition,
/// nonnegativity) plus the opt-out constraint.
CceCheck is_cce(const ContinuousGame& game, const MomentTriple& m);

/// Difference between the opt-out upper bound and the PSD lower bound on
/// g2 + (n-1)*g3; concave in g1 with maximum 0 at the Nash quantity.
double cce_gap(const ContinuousGame& game, double g1);

struct CceScanResult {
  std::vector<MomentTriple> feasible;
  double q_star = 0.0;
  double grid_step = 0.0;
  bool interior = false;   // Nash quantity strictly inside (0, M)
  bool coincides = false;  // every feasible triple within one step of q*
                           // and on the binding manifold
  double max_g1_deviation = 0.0;
};

/// Grid scan of (g1, g2, g3) over [0,M] x [0,M^2] x [0,M^2] at the given
/// resolution, with the exact Nash point mass added as a candidate. The
/// coincidence verdict is asserted only for interior Nash; boundary cases
/// are reported as-is.
CceScanResult cce_scan(const ContinuousGame& game, int resolution);

}  // namespace evcg
