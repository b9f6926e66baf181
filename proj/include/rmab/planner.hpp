#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "rmab/steady_state.hpp"
#include "rmab/types.hpp"

namespace rmab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Stationary per-arm pull probabilities, each inside [ell, u], summing to
/// the budget within 1e-6.
struct StationaryPolicy {
  Eigen::VectorXd probs;
  double ell = 0.0;
  double u = 1.0;
  int budget = 0;
};

/// One evaluated point of the budget-split grid search: z is the share of
/// the budget assigned to the concave arms, value the total occupancy there.
struct BudgetSplit {
  double z = 0;
  double value = 0;
};

struct Partition {
  std::vector<int> concave;         // curvature class Concave
  std::vector<int> strictly_convex; // curvature class StrictlyConvex
};

/// Splits arm ids by the curvature of their occupancy functions.
Partition partition(const Cohort& cohort);

/// Maximizes total occupancy over the concave arms subject to
/// probs in [ell,u]^n and sum(probs) == z. Projected gradient ascent with an
/// exact projection onto the box-and-sum polytope; the returned point is
/// feasible to machine precision and within tol of the concave maximum.
Eigen::VectorXd solve_concave_share(std::span<const TransitionMatrix> arms,
                                    double z, double ell, double u,
                                    double tol = 1e-9);

/// Exact solution for the strictly convex arms with remaining budget:
/// gamma = floor((n*u - budget)/(u - ell)) arms sit at ell, at most one arm
/// at an interior value p' in (ell, u], and the rest at u, assigned by
/// descending occupancy gain.
Eigen::VectorXd solve_convex_share(std::span<const TransitionMatrix> arms,
                                   double budget, double ell, double u);

/// Builds the stationary policy: partition by curvature, grid-search the
/// budget split z with step eps (both interval endpoints always included),
/// solve each share, and take the split with maximal total occupancy,
/// breaking ties toward smaller z. Throws InfeasibleError naming the violated
/// inequality when ell*N <= k <= u*N fails.
StationaryPolicy plan(const Cohort& cohort, int budget, double eps, double ell,
                      double u, std::vector<BudgetSplit>* splits = nullptr);

/// Total stationary occupancy of a policy over a cohort.
double policy_value(const Cohort& cohort, const Eigen::VectorXd& probs);

}  // namespace rmab
