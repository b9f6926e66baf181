#include "rmab/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace rmab {

namespace {

constexpr double kFeasTol = 1e-9;

double second_derivative_bound(const TransitionMatrix& m) {
  const SteadyStateConstants c = constants(m);
  if (std::abs(c.c4) < 1e-18) return 0.0;
  auto second = [&](double p) {
    const double denom = c.c3 + c.c4 * p;
    return 2 * c.c4 * (c.c1 * c.c4 - c.c2 * c.c3) / (denom * denom * denom);
  };
  return std::max(std::abs(second(0.0)), std::abs(second(1.0)));
}

/// Euclidean projection onto {p : sum(p) = z, ell <= p_i <= u}, computed by
/// bisection on the dual shift; the residual after bisection is spread over
/// interior coordinates so the sum constraint holds to machine precision.
Eigen::VectorXd project_to_share(const Eigen::VectorXd& y, double z, double ell,
                                 double u) {
  const int n = static_cast<int>(y.size());
  auto clamped_sum = [&](double shift) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += std::clamp(y[i] + shift, ell, u);
    return s;
  };
  double lo = ell - y.maxCoeff();
  double hi = u - y.minCoeff();
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (clamped_sum(mid) < z ? lo : hi) = mid;
  }
  const double shift = 0.5 * (lo + hi);
  Eigen::VectorXd p(n);
  for (int i = 0; i < n; ++i) p[i] = std::clamp(y[i] + shift, ell, u);

  // Exact-sum correction over coordinates that are strictly interior.
  for (int pass = 0; pass < 3; ++pass) {
    double residual = z - p.sum();
    if (residual == 0.0) break;
    std::vector<int> interior;
    for (int i = 0; i < n; ++i) {
      if (p[i] > ell && p[i] < u) interior.push_back(i);
    }
    if (interior.empty()) break;
    const double bump = residual / static_cast<double>(interior.size());
    for (int i : interior) p[i] = std::clamp(p[i] + bump, ell, u);
  }
  return p;
}

std::string share_infeasibility(double lo, double value, double hi) {
  std::ostringstream os;
  os << "infeasible share: need " << lo << " <= " << value << " <= " << hi;
  return os.str();
}

}  // namespace

Partition partition(const Cohort& cohort) {
  Partition part;
  for (const Arm& arm : cohort.arms) {
    if (classify(arm.transitions) == CurvatureClass::Concave) {
      part.concave.push_back(arm.id);
    } else {
      part.strictly_convex.push_back(arm.id);
    }
  }
  return part;
}

Eigen::VectorXd solve_concave_share(std::span<const TransitionMatrix> arms,
                                    double z, double ell, double u, double tol) {
  const int n = static_cast<int>(arms.size());
  if (n == 0) {
    if (std::abs(z) > kFeasTol) {
      throw InfeasibleError("infeasible share: nonzero budget for an empty arm set");
    }
    return Eigen::VectorXd(0);
  }
  if (z < ell * n - kFeasTol || z > u * n + kFeasTol) {
    throw InfeasibleError(share_infeasibility(ell * n, z, u * n));
  }
  if (n == 1) return Eigen::VectorXd::Constant(1, std::clamp(z, ell, u));

  Eigen::VectorXd p = project_to_share(
      Eigen::VectorXd::Constant(n, std::clamp(z / n, ell, u)), z, ell, u);

  auto objective = [&](const Eigen::VectorXd& q) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += occupancy(arms[static_cast<size_t>(i)], q[i]);
    return s;
  };

  double lips = 0;
  for (const auto& m : arms) lips = std::max(lips, second_derivative_bound(m));
  double step = 1.0 / std::max(lips, 1e-3);

  double obj = objective(p);
  Eigen::VectorXd grad(n);
  for (int it = 0; it < 100000; ++it) {
    for (int i = 0; i < n; ++i) {
      grad[i] = occupancy_derivative(arms[static_cast<size_t>(i)], p[i]);
    }
    // Backtracking keeps every accepted step an improvement.
    bool accepted = false;
    while (step > 1e-14) {
      Eigen::VectorXd cand = project_to_share(p + step * grad, z, ell, u);
      const double cand_obj = objective(cand);
      if (cand_obj >= obj) {
        const double gain = cand_obj - obj;
        p = std::move(cand);
        obj = cand_obj;
        accepted = true;
        if (gain < tol) return p;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    step *= 1.25;
  }
  return p;
}

Eigen::VectorXd solve_convex_share(std::span<const TransitionMatrix> arms,
                                   double budget, double ell, double u) {
  const int n = static_cast<int>(arms.size());
  if (n == 0) {
    if (std::abs(budget) > kFeasTol) {
      throw InfeasibleError("infeasible share: nonzero budget for an empty arm set");
    }
    return Eigen::VectorXd(0);
  }
  if (budget < ell * n - kFeasTol || budget > u * n + kFeasTol) {
    throw InfeasibleError(share_infeasibility(ell * n, budget, u * n));
  }

  if (u - ell < 1e-12) return Eigen::VectorXd::Constant(n, ell);

  const int gamma = std::clamp(
      static_cast<int>(std::floor((n * u - budget) / (u - ell))), 0, n);
  if (gamma >= n) return Eigen::VectorXd::Constant(n, ell);

  const int at_upper = n - gamma - 1;
  // p' lies in (ell, u]; clamping only absorbs last-ulp drift.
  const double interior =
      std::clamp(budget - gamma * ell - at_upper * u, ell, u);

  // Ascending (gain, id) order; the top `at_upper` arms by occupancy gain
  // take u, the best remaining gain at the interior value takes p', the rest
  // sit at ell.
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> full_gain(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    full_gain[static_cast<size_t>(i)] =
        occupancy(arms[static_cast<size_t>(i)], u) - occupancy(arms[static_cast<size_t>(i)], ell);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ga = full_gain[static_cast<size_t>(a)];
    const double gb = full_gain[static_cast<size_t>(b)];
    return ga != gb ? ga < gb : a < b;
  });

  Eigen::VectorXd p = Eigen::VectorXd::Constant(n, ell);
  for (int j = n - at_upper; j < n; ++j) p[order[static_cast<size_t>(j)]] = u;

  int interior_arm = -1;
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n - at_upper; ++j) {
    const int i = order[static_cast<size_t>(j)];
    const double gain = occupancy(arms[static_cast<size_t>(i)], interior) -
                        occupancy(arms[static_cast<size_t>(i)], ell);
    if (gain > best || (gain == best && i < interior_arm)) {
      best = gain;
      interior_arm = i;
    }
  }
  p[interior_arm] = interior;
  return p;
}

double policy_value(const Cohort& cohort, const Eigen::VectorXd& probs) {
  double total = 0;
  for (const Arm& arm : cohort.arms) {
    total += occupancy(arm.transitions, probs[arm.id]);
  }
  return total;
}

StationaryPolicy plan(const Cohort& cohort, int budget, double eps, double ell,
                      double u, std::vector<BudgetSplit>* splits) {
  const int n = cohort.size();
  if (n == 0) throw ConfigError("plan: empty cohort");
  if (eps <= 0) throw ConfigError("plan: eps must be positive");
  if (ell < 0 || u > 1 || ell > u) {
    throw ConfigError("plan: fairness interval must satisfy 0 <= ell <= u <= 1");
  }
  if (ell * n > budget + kFeasTol) {
    std::ostringstream os;
    os << "infeasible fairness parameters: ell*N = " << ell * n << " > k = " << budget;
    throw InfeasibleError(os.str());
  }
  if (u * n < budget - kFeasTol) {
    std::ostringstream os;
    os << "infeasible fairness parameters: u*N = " << u * n << " < k = " << budget;
    throw InfeasibleError(os.str());
  }

  const Partition part = partition(cohort);
  const int nx = static_cast<int>(part.concave.size());
  const int ny = static_cast<int>(part.strictly_convex.size());

  std::vector<TransitionMatrix> concave_arms, convex_arms;
  concave_arms.reserve(static_cast<size_t>(nx));
  convex_arms.reserve(static_cast<size_t>(ny));
  for (int id : part.concave) concave_arms.push_back(cohort[id].transitions);
  for (int id : part.strictly_convex) convex_arms.push_back(cohort[id].transitions);

  const double k = static_cast<double>(budget);
  const double z_lo = std::max(ell * nx, k - u * ny);
  const double z_hi = std::min(u * nx, k - ell * ny);
  if (z_lo > z_hi + kFeasTol) {
    throw InfeasibleError(share_infeasibility(z_lo, k, z_hi));
  }

  // Grid {eps*j} restricted to the feasible interval, plus both endpoints and
  // the uniform split, so the uniform policy is always dominated.
  std::vector<double> grid;
  grid.push_back(z_lo);
  if (z_hi > z_lo) grid.push_back(z_hi);
  const double z_uniform = k * nx / n;
  if (z_uniform > z_lo && z_uniform < z_hi) grid.push_back(z_uniform);
  for (long j = static_cast<long>(std::ceil(z_lo / eps));
       j <= static_cast<long>(std::floor(z_hi / eps)); ++j) {
    const double z = eps * static_cast<double>(j);
    if (z > z_lo && z < z_hi) grid.push_back(z);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  double best_value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x, best_y;
  for (double z : grid) {
    Eigen::VectorXd px = solve_concave_share(concave_arms, z, ell, u);
    Eigen::VectorXd py = solve_convex_share(convex_arms, k - z, ell, u);
    double value = 0;
    for (int j = 0; j < nx; ++j) value += occupancy(concave_arms[static_cast<size_t>(j)], px[j]);
    for (int j = 0; j < ny; ++j) value += occupancy(convex_arms[static_cast<size_t>(j)], py[j]);
    if (splits) splits->push_back({z, value});
    if (value > best_value) {  // ties keep the earlier (smaller) z
      best_value = value;
      best_x = std::move(px);
      best_y = std::move(py);
    }
  }

  StationaryPolicy policy;
  policy.ell = ell;
  policy.u = u;
  policy.budget = budget;
  policy.probs = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < nx; ++j) policy.probs[part.concave[static_cast<size_t>(j)]] = best_x[j];
  for (int j = 0; j < ny; ++j) policy.probs[part.strictly_convex[static_cast<size_t>(j)]] = best_y[j];
  return policy;
}

}  // namespace rmab
