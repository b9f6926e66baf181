#include "rmab/rounding.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rmab {

namespace {
constexpr double kSumTol = 1e-12;
}

std::pair<double, double> simplify(double alpha, double beta, Rng& rng) {
  if (alpha < -kSumTol || alpha > 1 + kSumTol || beta < -kSumTol || beta > 1 + kSumTol) {
    throw std::invalid_argument("simplify: inputs must lie in [0,1]");
  }
  const double sum = alpha + beta;
  if (sum <= kSumTol) return {0.0, 0.0};
  if (sum >= 2 - kSumTol) return {1.0, 1.0};
  if (std::abs(sum - 1) <= kSumTol) {
    return rng.bernoulli(alpha) ? std::pair{1.0, 0.0} : std::pair{0.0, 1.0};
  }
  if (sum < 1) {
    return rng.bernoulli(alpha / sum) ? std::pair{sum, 0.0} : std::pair{0.0, sum};
  }
  // 1 < sum < 2
  const double keep = sum - 1;
  return rng.bernoulli((1 - beta) / (2 - sum)) ? std::pair{1.0, keep}
                                               : std::pair{keep, 1.0};
}

ActionVector round_to_budget(const Eigen::VectorXd& probs, Rng& rng) {
  const int n = static_cast<int>(probs.size());
  const double total = probs.sum();
  const double budget = std::round(total);
  if (std::abs(total - budget) > 1e-6) {
    throw std::invalid_argument("round_to_budget: sum of marginals is not integral");
  }

  ActionVector bits = ActionVector::Zero(n);
  // Residuals still to be merged: (mass, arm id).
  std::vector<std::pair<double, int>> queue;
  queue.reserve(static_cast<size_t>(n));

  auto settle = [&](double value, int id) {
    if (value <= kSumTol) {
      bits[id] = 0;
    } else if (value >= 1 - kSumTol) {
      bits[id] = 1;
    } else {
      queue.emplace_back(value, id);
    }
  };

  for (int i = 0; i < n; ++i) {
    if (probs[i] < -kSumTol || probs[i] > 1 + kSumTol) {
      throw std::invalid_argument("round_to_budget: marginal outside [0,1]");
    }
    settle(probs[i], i);
  }

  size_t head = 0;
  while (queue.size() - head >= 2) {
    const auto [a, ida] = queue[head];
    const auto [b, idb] = queue[head + 1];
    head += 2;
    const auto [va, vb] = simplify(a, b, rng);
    settle(va, ida);
    settle(vb, idb);
  }
  if (queue.size() - head == 1) {
    // A lone fractional residual can only be floating-point drift around an
    // integer, since the total mass is integral.
    const auto [v, id] = queue[head];
    bits[id] = v >= 0.5 ? 1 : 0;
  }

  if (bits.sum() != static_cast<int>(budget)) {
    throw std::logic_error("round_to_budget: cardinality drifted from the budget");
  }
  return bits;
}

}  // namespace rmab
