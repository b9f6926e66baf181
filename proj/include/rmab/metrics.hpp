#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

namespace rmab {

/// Distribution of total pulls per arm: counts[j] = number of arms that
/// received exactly j pulls, j in [0, T].
struct PullHistogram {
  Eigen::VectorXi counts;

  int total_arms() const { return counts.sum(); }
  int total_pulls() const {
    long s = 0;
    for (int j = 0; j < counts.size(); ++j) s += static_cast<long>(j) * counts[j];
    return static_cast<int>(s);
  }
};

/// Histogram of row sums of an N x T binary action matrix.
inline PullHistogram pull_histogram(const Eigen::MatrixXi& actions) {
  PullHistogram h;
  h.counts = Eigen::VectorXi::Zero(static_cast<int>(actions.cols()) + 1);
  for (int i = 0; i < actions.rows(); ++i) h.counts[actions.row(i).sum()] += 1;
  return h;
}

/// Reward normalized between the no-action baseline (0%) and the
/// fairness-agnostic index policy anchor (100%).
inline double intervention_benefit(double r_alg, double r_noact, double r_anchor) {
  const double denom = r_anchor - r_noact;
  if (denom == 0.0) {
    throw std::invalid_argument("intervention_benefit: degenerate baselines, anchor equals no-action reward");
  }
  return 100.0 * (r_alg - r_noact) / denom;
}

/// 1-D earth mover's distance between equal-mass pull histograms: the sum of
/// absolute prefix-sum differences, i.e. the minimum number of one-bucket
/// moves needed to transform one distribution into the other.
inline double emd(const PullHistogram& a, const PullHistogram& b) {
  if (a.total_arms() != b.total_arms()) {
    throw std::invalid_argument("emd: histograms carry different total mass");
  }
  const int len = static_cast<int>(std::max(a.counts.size(), b.counts.size()));
  long prefix = 0;
  long cost = 0;
  for (int j = 0; j < len; ++j) {
    const int ca = j < a.counts.size() ? a.counts[j] : 0;
    const int cb = j < b.counts.size() ? b.counts[j] : 0;
    prefix += ca - cb;
    cost += std::abs(prefix);
  }
  return static_cast<double>(cost);
}

/// EMD rescaled so the round-robin reference sits at 0% and the index-policy
/// anchor at 100%.
inline double normalized_emd(double e_alg, double e_anchor) {
  if (e_anchor == 0.0) {
    throw std::invalid_argument("normalized_emd: anchor distance is zero");
  }
  return 100.0 * e_alg / e_anchor;
}

/// Relative reward loss against the fairness-agnostic anchor.
inline double price_of_fairness(double r_anchor, double r_alg) {
  return (r_anchor - r_alg) / r_anchor;
}

/// Herfindahl-Hirschman concentration of pulls: sum of squared pull shares.
/// Ranges from 1/N (even allocation) to 1 (all pulls on one arm).
inline double hhi(const Eigen::MatrixXi& actions) {
  const long total = actions.sum();
  if (total == 0) throw std::invalid_argument("hhi: zero total pulls");
  double acc = 0;
  for (int i = 0; i < actions.rows(); ++i) {
    const double share = static_cast<double>(actions.row(i).sum()) / static_cast<double>(total);
    acc += share * share;
  }
  return acc;
}

/// Mean and 95% normal-approximation margin of error over samples.
struct MeanWithMargin {
  double mean = 0;
  double margin = 0;
};

inline MeanWithMargin mean_with_margin(const Eigen::VectorXd& samples) {
  MeanWithMargin r;
  const auto n = samples.size();
  if (n == 0) return r;
  r.mean = samples.mean();
  if (n > 1) {
    const double var = (samples.array() - r.mean).square().sum() / static_cast<double>(n - 1);
    r.margin = 1.96 * std::sqrt(var / static_cast<double>(n));
  }
  return r;
}

}  // namespace rmab
