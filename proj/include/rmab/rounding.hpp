#pragma once

#include <Eigen/Core>
#include <utility>

#include "rmab/rng.hpp"
#include "rmab/types.hpp"

namespace rmab {

/// One dependent-rounding merge of two probability masses. At least one of
/// the returned values is integral, the pair sum is conserved exactly, and
/// each marginal is preserved in expectation:
///   alpha + beta == 0          -> (0, 0)
///   alpha + beta == 2          -> (1, 1)
///   alpha + beta == 1          -> (1, 0) w.p. alpha, else (0, 1)
///   alpha + beta in (0, 1)     -> (alpha+beta, 0) w.p. alpha/(alpha+beta)
///   alpha + beta in (1, 2)     -> (1, alpha+beta-1) w.p. (1-beta)/(2-alpha-beta)
/// Sums are compared against 0, 1 and 2 with tolerance 1e-12 so the
/// conditional probabilities never divide by a vanishing mass.
std::pair<double, double> simplify(double alpha, double beta, Rng& rng);

/// Draws a binary vector with exactly k ones from per-arm marginals probs,
/// where k = sum(probs) must be integral within 1e-6. Pr[bit_i = 1] == probs_i
/// and the cardinality k is attained with probability one. Linear time:
/// residual masses are merged pairwise through a work queue and every merge
/// fixes at least one coordinate.
ActionVector round_to_budget(const Eigen::VectorXd& probs, Rng& rng);

}  // namespace rmab
