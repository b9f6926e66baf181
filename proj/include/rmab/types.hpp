#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmab {

/// Action-conditioned transition probabilities of a two-state arm. Only the
/// probabilities of landing in state 1 are stored; the state-0 columns are
/// complements. Valid arms satisfy the four structural constraints
///   (a) p01_passive < p11_passive   (good state is sticky without help)
///   (b) p01_active  < p11_active
///   (c) p01_passive < p01_active    (a pull helps from the bad state)
///   (d) p11_passive < p11_active    (a pull helps from the good state)
/// plus all entries strictly inside (0, 1).
struct TransitionMatrix {
  double p01_passive = 0;
  double p11_passive = 0;
  double p01_active = 0;
  double p11_active = 0;

  /// Probability of landing in state 1 from `state` under `pulled`.
  double next_good_prob(int state, bool pulled) const {
    if (pulled) return state == 1 ? p11_active : p01_active;
    return state == 1 ? p11_passive : p01_passive;
  }

  /// Row-stochastic 2x2 matrix for the given action; row = current state.
  Eigen::Matrix2d kernel(bool pulled) const {
    Eigen::Matrix2d k;
    if (pulled) {
      k << 1 - p01_active, p01_active, 1 - p11_active, p11_active;
    } else {
      k << 1 - p01_passive, p01_passive, 1 - p11_passive, p11_passive;
    }
    return k;
  }

  /// One passive belief propagation step.
  double propagate_passive(double belief) const {
    return belief * p11_passive + (1 - belief) * p01_passive;
  }

  /// One active-row belief propagation step.
  double propagate_active(double belief) const {
    return belief * p11_active + (1 - belief) * p01_active;
  }

  /// Stationary good-state probability of the never-pulled chain.
  double passive_fixed_point() const {
    return p01_passive / (1 - p11_passive + p01_passive);
  }
};

struct StructuralCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks entry bounds and the four structural constraints. Violations are
/// data, not faults: the result lists each failed constraint by label.
inline StructuralCheck validate_structural(const TransitionMatrix& m) {
  StructuralCheck r;
  auto fail = [&](const std::string& what) {
    r.ok = false;
    r.violations.push_back(what);
  };
  auto in_open_unit = [](double p) { return p > 0.0 && p < 1.0; };
  if (!in_open_unit(m.p01_passive)) fail("p01_passive outside (0,1)");
  if (!in_open_unit(m.p11_passive)) fail("p11_passive outside (0,1)");
  if (!in_open_unit(m.p01_active)) fail("p01_active outside (0,1)");
  if (!in_open_unit(m.p11_active)) fail("p11_active outside (0,1)");
  if (!(m.p01_passive < m.p11_passive)) fail("(a) p01_passive < p11_passive");
  if (!(m.p01_active < m.p11_active)) fail("(b) p01_active < p11_active");
  if (!(m.p01_passive < m.p01_active)) fail("(c) p01_passive < p01_active");
  if (!(m.p11_passive < m.p11_active)) fail("(d) p11_passive < p11_active");
  return r;
}

struct Arm {
  int id = 0;
  TransitionMatrix transitions;
  int initial_state = 1;
};

struct Cohort {
  std::vector<Arm> arms;

  int size() const { return static_cast<int>(arms.size()); }
  const Arm& operator[](int i) const { return arms[static_cast<size_t>(i)]; }
};

/// Belief about an arm's current state, tracked both as the Markov-chain
/// coordinate (last observed state, steps since that observation) and as the
/// propagated scalar probability of being in state 1.
/// steps_since_observed == 1 right at an observation, where belief_value is
/// the observed state itself.
struct BeliefState {
  int last_observed_state = 1;
  int steps_since_observed = 1;
  double belief_value = 1.0;

  static BeliefState observed(int state) {
    return BeliefState{state, 1, static_cast<double>(state)};
  }

  /// Propagation for an arm that was not pulled this step.
  BeliefState passive_step(const TransitionMatrix& m) const {
    return BeliefState{last_observed_state, steps_since_observed + 1,
                       m.propagate_passive(belief_value)};
  }

  /// Propagation for the step in which the arm was pulled: the pull observed
  /// the state and the transition used the active row.
  BeliefState active_step(const TransitionMatrix& m) const {
    return BeliefState{last_observed_state, steps_since_observed + 1,
                       m.propagate_active(belief_value)};
  }
};

/// Collapse-or-propagate update. With an observation the belief collapses to
/// the observed state; otherwise it propagates through the passive rows.
inline BeliefState belief_update(const BeliefState& b, const TransitionMatrix& m,
                                 bool pulled, std::optional<int> observed_state) {
  (void)pulled;
  if (observed_state.has_value()) {
    const int s = *observed_state;
    if (s != 0 && s != 1) throw std::invalid_argument("observed state must be 0 or 1");
    return BeliefState::observed(s);
  }
  return b.passive_step(m);
}

struct SimulationConfig {
  int horizon = 1;             // T
  int budget = 1;              // k
  double discount = 1.0;       // beta, applied to the global reward
  std::uint64_t seed = 0;
  bool observe_on_pull = true; // collapsing semantics; false = fully observed
};

/// Fairness hyperparameters. lower == 0 is the fairness-off configuration.
struct FairnessParams {
  double lower = 0.0;                  // ell
  double upper = 1.0;                  // u
  std::optional<int> interval;         // nu, integer periodicity
  std::optional<double> min_fraction;  // psi
};

using ActionVector = Eigen::VectorXi;

}  // namespace rmab
