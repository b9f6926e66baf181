#pragma once

#include <string>

#include "rmab/planner.hpp"
#include "rmab/types.hpp"

namespace rmab {

/// Cohort wire format: {"arms": [{"id", "p01_passive", "p11_passive",
/// "p01_active", "p11_active", "initial_state"}, ...]}. Doubles survive a
/// round trip bit-exactly. Ids must be the positions 0..N-1.
std::string cohort_to_json(const Cohort& cohort);
Cohort cohort_from_json(const std::string& text);

Cohort load_cohort(const std::string& path);
void save_cohort(const Cohort& cohort, const std::string& path);

/// Policy wire format: {"ell", "u", "k", "probs": [...]}.
std::string policy_to_json(const StationaryPolicy& policy);
StationaryPolicy policy_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace rmab
