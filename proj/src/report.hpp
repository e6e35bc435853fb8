#pragma once

#include <string>

#include "scenario.hpp"

namespace dmec {

// Machine-parseable "key = value" lines: association probabilities, marginals,
// mean loads, coverage at the configured thresholds (both DL forms), every
// nonzero-weight case breakdown and the three scheme averages. Throws
// QueueUnstable if any cloudlet queue the averages need is unstable.
std::string analytic_report(const ScenarioParams& params);

}  // namespace dmec
