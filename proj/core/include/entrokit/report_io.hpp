#pragma once

#include "entrokit/harness.hpp"

#include <iosfwd>
#include <string>

namespace entrokit {

// One row per sweep record; canonical column order (documented in the README):
//   n,seed,estimator,h,gamma,estimate,centering,deviation,
//   normalized_deviation,excluded_fraction,flags,error
// Leading '#' comment lines echo the resolved configuration.
void write_sweep_csv(const SweepReport& report, std::ostream& out);

// {config, medians, sups, interval_coverage} summary.
std::string sweep_summary_json(const SweepReport& report);

} // namespace entrokit
