#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "toric/serialize.hpp"
#include "toric/torsor.hpp"

namespace toric {

struct Report {
  Json json;
  std::string summary;
};

Report analyze_fan_report(const Fan& f, std::uint64_t seed);

Json certificate_to_json(const ChartCertificate& c);

/// mode is one of normalize, strata, weak-locus, prop21-chain.
Report wps_report(const Weights& q, const std::string& mode);

struct SweepOptions {
  unsigned max_weight = 6;
  std::size_t max_n = 4;
};

/// Exhaustive check over q_0 = 1, q_i <= max_weight, 1 <= n <= max_n.
Report wps_sweep_report(const SweepOptions& opts);

Json torsor_report_to_json(const TorsorReport& r);
Report torsor_report(const Fan& f, const GroupAction& g, const PipelineOptions& opts);

Report cohomology_report(const GroupAction& g, const ModulePresentation& module);

}  // namespace toric
