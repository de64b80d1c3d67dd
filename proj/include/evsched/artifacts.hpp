#pragma once

#include <string>
#include <utility>

#include "evsched/config.hpp"
#include "evsched/evalreport.hpp"
#include "evsched/profiles.hpp"

namespace evsched {

// JSON artifact writers. Each JSON artifact embeds the resolved run config
// and seed under "provenance"; CSV artifacts have fixed column schemas, so
// their provenance goes to a sibling `<path>.provenance.json`.

std::string profiles_to_json(const FlexibilityProfile& flex, const CostProfile& costs,
                             const RunConfig& cfg);
void write_profiles_json(const std::string& path, const FlexibilityProfile& flex,
                         const CostProfile& costs, const RunConfig& cfg);
std::pair<FlexibilityProfile, CostProfile> profiles_from_json(const std::string& text);
std::pair<FlexibilityProfile, CostProfile> load_profiles_json(const std::string& path);

std::string report_to_json(const EvalReport& report, const RunConfig& cfg);
void write_report_json(const std::string& path, const EvalReport& report, const RunConfig& cfg);

void write_provenance_sidecar(const std::string& artifact_path, const RunConfig& cfg);

}  // namespace evsched
