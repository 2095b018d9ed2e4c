// serialize.hpp - JSON forms of the on-disk stage artifacts. The
// harmonised per-DAO document is a versioned external format; everything
// here round-trips byte-deterministically.

#pragma once

#include "daolens/abi/governance.hpp"
#include "daolens/harmonize/types.hpp"
#include "daolens/kpi/kpi.hpp"
#include "daolens/report/report.hpp"
#include "daolens/stats/stats.hpp"

#include <nlohmann/json.hpp>

namespace daolens::pipeline {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const abi::GovernanceEvent& e);
abi::GovernanceEvent governance_event_from_json(const json& j);

json to_json(const abi::TokenTransfer& t);
abi::TokenTransfer token_transfer_from_json(const json& j);

json to_json(const harmonize::ProposalSummary& p);
harmonize::ProposalSummary proposal_from_json(const json& j);

json to_json(const harmonize::ValidationReport& r);
harmonize::ValidationReport validation_from_json(const json& j);

// The harmonised per-DAO document (schema_version + provenance included).
json to_json(const harmonize::DaoRecord& record);
harmonize::DaoRecord dao_record_from_json(const json& j);

json to_json(const kpi::KpiOutcome& outcome);
kpi::KpiOutcome kpi_outcome_from_json(const json& j);

json to_json(const kpi::KpiAssessment& assessment);
kpi::KpiAssessment kpi_assessment_from_json(const json& j);

json to_json(const stats::TestResult& r);
json to_json(const stats::TestPlan& plan);
json to_json(const report::StatReport& report);
json to_json(const report::EcosystemSummary& summary);

// Reads/writes a whole JSON document; write is atomic-ish (temp + rename)
// and appends a trailing newline.
json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

} // namespace daolens::pipeline
