#include "daolens/pipeline/serialize.hpp"

#include "daolens/common/errors.hpp"

#include <fstream>

namespace daolens::pipeline {

namespace {

std::string big(const BigInt& v)
{
    return v.str();
}

BigInt unbig(const json& j)
{
    return BigInt(j.get<std::string>());
}

} // namespace

json to_json(const abi::GovernanceEvent& e)
{
    json j = {
        { "kind", abi::to_string(e.kind) },
        { "proposal_id", big(e.proposal_id) },
        { "block_number", e.block_number },
        { "log_index", e.log_index },
        { "timestamp_utc", e.timestamp_utc },
        { "tx_hash", e.tx_hash },
    };
    switch (e.kind) {
    case abi::GovernanceKind::ProposalCreated:
        j["proposer"] = e.actor;
        j["window_start"] = big(e.window_start);
        j["window_end"] = big(e.window_end);
        j["description"] = e.description;
        break;
    case abi::GovernanceKind::VoteCast:
        j["voter"] = e.actor;
        j["support"] = abi::to_string(e.support);
        j["weight"] = big(e.weight);
        break;
    case abi::GovernanceKind::ProposalQueued:
        j["eta"] = big(e.eta);
        break;
    default:
        break;
    }
    return j;
}

abi::GovernanceEvent governance_event_from_json(const json& j)
{
    abi::GovernanceEvent e;
    e.kind = abi::governance_kind_from_string(j.at("kind").get<std::string>());
    e.proposal_id = unbig(j.at("proposal_id"));
    e.block_number = j.at("block_number").get<uint64_t>();
    e.log_index = j.at("log_index").get<uint32_t>();
    e.timestamp_utc = j.at("timestamp_utc").get<int64_t>();
    e.tx_hash = j.value("tx_hash", "");
    switch (e.kind) {
    case abi::GovernanceKind::ProposalCreated:
        e.actor = j.at("proposer").get<std::string>();
        e.window_start = unbig(j.at("window_start"));
        e.window_end = unbig(j.at("window_end"));
        e.description = j.value("description", "");
        break;
    case abi::GovernanceKind::VoteCast:
        e.actor = j.at("voter").get<std::string>();
        e.support = abi::support_from_string(j.at("support").get<std::string>());
        e.weight = unbig(j.at("weight"));
        break;
    case abi::GovernanceKind::ProposalQueued:
        e.eta = unbig(j.at("eta"));
        break;
    default:
        break;
    }
    return e;
}

json to_json(const abi::TokenTransfer& t)
{
    return json {
        { "from", t.from },
        { "to", t.to },
        { "amount", big(t.amount) },
        { "block_number", t.block_number },
        { "log_index", t.log_index },
        { "timestamp_utc", t.timestamp_utc },
    };
}

abi::TokenTransfer token_transfer_from_json(const json& j)
{
    abi::TokenTransfer t;
    t.from = j.at("from").get<std::string>();
    t.to = j.at("to").get<std::string>();
    t.amount = unbig(j.at("amount"));
    t.block_number = j.at("block_number").get<uint64_t>();
    t.log_index = j.at("log_index").get<uint32_t>();
    t.timestamp_utc = j.value("timestamp_utc", int64_t { 0 });
    return t;
}

json to_json(const harmonize::ProposalSummary& p)
{
    return json {
        { "proposal_id", big(p.proposal_id) },
        { "proposer", p.proposer },
        { "created_at", p.created_at },
        { "voting_start", p.voting_start },
        { "voting_end", p.voting_end },
        { "outcome", harmonize::to_string(p.outcome) },
        { "executed", p.executed },
        { "votes_for", big(p.votes_for) },
        { "votes_against", big(p.votes_against) },
        { "votes_abstain", big(p.votes_abstain) },
    };
}

harmonize::ProposalSummary proposal_from_json(const json& j)
{
    harmonize::ProposalSummary p;
    p.proposal_id = unbig(j.at("proposal_id"));
    p.proposer = j.at("proposer").get<std::string>();
    p.created_at = j.at("created_at").get<int64_t>();
    p.voting_start = j.at("voting_start").get<int64_t>();
    p.voting_end = j.at("voting_end").get<int64_t>();
    p.outcome = harmonize::outcome_from_string(j.at("outcome").get<std::string>());
    p.executed = j.at("executed").get<bool>();
    p.votes_for = unbig(j.at("votes_for"));
    p.votes_against = unbig(j.at("votes_against"));
    p.votes_abstain = unbig(j.at("votes_abstain"));
    return p;
}

json to_json(const harmonize::ValidationReport& r)
{
    return json {
        { "events_in", r.events_in },
        { "duplicates", r.duplicates },
        { "timestamp_regressions", r.timestamp_regressions },
        { "orphan_votes", r.orphan_votes },
        { "lifecycle_without_creation", r.lifecycle_without_creation },
        { "window_violations", r.window_violations },
        { "supply_mismatch", r.supply_mismatch },
    };
}

harmonize::ValidationReport validation_from_json(const json& j)
{
    harmonize::ValidationReport r;
    r.events_in = j.value("events_in", uint64_t { 0 });
    r.duplicates = j.value("duplicates", uint64_t { 0 });
    r.timestamp_regressions = j.value("timestamp_regressions", uint64_t { 0 });
    r.orphan_votes = j.value("orphan_votes", uint64_t { 0 });
    r.lifecycle_without_creation = j.value("lifecycle_without_creation", uint64_t { 0 });
    r.window_violations = j.value("window_violations", uint64_t { 0 });
    r.supply_mismatch = j.value("supply_mismatch", uint64_t { 0 });
    return r;
}

json to_json(const harmonize::DaoRecord& record)
{
    json proposals = json::array();
    for (const auto& p : record.proposals)
        proposals.push_back(to_json(p));
    json voters = json::array();
    for (const auto& v : record.voters)
        voters.push_back(v);

    json j = {
        { "schema_version", kSchemaVersion },
        { "dao_id", record.dao_id },
        { "chain_id", record.chain_id },
        { "snapshot_block", record.snapshot_block },
        { "snapshot_time", record.snapshot_time },
        { "proposals", proposals },
        { "voters", voters },
        { "total_members", record.total_members },
        { "active_members", record.active_members },
        { "total_supply", big(record.total_supply) },
        { "circulating_supply", big(record.circulating_supply) },
        { "largest_holder_share", record.largest_holder_share },
        { "fully_automated", record.fully_automated },
        { "automation_detected", record.automation_detected },
        { "proposer_concentration", record.proposer_concentration },
        { "activity_tier", harmonize::to_string(record.tier) },
        { "governance_event_times", record.governance_event_times },
        { "validation", to_json(record.validation) },
    };
    if (record.treasury_usd)
        j["treasury_usd"] = *record.treasury_usd;
    else
        j["treasury_usd"] = nullptr;
    return j;
}

harmonize::DaoRecord dao_record_from_json(const json& j)
{
    int version = j.value("schema_version", 0);
    if (version != kSchemaVersion)
        throw parse_error("harmonised document has schema_version " + std::to_string(version) + ", expected "
                          + std::to_string(kSchemaVersion));

    harmonize::DaoRecord record;
    record.dao_id = j.at("dao_id").get<std::string>();
    record.chain_id = j.at("chain_id").get<int64_t>();
    record.snapshot_block = j.at("snapshot_block").get<uint64_t>();
    record.snapshot_time = j.at("snapshot_time").get<int64_t>();
    for (const auto& p : j.at("proposals"))
        record.proposals.push_back(proposal_from_json(p));
    for (const auto& v : j.at("voters"))
        record.voters.insert(v.get<std::string>());
    record.total_members = j.at("total_members").get<uint64_t>();
    record.active_members = j.at("active_members").get<uint64_t>();
    if (!j.at("treasury_usd").is_null())
        record.treasury_usd = j.at("treasury_usd").get<double>();
    record.total_supply = unbig(j.at("total_supply"));
    record.circulating_supply = unbig(j.at("circulating_supply"));
    record.largest_holder_share = j.at("largest_holder_share").get<double>();
    record.fully_automated = j.at("fully_automated").get<bool>();
    record.automation_detected = j.value("automation_detected", false);
    record.proposer_concentration = j.at("proposer_concentration").get<double>();
    record.tier = harmonize::activity_tier_from_string(j.at("activity_tier").get<std::string>());
    record.governance_event_times = j.at("governance_event_times").get<std::vector<int64_t>>();
    record.validation = validation_from_json(j.at("validation"));
    return record;
}

json to_json(const kpi::KpiOutcome& outcome)
{
    if (!outcome.assessable())
        return json { { "assessable", false }, { "reason", outcome.not_assessable_reason } };
    return json {
        { "assessable", true },
        { "level", kpi::to_string(outcome.assessment->level) },
        { "score", outcome.assessment->score },
    };
}

kpi::KpiOutcome kpi_outcome_from_json(const json& j)
{
    kpi::KpiOutcome outcome;
    if (!j.at("assessable").get<bool>()) {
        outcome.not_assessable_reason = j.value("reason", "");
        return outcome;
    }
    outcome.assessment = kpi::Assessment {
        kpi::level_from_string(j.at("level").get<std::string>()),
        j.at("score").get<double>(),
    };
    return outcome;
}

json to_json(const kpi::KpiAssessment& assessment)
{
    json j = {
        { "participation", to_json(assessment.participation) },
        { "funds", to_json(assessment.funds) },
        { "voting", to_json(assessment.voting) },
        { "decentralisation", to_json(assessment.decentralisation) },
    };
    if (assessment.composite)
        j["composite"] = *assessment.composite;
    else
        j["composite"] = nullptr;
    return j;
}

kpi::KpiAssessment kpi_assessment_from_json(const json& j)
{
    kpi::KpiAssessment a;
    a.participation = kpi_outcome_from_json(j.at("participation"));
    a.funds = kpi_outcome_from_json(j.at("funds"));
    a.voting = kpi_outcome_from_json(j.at("voting"));
    a.decentralisation = kpi_outcome_from_json(j.at("decentralisation"));
    if (!j.at("composite").is_null())
        a.composite = j.at("composite").get<double>();
    return a;
}

json to_json(const stats::TestResult& r)
{
    return json {
        { "test", r.test_name },
        { "statistic", r.statistic },
        { "p_value", r.p_value },
        { "df1", r.df1 },
        { "df2", r.df2 },
    };
}

json to_json(const stats::TestPlan& plan)
{
    json normality = json::array();
    for (const auto& entry : plan.normality) {
        json e = { { "group", entry.label } };
        if (entry.shapiro)
            e["shapiro"] = to_json(*entry.shapiro);
        else
            e["shapiro"] = nullptr; // n < 3, unassessed
        normality.push_back(std::move(e));
    }
    json j = {
        { "normality", normality },
        { "levene", to_json(plan.levene) },
        { "selected", plan.choice == stats::OmnibusChoice::Anova ? "anova" : "kruskal_wallis" },
        { "omnibus", to_json(plan.omnibus) },
        { "audit", plan.audit },
    };
    if (plan.posthoc) {
        json pairs = json::array();
        for (const auto& p : plan.posthoc->pairs)
            pairs.push_back(json {
                { "a", p.label_a },
                { "b", p.label_b },
                { "z", p.z },
                { "p_raw", p.p_raw },
                { "p_adjusted", p.p_adjusted },
            });
        j["posthoc"] = json { { "pairs", pairs }, { "unnecessary", plan.posthoc->posthoc_unnecessary } };
    } else {
        j["posthoc"] = nullptr;
    }
    return j;
}

json to_json(const report::StatReport& report)
{
    json analyses = json::array();
    for (const auto& a : report.analyses) {
        json groups = json::array();
        for (const auto& g : a.groups.groups)
            groups.push_back(json { { "label", g.label }, { "values", g.values } });
        json entry = {
            { "kpi", a.kpi },
            { "metric", a.metric_name },
            { "groups", groups },
        };
        if (a.plan)
            entry["plan"] = to_json(*a.plan);
        else
            entry["plan"] = nullptr;
        if (!a.skip_reason.empty())
            entry["skip_reason"] = a.skip_reason;
        analyses.push_back(std::move(entry));
    }
    json correlations = json::array();
    for (const auto& c : report.correlations) {
        json entry = { { "label", c.label } };
        entry["result"] = c.result ? to_json(*c.result) : json(nullptr);
        if (!c.skip_reason.empty())
            entry["skip_reason"] = c.skip_reason;
        correlations.push_back(std::move(entry));
    }
    return json {
        { "alpha", report.alpha },
        { "analyses", analyses },
        { "correlations", correlations },
    };
}

json to_json(const report::EcosystemSummary& summary)
{
    return json {
        { "dao_count", summary.dao_count },
        { "total_proposals", summary.total_proposals },
        { "unique_voters", summary.unique_voters },
        { "total_members", summary.total_members },
        { "level_histograms", summary.level_histograms },
        { "category_medians", summary.category_medians },
    };
}

json load_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw stage_dependency_error("missing input file: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(path.string() + ": " + e.what(), e.byte);
    }
}

void write_json_file(const std::filesystem::path& path, const json& doc)
{
    std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << doc.dump(2) << "\n";
        if (!out)
            throw data_integrity_error("cannot write " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace daolens::pipeline
