#include "daolens/abi/governance.hpp"

#include "daolens/common/bytes.hpp"
#include "daolens/common/errors.hpp"

#include <nlohmann/json.hpp>

namespace daolens::abi {

using nlohmann::json;

const char* to_string(Support s)
{
    switch (s) {
    case Support::Against: return "against";
    case Support::For: return "for";
    case Support::Abstain: return "abstain";
    }
    return "against";
}

Support support_from_string(const std::string& s)
{
    if (s == "against")
        return Support::Against;
    if (s == "for")
        return Support::For;
    if (s == "abstain")
        return Support::Abstain;
    throw config_error("unknown support label: " + s);
}

const char* to_string(GovernanceKind k)
{
    switch (k) {
    case GovernanceKind::ProposalCreated: return "proposal_created";
    case GovernanceKind::VoteCast: return "vote_cast";
    case GovernanceKind::ProposalExecuted: return "proposal_executed";
    case GovernanceKind::ProposalCanceled: return "proposal_canceled";
    case GovernanceKind::ProposalQueued: return "proposal_queued";
    }
    return "proposal_created";
}

GovernanceKind governance_kind_from_string(const std::string& s)
{
    if (s == "proposal_created")
        return GovernanceKind::ProposalCreated;
    if (s == "vote_cast")
        return GovernanceKind::VoteCast;
    if (s == "proposal_executed")
        return GovernanceKind::ProposalExecuted;
    if (s == "proposal_canceled")
        return GovernanceKind::ProposalCanceled;
    if (s == "proposal_queued")
        return GovernanceKind::ProposalQueued;
    throw config_error("unknown governance event kind: " + s);
}

bool TokenTransfer::is_mint() const
{
    return from == kZeroAddress;
}

bool TokenTransfer::is_burn() const
{
    return to == kZeroAddress;
}

EventMapping EventMapping::from_json_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("mapping table: ") + e.what(), e.byte);
    }

    EventMapping out;
    out.framework = doc.value("framework", "");
    out.abi_path = doc.value("abi", "");
    std::string unit = doc.value("window_unit", "block");
    if (unit == "block")
        out.window_unit = WindowUnit::Block;
    else if (unit == "timestamp")
        out.window_unit = WindowUnit::Timestamp;
    else
        throw config_error("mapping window_unit must be block or timestamp, got " + unit);

    const json events = doc.value("events", json::object());
    for (const auto& [event_name, rule_doc] : events.items()) {
        Rule rule;
        rule.kind = governance_kind_from_string(rule_doc.value("kind", ""));
        const json fields = rule_doc.value("fields", json::object());
        for (const auto& [role, param] : fields.items())
            rule.fields[role] = param.get<std::string>();
        const json supports = rule_doc.value("support_values", json::object());
        for (const auto& [raw, label] : supports.items()) {
            support_from_string(label.get<std::string>()); // validate early
            rule.support_values[raw] = label.get<std::string>();
        }
        out.events[event_name] = std::move(rule);
    }
    return out;
}

namespace {

// Roles each governance kind requires from its mapping rule.
const std::map<GovernanceKind, std::vector<std::string>>& required_roles()
{
    static const std::map<GovernanceKind, std::vector<std::string>> roles = {
        { GovernanceKind::ProposalCreated, { "proposal_id", "proposer", "vote_start", "vote_end" } },
        { GovernanceKind::VoteCast, { "proposal_id", "voter", "support", "weight" } },
        { GovernanceKind::ProposalExecuted, { "proposal_id" } },
        { GovernanceKind::ProposalCanceled, { "proposal_id" } },
        { GovernanceKind::ProposalQueued, { "proposal_id", "eta" } },
    };
    return roles;
}

const Value& require_param(const DecodedEvent& decoded, const EventMapping::Rule& rule, const std::string& role)
{
    auto it = rule.fields.find(role);
    if (it == rule.fields.end())
        throw config_error("mapping for " + decoded.event_name + " lacks role " + role);
    const Value* v = decoded.find(it->second);
    if (!v)
        throw malformed_log_error("event " + decoded.event_name + " has no parameter " + it->second);
    return *v;
}

BigInt require_uint(const DecodedEvent& decoded, const EventMapping::Rule& rule, const std::string& role)
{
    const Value& v = require_param(decoded, rule, role);
    if (const auto* big = std::get_if<BigInt>(&v.data))
        return *big;
    throw malformed_log_error("parameter for role " + role + " is not an integer");
}

std::string require_address(const DecodedEvent& decoded, const EventMapping::Rule& rule, const std::string& role)
{
    const Value& v = require_param(decoded, rule, role);
    if (const auto* text = std::get_if<std::string>(&v.data))
        return *text;
    throw malformed_log_error("parameter for role " + role + " is not an address");
}

Support decode_support(const Value& v, const EventMapping::Rule& rule)
{
    std::string key;
    if (const auto* big = std::get_if<BigInt>(&v.data))
        key = big->str();
    else if (const auto* flag = std::get_if<bool>(&v.data))
        key = *flag ? "1" : "0"; // Governor Alpha encodes support as bool
    else
        throw malformed_log_error("support parameter is neither integer nor bool");

    auto it = rule.support_values.find(key);
    if (it == rule.support_values.end())
        throw malformed_log_error("support value " + key + " not covered by mapping");
    return support_from_string(it->second);
}

} // namespace

void validate_mapping(const EventMapping& mapping, const std::vector<AbiEventSpec>& specs)
{
    for (const auto& [event_name, rule] : mapping.events) {
        const AbiEventSpec* spec = nullptr;
        for (const auto& candidate : specs)
            if (candidate.name == event_name)
                spec = &candidate;
        if (!spec)
            throw config_error("mapping references event " + event_name + " absent from the ABI");
        for (const auto& role : required_roles().at(rule.kind)) {
            auto field = rule.fields.find(role);
            if (field == rule.fields.end())
                throw config_error("mapping for " + event_name + " lacks role " + role);
            bool found = false;
            for (const auto& input : spec->inputs)
                if (input.name == field->second)
                    found = true;
            if (!found)
                throw config_error("mapping for " + event_name + " references parameter " + field->second
                                   + " absent from the ABI event");
        }
        if (rule.kind == GovernanceKind::VoteCast && rule.support_values.empty())
            throw config_error("mapping for " + event_name + " lacks support_values");
    }
}

std::optional<GovernanceEvent> map_to_governance(const DecodedEvent& decoded, const EventMapping& mapping)
{
    auto it = mapping.events.find(decoded.event_name);
    if (it == mapping.events.end())
        return std::nullopt;
    const EventMapping::Rule& rule = it->second;

    GovernanceEvent out;
    out.kind = rule.kind;
    out.block_number = decoded.block_number;
    out.log_index = decoded.log_index;
    out.timestamp_utc = decoded.timestamp_utc;
    out.tx_hash = decoded.tx_hash;
    out.proposal_id = require_uint(decoded, rule, "proposal_id");
    if (out.proposal_id < 0)
        throw malformed_log_error("negative proposal id");

    switch (rule.kind) {
    case GovernanceKind::ProposalCreated: {
        out.actor = require_address(decoded, rule, "proposer");
        out.window_start = require_uint(decoded, rule, "vote_start");
        out.window_end = require_uint(decoded, rule, "vote_end");
        if (auto field = rule.fields.find("description"); field != rule.fields.end())
            if (const Value* v = decoded.find(field->second))
                if (const auto* text = std::get_if<std::string>(&v->data))
                    out.description = *text;
        break;
    }
    case GovernanceKind::VoteCast:
        out.actor = require_address(decoded, rule, "voter");
        out.support = decode_support(require_param(decoded, rule, "support"), rule);
        out.weight = require_uint(decoded, rule, "weight");
        break;
    case GovernanceKind::ProposalQueued:
        out.eta = require_uint(decoded, rule, "eta");
        break;
    case GovernanceKind::ProposalExecuted:
    case GovernanceKind::ProposalCanceled:
        break;
    }
    return out;
}

const AbiEventSpec& erc20_transfer_spec()
{
    static const AbiEventSpec spec = [] {
        AbiEventSpec s;
        s.name = "Transfer";
        s.inputs = {
            { "from", parse_sol_type("address"), true },
            { "to", parse_sol_type("address"), true },
            { "value", parse_sol_type("uint256"), false },
        };
        return s;
    }();
    return spec;
}

std::optional<TokenTransfer> transfer_from_decoded(const DecodedEvent& decoded)
{
    if (decoded.event_name != "Transfer" || decoded.params.size() != 3)
        return std::nullopt;
    const Value* from = decoded.find("from");
    const Value* to = decoded.find("to");
    const Value* value = decoded.find("value");
    if (!from || !to || !value)
        return std::nullopt;
    const auto* from_text = std::get_if<std::string>(&from->data);
    const auto* to_text = std::get_if<std::string>(&to->data);
    const auto* amount = std::get_if<BigInt>(&value->data);
    if (!from_text || !to_text || !amount)
        return std::nullopt;

    TokenTransfer t;
    t.from = *from_text;
    t.to = *to_text;
    t.amount = *amount;
    if (t.amount < 0)
        throw malformed_log_error("negative transfer amount");
    t.block_number = decoded.block_number;
    t.log_index = decoded.log_index;
    t.timestamp_utc = decoded.timestamp_utc;
    return t;
}

} // namespace daolens::abi
