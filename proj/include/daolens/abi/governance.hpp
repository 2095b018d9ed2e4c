// governance.hpp - normalizing decoded events into framework-independent
// governance records, driven by per-DAO mapping tables

#pragma once

#include "daolens/abi/types.hpp"

#include <map>
#include <optional>
#include <string>

namespace daolens::abi {

enum class Support { Against, For, Abstain };

const char* to_string(Support s);
Support support_from_string(const std::string& s);

enum class GovernanceKind {
    ProposalCreated,
    VoteCast,
    ProposalExecuted,
    ProposalCanceled,
    ProposalQueued,
};

const char* to_string(GovernanceKind k);
GovernanceKind governance_kind_from_string(const std::string& s);

// One normalized governance event. Only the fields relevant to the kind are
// populated; window values stay in the mapping's raw unit (block or
// timestamp) until harmonization resolves them.
struct GovernanceEvent {
    GovernanceKind kind = GovernanceKind::ProposalCreated;
    BigInt proposal_id;
    std::string actor;  // proposer / voter
    Support support = Support::Against;
    BigInt weight;      // vote weight, raw units
    BigInt window_start; // ProposalCreated only
    BigInt window_end;   // ProposalCreated only
    BigInt eta;          // ProposalQueued only
    std::string description;

    uint64_t block_number = 0;
    uint32_t log_index = 0;
    int64_t timestamp_utc = 0;
    std::string tx_hash;

    bool operator==(const GovernanceEvent&) const = default;
};

struct TokenTransfer {
    std::string from;
    std::string to;
    BigInt amount;
    uint64_t block_number = 0;
    uint32_t log_index = 0;
    int64_t timestamp_utc = 0;

    bool is_mint() const;
    bool is_burn() const;

    bool operator==(const TokenTransfer&) const = default;
};

enum class WindowUnit { Block, Timestamp };

// Per-framework role table: which raw event maps to which governance kind
// and which parameter plays which role.
struct EventMapping {
    std::string framework;
    std::string abi_path; // relative to the mapping file
    WindowUnit window_unit = WindowUnit::Block;

    struct Rule {
        GovernanceKind kind;
        std::map<std::string, std::string> fields; // role -> event param name
        std::map<std::string, std::string> support_values; // raw value -> against/for/abstain
    };
    std::map<std::string, Rule> events; // event name -> rule

    static EventMapping from_json_text(const std::string& text);
};

// Checks every mapped parameter exists on the corresponding ABI event.
// Throws config_error naming the first missing parameter.
void validate_mapping(const EventMapping& mapping, const std::vector<AbiEventSpec>& specs);

// Normalizes one decoded event. Returns nothing when the event is not in the
// mapping (irrelevant to KPIs). Throws malformed_log_error when a mapped
// parameter is missing or has an unusable value.
std::optional<GovernanceEvent> map_to_governance(const DecodedEvent& decoded, const EventMapping& mapping);

// Fixed ERC-20 Transfer(address indexed, address indexed, uint256) handling.
const AbiEventSpec& erc20_transfer_spec();
std::optional<TokenTransfer> transfer_from_decoded(const DecodedEvent& decoded);

} // namespace daolens::abi
