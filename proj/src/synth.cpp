// Synthetic DAO generator. Builds a deterministic on-chain history (token
// mints/transfers plus a governance lifecycle), wire-encodes it through the
// real ABI codec, and records exactly the RPC responses the fetch stage
// will request. Ground truth is tracked from the generator's own ledger,
// never from the pipeline under test.

#include "daolens/synth/synth.hpp"

#include "daolens/abi/codec.hpp"
#include "daolens/abi/governance.hpp"
#include "daolens/common/errors.hpp"
#include "daolens/common/keccak.hpp"
#include "daolens/kpi/kpi.hpp"
#include "daolens/pipeline/serialize.hpp"
#include "daolens/pipeline/stages.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

namespace daolens::synth {

using nlohmann::json;

namespace {

// Fixed chain parameters for every synthetic project.
constexpr int64_t kChainId = 31337;
constexpr int64_t kGenesisTime = 1'600'000'000;
constexpr int64_t kSecondsPerBlock = 12;
constexpr uint64_t kSnapshotBlock = 3'000'000;
constexpr uint64_t kDeployBlock = 1;
constexpr uint64_t kMaxBlockSpan = 800'000;
constexpr int64_t kDay = 86'400;
constexpr uint64_t kBlocksPerDay = kDay / kSecondsPerBlock;

int64_t block_time(uint64_t block)
{
    return kGenesisTime + int64_t(block) * kSecondsPerBlock;
}

std::string derive_address(uint64_t seed, const std::string& tag, uint64_t index)
{
    std::string material = std::to_string(seed) + "/" + tag + "/" + std::to_string(index);
    Bytes32 digest = keccak256(material);
    return to_hex(std::span<const uint8_t>(digest.data() + 12, 20));
}

std::string derive_tx_hash(uint64_t seed, uint64_t block, uint32_t index)
{
    std::string material = "tx/" + std::to_string(seed) + "/" + std::to_string(block) + "/" + std::to_string(index);
    return to_hex(keccak256(material));
}

// The synthetic governor speaks an OpenZeppelin-style dialect with a
// timestamp clock, so voting windows are UTC seconds on the wire.
const char* kGovernorAbi = R"([
  {"type":"event","name":"ProposalCreated","anonymous":false,"inputs":[
    {"name":"proposalId","type":"uint256","indexed":false},
    {"name":"proposer","type":"address","indexed":false},
    {"name":"voteStart","type":"uint256","indexed":false},
    {"name":"voteEnd","type":"uint256","indexed":false},
    {"name":"description","type":"string","indexed":false}]},
  {"type":"event","name":"VoteCast","anonymous":false,"inputs":[
    {"name":"voter","type":"address","indexed":true},
    {"name":"proposalId","type":"uint256","indexed":false},
    {"name":"support","type":"uint8","indexed":false},
    {"name":"weight","type":"uint256","indexed":false},
    {"name":"reason","type":"string","indexed":false}]},
  {"type":"event","name":"ProposalQueued","anonymous":false,"inputs":[
    {"name":"proposalId","type":"uint256","indexed":false},
    {"name":"etaSeconds","type":"uint256","indexed":false}]},
  {"type":"event","name":"ProposalExecuted","anonymous":false,"inputs":[
    {"name":"proposalId","type":"uint256","indexed":false}]},
  {"type":"event","name":"ProposalCanceled","anonymous":false,"inputs":[
    {"name":"proposalId","type":"uint256","indexed":false}]}
])";

const char* kGovernorMapping = R"({
  "framework": "synthetic-governor",
  "abi": "synthetic_governor_abi.json",
  "window_unit": "timestamp",
  "events": {
    "ProposalCreated": {"kind": "proposal_created", "fields": {
      "proposal_id": "proposalId", "proposer": "proposer",
      "vote_start": "voteStart", "vote_end": "voteEnd", "description": "description"}},
    "VoteCast": {"kind": "vote_cast", "fields": {
      "voter": "voter", "proposal_id": "proposalId", "support": "support", "weight": "weight"},
      "support_values": {"0": "against", "1": "for", "2": "abstain"}},
    "ProposalQueued": {"kind": "proposal_queued", "fields": {"proposal_id": "proposalId", "eta": "etaSeconds"}},
    "ProposalExecuted": {"kind": "proposal_executed", "fields": {"proposal_id": "proposalId"}},
    "ProposalCanceled": {"kind": "proposal_canceled", "fields": {"proposal_id": "proposalId"}}
  }
})";

const char* kErc20Abi = R"([
  {"type":"event","name":"Transfer","anonymous":false,"inputs":[
    {"name":"from","type":"address","indexed":true},
    {"name":"to","type":"address","indexed":true},
    {"name":"value","type":"uint256","indexed":false}]},
  {"type":"event","name":"Approval","anonymous":false,"inputs":[
    {"name":"owner","type":"address","indexed":true},
    {"name":"spender","type":"address","indexed":true},
    {"name":"value","type":"uint256","indexed":false}]}
])";

// ---------------------------------------------------------------------------
// World model for one DAO

struct PendingLog {
    std::string address;
    uint64_t block = 0;
    std::vector<Bytes32> topics;
    Bytes data;
};

class World {
public:
    World(const SynthSpec& spec)
        : spec_(spec)
        , rng_(spec.seed)
        , governor_events_(abi::parse_abi(kGovernorAbi))
        , token_events_(abi::parse_abi(kErc20Abi))
    {
        governance_address_ = derive_address(spec.seed, "governor", 0);
        token_address_ = derive_address(spec.seed, "token", 0);
        treasury_address_ = derive_address(spec.seed, "treasury", 0);
    }

    GroundTruth build();

    const std::vector<chain::RawLog>& logs() const { return logs_; }
    const std::string& governance_address() const { return governance_address_; }
    const std::string& token_address() const { return token_address_; }
    const std::string& treasury_address() const { return treasury_address_; }
    const BigInt& total_supply() const { return total_supply_; }

private:
    const abi::AbiEventSpec& spec_for(const std::vector<abi::AbiEventSpec>& specs, const std::string& name)
    {
        for (const auto& s : specs)
            if (s.name == name)
                return s;
        throw spec_error("unknown synthetic event " + name);
    }

    void emit(const std::string& address, const std::vector<abi::AbiEventSpec>& specs, const std::string& name,
              uint64_t block, std::vector<abi::Value> values)
    {
        abi::EncodedLog encoded = abi::encode_log(spec_for(specs, name), values);
        pending_.push_back(PendingLog { address, block, std::move(encoded.topics), std::move(encoded.data) });
    }

    void transfer(uint64_t block, const std::string& from, const std::string& to, const BigInt& amount)
    {
        emit(token_address_, token_events_, "Transfer", block,
             { abi::Value::from_text(from), abi::Value::from_text(to), abi::Value::from_uint(amount) });
        if (from != kZeroAddress) {
            ledger_[from] -= amount;
            if (ledger_[from] < 0)
                throw spec_error("generator drove a balance negative; scenario bug");
        }
        if (to != kZeroAddress)
            ledger_[to] += amount;
        if (from == kZeroAddress)
            minted_ += amount;
        if (to == kZeroAddress)
            burned_ += amount;
        ++transfer_count_;
    }

    void generate_token_history();
    void generate_governance_history(GroundTruth& truth);
    void finalize_logs();

    SynthSpec spec_;
    SplitMix64 rng_;
    std::vector<abi::AbiEventSpec> governor_events_;
    std::vector<abi::AbiEventSpec> token_events_;

    std::string governance_address_;
    std::string token_address_;
    std::string treasury_address_;

    std::vector<std::string> members_;
    std::map<std::string, BigInt> ledger_;
    BigInt minted_;
    BigInt burned_;
    BigInt total_supply_;
    uint64_t transfer_count_ = 0;

    std::vector<PendingLog> pending_;
    std::vector<chain::RawLog> logs_;

    std::vector<int64_t> gov_event_times_;
};

void World::generate_token_history()
{
    const BigInt unit = BigInt("1000000000000000"); // 1e15 raw units

    members_.reserve(spec_.member_count);
    for (uint64_t i = 0; i < spec_.member_count; ++i)
        members_.push_back(derive_address(spec_.seed, "member", i));

    // Holder balances per the requested distribution.
    std::vector<BigInt> balances(spec_.member_count);
    BigInt circulating = 0;
    switch (spec_.holder_distribution) {
    case HolderDistribution::Uniform:
        for (auto& b : balances)
            b = unit * BigInt(100 + rng_.below(900));
        break;
    case HolderDistribution::Pareto:
        for (auto& b : balances) {
            double u = std::max(1e-9, rng_.unit());
            double scale = 100.0 / std::pow(u, 1.0 / spec_.pareto_alpha);
            b = unit * BigInt(uint64_t(std::min(scale, 1e7)));
            if (b == 0)
                b = unit;
        }
        break;
    case HolderDistribution::SingleWhale: {
        for (size_t i = 1; i < balances.size(); ++i)
            balances[i] = unit * BigInt(100 + rng_.below(900));
        BigInt others = 0;
        for (size_t i = 1; i < balances.size(); ++i)
            others += balances[i];
        if (spec_.member_count == 1) {
            balances[0] = unit * 1000;
        } else {
            // whale / (whale + others) == whale_share, solved for whale
            double ratio = spec_.whale_share / (1.0 - spec_.whale_share);
            balances[0] = BigInt(double(others) * ratio);
        }
        break;
    }
    }
    for (const auto& b : balances)
        circulating += b;

    // Treasury holds a seed-derived slice of the supply, out of circulation.
    double treasury_fraction = rng_.in(0.15, 0.7);
    BigInt treasury_tokens = BigInt(double(circulating) * treasury_fraction / (1.0 - treasury_fraction));

    // Mint everything across a handful of early blocks.
    uint64_t block = 10;
    transfer(block, kZeroAddress, treasury_address_, treasury_tokens);
    for (uint64_t i = 0; i < spec_.member_count; ++i)
        transfer(10 + i % 5, kZeroAddress, members_[i], balances[i]);

    // Member-to-member churn; the top holder sits out so distribution-shaped
    // scenarios keep their intended largest-holder share.
    if (spec_.member_count > 2) {
        uint64_t churn = std::min<uint64_t>(200, spec_.member_count / 2);
        for (uint64_t i = 0; i < churn; ++i) {
            uint64_t from = 1 + rng_.below(spec_.member_count - 1);
            uint64_t to = 1 + rng_.below(spec_.member_count - 1);
            if (from == to)
                continue;
            BigInt available = ledger_[members_[from]];
            if (available < 4)
                continue;
            BigInt amount = available / BigInt(4 + rng_.below(4));
            if (amount == 0)
                continue;
            transfer(100 + i, members_[from], members_[to], amount);
        }
        // One small burn keeps the conservation path honest.
        BigInt b1 = ledger_[members_[1]];
        if (b1 > 10)
            transfer(400, members_[1], kZeroAddress, b1 / 10);
    }

    total_supply_ = minted_ - burned_;
}

void World::generate_governance_history(GroundTruth& truth)
{
    const uint64_t n = spec_.proposal_count;
    const uint64_t participant_count = uint64_t(std::llround(spec_.participation_target * double(spec_.member_count)));

    std::vector<std::string> participants(members_.begin(),
                                          members_.begin() + std::min<size_t>(participant_count, members_.size()));

    const uint64_t approved_target = uint64_t(std::llround(spec_.approval_target * double(n)));

    // Proposer pool: roughly a fifth of the participants, at least one.
    std::vector<std::string> proposers;
    if (n > 0) {
        size_t pool = std::max<size_t>(1, participants.size() / 5);
        if (participants.empty())
            proposers.push_back(members_.front()); // spec.validate() rules out the empty case
        else
            proposers.assign(participants.begin(), participants.begin() + pool);
    }

    // Recency profile decides how close governance activity sits to the
    // snapshot, which drives the activity tier.
    uint64_t gap_days;
    switch (rng_.below(3)) {
    case 0: gap_days = 2; break;   // recent burst
    case 1: gap_days = 45; break;  // quarter-scale activity
    default: gap_days = 120; break; // stale
    }

    std::map<std::string, uint64_t> proposals_by;
    std::set<std::string> voted_or_proposed;
    int64_t duration_seconds_total = 0;
    const BigInt weight_unit = BigInt("1000000000000000000");

    for (uint64_t p = 0; p < n; ++p) {
        const BigInt proposal_id = BigInt(p + 1);
        const bool approved = p < approved_target;

        double duration_days = rng_.in(spec_.duration_days_min, spec_.duration_days_max);
        uint64_t duration_blocks = std::max<uint64_t>(10, uint64_t(std::llround(duration_days * double(kBlocksPerDay))));

        uint64_t gap_blocks = (gap_days + 4 * (n - 1 - p)) * kBlocksPerDay;
        if (gap_blocks + duration_blocks + 2 * kBlocksPerDay > kSnapshotBlock - 1000)
            throw spec_error("proposal schedule does not fit before the snapshot block");
        uint64_t end_block = kSnapshotBlock - gap_blocks;
        uint64_t start_block = end_block - duration_blocks;
        uint64_t created_block = start_block - 300; // one hour of blocks

        const std::string& proposer = proposers[p % proposers.size()];
        ++proposals_by[proposer];
        voted_or_proposed.insert(proposer);

        int64_t vote_start_ts = block_time(start_block);
        int64_t vote_end_ts = block_time(end_block);
        duration_seconds_total += vote_end_ts - vote_start_ts;

        emit(governance_address_, governor_events_, "ProposalCreated", created_block,
             { abi::Value::from_uint(proposal_id), abi::Value::from_text(proposer),
               abi::Value::from_uint(BigInt(vote_start_ts)), abi::Value::from_uint(BigInt(vote_end_ts)),
               abi::Value::from_text("synthetic proposal " + proposal_id.str()) });
        gov_event_times_.push_back(block_time(created_block));

        // Voter assignment: every proposal gets at least one voter; every
        // participant votes on at least one proposal.
        std::set<std::string> voters;
        if (!participants.empty()) {
            voters.insert(participants[p % participants.size()]);
            for (size_t i = 0; i < participants.size(); ++i)
                if (i % std::max<uint64_t>(n, 1) == p)
                    voters.insert(participants[i]);
        }

        uint32_t vote_slot = 0;
        for (const auto& voter : voters) {
            voted_or_proposed.insert(voter);
            // Approved proposals receive only for/abstain votes; rejected
            // ones only against/abstain, so the tally forces the outcome.
            uint64_t roll = rng_.below(10);
            int support = approved ? (roll < 8 ? 1 : 2) : (roll < 8 ? 0 : 2);
            BigInt weight = weight_unit * BigInt(1 + rng_.below(5));

            uint64_t span = std::max<uint64_t>(1, duration_blocks - 2);
            uint64_t vote_block = start_block + 1 + (vote_slot * span) / std::max<size_t>(voters.size(), 1);
            ++vote_slot;

            emit(governance_address_, governor_events_, "VoteCast", vote_block,
                 { abi::Value::from_text(voter), abi::Value::from_uint(proposal_id),
                   abi::Value::from_uint(BigInt(support)), abi::Value::from_uint(weight),
                   abi::Value::from_text("") });
            gov_event_times_.push_back(block_time(vote_block));
            ++truth.vote_events;
        }

        if (approved && spec_.automated) {
            uint64_t queue_block = end_block + 50;
            int64_t eta = block_time(end_block) + kDay;
            emit(governance_address_, governor_events_, "ProposalQueued", queue_block,
                 { abi::Value::from_uint(proposal_id), abi::Value::from_uint(BigInt(eta)) });
            gov_event_times_.push_back(block_time(queue_block));

            uint64_t exec_block = end_block + kBlocksPerDay + 100;
            emit(governance_address_, governor_events_, "ProposalExecuted", exec_block,
                 { abi::Value::from_uint(proposal_id) });
            gov_event_times_.push_back(block_time(exec_block));
        }
    }

    // Ground truth bookkeeping.
    truth.total_proposals = n;
    truth.approved = approved_target;
    if (n > 0)
        truth.approval_rate = double(approved_target) / double(n);
    truth.avg_duration_days = n == 0 ? 0.0 : double(duration_seconds_total) / double(n) / 86'400.0;
    truth.active_members = voted_or_proposed.size();

    uint64_t modal = 0;
    for (const auto& [_, count] : proposals_by)
        modal = std::max(modal, count);
    truth.proposer_concentration = n == 0 ? 0.0 : double(modal) / double(n);
}

void World::finalize_logs()
{
    std::stable_sort(pending_.begin(), pending_.end(),
                     [](const PendingLog& a, const PendingLog& b) { return a.block < b.block; });

    uint64_t current_block = UINT64_MAX;
    uint32_t next_index = 0;
    for (auto& p : pending_) {
        if (p.block != current_block) {
            current_block = p.block;
            next_index = 0;
        }
        chain::RawLog log;
        log.address = p.address;
        log.topics = std::move(p.topics);
        log.data = std::move(p.data);
        log.block_number = p.block;
        log.log_index = next_index++;
        log.tx_hash = derive_tx_hash(spec_.seed, p.block, log.log_index);
        logs_.push_back(std::move(log));
    }
}

GroundTruth World::build()
{
    GroundTruth truth;
    truth.dao_id = spec_.dao_id;
    truth.seed = spec_.seed;
    truth.fully_automated = spec_.automated;
    truth.treasury_usd = spec_.treasury_usd;

    generate_token_history();
    generate_governance_history(truth);
    finalize_logs();

    // Final holdings: members only (treasury and burn addresses excluded),
    // mirroring how the harmonised record counts them.
    BigInt largest = 0;
    uint64_t holders = 0;
    for (const auto& [addr, balance] : ledger_) {
        if (balance == 0 || addr == treasury_address_ || addr == kZeroAddress)
            continue;
        ++holders;
        largest = std::max(largest, balance);
    }
    truth.total_members = holders;
    truth.total_supply = total_supply_;
    BigInt treasury_held = ledger_.count(treasury_address_) ? ledger_.at(treasury_address_) : BigInt(0);
    truth.circulating_supply = total_supply_ - treasury_held;
    truth.circulating_pct = total_supply_ == 0 ? 0.0 : double(truth.circulating_supply) / double(total_supply_);
    truth.largest_holder_share = truth.circulating_supply == 0
        ? 0.0
        : double(largest) / double(truth.circulating_supply);
    truth.participation_rate = truth.total_members == 0
        ? 0.0
        : std::min(1.0, double(truth.active_members) / double(truth.total_members));
    truth.transfer_events = transfer_count_;
    truth.governance_events = gov_event_times_.size();

    std::sort(gov_event_times_.begin(), gov_event_times_.end());
    truth.tier = harmonize::classify_activity(gov_event_times_, block_time(kSnapshotBlock));

    // Expected Table 1 levels, restated here so the generator stays an
    // independent oracle for the pipeline's KPI path.
    auto set_level = [](LevelScore& slot, const char* level, double score) {
        slot.level = level;
        slot.score = score;
    };

    double rate = truth.participation_rate;
    if (rate < 0.10)
        set_level(truth.participation, "Low", 1.0);
    else if (rate <= 0.40)
        set_level(truth.participation, "Medium", 2.0);
    else
        set_level(truth.participation, "High", 3.0);

    double usd = truth.treasury_usd;
    if (usd < 1e8)
        set_level(truth.funds, "Low", 0.75);
    else if (usd > 1e9)
        set_level(truth.funds, "High", 3.0);
    else if (truth.circulating_pct > 0.5)
        set_level(truth.funds, "Medium-High", 2.25);
    else
        set_level(truth.funds, "Medium-Low", 1.5);

    double days = truth.avg_duration_days;
    bool window_ok = days >= 3.0 && days <= 14.0;
    if (!window_ok || truth.approval_rate < 0.30)
        set_level(truth.voting, "Low", 1.0);
    else if (truth.approval_rate > 0.70)
        set_level(truth.voting, "High", 3.0);
    else
        set_level(truth.voting, "Medium", 2.0);

    double share = truth.largest_holder_share;
    bool participation_ok = truth.participation.level == "Medium" || truth.participation.level == "High";
    if (share >= 0.66)
        set_level(truth.decentralisation, "Low", 0.6);
    else if (share >= 0.33)
        set_level(truth.decentralisation, "Medium-Low", 1.2);
    else if (share >= 0.10) {
        if (!participation_ok)
            set_level(truth.decentralisation, "Medium-Low", 1.2);
        else if (truth.fully_automated)
            set_level(truth.decentralisation, "Medium-High", 2.4);
        else
            set_level(truth.decentralisation, "Medium", 1.8);
    } else {
        set_level(truth.decentralisation, "High", 3.0);
    }

    truth.composite = truth.participation.score + truth.funds.score + truth.voting.score
        + truth.decentralisation.score;
    return truth;
}

// ---------------------------------------------------------------------------
// A provider serving the generated world, used behind the recorder.

class SimulatedProvider : public chain::Provider {
public:
    SimulatedProvider(const World& world)
        : world_(world)
    {
    }

    json call(const std::string& method, const json& params) override
    {
        if (method == "eth_blockNumber")
            return quantity_to_hex(kSnapshotBlock);

        if (method == "eth_getBlockByNumber") {
            uint64_t block = quantity_from_hex(params.at(0).get<std::string>());
            if (block > kSnapshotBlock)
                return nullptr;
            return json { { "number", quantity_to_hex(block) },
                          { "timestamp", quantity_to_hex(uint64_t(block_time(block))) } };
        }

        if (method == "eth_getLogs") {
            const json& filter = params.at(0);
            std::string address = filter.at("address").get<std::string>();
            uint64_t from = quantity_from_hex(filter.at("fromBlock").get<std::string>());
            uint64_t to = quantity_from_hex(filter.at("toBlock").get<std::string>());
            json out = json::array();
            for (const auto& log : world_.logs()) {
                if (log.address != address || log.block_number < from || log.block_number > to)
                    continue;
                out.push_back(chain::raw_log_to_json(log));
            }
            return out;
        }

        if (method == "eth_call") {
            std::string to = params.at(0).at("to").get<std::string>();
            std::string data = params.at(0).at("data").get<std::string>();
            if (to != world_.token_address())
                return "0x"; // no code elsewhere
            auto selector = [&](const char* sig) {
                return to_hex(std::span<const uint8_t>(keccak256(std::string_view(sig)).data(), 4));
            };
            if (data == selector("decimals()"))
                return "0x" + std::string(62, '0') + "12"; // 18
            if (data == selector("totalSupply()")) {
                BigInt v = world_.total_supply();
                std::string hex;
                static const char digits[] = "0123456789abcdef";
                while (v > 0) {
                    BigInt nibble = v & 0xf;
                    hex.insert(hex.begin(), digits[nibble.convert_to<int>()]);
                    v >>= 4;
                }
                if (hex.empty())
                    hex = "0";
                return "0x" + std::string(64 - hex.size(), '0') + hex;
            }
            if (data == selector("symbol()")) {
                // ABI string "SYN"
                std::string payload = "53594e"; // hex of SYN
                return "0x" + std::string(62, '0') + "20" + std::string(62, '0') + "03" + payload
                    + std::string(64 - payload.size(), '0');
            }
            throw chain::rpc_error(3, "execution reverted");
        }

        throw transport_error("simulated provider does not implement " + method);
    }

private:
    const World& world_;
};

} // namespace

// ---------------------------------------------------------------------------

void SynthSpec::validate() const
{
    if (member_count == 0)
        throw spec_error("member_count must be positive");
    if (participation_target < 0.0 || participation_target > 1.0)
        throw spec_error("participation_target must lie in [0, 1]");
    if (approval_target < 0.0 || approval_target > 1.0)
        throw spec_error("approval_target must lie in [0, 1]");
    if (participation_target > 0.0 && proposal_count == 0 && std::llround(participation_target * double(member_count)) > 0)
        throw spec_error("participants need proposals to vote on (participation_target > 0, proposal_count = 0)");
    if (duration_days_min < 0.0 || duration_days_max < duration_days_min)
        throw spec_error("duration range is inverted");
    if (duration_days_max > 60.0)
        throw spec_error("durations beyond 60 days do not fit the synthetic schedule");
    if (holder_distribution == HolderDistribution::SingleWhale
        && (whale_share <= 0.0 || whale_share >= 1.0))
        throw spec_error("whale_share must lie in (0, 1)");
    if (holder_distribution == HolderDistribution::Pareto && pareto_alpha <= 0.0)
        throw spec_error("pareto_alpha must be positive");
    if (treasury_usd < 0.0)
        throw spec_error("treasury_usd must be non-negative");
    if (proposal_count > 0 && approval_target > 0.0
        && std::llround(participation_target * double(member_count)) == 0 && !automated) {
        // no voters and no execution events: approved outcomes unreachable
        if (std::llround(approval_target * double(proposal_count)) > 0)
            throw spec_error("approval_target unreachable without participants or automation");
    }
}

std::vector<GroundTruth> generate_project(const std::vector<SynthSpec>& specs,
                                          const std::filesystem::path& project_dir)
{
    namespace fs = std::filesystem;

    std::vector<GroundTruth> truths;
    fs::create_directories(project_dir / "mappings");
    fs::create_directories(project_dir / "ground_truth");

    // Framework bundle shared by every synthetic DAO.
    {
        std::ofstream abi_out(project_dir / "mappings" / "synthetic_governor_abi.json");
        abi_out << kGovernorAbi << "\n";
        std::ofstream map_out(project_dir / "mappings" / "synthetic_governor.json");
        map_out << kGovernorMapping << "\n";
    }

    std::string fixture_rel = "fixtures/chain-" + std::to_string(kChainId);
    fs::path fixture_dir = project_dir / fixture_rel;
    fs::create_directories(fixture_dir);

    json daos = json::array();

    for (const SynthSpec& input_spec : specs) {
        SynthSpec spec = input_spec;
        if (spec.dao_id.empty())
            spec.dao_id = "synth-" + std::to_string(spec.seed);
        spec.validate();

        World world(spec);
        GroundTruth truth = world.build();
        truths.push_back(truth);

        // Record exactly the requests the fetch stage will issue.
        pipeline::DaoConfig dao;
        dao.dao_id = spec.dao_id;
        dao.chain_id = kChainId;
        chain::ContractRef gov_ref { world.governance_address(), kChainId, kDeployBlock,
                                     chain::ContractKind::Governance };
        chain::ContractRef token_ref { world.token_address(), kChainId, kDeployBlock, chain::ContractKind::Token };
        dao.governance = { gov_ref };
        dao.token = token_ref;

        chain::ChainEndpoint endpoint;
        endpoint.chain_id = kChainId;
        endpoint.fixture_dir = fixture_dir.string();
        endpoint.max_block_span = kMaxBlockSpan;
        endpoint.rate_limit = 1e6; // hermetic replay needs no throttling
        auto recorder = std::make_shared<chain::RecordingProvider>(std::make_shared<SimulatedProvider>(world),
                                                                   fixture_dir);
        chain::ChainClient client(endpoint, recorder);
        pipeline::fetch_dao_raw(client, dao, kSnapshotBlock);

        pipeline::write_json_file(project_dir / "ground_truth" / (spec.dao_id + ".json"), to_json(truth));

        daos.push_back(json {
            { "dao_id", spec.dao_id },
            { "chain_id", kChainId },
            { "governance", json::array({ json { { "address", world.governance_address() },
                                                 { "deploy_block", kDeployBlock } } }) },
            { "token", json { { "address", world.token_address() }, { "deploy_block", kDeployBlock } } },
            { "mapping", "mappings/synthetic_governor.json" },
            { "fully_automated", spec.automated },
            { "treasury", json { { "address", world.treasury_address() }, { "assets_usd", spec.treasury_usd } } },
        });
    }

    json config = {
        { "endpoints", json::array({ json {
              { "chain_id", kChainId },
              { "fixture_dir", fixture_rel },
              { "max_block_span", kMaxBlockSpan },
              { "rate_limit", 1e6 },
          } }) },
        { "snapshot_blocks", json { { std::to_string(kChainId), kSnapshotBlock } } },
        { "seconds_per_block", json { { std::to_string(kChainId), kSecondsPerBlock } } },
        { "alpha", 0.05 },
        { "output_dir", "out" },
        { "daos", daos },
    };
    pipeline::write_json_file(project_dir / "config.json", config);

    return truths;
}

GroundTruth generate(const SynthSpec& spec, const std::filesystem::path& project_dir)
{
    return generate_project({ spec }, project_dir).front();
}

// ---------------------------------------------------------------------------

json to_json(const GroundTruth& truth)
{
    auto level = [](const LevelScore& ls) { return json { { "level", ls.level }, { "score", ls.score } }; };
    return json {
        { "dao_id", truth.dao_id },
        { "seed", truth.seed },
        { "total_members", truth.total_members },
        { "active_members", truth.active_members },
        { "participation_rate", truth.participation_rate },
        { "total_proposals", truth.total_proposals },
        { "approved", truth.approved },
        { "approval_rate", truth.approval_rate },
        { "avg_duration_days", truth.avg_duration_days },
        { "largest_holder_share", truth.largest_holder_share },
        { "circulating_pct", truth.circulating_pct },
        { "total_supply", truth.total_supply.str() },
        { "circulating_supply", truth.circulating_supply.str() },
        { "treasury_usd", truth.treasury_usd },
        { "fully_automated", truth.fully_automated },
        { "proposer_concentration", truth.proposer_concentration },
        { "tier", harmonize::to_string(truth.tier) },
        { "kpi",
          json {
              { "participation", level(truth.participation) },
              { "funds", level(truth.funds) },
              { "voting", level(truth.voting) },
              { "decentralisation", level(truth.decentralisation) },
              { "composite", truth.composite },
          } },
        { "counts",
          json {
              { "vote_events", truth.vote_events },
              { "transfer_events", truth.transfer_events },
              { "governance_events", truth.governance_events },
          } },
    };
}

GroundTruth ground_truth_from_json(const json& j)
{
    GroundTruth truth;
    truth.dao_id = j.at("dao_id").get<std::string>();
    truth.seed = j.at("seed").get<uint64_t>();
    truth.total_members = j.at("total_members").get<uint64_t>();
    truth.active_members = j.at("active_members").get<uint64_t>();
    truth.participation_rate = j.at("participation_rate").get<double>();
    truth.total_proposals = j.at("total_proposals").get<uint64_t>();
    truth.approved = j.at("approved").get<uint64_t>();
    truth.approval_rate = j.at("approval_rate").get<double>();
    truth.avg_duration_days = j.at("avg_duration_days").get<double>();
    truth.largest_holder_share = j.at("largest_holder_share").get<double>();
    truth.circulating_pct = j.at("circulating_pct").get<double>();
    truth.total_supply = BigInt(j.at("total_supply").get<std::string>());
    truth.circulating_supply = BigInt(j.at("circulating_supply").get<std::string>());
    truth.treasury_usd = j.at("treasury_usd").get<double>();
    truth.fully_automated = j.at("fully_automated").get<bool>();
    truth.proposer_concentration = j.at("proposer_concentration").get<double>();
    truth.tier = harmonize::activity_tier_from_string(j.at("tier").get<std::string>());
    auto level = [&](const char* key) {
        const json& e = j.at("kpi").at(key);
        return LevelScore { e.at("level").get<std::string>(), e.at("score").get<double>() };
    };
    truth.participation = level("participation");
    truth.funds = level("funds");
    truth.voting = level("voting");
    truth.decentralisation = level("decentralisation");
    truth.composite = j.at("kpi").at("composite").get<double>();
    truth.vote_events = j.at("counts").at("vote_events").get<uint64_t>();
    truth.transfer_events = j.at("counts").at("transfer_events").get<uint64_t>();
    truth.governance_events = j.at("counts").at("governance_events").get<uint64_t>();
    return truth;
}

} // namespace daolens::synth
