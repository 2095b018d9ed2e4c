#include "daolens/harmonize/harmonize.hpp"

#include "daolens/common/errors.hpp"

#include "daolens/harmonize/balances.hpp"
#include "daolens/synth/synth.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace daolens;
using namespace daolens::harmonize;

namespace {

abi::DecodedEvent decoded_at(uint64_t block, uint32_t index, int64_t ts, const std::string& tx = "0xaa")
{
    abi::DecodedEvent e;
    e.event_name = "X";
    e.contract = "0x00000000000000000000000000000000000000aa";
    e.block_number = block;
    e.log_index = index;
    e.timestamp_utc = ts;
    e.tx_hash = tx;
    return e;
}

abi::TokenTransfer make_transfer(const std::string& from, const std::string& to, int64_t amount,
                                 uint64_t block, uint32_t index)
{
    abi::TokenTransfer t;
    t.from = from;
    t.to = to;
    t.amount = BigInt(amount);
    t.block_number = block;
    t.log_index = index;
    return t;
}

const std::string kA = "0x000000000000000000000000000000000000000a";
const std::string kB = "0x000000000000000000000000000000000000000b";
const std::string kC = "0x000000000000000000000000000000000000000c";

abi::GovernanceEvent creation(int64_t id, const std::string& proposer, int64_t start, int64_t end,
                              uint64_t block, uint32_t index)
{
    abi::GovernanceEvent e;
    e.kind = abi::GovernanceKind::ProposalCreated;
    e.proposal_id = BigInt(id);
    e.actor = proposer;
    e.window_start = BigInt(start);
    e.window_end = BigInt(end);
    e.block_number = block;
    e.log_index = index;
    e.timestamp_utc = start - 3'600;
    e.tx_hash = "0x" + std::to_string(block);
    return e;
}

abi::GovernanceEvent vote(int64_t id, const std::string& voter, abi::Support support, int64_t weight,
                          uint64_t block, uint32_t index, int64_t ts)
{
    abi::GovernanceEvent e;
    e.kind = abi::GovernanceKind::VoteCast;
    e.proposal_id = BigInt(id);
    e.actor = voter;
    e.support = support;
    e.weight = BigInt(weight);
    e.block_number = block;
    e.log_index = index;
    e.timestamp_utc = ts;
    e.tx_hash = "0x" + std::to_string(block) + "-" + std::to_string(index);
    return e;
}

abi::GovernanceEvent lifecycle(abi::GovernanceKind kind, int64_t id, uint64_t block, int64_t ts)
{
    abi::GovernanceEvent e;
    e.kind = kind;
    e.proposal_id = BigInt(id);
    e.block_number = block;
    e.log_index = 0;
    e.timestamp_utc = ts;
    e.tx_hash = "0x" + std::to_string(block);
    return e;
}

} // namespace

TEST_CASE("dedup_and_validate removes exact duplicates and counts them")
{
    auto e = decoded_at(5, 1, 100);
    auto [clean, report] = dedup_and_validate({ e, e });
    CHECK_EQ(clean.size(), 1);
    CHECK_EQ(report.duplicates, 1);
    CHECK_EQ(report.events_in, 2);
}

TEST_CASE("dedup_and_validate on empty input")
{
    auto [clean, report] = dedup_and_validate({});
    CHECK(clean.empty());
    CHECK_EQ(report.anomalies(), 0);
}

TEST_CASE("dedup_and_validate counts planted anomalies")
{
    // three planted defects: two duplicates and one timestamp regression
    std::vector<abi::DecodedEvent> events = {
        decoded_at(1, 0, 100, "0x1"),
        decoded_at(1, 0, 100, "0x1"), // duplicate
        decoded_at(2, 0, 200, "0x2"),
        decoded_at(2, 0, 200, "0x2"), // duplicate
        decoded_at(3, 0, 150, "0x3"), // regression: older than block 2
    };
    auto [clean, report] = dedup_and_validate(std::move(events));
    CHECK_EQ(clean.size(), 3);
    CHECK_EQ(report.duplicates, 2);
    CHECK_EQ(report.timestamp_regressions, 1);
    CHECK_EQ(report.anomalies(), 3);
    // sorted by (block, log_index)
    for (size_t i = 1; i < clean.size(); ++i)
        CHECK(clean[i - 1].block_number <= clean[i].block_number);
}

TEST_CASE("reconstruct_balances: single mint")
{
    std::vector<abi::TokenTransfer> transfers = { make_transfer(kZeroAddress, kA, 100, 1, 0) };
    auto balances = reconstruct_balances_serial(transfers, 10);
    REQUIRE_EQ(balances.size(), 1);
    CHECK_EQ(balances.at(kA), 100);
}

TEST_CASE("reconstruct_balances: mint then transfer")
{
    std::vector<abi::TokenTransfer> transfers = {
        make_transfer(kZeroAddress, kA, 100, 1, 0),
        make_transfer(kA, kB, 40, 2, 0),
    };
    auto balances = reconstruct_balances_serial(transfers, 10);
    CHECK_EQ(balances.at(kA), 60);
    CHECK_EQ(balances.at(kB), 40);
}

TEST_CASE("reconstruct_balances respects the at_block cutoff and omits zeros")
{
    std::vector<abi::TokenTransfer> transfers = {
        make_transfer(kZeroAddress, kA, 100, 1, 0),
        make_transfer(kA, kB, 100, 5, 0), // drains A to zero
        make_transfer(kZeroAddress, kC, 7, 9, 0),
    };
    auto at4 = reconstruct_balances_serial(transfers, 4);
    CHECK_EQ(at4.at(kA), 100);
    CHECK_FALSE(at4.count(kB));

    auto at9 = reconstruct_balances_serial(transfers, 9);
    CHECK_FALSE(at9.count(kA)); // zero balances omitted
    CHECK_EQ(at9.at(kB), 100);
    CHECK_EQ(at9.at(kC), 7);
}

TEST_CASE("reconstruct_balances flags transient negatives with address and block")
{
    std::vector<abi::TokenTransfer> transfers = {
        make_transfer(kZeroAddress, kA, 10, 1, 0),
        make_transfer(kA, kB, 25, 3, 0), // overdraw
    };
    CHECK_THROWS_WITH_AS(reconstruct_balances_serial(transfers, 10),
                         doctest::Contains(kA.c_str()), data_integrity_error);
    CHECK_THROWS_WITH_AS(reconstruct_balances_serial(transfers, 10),
                         doctest::Contains("block 3"), data_integrity_error);
    // the parallel kernel reports the same first violation
    CHECK_THROWS_WITH_AS(reconstruct_balances(transfers, 10), doctest::Contains(kA.c_str()), data_integrity_error);
}

TEST_CASE("10k random transfers equal the naive replay oracle; parallel equals serial")
{
    synth::SplitMix64 rng(42);
    std::vector<std::string> addresses;
    for (int i = 0; i < 60; ++i) {
        std::string a = "0x";
        static const char digits[] = "0123456789abcdef";
        for (int d = 0; d < 40; ++d)
            a += digits[rng.below(16)];
        addresses.push_back(a);
    }

    std::vector<abi::TokenTransfer> transfers;
    std::map<std::string, BigInt> running;
    uint64_t block = 1;
    uint32_t index = 0;
    BigInt minted = 0, burned = 0;
    for (int i = 0; i < 10'000; ++i) {
        if (rng.below(4) == 0)
            ++block, index = 0;
        uint64_t roll = rng.below(10);
        if (roll < 3) { // mint
            const auto& to = addresses[rng.below(addresses.size())];
            BigInt amount = BigInt(1 + rng.below(1'000'000));
            transfers.push_back(make_transfer(kZeroAddress, to, 0, block, index++));
            transfers.back().amount = amount;
            running[to] += amount;
            minted += amount;
        } else {
            const auto& from = addresses[rng.below(addresses.size())];
            if (running[from] == 0)
                continue;
            BigInt amount = running[from] / BigInt(1 + rng.below(3));
            if (amount == 0)
                continue;
            bool burn = roll == 9;
            const auto& to = burn ? kZeroAddress : addresses[rng.below(addresses.size())];
            transfers.push_back(make_transfer(from, to, 0, block, index++));
            transfers.back().amount = amount;
            running[from] -= amount;
            if (burn)
                burned += amount;
            else
                running[to] += amount;
        }
    }

    BalanceTotals totals_serial, totals_parallel;
    auto serial = reconstruct_balances_serial(transfers, block, &totals_serial);
    auto parallel = reconstruct_balances(transfers, block, &totals_parallel);
    auto oracle = testutil::naive_balances(transfers, block);

    CHECK(serial == oracle);
    CHECK(parallel == serial);
    CHECK_EQ(totals_serial.minted, minted);
    CHECK_EQ(totals_serial.burned, burned);
    CHECK_EQ(totals_parallel.minted, minted);

    // conservation: sum of balances + burned = minted
    BigInt sum = 0;
    for (const auto& [_, bal] : serial)
        sum += bal;
    CHECK_EQ(sum + burned, minted);

    // incremental scan equals full replay: balances at an earlier block plus
    // the tail of transfers reproduce the final state
    uint64_t mid_block = block / 2;
    auto at_mid = reconstruct_balances_serial(transfers, mid_block);
    std::map<std::string, BigInt> resumed = at_mid;
    for (const auto& t : transfers) {
        if (t.block_number <= mid_block || t.block_number > block)
            continue;
        if (!t.is_mint())
            resumed[t.from] -= t.amount;
        if (!t.is_burn())
            resumed[t.to] += t.amount;
    }
    std::erase_if(resumed, [](const auto& kv) { return kv.second == 0; });
    CHECK(resumed == serial);
}

TEST_CASE("summarize_proposals: executed implies approved")
{
    SummarizeOptions options;
    options.snapshot_time = 10'000;
    std::vector<abi::GovernanceEvent> events = {
        creation(7, kA, 1'000, 2'000, 10, 0),
        lifecycle(abi::GovernanceKind::ProposalExecuted, 7, 30, 2'500),
    };
    auto [summaries, report] = summarize_proposals(events, {}, options);
    REQUIRE_EQ(summaries.size(), 1);
    CHECK_EQ(summaries[0].outcome, Outcome::Approved);
    CHECK(summaries[0].executed);
    CHECK_EQ(report.anomalies(), 0);
}

TEST_CASE("summarize_proposals: majority decides unexecuted closed proposals")
{
    SummarizeOptions options;
    options.snapshot_time = 10'000;
    std::vector<abi::GovernanceEvent> events = {
        creation(1, kA, 1'000, 2'000, 10, 0),
        vote(1, kB, abi::Support::For, 10, 12, 0, 1'100),
        vote(1, kC, abi::Support::Against, 20, 13, 0, 1'200),
    };
    auto [summaries, report] = summarize_proposals(events, {}, options);
    REQUIRE_EQ(summaries.size(), 1);
    CHECK_EQ(summaries[0].outcome, Outcome::Rejected); // 10 for vs 20 against
    CHECK_EQ(summaries[0].votes_for, 10);
    CHECK_EQ(summaries[0].votes_against, 20);
}

TEST_CASE("summarize_proposals: quorum gate and pending windows")
{
    SummarizeOptions options;
    options.snapshot_time = 10'000;

    SUBCASE("quorum missed rejects despite majority") {
        options.quorum_weight = BigInt(100);
        std::vector<abi::GovernanceEvent> events = {
            creation(1, kA, 1'000, 2'000, 10, 0),
            vote(1, kB, abi::Support::For, 30, 12, 0, 1'100),
        };
        auto [summaries, _] = summarize_proposals(events, {}, options);
        CHECK_EQ(summaries[0].outcome, Outcome::Rejected);
    }
    SUBCASE("quorum satisfied approves") {
        options.quorum_weight = BigInt(100);
        std::vector<abi::GovernanceEvent> events = {
            creation(1, kA, 1'000, 2'000, 10, 0),
            vote(1, kB, abi::Support::For, 60, 12, 0, 1'100),
            vote(1, kC, abi::Support::Abstain, 50, 13, 0, 1'200),
        };
        auto [summaries, _] = summarize_proposals(events, {}, options);
        CHECK_EQ(summaries[0].outcome, Outcome::Approved);
    }
    SUBCASE("window ending after the snapshot stays pending") {
        std::vector<abi::GovernanceEvent> events = {
            creation(1, kA, 9'000, 20'000, 10, 0),
            vote(1, kB, abi::Support::For, 60, 12, 0, 9'100),
        };
        auto [summaries, _] = summarize_proposals(events, {}, options);
        CHECK_EQ(summaries[0].outcome, Outcome::Pending);
    }
}

TEST_CASE("summarize_proposals counts orphans and creationless lifecycles")
{
    SummarizeOptions options;
    options.snapshot_time = 10'000;
    std::vector<abi::GovernanceEvent> events = {
        creation(1, kA, 1'000, 2'000, 10, 0),
        vote(99, kB, abi::Support::For, 10, 12, 0, 1'100),              // orphan vote
        lifecycle(abi::GovernanceKind::ProposalExecuted, 98, 30, 2'500), // no creation
    };
    auto [summaries, report] = summarize_proposals(events, {}, options);
    CHECK_EQ(summaries.size(), 1);
    CHECK_EQ(report.orphan_votes, 1);
    CHECK_EQ(report.lifecycle_without_creation, 1);
}

TEST_CASE("summarize_proposals resolves block-unit windows via timestamps")
{
    SummarizeOptions options;
    options.window_unit = abi::WindowUnit::Block;
    options.seconds_per_block = 12;
    options.snapshot_time = 1'000'000;

    std::map<uint64_t, int64_t> timestamps = { { 100, 1'200 } };
    auto e = creation(1, kA, 100, 200, 90, 0); // start block known, end extrapolated
    e.timestamp_utc = 1'080;                   // anchor at the creation block 90

    auto [summaries, _] = summarize_proposals({ e }, timestamps, options);
    REQUIRE_EQ(summaries.size(), 1);
    CHECK_EQ(summaries[0].voting_start, 1'200);                       // exact lookup
    CHECK_EQ(summaries[0].voting_end, 1'080 + (200 - 90) * 12);       // extrapolated from anchor
}

TEST_CASE("classify_activity tiers")
{
    const int64_t now = 1'000'000'000;
    const int64_t day = 86'400;

    // six votes in the last week
    std::vector<int64_t> recent;
    for (int i = 0; i < 6; ++i)
        recent.push_back(now - i * day);
    CHECK_EQ(classify_activity(recent, now), ActivityTier::HighlyActive);

    // one transaction total, two years old
    CHECK_EQ(classify_activity({ now - 730 * day }, now), ActivityTier::TestOrDormant);

    // three transactions, newest 120 days old
    CHECK_EQ(classify_activity({ now - 120 * day, now - 200 * day, now - 300 * day }, now),
             ActivityTier::MinimallyActive);

    // one transaction 50 days ago
    CHECK_EQ(classify_activity({ now - 50 * day }, now), ActivityTier::ModeratelyActive);

    // exhaustive partition over random timelines
    synth::SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        std::vector<int64_t> times;
        size_t n = rng.below(12);
        for (size_t j = 0; j < n; ++j)
            times.push_back(now - int64_t(rng.below(400)) * day);
        std::sort(times.begin(), times.end());
        ActivityTier tier = classify_activity(times, now);
        int matches = (tier == ActivityTier::HighlyActive) + (tier == ActivityTier::ModeratelyActive)
            + (tier == ActivityTier::MinimallyActive) + (tier == ActivityTier::TestOrDormant);
        CHECK_EQ(matches, 1);
    }
}

TEST_CASE("build_dao_record aggregates fields")
{
    BuildInputs inputs;
    inputs.dao_id = "test";
    inputs.chain_id = 1;
    inputs.snapshot_block = 100;
    inputs.snapshot_time = 100'000;
    inputs.summarize.window_unit = abi::WindowUnit::Timestamp;
    inputs.token.total_supply = BigInt(1'000);
    inputs.token_decimals = 0;

    // holders: A 500, B 300, treasury 200
    const std::string treasury = "0x00000000000000000000000000000000000000dd";
    inputs.treasury.address = treasury;
    inputs.transfers = {
        make_transfer(kZeroAddress, kA, 500, 1, 0),
        make_transfer(kZeroAddress, kB, 300, 1, 1),
        make_transfer(kZeroAddress, treasury, 200, 1, 2),
    };

    SUBCASE("no votes, no proposals") {
        DaoRecord record = build_dao_record(inputs);
        CHECK_EQ(record.active_members, 0);
        CHECK_EQ(record.total_members, 2); // treasury excluded
        CHECK_EQ(record.circulating_supply, 800);
        CHECK_EQ(record.largest_holder_share, doctest::Approx(500.0 / 800.0));
        CHECK_FALSE(record.treasury_usd.has_value());
        CHECK_EQ(record.proposer_concentration, 0.0);
        CHECK_EQ(record.validation.supply_mismatch, 0);
    }

    SUBCASE("one proposer authored 5 of 10 proposals") {
        for (int i = 0; i < 10; ++i) {
            const std::string& proposer = i < 5 ? kA : (i < 8 ? kB : kC);
            inputs.gov_events.push_back(creation(i + 1, proposer, 1'000 + i, 2'000 + i, 10 + i, 0));
        }
        DaoRecord record = build_dao_record(inputs);
        CHECK_EQ(record.proposer_concentration, doctest::Approx(0.5));
        CHECK_EQ(record.active_members, 3);
    }

    SUBCASE("treasury valuation from priced governance tokens plus assets") {
        inputs.treasury.assets_usd = 1'000.0;
        inputs.treasury.token_price_usd = 2.0;
        DaoRecord record = build_dao_record(inputs);
        REQUIRE(record.treasury_usd.has_value());
        CHECK_EQ(*record.treasury_usd, doctest::Approx(1'000.0 + 200.0 * 2.0));
    }

    SUBCASE("supply mismatch against reported totalSupply is counted") {
        inputs.token.total_supply = BigInt(999);
        DaoRecord record = build_dao_record(inputs);
        CHECK_EQ(record.validation.supply_mismatch, 1);
    }
}
