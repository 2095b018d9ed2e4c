// synth.hpp - deterministic synthetic DAO generator: emits a complete
// fixture project (recorded RPC responses, config, mapping tables) plus the
// ground truth the pipeline must reproduce exactly.

#pragma once

#include "daolens/common/bigint.hpp"
#include "daolens/harmonize/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace daolens::synth {

// 64-bit SplitMix generator (Steele/Lea/Burr constants). Chosen because the
// whole sequence is pinned by three multiplicative constants, keeping
// fixtures byte-identical across platforms and standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed)
        : state_(seed)
    {
    }

    uint64_t next()
    {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Modulo draw: tiny bias is irrelevant for fixture generation and the
    // result is platform-stable.
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

    double unit() { return double(next() >> 11) / 9007199254740992.0; } // [0,1)

    double in(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    uint64_t state_;
};

enum class HolderDistribution { Uniform, Pareto, SingleWhale };

struct SynthSpec {
    uint64_t seed = 1;
    std::string dao_id; // defaults to "synth-<seed>"
    uint64_t member_count = 100;
    double participation_target = 0.2;
    uint64_t proposal_count = 10;
    double approval_target = 0.6;
    double duration_days_min = 3.0;
    double duration_days_max = 10.0;
    HolderDistribution holder_distribution = HolderDistribution::Uniform;
    double pareto_alpha = 1.5;   // Pareto only
    double whale_share = 0.5;    // SingleWhale only: whale's circulating share
    bool automated = false;
    double treasury_usd = 5e7;

    void validate() const; // throws spec_error on infeasible combinations
};

struct LevelScore {
    std::string level;
    double score = 0.0;
};

struct GroundTruth {
    std::string dao_id;
    uint64_t seed = 0;

    uint64_t total_members = 0;
    uint64_t active_members = 0;
    double participation_rate = 0.0;

    uint64_t total_proposals = 0;
    uint64_t approved = 0;
    double approval_rate = 0.0;
    double avg_duration_days = 0.0;

    double largest_holder_share = 0.0;
    double circulating_pct = 0.0;
    BigInt total_supply;
    BigInt circulating_supply;
    double treasury_usd = 0.0;
    bool fully_automated = false;
    double proposer_concentration = 0.0;

    harmonize::ActivityTier tier = harmonize::ActivityTier::TestOrDormant;

    LevelScore participation;
    LevelScore funds;
    LevelScore voting;
    LevelScore decentralisation;
    double composite = 0.0;

    uint64_t vote_events = 0;
    uint64_t transfer_events = 0;
    uint64_t governance_events = 0;
};

// Generates a self-contained fixture project under project_dir:
//   config.json              ready for every pipeline stage
//   fixtures/chain-31337/    recorded RPC responses, one file per request
//   mappings/                synthetic governor mapping + ABI
//   ground_truth/<dao>.json  the record the pipeline must reproduce
// Same specs, same bytes.
std::vector<GroundTruth> generate_project(const std::vector<SynthSpec>& specs,
                                          const std::filesystem::path& project_dir);

// Single-spec convenience used by tests.
GroundTruth generate(const SynthSpec& spec, const std::filesystem::path& project_dir);

nlohmann::json to_json(const GroundTruth& truth);
GroundTruth ground_truth_from_json(const nlohmann::json& j);

} // namespace daolens::synth
