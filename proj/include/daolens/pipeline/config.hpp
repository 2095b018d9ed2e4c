// config.hpp - the project configuration file driving every stage

#pragma once

#include "daolens/abi/governance.hpp"
#include "daolens/chain/types.hpp"
#include "daolens/harmonize/harmonize.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace daolens::pipeline {

struct DaoConfig {
    std::string dao_id;
    int64_t chain_id = 0;
    std::vector<chain::ContractRef> governance;
    chain::ContractRef token;
    std::string mapping_ref; // path relative to the config file
    std::optional<bool> fully_automated;
    harmonize::TreasuryConfig treasury;
    std::optional<BigInt> quorum_weight;
};

struct ProjectConfig {
    std::vector<chain::ChainEndpoint> endpoints;
    std::map<int64_t, uint64_t> snapshot_blocks;
    std::map<int64_t, int64_t> seconds_per_block; // window-block extrapolation
    double alpha = 0.05;
    std::string output_dir = "out";
    std::vector<DaoConfig> daos;
    std::filesystem::path base_dir; // directory containing the config file

    static ProjectConfig load(const std::filesystem::path& path);

    // Structural checks: unique dao ids, every chain has an endpoint and a
    // snapshot block, every mapping ref loads and matches its ABI.
    void validate() const;

    const chain::ChainEndpoint& endpoint_for(int64_t chain_id) const;
    uint64_t snapshot_block_for(int64_t chain_id) const;
    int64_t seconds_per_block_for(int64_t chain_id) const; // default 12

    // Loads a mapping table plus its ABI event specs, both resolved
    // relative to the mapping file.
    std::pair<abi::EventMapping, std::vector<abi::AbiEventSpec>> load_mapping(const std::string& ref) const;
};

} // namespace daolens::pipeline
