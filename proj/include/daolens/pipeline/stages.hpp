// stages.hpp - the staged pipeline. Each stage reads the previous stage's
// on-disk output, so any stage can be re-run in isolation.

#pragma once

#include "daolens/chain/client.hpp"
#include "daolens/pipeline/config.hpp"
#include "daolens/report/report.hpp"

#include <filesystem>
#include <map>

namespace daolens::pipeline {

struct StagePaths {
    std::filesystem::path out;

    std::filesystem::path raw() const { return out / "raw"; }
    std::filesystem::path decoded() const { return out / "decoded"; }
    std::filesystem::path harmonized() const { return out / "harmonized"; }
    std::filesystem::path kpi() const { return out / "kpi"; }
    std::filesystem::path stats() const { return out / "stats"; }
    std::filesystem::path report() const { return out / "report"; }
};

// Everything the fetch stage pulls for one DAO. Shared by the synth
// recorder so recorded fixtures cover exactly the requests later runs make.
struct DaoRawData {
    std::vector<chain::RawLog> governance_logs;
    std::vector<chain::RawLog> token_logs;
    std::map<uint64_t, int64_t> block_timestamps; // every event block + the snapshot block
    chain::TokenMetadata token_meta;
};

DaoRawData fetch_dao_raw(chain::ChainClient& client, const DaoConfig& dao, uint64_t snapshot_block);

struct RunOptions {
    std::optional<double> alpha;              // overrides config
    std::optional<uint64_t> snapshot_block;   // overrides config (all chains)
    report::EmitOptions formats;
    std::vector<std::string> radar_daos;
};

void run_fetch(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options = {});
void run_decode(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options = {});
void run_build(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options = {});
void run_kpi(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options = {});
void run_stats(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options = {});
void run_report(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options = {});
void run_all(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options = {});

} // namespace daolens::pipeline
