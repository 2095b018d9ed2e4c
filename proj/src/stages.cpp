#include "daolens/pipeline/stages.hpp"

#include "daolens/abi/batch_decode.hpp"
#include "daolens/common/errors.hpp"
#include "daolens/common/keccak.hpp"
#include "daolens/harmonize/harmonize.hpp"
#include "daolens/kpi/kpi.hpp"
#include "daolens/pipeline/serialize.hpp"

#include <fstream>
#include <iostream>
#include <mutex>
#include <set>

namespace daolens::pipeline {

namespace {

uint64_t effective_snapshot(const ProjectConfig& config, const RunOptions& options, int64_t chain_id)
{
    if (options.snapshot_block)
        return *options.snapshot_block;
    return config.snapshot_block_for(chain_id);
}

json timestamps_to_json(const std::map<uint64_t, int64_t>& map)
{
    json out = json::object();
    for (const auto& [block, ts] : map)
        out[std::to_string(block)] = ts;
    return out;
}

std::map<uint64_t, int64_t> timestamps_from_json(const json& j)
{
    std::map<uint64_t, int64_t> out;
    for (const auto& [block, ts] : j.items())
        out[std::stoull(block)] = ts.get<int64_t>();
    return out;
}

std::string file_keccak(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return to_hex(keccak256(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size())));
}

} // namespace

DaoRawData fetch_dao_raw(chain::ChainClient& client, const DaoConfig& dao, uint64_t snapshot_block)
{
    DaoRawData raw;

    uint64_t head = client.head_block();
    uint64_t to_block = std::min(snapshot_block, head);

    for (const auto& gov : dao.governance) {
        auto logs = client.fetch_logs(gov, gov.deploy_block, to_block);
        raw.governance_logs.insert(raw.governance_logs.end(), logs.begin(), logs.end());
    }
    std::sort(raw.governance_logs.begin(), raw.governance_logs.end(),
              [](const chain::RawLog& a, const chain::RawLog& b) {
                  return std::tie(a.block_number, a.log_index) < std::tie(b.block_number, b.log_index);
              });

    raw.token_logs = client.fetch_logs(dao.token, dao.token.deploy_block, to_block);

    std::set<uint64_t> blocks;
    for (const auto& log : raw.governance_logs)
        blocks.insert(log.block_number);
    for (const auto& log : raw.token_logs)
        blocks.insert(log.block_number);
    blocks.insert(to_block); // snapshot timestamp anchors the activity tiers
    raw.block_timestamps = client.fetch_block_timestamps(blocks);

    raw.token_meta = client.fetch_token_metadata(dao.token, to_block);
    return raw;
}

namespace {

void fetch_one_dao(const ProjectConfig& config, const RunOptions& options, chain::ChainClient& client,
                   const DaoConfig& dao, const StagePaths& paths)
{
    uint64_t snapshot = effective_snapshot(config, options, dao.chain_id);
    DaoRawData raw = fetch_dao_raw(client, dao, snapshot);

    std::filesystem::path dir = paths.raw() / dao.dao_id;
    json gov_logs = json::array();
    for (const auto& log : raw.governance_logs)
        gov_logs.push_back(chain::raw_log_to_json(log));
    json token_logs = json::array();
    for (const auto& log : raw.token_logs)
        token_logs.push_back(chain::raw_log_to_json(log));

    write_json_file(dir / "governance_logs.json", gov_logs);
    write_json_file(dir / "token_logs.json", token_logs);
    write_json_file(dir / "blocks.json", timestamps_to_json(raw.block_timestamps));
    write_json_file(dir / "token_meta.json",
                    json {
                        { "decimals", raw.token_meta.decimals },
                        { "total_supply", raw.token_meta.total_supply.str() },
                        { "symbol", raw.token_meta.symbol },
                        { "decimals_defaulted", raw.token_meta.decimals_defaulted },
                    });
    std::cerr << "fetch: " << dao.dao_id << ": " << raw.governance_logs.size() << " governance logs, "
              << raw.token_logs.size() << " token logs\n";
}

} // namespace

void run_fetch(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options)
{
    // One client per endpoint so DAOs on the same chain share the rate
    // limiter and the timestamp cache; fetches run with bounded parallelism
    // across DAOs.
    std::map<int64_t, std::shared_ptr<chain::ChainClient>> clients;
    for (const auto& endpoint : config.endpoints)
        clients[endpoint.chain_id] = std::make_shared<chain::ChainClient>(
            endpoint, chain::ChainClient::make_provider(endpoint));

    std::exception_ptr first_error;
    std::mutex error_mutex;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(4) if (config.daos.size() > 1)
#endif
    for (size_t i = 0; i < config.daos.size(); ++i) {
        if (first_error)
            continue;
        const auto& dao = config.daos[i];
        try {
            fetch_one_dao(config, options, *clients.at(dao.chain_id), dao, paths);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    }
    if (first_error)
        std::rethrow_exception(first_error);
}

void run_decode(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options)
{
    (void)options;
    for (const auto& dao : config.daos) {
        std::filesystem::path raw_dir = paths.raw() / dao.dao_id;

        json gov_logs_json = load_json_file(raw_dir / "governance_logs.json");
        json token_logs_json = load_json_file(raw_dir / "token_logs.json");
        auto timestamps = timestamps_from_json(load_json_file(raw_dir / "blocks.json"));

        auto [mapping, specs] = config.load_mapping(dao.mapping_ref);
        abi::validate_mapping(mapping, specs);

        auto parse_logs = [&](const json& arr) {
            std::vector<chain::RawLog> logs;
            logs.reserve(arr.size());
            for (const auto& entry : arr) {
                chain::RawLog log = chain::raw_log_from_json(entry);
                if (auto it = timestamps.find(log.block_number); it != timestamps.end())
                    log.block_timestamp = it->second;
                logs.push_back(std::move(log));
            }
            return logs;
        };

        abi::SpecRegistry gov_registry;
        gov_registry.add_all(specs);
        abi::BatchResult gov_batch = abi::decode_batch(gov_registry, parse_logs(gov_logs_json));

        abi::SpecRegistry token_registry;
        token_registry.add(abi::erc20_transfer_spec());
        abi::BatchResult token_batch = abi::decode_batch(token_registry, parse_logs(token_logs_json));

        json gov_events = json::array();
        uint64_t irrelevant = 0;
        uint64_t mapping_failures = 0;
        for (const auto& decoded : gov_batch.events) {
            try {
                if (auto event = abi::map_to_governance(decoded, mapping))
                    gov_events.push_back(to_json(*event));
                else
                    ++irrelevant;
            } catch (const malformed_log_error&) {
                ++mapping_failures;
            }
        }

        json transfers = json::array();
        uint64_t non_transfer = 0;
        for (const auto& decoded : token_batch.events) {
            if (auto transfer = abi::transfer_from_decoded(decoded))
                transfers.push_back(to_json(*transfer));
            else
                ++non_transfer;
        }

        auto drop_json = [](const abi::DropReport& r) {
            return json {
                { "logs_in", r.logs_in },
                { "decoded", r.decoded },
                { "unknown_event", r.unknown_event },
                { "malformed", r.malformed },
            };
        };

        json doc = {
            { "schema_version", kSchemaVersion },
            { "dao_id", dao.dao_id },
            { "governance_events", gov_events },
            { "transfers", transfers },
            { "block_timestamps", timestamps_to_json(timestamps) },
            { "drop_report",
              json {
                  { "governance", drop_json(gov_batch.report) },
                  { "token", drop_json(token_batch.report) },
                  { "irrelevant_governance_events", irrelevant },
                  { "mapping_failures", mapping_failures },
                  { "non_transfer_token_events", non_transfer },
              } },
            { "window_unit", mapping.window_unit == abi::WindowUnit::Block ? "block" : "timestamp" },
        };
        write_json_file(paths.decoded() / (dao.dao_id + ".json"), doc);
        std::cerr << "decode: " << dao.dao_id << ": " << gov_events.size() << " governance events, "
                  << transfers.size() << " transfers, " << (gov_batch.report.dropped() + token_batch.report.dropped())
                  << " dropped\n";
    }
}

void run_build(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options)
{
    json manifest_daos = json::array();
    for (const auto& dao : config.daos) {
        std::filesystem::path decoded_path = paths.decoded() / (dao.dao_id + ".json");
        json doc = load_json_file(decoded_path);

        harmonize::BuildInputs inputs;
        inputs.dao_id = dao.dao_id;
        inputs.chain_id = dao.chain_id;
        inputs.snapshot_block = effective_snapshot(config, options, dao.chain_id);
        inputs.governance_address = dao.governance.front().address;
        inputs.treasury = dao.treasury;
        inputs.fully_automated = dao.fully_automated;
        inputs.block_timestamps = timestamps_from_json(doc.at("block_timestamps"));
        inputs.summarize.window_unit = doc.at("window_unit").get<std::string>() == "block"
            ? abi::WindowUnit::Block
            : abi::WindowUnit::Timestamp;
        inputs.summarize.seconds_per_block = config.seconds_per_block_for(dao.chain_id);
        inputs.summarize.quorum_weight = dao.quorum_weight;

        // The snapshot block itself was fetched by the fetch stage.
        if (auto it = inputs.block_timestamps.find(inputs.snapshot_block); it != inputs.block_timestamps.end())
            inputs.snapshot_time = it->second;
        else if (!inputs.block_timestamps.empty())
            inputs.snapshot_time = inputs.block_timestamps.rbegin()->second;

        for (const auto& e : doc.at("governance_events"))
            inputs.gov_events.push_back(governance_event_from_json(e));
        for (const auto& t : doc.at("transfers"))
            inputs.transfers.push_back(token_transfer_from_json(t));

        // Dedup by (block, tx_hash/log_index) across governance events; the
        // decode stage preserves log order.
        {
            std::set<std::tuple<uint64_t, std::string, uint32_t>> seen;
            std::vector<abi::GovernanceEvent> unique;
            for (auto& e : inputs.gov_events) {
                if (seen.insert({ e.block_number, e.tx_hash, e.log_index }).second)
                    unique.push_back(std::move(e));
                else
                    ++inputs.carried.duplicates;
            }
            inputs.gov_events = std::move(unique);
            inputs.carried.events_in = seen.size() + inputs.carried.duplicates;
        }
        for (size_t i = 1; i < inputs.gov_events.size(); ++i)
            if (inputs.gov_events[i].timestamp_utc < inputs.gov_events[i - 1].timestamp_utc)
                ++inputs.carried.timestamp_regressions;

        json meta = load_json_file(paths.raw() / dao.dao_id / "token_meta.json");
        inputs.token.decimals = meta.at("decimals").get<int>();
        inputs.token.total_supply = BigInt(meta.at("total_supply").get<std::string>());
        inputs.token.symbol = meta.value("symbol", "");
        inputs.token_decimals = inputs.token.decimals;

        harmonize::DaoRecord record = harmonize::build_dao_record(inputs);

        json out = to_json(record);
        out["provenance"] = json {
            { "snapshot_block", inputs.snapshot_block },
            { "inputs",
              json {
                  { "decoded", file_keccak(decoded_path) },
                  { "token_meta", file_keccak(paths.raw() / dao.dao_id / "token_meta.json") },
              } },
        };
        write_json_file(paths.harmonized() / (dao.dao_id + ".json"), out);

        manifest_daos.push_back(json {
            { "dao_id", dao.dao_id },
            { "tier", harmonize::to_string(record.tier) },
            { "path", dao.dao_id + ".json" },
        });
        std::cerr << "build: " << dao.dao_id << ": " << record.proposals.size() << " proposals, tier "
                  << harmonize::to_string(record.tier) << "\n";
    }
    write_json_file(paths.harmonized() / "manifest.json",
                    json { { "schema_version", kSchemaVersion }, { "daos", manifest_daos } });
}

void run_kpi(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options)
{
    (void)options;
    for (const auto& dao : config.daos) {
        json doc = load_json_file(paths.harmonized() / (dao.dao_id + ".json"));
        harmonize::DaoRecord record = dao_record_from_json(doc);
        kpi::KpiAssessment assessment = kpi::assess_dao(record);
        doc["kpi"] = to_json(assessment);
        write_json_file(paths.kpi() / (dao.dao_id + ".json"), doc);
    }
}

namespace {

std::vector<report::DaoReportEntry> load_entries(const ProjectConfig& config, const StagePaths& paths)
{
    std::vector<report::DaoReportEntry> entries;
    for (const auto& dao : config.daos) {
        json doc = load_json_file(paths.kpi() / (dao.dao_id + ".json"));
        report::DaoReportEntry entry;
        entry.record = dao_record_from_json(doc);
        entry.kpi = kpi_assessment_from_json(doc.at("kpi"));
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace

void run_stats(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options)
{
    double alpha = options.alpha.value_or(config.alpha);
    auto entries = load_entries(config, paths);
    report::StatReport stat_report = report::build_stat_report(entries, alpha);
    write_json_file(paths.stats() / "stat_report.json", to_json(stat_report));
}

void run_report(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options)
{
    auto entries = load_entries(config, paths);

    // The stats stage must have run; its report is part of the bundle.
    json stats_doc = load_json_file(paths.stats() / "stat_report.json");

    report::ReportBundle bundle;
    bundle.entries = std::move(entries);
    bundle.summary = report::summarize_ecosystem(bundle.entries);
    bundle.stats = report::build_stat_report(bundle.entries, stats_doc.value("alpha", config.alpha));
    bundle.radar_daos = options.radar_daos;

    auto written = report::emit(bundle, paths.report(), options.formats);
    std::cerr << "report: wrote " << written.size() << " files under " << paths.report().string() << "\n";
}

void run_all(const ProjectConfig& config, const StagePaths& paths, const RunOptions& options)
{
    run_fetch(config, paths, options);
    run_decode(config, paths, options);
    run_build(config, paths, options);
    run_kpi(config, paths, options);
    run_stats(config, paths, options);
    run_report(config, paths, options);
}

} // namespace daolens::pipeline
