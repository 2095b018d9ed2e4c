#include "daolens/pipeline/config.hpp"

#include "daolens/abi/codec.hpp"
#include "daolens/common/errors.hpp"
#include "daolens/pipeline/serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace daolens::pipeline {

namespace {

chain::ContractRef contract_from_json(const json& j, int64_t chain_id, chain::ContractKind kind)
{
    chain::ContractRef ref;
    ref.address = normalize_address(j.at("address").get<std::string>());
    ref.chain_id = chain_id;
    ref.deploy_block = j.value("deploy_block", uint64_t { 0 });
    ref.kind = kind;
    return ref;
}

} // namespace

ProjectConfig ProjectConfig::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error("config " + path.string() + ": " + e.what());
    }

    ProjectConfig config;
    config.base_dir = std::filesystem::absolute(path).parent_path();

    try {
        for (const auto& ep : doc.value("endpoints", json::array())) {
            chain::ChainEndpoint endpoint;
            endpoint.chain_id = ep.at("chain_id").get<int64_t>();
            endpoint.rpc_url = ep.value("rpc_url", "");
            endpoint.fixture_dir = ep.value("fixture_dir", "");
            if (!endpoint.fixture_dir.empty())
                endpoint.fixture_dir = (config.base_dir / endpoint.fixture_dir).string();
            endpoint.max_block_span = ep.value("max_block_span", uint64_t { 10'000 });
            endpoint.rate_limit = ep.value("rate_limit", 10.0);
            config.endpoints.push_back(std::move(endpoint));
        }

        const json snapshots = doc.value("snapshot_blocks", json::object());
        for (const auto& [chain_str, block] : snapshots.items())
            config.snapshot_blocks[std::stoll(chain_str)] = block.get<uint64_t>();
        const json spb_map = doc.value("seconds_per_block", json::object());
        for (const auto& [chain_str, spb] : spb_map.items())
            config.seconds_per_block[std::stoll(chain_str)] = spb.get<int64_t>();

        config.alpha = doc.value("alpha", 0.05);
        config.output_dir = doc.value("output_dir", "out");

        for (const auto& d : doc.value("daos", json::array())) {
            DaoConfig dao;
            dao.dao_id = d.at("dao_id").get<std::string>();
            dao.chain_id = d.at("chain_id").get<int64_t>();
            for (const auto& g : d.at("governance"))
                dao.governance.push_back(contract_from_json(g, dao.chain_id, chain::ContractKind::Governance));
            dao.token = contract_from_json(d.at("token"), dao.chain_id, chain::ContractKind::Token);
            dao.mapping_ref = d.at("mapping").get<std::string>();
            if (d.contains("fully_automated"))
                dao.fully_automated = d.at("fully_automated").get<bool>();
            if (d.contains("treasury")) {
                const json& t = d.at("treasury");
                if (t.contains("address"))
                    dao.treasury.address = normalize_address(t.at("address").get<std::string>());
                for (const auto& locked : t.value("locked", json::array()))
                    dao.treasury.locked.push_back(normalize_address(locked.get<std::string>()));
                if (t.contains("token_price_usd"))
                    dao.treasury.token_price_usd = t.at("token_price_usd").get<double>();
                if (t.contains("assets_usd"))
                    dao.treasury.assets_usd = t.at("assets_usd").get<double>();
            }
            if (d.contains("quorum_weight"))
                dao.quorum_weight = BigInt(d.at("quorum_weight").get<std::string>());
            config.daos.push_back(std::move(dao));
        }
    } catch (const json::exception& e) {
        throw config_error("config " + path.string() + ": " + e.what());
    }

    return config;
}

void ProjectConfig::validate() const
{
    if (endpoints.empty())
        throw config_error("config declares no endpoints");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("alpha must lie in (0, 1)");

    std::set<int64_t> endpoint_chains;
    for (const auto& ep : endpoints) {
        ep.validate();
        if (!endpoint_chains.insert(ep.chain_id).second)
            throw config_error("duplicate endpoint for chain " + std::to_string(ep.chain_id));
    }

    std::set<std::string> ids;
    for (const auto& dao : daos) {
        if (!ids.insert(dao.dao_id).second)
            throw config_error("duplicate dao_id: " + dao.dao_id);
        if (!endpoint_chains.count(dao.chain_id))
            throw config_error("dao " + dao.dao_id + " references chain " + std::to_string(dao.chain_id)
                               + " with no endpoint");
        if (!snapshot_blocks.count(dao.chain_id))
            throw config_error("no snapshot block configured for chain " + std::to_string(dao.chain_id));
        if (dao.governance.empty())
            throw config_error("dao " + dao.dao_id + " lists no governance contracts");
        for (const auto& g : dao.governance)
            g.validate();
        dao.token.validate();

        // Mapping tables must resolve and agree with their ABI now, not at
        // decode time.
        auto [mapping, specs] = load_mapping(dao.mapping_ref);
        abi::validate_mapping(mapping, specs);
    }
}

const chain::ChainEndpoint& ProjectConfig::endpoint_for(int64_t chain_id) const
{
    for (const auto& ep : endpoints)
        if (ep.chain_id == chain_id)
            return ep;
    throw config_error("no endpoint for chain " + std::to_string(chain_id));
}

uint64_t ProjectConfig::snapshot_block_for(int64_t chain_id) const
{
    auto it = snapshot_blocks.find(chain_id);
    if (it == snapshot_blocks.end())
        throw config_error("no snapshot block for chain " + std::to_string(chain_id));
    return it->second;
}

int64_t ProjectConfig::seconds_per_block_for(int64_t chain_id) const
{
    auto it = seconds_per_block.find(chain_id);
    return it == seconds_per_block.end() ? 12 : it->second;
}

std::pair<abi::EventMapping, std::vector<abi::AbiEventSpec>> ProjectConfig::load_mapping(const std::string& ref) const
{
    std::filesystem::path mapping_path = base_dir / ref;
    std::ifstream in(mapping_path);
    if (!in)
        throw config_error("mapping file not found: " + mapping_path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    abi::EventMapping mapping = abi::EventMapping::from_json_text(buf.str());

    if (mapping.abi_path.empty())
        throw config_error("mapping " + mapping_path.string() + " names no abi file");
    std::filesystem::path abi_path = mapping_path.parent_path() / mapping.abi_path;
    std::ifstream abi_in(abi_path);
    if (!abi_in)
        throw config_error("ABI file not found: " + abi_path.string());
    std::stringstream abi_buf;
    abi_buf << abi_in.rdbuf();
    return { std::move(mapping), abi::parse_abi(abi_buf.str()) };
}

} // namespace daolens::pipeline
