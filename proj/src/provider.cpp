#include "daolens/chain/provider.hpp"

#include "daolens/common/keccak.hpp"

#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace daolens::chain {

std::string fixture_key(const std::string& method, const json& params)
{
    // nlohmann objects are key-sorted, so dump() is canonical.
    std::string canonical = method + " " + params.dump();
    return to_hex(keccak256(canonical)).substr(2, 32);
}

json parse_rpc_response(const std::string& body)
{
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw transport_error(std::string("provider returned invalid JSON: ") + e.what());
    }
    if (doc.contains("error") && !doc["error"].is_null()) {
        const json& err = doc["error"];
        throw rpc_error(err.value("code", 0), err.value("message", "unknown provider error"));
    }
    if (!doc.contains("result"))
        throw transport_error("provider response lacks a result member");
    return doc["result"];
}

// ---------------------------------------------------------------------------

namespace {

std::string substitute_env(const std::string& url)
{
    std::string out;
    size_t pos = 0;
    while (pos < url.size()) {
        size_t open = url.find("${", pos);
        if (open == std::string::npos) {
            out += url.substr(pos);
            break;
        }
        size_t close = url.find('}', open);
        if (close == std::string::npos)
            throw config_error("unterminated ${...} placeholder in rpc_url");
        out += url.substr(pos, open - pos);
        std::string var = url.substr(open + 2, close - open - 2);
        const char* value = std::getenv(var.c_str());
        if (!value)
            throw config_error("environment variable " + var + " referenced by rpc_url is not set");
        out += value;
        pos = close + 1;
    }
    return out;
}

} // namespace

HttpProvider::HttpProvider(const std::string& rpc_url)
{
    std::string url = substitute_env(rpc_url);
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw config_error("rpc_url lacks a scheme: " + rpc_url);
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        scheme_host_ = url;
        path_ = "/";
    } else {
        scheme_host_ = url.substr(0, path_start);
        path_ = url.substr(path_start);
    }
}

json HttpProvider::call(const std::string& method, const json& params)
{
    json request = { { "jsonrpc", "2.0" }, { "id", 1 }, { "method", method }, { "params", params } };

    httplib::Client client(scheme_host_);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);
    auto res = client.Post(path_, request.dump(), "application/json");
    if (!res)
        throw transport_error("POST " + scheme_host_ + path_ + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw transport_error("provider returned HTTP " + std::to_string(res->status));
    return parse_rpc_response(res->body);
}

// ---------------------------------------------------------------------------

FixtureProvider::FixtureProvider(std::filesystem::path dir)
    : dir_(std::move(dir))
{
    if (!std::filesystem::is_directory(dir_))
        throw config_error("fixture directory does not exist: " + dir_.string());
}

json FixtureProvider::call(const std::string& method, const json& params)
{
    std::filesystem::path file = dir_ / (fixture_key(method, params) + ".json");
    std::ifstream in(file);
    if (!in)
        throw transport_error("fixture miss: " + file.filename().string() + " for " + method + " " + params.dump());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_rpc_response(buf.str());
}

// ---------------------------------------------------------------------------

RecordingProvider::RecordingProvider(std::shared_ptr<Provider> inner, std::filesystem::path dir)
    : inner_(std::move(inner))
    , dir_(std::move(dir))
{
    std::filesystem::create_directories(dir_);
}

json RecordingProvider::call(const std::string& method, const json& params)
{
    json envelope = { { "jsonrpc", "2.0" }, { "id", 1 } };
    try {
        json result = inner_->call(method, params);
        envelope["result"] = result;
    } catch (const rpc_error& e) {
        envelope["error"] = { { "code", e.code() }, { "message", e.message() } };
    }

    std::filesystem::path file = dir_ / (fixture_key(method, params) + ".json");
    std::ofstream out(file);
    out << envelope.dump(2) << "\n";
    if (!out)
        throw transport_error("cannot write fixture file " + file.string());

    if (envelope.contains("error"))
        throw rpc_error(envelope["error"]["code"].get<int>(), envelope["error"]["message"].get<std::string>());
    return envelope["result"];
}

} // namespace daolens::chain
