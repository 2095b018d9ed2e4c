// provider.hpp - JSON-RPC transport seam: live HTTP, recorded fixtures,
// and a recording wrapper that produces fixture directories

#pragma once

#include "daolens/common/errors.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <memory>
#include <string>

namespace daolens::chain {

using nlohmann::json;

// A JSON-RPC error response (as opposed to a transport failure). eth_call
// reverts surface this way.
class rpc_error : public transport_error {
public:
    rpc_error(int code, const std::string& message)
        : transport_error("rpc error " + std::to_string(code) + ": " + message)
        , code_(code)
        , message_(message)
    {
    }
    int code() const { return code_; }
    const std::string& message() const { return message_; }

private:
    int code_;
    std::string message_;
};

class Provider {
public:
    virtual ~Provider() = default;

    // Performs one JSON-RPC call and returns the "result" member.
    // Throws transport_error on transport failure, rpc_error on an error
    // response.
    virtual json call(const std::string& method, const json& params) = 0;
};

// Stable fixture filename for a request: hex Keccak-256 of "method params".
std::string fixture_key(const std::string& method, const json& params);

// POSTs to an Ethereum JSON-RPC endpoint over HTTP(S). ${VAR} placeholders
// in the URL are substituted from the environment (API keys never live in
// config files).
class HttpProvider : public Provider {
public:
    explicit HttpProvider(const std::string& rpc_url);
    json call(const std::string& method, const json& params) override;

private:
    std::string scheme_host_;
    std::string path_;
};

// Replays recorded responses from a directory: one file per request, named
// by fixture_key, content = verbatim provider response body.
class FixtureProvider : public Provider {
public:
    explicit FixtureProvider(std::filesystem::path dir);
    json call(const std::string& method, const json& params) override;

private:
    std::filesystem::path dir_;
};

// Tees every call through `inner` into a fixture directory FixtureProvider
// can replay.
class RecordingProvider : public Provider {
public:
    RecordingProvider(std::shared_ptr<Provider> inner, std::filesystem::path dir);
    json call(const std::string& method, const json& params) override;

private:
    std::shared_ptr<Provider> inner_;
    std::filesystem::path dir_;
};

// Parses a raw JSON-RPC response body: returns "result" or throws rpc_error.
json parse_rpc_response(const std::string& body);

} // namespace daolens::chain
