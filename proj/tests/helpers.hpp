// helpers.hpp - shared test scaffolding: fixture paths, temp dirs, a tiny
// XML well-formedness checker for SVG output, a naive balance oracle

#pragma once

#include "daolens/abi/governance.hpp"
#include "daolens/common/bigint.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#ifndef DAOLENS_SOURCE_DIR
#error "DAOLENS_SOURCE_DIR must be defined by the build"
#endif

namespace testutil {

using nlohmann::json;

inline std::filesystem::path source_root()
{
    return std::filesystem::path(DAOLENS_SOURCE_DIR);
}

inline std::filesystem::path fixture_path(const std::string& rel)
{
    return source_root() / "tests" / "fixtures" / rel;
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline json load_fixture(const std::string& rel)
{
    return json::parse(read_file(fixture_path(rel)));
}

// Unique scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        path_ = std::filesystem::temp_directory_path()
            / ("daolens-test-" + tag + "-" + std::to_string(counter()++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    static int& counter()
    {
        static int n = 0;
        return n;
    }
    std::filesystem::path path_;
};

// Minimal XML well-formedness scan: balanced tags, quoted attributes,
// no stray '<' or '&'. Returns an empty string when the document is fine,
// otherwise a description of the first problem.
inline std::string check_xml(const std::string& doc)
{
    std::vector<std::string> stack;
    size_t i = 0;
    auto fail = [&](const std::string& why) { return why + " (offset " + std::to_string(i) + ")"; };

    if (doc.rfind("<?xml", 0) == 0) {
        size_t end = doc.find("?>");
        if (end == std::string::npos)
            return "unterminated XML declaration";
        i = end + 2;
    }
    while (i < doc.size()) {
        char c = doc[i];
        if (c == '<') {
            if (i + 1 >= doc.size())
                return fail("dangling <");
            if (doc[i + 1] == '/') {
                size_t end = doc.find('>', i);
                if (end == std::string::npos)
                    return fail("unterminated closing tag");
                std::string name = doc.substr(i + 2, end - i - 2);
                if (stack.empty() || stack.back() != name)
                    return fail("mismatched closing tag " + name);
                stack.pop_back();
                i = end + 1;
                continue;
            }
            size_t end = i + 1;
            bool in_quote = false;
            char quote = 0;
            while (end < doc.size()) {
                char e = doc[end];
                if (in_quote) {
                    if (e == quote)
                        in_quote = false;
                } else if (e == '"' || e == '\'') {
                    in_quote = true;
                    quote = e;
                } else if (e == '>') {
                    break;
                } else if (e == '<') {
                    return fail("nested <");
                }
                ++end;
            }
            if (end >= doc.size())
                return fail("unterminated tag");
            std::string inside = doc.substr(i + 1, end - i - 1);
            bool self_closing = !inside.empty() && inside.back() == '/';
            std::string name = inside.substr(0, inside.find_first_of(" \t\n/"));
            if (name.empty())
                return fail("empty tag name");
            if (!self_closing)
                stack.push_back(name);
            i = end + 1;
            continue;
        }
        if (c == '&') {
            size_t semi = doc.find(';', i);
            if (semi == std::string::npos || semi - i > 8)
                return fail("bare ampersand");
            i = semi + 1;
            continue;
        }
        if (c == '>')
            return fail("stray >");
        ++i;
    }
    if (!stack.empty())
        return "unclosed tag " + stack.back();
    return "";
}

// Brute-force per-address replay, the independent oracle for balance
// reconstruction.
inline std::map<std::string, daolens::BigInt>
naive_balances(const std::vector<daolens::abi::TokenTransfer>& transfers, uint64_t at_block)
{
    std::map<std::string, daolens::BigInt> balances;
    for (const auto& t : transfers) {
        if (t.block_number > at_block)
            continue;
        if (t.from != daolens::kZeroAddress)
            balances[t.from] -= t.amount;
        if (t.to != daolens::kZeroAddress)
            balances[t.to] += t.amount;
    }
    std::erase_if(balances, [](const auto& kv) { return kv.second == 0; });
    return balances;
}

} // namespace testutil
