// errors.hpp - exception taxonomy shared across the pipeline

#pragma once

#include <stdexcept>
#include <string>

namespace daolens {

// Bad caller input (inverted ranges, invalid addresses, out-of-domain values).
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Provider/network failures that survived the retry budget.
class transport_error : public std::runtime_error {
public:
    explicit transport_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input documents (ABI JSON, config, fixtures).
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, size_t position = 0)
        : std::runtime_error(position ? msg + " (at offset " + std::to_string(position) + ")" : msg)
        , position_(position)
    {
    }
    size_t position() const { return position_; }

private:
    size_t position_;
};

// ABI parameter type outside the supported set.
class unsupported_type_error : public std::runtime_error {
public:
    explicit unsupported_type_error(const std::string& type_name)
        : std::runtime_error("unsupported ABI type: " + type_name)
        , type_name_(type_name)
    {
    }
    const std::string& type_name() const { return type_name_; }

private:
    std::string type_name_;
};

// Log bytes that do not decode under the claimed event spec.
class malformed_log_error : public std::runtime_error {
public:
    explicit malformed_log_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Log whose topic0 does not match the spec it was decoded against.
class wrong_event_error : public std::runtime_error {
public:
    explicit wrong_event_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Project config that parses but fails validation.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated data invariants (negative balances, broken conservation).
class data_integrity_error : public std::runtime_error {
public:
    explicit data_integrity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Statistical routine called with too few observations.
class insufficient_sample_error : public std::runtime_error {
public:
    explicit insufficient_sample_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Statistical routine called on constant / zero-variance data.
class degenerate_sample_error : public std::runtime_error {
public:
    explicit degenerate_sample_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Pipeline stage invoked before its inputs exist on disk.
class stage_dependency_error : public std::runtime_error {
public:
    explicit stage_dependency_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Synthetic generator asked for an impossible scenario.
class spec_error : public std::runtime_error {
public:
    explicit spec_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace daolens
