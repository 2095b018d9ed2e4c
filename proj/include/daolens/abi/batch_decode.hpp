// batch_decode.hpp - decoding whole log ranges with a drop report
//
// The OpenMP kernel and the serial reference produce identical output; the
// serial path stays as the test oracle and the benchmark baseline.

#pragma once

#include "daolens/abi/codec.hpp"

#include <map>
#include <vector>

namespace daolens::abi {

// topic0 -> spec lookup built from one or more ABIs. Anonymous events have
// no topic0 discriminator and are not decodable here (non-goal).
class SpecRegistry {
public:
    void add(const AbiEventSpec& spec);
    void add_all(const std::vector<AbiEventSpec>& specs);
    const AbiEventSpec* find(const Bytes32& topic0) const;
    size_t size() const { return by_topic_.size(); }

private:
    std::map<Bytes32, AbiEventSpec> by_topic_;
};

struct DropReport {
    uint64_t logs_in = 0;
    uint64_t decoded = 0;
    uint64_t unknown_event = 0; // no spec for topic0 (or no topics at all)
    uint64_t malformed = 0;     // bytes do not fit the spec

    uint64_t dropped() const { return unknown_event + malformed; }
    DropReport& operator+=(const DropReport& other);
};

struct BatchResult {
    std::vector<DecodedEvent> events; // input order, dropped logs skipped
    DropReport report;
};

BatchResult decode_batch_serial(const SpecRegistry& registry, const std::vector<chain::RawLog>& logs);

// Same contract, OpenMP-parallel over logs. Falls back to the serial path
// for small batches where thread startup dominates.
BatchResult decode_batch(const SpecRegistry& registry, const std::vector<chain::RawLog>& logs);

} // namespace daolens::abi
