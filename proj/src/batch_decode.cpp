#include "daolens/abi/batch_decode.hpp"

#include "daolens/common/errors.hpp"

#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace daolens::abi {

void SpecRegistry::add(const AbiEventSpec& spec)
{
    if (!spec.anonymous)
        by_topic_[event_topic(spec)] = spec;
}

void SpecRegistry::add_all(const std::vector<AbiEventSpec>& specs)
{
    for (const auto& spec : specs)
        add(spec);
}

const AbiEventSpec* SpecRegistry::find(const Bytes32& topic0) const
{
    auto it = by_topic_.find(topic0);
    return it == by_topic_.end() ? nullptr : &it->second;
}

DropReport& DropReport::operator+=(const DropReport& other)
{
    logs_in += other.logs_in;
    decoded += other.decoded;
    unknown_event += other.unknown_event;
    malformed += other.malformed;
    return *this;
}

namespace {

enum class Outcome { Decoded, Unknown, Malformed };

Outcome decode_one(const SpecRegistry& registry, const chain::RawLog& log, std::optional<DecodedEvent>& slot)
{
    if (log.topics.empty())
        return Outcome::Unknown;
    const AbiEventSpec* spec = registry.find(log.topics[0]);
    if (!spec)
        return Outcome::Unknown;
    try {
        slot = decode_log(*spec, log);
        return Outcome::Decoded;
    } catch (const malformed_log_error&) {
        return Outcome::Malformed;
    } catch (const wrong_event_error&) {
        return Outcome::Malformed;
    }
}

BatchResult collect(std::vector<std::optional<DecodedEvent>>& slots, const std::vector<Outcome>& outcomes)
{
    BatchResult result;
    result.report.logs_in = slots.size();
    result.events.reserve(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) {
        switch (outcomes[i]) {
        case Outcome::Decoded:
            result.events.push_back(std::move(*slots[i]));
            ++result.report.decoded;
            break;
        case Outcome::Unknown:
            ++result.report.unknown_event;
            break;
        case Outcome::Malformed:
            ++result.report.malformed;
            break;
        }
    }
    return result;
}

constexpr size_t kParallelThreshold = 2'048;

} // namespace

BatchResult decode_batch_serial(const SpecRegistry& registry, const std::vector<chain::RawLog>& logs)
{
    std::vector<std::optional<DecodedEvent>> slots(logs.size());
    std::vector<Outcome> outcomes(logs.size(), Outcome::Unknown);
    for (size_t i = 0; i < logs.size(); ++i)
        outcomes[i] = decode_one(registry, logs[i], slots[i]);
    return collect(slots, outcomes);
}

BatchResult decode_batch(const SpecRegistry& registry, const std::vector<chain::RawLog>& logs)
{
#ifdef _OPENMP
    if (logs.size() >= kParallelThreshold) {
        std::vector<std::optional<DecodedEvent>> slots(logs.size());
        std::vector<Outcome> outcomes(logs.size(), Outcome::Unknown);
#pragma omp parallel for schedule(static)
        for (size_t i = 0; i < logs.size(); ++i)
            outcomes[i] = decode_one(registry, logs[i], slots[i]);
        return collect(slots, outcomes);
    }
#endif
    return decode_batch_serial(registry, logs);
}

} // namespace daolens::abi
