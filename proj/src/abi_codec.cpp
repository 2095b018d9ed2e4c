#include "daolens/abi/codec.hpp"

#include "daolens/common/errors.hpp"
#include "daolens/common/keccak.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>

namespace daolens::abi {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Type grammar

std::string SolType::canonical() const
{
    std::string base_name;
    switch (base) {
    case BaseType::Address: base_name = "address"; break;
    case BaseType::Bool: base_name = "bool"; break;
    case BaseType::Uint: base_name = "uint" + std::to_string(width_bits); break;
    case BaseType::Int: base_name = "int" + std::to_string(width_bits); break;
    case BaseType::BytesN: base_name = "bytes" + std::to_string(fixed_bytes); break;
    case BaseType::Bytes: base_name = "bytes"; break;
    case BaseType::String: base_name = "string"; break;
    }
    if (!is_array)
        return base_name;
    return base_name + (array_size == 0 ? "[]" : "[" + std::to_string(array_size) + "]");
}

bool SolType::dynamic() const
{
    if (base == BaseType::Bytes || base == BaseType::String)
        return true;
    return is_array && array_size == 0;
}

namespace {

bool element_dynamic(const SolType& t)
{
    return t.base == BaseType::Bytes || t.base == BaseType::String;
}

unsigned parse_width(std::string_view digits, unsigned dflt, unsigned max, const std::string& whole)
{
    if (digits.empty())
        return dflt;
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc {} || ptr != digits.data() + digits.size() || v == 0 || v > max)
        throw unsupported_type_error(whole);
    return v;
}

} // namespace

SolType parse_sol_type(const std::string& text)
{
    std::string_view s(text);
    SolType out;

    // Array suffix first; one level only.
    if (auto open = s.find('['); open != std::string_view::npos) {
        if (s.back() != ']')
            throw unsupported_type_error(text);
        std::string_view inside = s.substr(open + 1, s.size() - open - 2);
        if (inside.find_first_of("[]") != std::string_view::npos || s.substr(0, open).find('[') != std::string_view::npos)
            throw unsupported_type_error(text); // nested arrays
        out.is_array = true;
        out.array_size = inside.empty() ? 0 : parse_width(inside, 0, 1'000'000, text);
        s = s.substr(0, open);
    }

    if (s == "address") {
        out.base = BaseType::Address;
    } else if (s == "bool") {
        out.base = BaseType::Bool;
    } else if (s == "string") {
        out.base = BaseType::String;
    } else if (s == "bytes") {
        out.base = BaseType::Bytes;
    } else if (s.rfind("uint", 0) == 0) {
        out.base = BaseType::Uint;
        out.width_bits = parse_width(s.substr(4), 256, 256, text);
        if (out.width_bits % 8)
            throw unsupported_type_error(text);
    } else if (s.rfind("int", 0) == 0) {
        out.base = BaseType::Int;
        out.width_bits = parse_width(s.substr(3), 256, 256, text);
        if (out.width_bits % 8)
            throw unsupported_type_error(text);
    } else if (s.rfind("bytes", 0) == 0) {
        out.base = BaseType::BytesN;
        out.fixed_bytes = parse_width(s.substr(5), 0, 32, text);
        if (out.fixed_bytes == 0)
            throw unsupported_type_error(text);
    } else {
        throw unsupported_type_error(text); // tuple and friends land here
    }

    if (out.is_array && element_dynamic(out) && out.array_size != 0 && out.base == BaseType::String) {
        // string[k] / bytes[k] still fine; nothing extra to check
    }
    return out;
}

std::string AbiEventSpec::signature() const
{
    std::string sig = name + "(";
    for (size_t i = 0; i < inputs.size(); ++i) {
        if (i)
            sig += ",";
        sig += inputs[i].type.canonical();
    }
    return sig + ")";
}

size_t AbiEventSpec::indexed_count() const
{
    return static_cast<size_t>(std::count_if(inputs.begin(), inputs.end(),
                                             [](const EventInput& in) { return in.indexed; }));
}

const Value* DecodedEvent::find(const std::string& param_name) const
{
    for (const auto& p : params)
        if (p.name == param_name)
            return &p.value;
    return nullptr;
}

// ---------------------------------------------------------------------------
// ABI document parsing

std::vector<AbiEventSpec> parse_abi(const std::string& abi_text)
{
    json doc;
    try {
        doc = json::parse(abi_text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("ABI document: ") + e.what(), e.byte);
    }

    // Etherscan wraps the ABI in {"result": "..."}; accept the bare array form too.
    if (doc.is_object() && doc.contains("abi"))
        doc = doc["abi"];
    if (!doc.is_array())
        throw parse_error("ABI document is not an array");

    std::vector<AbiEventSpec> specs;
    for (const auto& entry : doc) {
        if (!entry.is_object() || entry.value("type", "") != "event")
            continue;
        AbiEventSpec spec;
        spec.name = entry.value("name", "");
        if (spec.name.empty())
            throw parse_error("event entry without a name");
        spec.anonymous = entry.value("anonymous", false);
        for (const auto& input : entry.value("inputs", json::array())) {
            EventInput in;
            in.name = input.value("name", "");
            in.indexed = input.value("indexed", false);
            in.type = parse_sol_type(input.value("type", ""));
            spec.inputs.push_back(std::move(in));
        }
        if (!spec.anonymous && spec.indexed_count() > 3)
            throw parse_error("event " + spec.name + " declares more than 3 indexed inputs");
        specs.push_back(std::move(spec));
    }
    return specs;
}

Bytes32 event_topic(const AbiEventSpec& spec)
{
    return keccak256(spec.signature());
}

// ---------------------------------------------------------------------------
// Word-level primitives

namespace {

BigInt uint_from_word(const Bytes32& w)
{
    BigInt v = 0;
    for (uint8_t b : w)
        v = (v << 8) | b;
    return v;
}

BigInt int_from_word(const Bytes32& w)
{
    BigInt v = uint_from_word(w);
    if (w[0] & 0x80)
        v -= BigInt(1) << 256;
    return v;
}

Bytes32 word_from_uint(const BigInt& value)
{
    BigInt v = value;
    if (v < 0)
        v += BigInt(1) << 256; // two's complement for signed values
    Bytes32 w {};
    for (int i = 31; i >= 0 && v != 0; --i) {
        w[i] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
    }
    return w;
}

std::string address_from_word(const Bytes32& w)
{
    return to_hex(std::span<const uint8_t>(w.data() + 12, 20));
}

Bytes32 word_from_address(const std::string& addr)
{
    Bytes raw = from_hex(addr);
    if (raw.size() != 20)
        throw argument_error("address is not 20 bytes: " + addr);
    Bytes32 w {};
    std::copy(raw.begin(), raw.end(), w.begin() + 12);
    return w;
}

// Slots a static value occupies in the head (fixed static arrays are inline).
size_t head_words(const SolType& t)
{
    if (t.dynamic())
        return 1;
    if (t.is_array)
        return t.array_size; // static elements only, one word each
    return 1;
}

class Reader {
public:
    Reader(std::span<const uint8_t> data, size_t base)
        : data_(data)
        , base_(base)
    {
    }

    Bytes32 word_at(size_t offset) const
    {
        if (base_ + offset + 32 > data_.size())
            throw malformed_log_error("data read past end (offset " + std::to_string(base_ + offset) + ")");
        Bytes32 w;
        std::copy_n(data_.data() + base_ + offset, 32, w.begin());
        return w;
    }

    Bytes bytes_at(size_t offset, size_t len) const
    {
        size_t padded = (len + 31) / 32 * 32;
        if (base_ + offset + padded > data_.size())
            throw malformed_log_error("payload read past end");
        return Bytes(data_.data() + base_ + offset, data_.data() + base_ + offset + len);
    }

    Reader block_at(size_t offset) const
    {
        if (base_ + offset > data_.size())
            throw malformed_log_error("tail offset out of bounds");
        return Reader(data_, base_ + offset);
    }

private:
    std::span<const uint8_t> data_;
    size_t base_;
};

Value decode_static_word(const SolType& t, const Bytes32& w)
{
    switch (t.base) {
    case BaseType::Address:
        return Value::from_text(address_from_word(w));
    case BaseType::Bool:
        return Value::from_bool(uint_from_word(w) != 0);
    case BaseType::Uint:
        return Value::from_uint(uint_from_word(w));
    case BaseType::Int:
        return Value { int_from_word(w) };
    case BaseType::BytesN:
        return Value::from_bytes(Bytes(w.begin(), w.begin() + t.fixed_bytes));
    default:
        throw malformed_log_error("dynamic type decoded as static word");
    }
}

size_t checked_size_t(const BigInt& v, const char* what)
{
    if (v < 0 || v > 1'000'000'000)
        throw malformed_log_error(std::string(what) + " out of range");
    return static_cast<size_t>(v);
}

// Decodes the value rooted at head slot `head_offset` within `block`.
Value decode_value(const SolType& t, const Reader& block, size_t head_offset)
{
    SolType elem = t;
    elem.is_array = false;
    elem.array_size = 0;

    if (t.is_array) {
        size_t count = t.array_size;
        Reader body = block;
        size_t body_offset = head_offset;
        if (t.dynamic()) {
            size_t tail = checked_size_t(uint_from_word(block.word_at(head_offset)), "tail offset");
            Reader len_block = block.block_at(tail);
            count = checked_size_t(uint_from_word(len_block.word_at(0)), "array length");
            body = len_block.block_at(32);
            body_offset = 0;
        } else if (element_dynamic(elem)) {
            // fixed array of dynamic elements: head slot is an offset to a block of offsets
            size_t tail = checked_size_t(uint_from_word(block.word_at(head_offset)), "tail offset");
            body = block.block_at(tail);
            body_offset = 0;
        }
        ValueArray items;
        items.reserve(count);
        for (size_t i = 0; i < count; ++i)
            items.push_back(decode_value(elem, body, body_offset + i * 32));
        return Value { std::move(items) };
    }

    if (t.base == BaseType::Bytes || t.base == BaseType::String) {
        size_t tail = checked_size_t(uint_from_word(block.word_at(head_offset)), "tail offset");
        Reader payload = block.block_at(tail);
        size_t len = checked_size_t(uint_from_word(payload.word_at(0)), "byte length");
        Bytes raw = payload.bytes_at(32, len);
        if (t.base == BaseType::String)
            return Value::from_text(std::string(raw.begin(), raw.end()));
        return Value::from_bytes(std::move(raw));
    }

    return decode_static_word(t, block.word_at(head_offset));
}

// Indexed params of reference type (arrays, string, bytes) are stored hashed.
bool indexed_as_hash(const SolType& t)
{
    return t.is_array || t.base == BaseType::Bytes || t.base == BaseType::String;
}

// ---------------------------------------------------------------------------
// Encoding (generator + round-trip support)

class Writer {
public:
    void put_word(const Bytes32& w) { buf_.insert(buf_.end(), w.begin(), w.end()); }

    void put_padded(const Bytes& raw)
    {
        buf_.insert(buf_.end(), raw.begin(), raw.end());
        buf_.resize((buf_.size() + 31) / 32 * 32, 0);
    }

    size_t size() const { return buf_.size(); }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

Bytes encode_block(const std::vector<SolType>& types, const std::vector<const Value*>& values);

Bytes32 encode_static_word(const SolType& t, const Value& v)
{
    switch (t.base) {
    case BaseType::Address:
        return word_from_address(v.as_text());
    case BaseType::Bool:
        return word_from_uint(BigInt(v.as_bool() ? 1 : 0));
    case BaseType::Uint:
    case BaseType::Int:
        return word_from_uint(v.as_uint());
    case BaseType::BytesN: {
        const Bytes& raw = v.as_bytes();
        if (raw.size() != t.fixed_bytes)
            throw argument_error("bytes" + std::to_string(t.fixed_bytes) + " value has wrong length");
        Bytes32 w {};
        std::copy(raw.begin(), raw.end(), w.begin());
        return w;
    }
    default:
        throw argument_error("dynamic type in static slot");
    }
}

// Tail body for one dynamic value (without the head offset slot).
Bytes encode_tail(const SolType& t, const Value& v)
{
    Writer w;
    if (t.is_array) {
        const ValueArray& items = std::get<ValueArray>(v.data);
        SolType elem = t;
        elem.is_array = false;
        elem.array_size = 0;
        if (t.array_size != 0 && items.size() != t.array_size)
            throw argument_error("fixed array value has wrong length");
        if (t.dynamic())
            w.put_word(word_from_uint(BigInt(items.size())));
        std::vector<SolType> types(items.size(), elem);
        std::vector<const Value*> ptrs;
        ptrs.reserve(items.size());
        for (const auto& item : items)
            ptrs.push_back(&item);
        Bytes body = encode_block(types, ptrs);
        Bytes out = w.take();
        out.insert(out.end(), body.begin(), body.end());
        return out;
    }
    if (t.base == BaseType::String) {
        const std::string& s = v.as_text();
        w.put_word(word_from_uint(BigInt(s.size())));
        w.put_padded(Bytes(s.begin(), s.end()));
        return w.take();
    }
    if (t.base == BaseType::Bytes) {
        const Bytes& raw = v.as_bytes();
        w.put_word(word_from_uint(BigInt(raw.size())));
        w.put_padded(raw);
        return w.take();
    }
    throw argument_error("encode_tail on static type");
}

Bytes encode_block(const std::vector<SolType>& types, const std::vector<const Value*>& values)
{
    // Head/tail layout: dynamic slots hold offsets from the block start.
    // Fixed arrays of dynamic elements take one offset slot, like dynamic types.
    size_t head_size = 0;
    for (const auto& t : types) {
        if (t.dynamic() || (t.is_array && element_dynamic(t)))
            head_size += 32;
        else
            head_size += head_words(t) * 32;
    }

    Bytes head;
    Bytes tail;
    for (size_t i = 0; i < types.size(); ++i) {
        const SolType& t = types[i];
        const Value& v = *values[i];
        if (t.dynamic() || (t.is_array && element_dynamic(t))) {
            Bytes32 offset = word_from_uint(BigInt(head_size + tail.size()));
            head.insert(head.end(), offset.begin(), offset.end());
            Bytes body = encode_tail(t, v);
            tail.insert(tail.end(), body.begin(), body.end());
        } else if (t.is_array) {
            const ValueArray& items = std::get<ValueArray>(v.data);
            if (items.size() != t.array_size)
                throw argument_error("fixed array value has wrong length");
            SolType elem = t;
            elem.is_array = false;
            for (const auto& item : items) {
                Bytes32 w = encode_static_word(elem, item);
                head.insert(head.end(), w.begin(), w.end());
            }
        } else {
            Bytes32 w = encode_static_word(t, v);
            head.insert(head.end(), w.begin(), w.end());
        }
    }
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

} // namespace

// ---------------------------------------------------------------------------

DecodedEvent decode_log(const AbiEventSpec& spec, const chain::RawLog& log)
{
    if (!spec.anonymous) {
        if (log.topics.empty())
            throw malformed_log_error("log has no topics but event is not anonymous");
        if (log.topics[0] != event_topic(spec))
            throw wrong_event_error("topic0 does not match event " + spec.name);
    }

    size_t expected_topics = spec.indexed_count() + (spec.anonymous ? 0 : 1);
    if (log.topics.size() != expected_topics)
        throw malformed_log_error("event " + spec.name + " expects " + std::to_string(expected_topics)
                                  + " topics, log has " + std::to_string(log.topics.size()));
    if (log.data.size() % 32 != 0)
        throw malformed_log_error("data length " + std::to_string(log.data.size()) + " is not a multiple of 32");

    DecodedEvent out;
    out.event_name = spec.name;
    out.contract = log.address;
    out.block_number = log.block_number;
    out.tx_hash = log.tx_hash;
    out.log_index = log.log_index;
    out.timestamp_utc = log.block_timestamp;

    Reader data(std::span<const uint8_t>(log.data.data(), log.data.size()), 0);

    size_t topic_cursor = spec.anonymous ? 0 : 1;
    size_t head_cursor = 0;
    for (const auto& input : spec.inputs) {
        DecodedParam param;
        param.name = input.name;
        if (input.indexed) {
            const Bytes32& word = log.topics[topic_cursor++];
            param.value = indexed_as_hash(input.type) ? Value { HashedValue { word } }
                                                      : decode_static_word(input.type, word);
        } else {
            param.value = decode_value(input.type, data, head_cursor);
            if (input.type.dynamic() || (input.type.is_array && element_dynamic(input.type)))
                head_cursor += 32;
            else
                head_cursor += head_words(input.type) * 32;
        }
        out.params.push_back(std::move(param));
    }
    return out;
}

EncodedLog encode_log(const AbiEventSpec& spec, const std::vector<Value>& values)
{
    if (values.size() != spec.inputs.size())
        throw argument_error("event " + spec.name + " takes " + std::to_string(spec.inputs.size())
                             + " values, got " + std::to_string(values.size()));

    EncodedLog out;
    if (!spec.anonymous)
        out.topics.push_back(event_topic(spec));

    std::vector<SolType> data_types;
    std::vector<const Value*> data_values;
    for (size_t i = 0; i < spec.inputs.size(); ++i) {
        const auto& input = spec.inputs[i];
        if (input.indexed) {
            if (indexed_as_hash(input.type)) {
                if (const auto* h = std::get_if<HashedValue>(&values[i].data)) {
                    out.topics.push_back(h->hash);
                } else if (input.type.base == BaseType::String && !input.type.is_array) {
                    out.topics.push_back(keccak256(values[i].as_text()));
                } else if (input.type.base == BaseType::Bytes && !input.type.is_array) {
                    const Bytes& raw = values[i].as_bytes();
                    out.topics.push_back(keccak256(std::span<const uint8_t>(raw.data(), raw.size())));
                } else {
                    // arrays hash their in-place encoding, without the length prefix
                    Bytes packed = encode_tail(input.type, values[i]);
                    size_t skip = input.type.dynamic() ? 32 : 0;
                    out.topics.push_back(
                        keccak256(std::span<const uint8_t>(packed.data() + skip, packed.size() - skip)));
                }
            } else {
                out.topics.push_back(encode_static_word(input.type, values[i]));
            }
        } else {
            data_types.push_back(input.type);
            data_values.push_back(&values[i]);
        }
    }
    out.data = encode_block(data_types, data_values);
    return out;
}

} // namespace daolens::abi
