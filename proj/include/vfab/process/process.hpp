#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vfab/ff/field.hpp"
#include "vfab/util/sha256.hpp"

namespace vfab::process {

constexpr std::size_t MAX_AUX_STRING = 4096;

/// State value reserved for padding short sequences up to circuit size;
/// never allowed as a member of any step's state set.
constexpr std::uint32_t SENTINEL_STATE = 0xffffffffu;

/// Per-state auxiliary payload: empty, an integer, or a string.
struct AuxData {
    std::variant<std::monostate, std::uint64_t, std::string> value;

    static AuxData empty() { return {}; }
    static AuxData integer(std::uint64_t v) { return {v}; }
    static AuxData str(std::string s) { return {std::move(s)}; }

    std::uint8_t tag() const { return static_cast<std::uint8_t>(value.index()); }
    bool is_empty() const { return value.index() == 0; }
    std::uint64_t as_int() const { return std::get<std::uint64_t>(value); }
    const std::string& as_str() const { return std::get<std::string>(value); }

    bool valid() const {
        if (value.index() == 1 && as_int() >= ff::Fe::MOD) return false;
        if (value.index() == 2 && as_str().size() > MAX_AUX_STRING) return false;
        return true;
    }

    friend bool operator==(const AuxData& a, const AuxData& b) { return a.value == b.value; }
    friend bool operator!=(const AuxData& a, const AuxData& b) { return !(a == b); }
};

struct StateTuple {
    std::uint32_t state = 0;
    AuxData aux;

    friend bool operator==(const StateTuple&, const StateTuple&) = default;
};

/// Ordered digital record of one physical transformation of one item.
struct StateSequence {
    std::string item_id;
    std::vector<StateTuple> tuples;

    friend bool operator==(const StateSequence&, const StateSequence&) = default;
};

struct StepSpec {
    std::set<std::uint32_t> allowed_states;
    AuxData expected_aux;

    /// Canonical representative of the step: smallest allowed state.
    std::uint32_t canonical_state() const { return *allowed_states.begin(); }
};

/// The agreed-upon process description: per step, the admissible states
/// and the expected auxiliary payload.
struct ProcessSpec {
    std::string name;
    std::vector<StepSpec> steps;
};

inline void validate_spec(const ProcessSpec& spec) {
    if (spec.steps.empty()) throw std::invalid_argument("process spec has no steps");
    for (const auto& step : spec.steps) {
        if (step.allowed_states.empty())
            throw std::invalid_argument("step has empty allowed-state set");
        if (step.allowed_states.count(SENTINEL_STATE))
            throw std::invalid_argument("state 2^32-1 is reserved");
        if (!step.expected_aux.valid())
            throw std::invalid_argument("invalid aux payload in spec");
    }
}

enum class FaultKind { WrongAux, WrongState, TruncateAfter };

struct FaultSpec {
    FaultKind kind;
    std::size_t step_index = 0;
    AuxData aux_payload;            // WrongAux
    std::uint32_t state_payload = 0; // WrongState; 0 means "pick out-of-set"
};

/// Deterministic PLC emulator: steps the FSM over simulated field
/// devices, emitting one tuple per step (smallest allowed state,
/// expected aux), then applies the requested faults.
inline StateSequence run_process(const ProcessSpec& spec,
                                 const std::vector<FaultSpec>& faults,
                                 const std::string& item_id) {
    validate_spec(spec);
    if (item_id.empty()) throw std::invalid_argument("empty item_id");
    for (const auto& f : faults)
        if (f.step_index >= spec.steps.size())
            throw std::invalid_argument("fault step index out of range");

    StateSequence seq;
    seq.item_id = item_id;
    seq.tuples.reserve(spec.steps.size());
    for (const auto& step : spec.steps)
        seq.tuples.push_back({step.canonical_state(), step.expected_aux});

    for (const auto& f : faults) {
        switch (f.kind) {
        case FaultKind::WrongAux:
            seq.tuples[f.step_index].aux = f.aux_payload;
            break;
        case FaultKind::WrongState: {
            std::uint32_t s = f.state_payload;
            const auto& allowed = spec.steps[f.step_index].allowed_states;
            while (allowed.count(s) || s == SENTINEL_STATE) ++s;
            seq.tuples[f.step_index].state = s;
            break;
        }
        case FaultKind::TruncateAfter:
            if (f.step_index + 1 < seq.tuples.size())
                seq.tuples.resize(f.step_index + 1);
            break;
        }
    }
    return seq;
}

/// Plain (non-cryptographic) conformance oracle. Returns ok plus the
/// first violating step; a length mismatch reports min(len) as the step.
inline std::pair<bool, std::optional<std::size_t>>
validate_plain(const ProcessSpec& spec, const StateSequence& seq) {
    const std::size_t common = std::min(spec.steps.size(), seq.tuples.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (!spec.steps[i].allowed_states.count(seq.tuples[i].state))
            return {false, i};
        if (seq.tuples[i].aux != spec.steps[i].expected_aux)
            return {false, i};
    }
    if (spec.steps.size() != seq.tuples.size())
        return {false, common};
    return {true, std::nullopt};
}

namespace detail {
inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) { out.push_back(static_cast<std::uint8_t>(v)); v >>= 8; }
}
inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) { out.push_back(static_cast<std::uint8_t>(v)); v >>= 8; }
}
inline std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t& off) {
    if (off + 4 > b.size()) throw std::invalid_argument("truncated encoding");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = v << 8 | b[off + i];
    off += 4;
    return v;
}
inline std::uint64_t get_u64(std::span<const std::uint8_t> b, std::size_t& off) {
    if (off + 8 > b.size()) throw std::invalid_argument("truncated encoding");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = v << 8 | b[off + i];
    off += 8;
    return v;
}
inline void put_aux(std::vector<std::uint8_t>& out, const AuxData& aux) {
    out.push_back(aux.tag());
    if (aux.tag() == 1) {
        put_u64(out, aux.as_int());
    } else if (aux.tag() == 2) {
        const auto& s = aux.as_str();
        put_u32(out, static_cast<std::uint32_t>(s.size()));
        out.insert(out.end(), s.begin(), s.end());
    }
}
inline AuxData get_aux(std::span<const std::uint8_t> b, std::size_t& off) {
    if (off >= b.size()) throw std::invalid_argument("truncated encoding");
    std::uint8_t tag = b[off++];
    if (tag == 0) return AuxData::empty();
    if (tag == 1) return AuxData::integer(get_u64(b, off));
    if (tag == 2) {
        std::uint32_t len = get_u32(b, off);
        if (off + len > b.size()) throw std::invalid_argument("truncated encoding");
        std::string s(b.begin() + off, b.begin() + off + len);
        off += len;
        return AuxData::str(std::move(s));
    }
    throw std::invalid_argument("bad aux tag");
}
} // namespace detail

/// Bit-exact byte form: u32 LE tuple count, then per tuple u32 LE state,
/// aux tag byte, tag-dependent payload. item_id travels separately.
inline std::vector<std::uint8_t> canonical_encode(const StateSequence& seq) {
    std::vector<std::uint8_t> out;
    detail::put_u32(out, static_cast<std::uint32_t>(seq.tuples.size()));
    for (const auto& t : seq.tuples) {
        detail::put_u32(out, t.state);
        detail::put_aux(out, t.aux);
    }
    return out;
}

inline StateSequence canonical_decode(std::span<const std::uint8_t> bytes,
                                      std::string item_id) {
    StateSequence seq;
    seq.item_id = std::move(item_id);
    std::size_t off = 0;
    std::uint32_t count = detail::get_u32(bytes, off);
    seq.tuples.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        StateTuple t;
        t.state = detail::get_u32(bytes, off);
        t.aux = detail::get_aux(bytes, off);
        seq.tuples.push_back(std::move(t));
    }
    if (off != bytes.size()) throw std::invalid_argument("trailing bytes");
    return seq;
}

/// Field image of one aux payload: (tag, value). Strings go through
/// SHA-256 and reduce to an integer, so string equality becomes integer
/// equality inside the circuit.
inline std::pair<ff::Fe, ff::Fe> aux_to_field(const AuxData& aux) {
    switch (aux.tag()) {
    case 0: return {ff::Fe(0), ff::Fe(0)};
    case 1: return {ff::Fe(1), ff::Fe(aux.as_int())};
    default: {
        Hash32 h = sha256(aux.as_str());
        return {ff::Fe(2), ff::fe_from_bytes_be(h)};
    }
    }
}

/// 3 field elements per tuple: [state, aux tag, aux value].
inline std::vector<ff::Fe> to_field_vector(const StateSequence& seq) {
    std::vector<ff::Fe> out;
    out.reserve(3 * seq.tuples.size());
    for (const auto& t : seq.tuples) {
        out.push_back(ff::Fe(t.state));
        auto [tag, val] = aux_to_field(t.aux);
        out.push_back(tag);
        out.push_back(val);
    }
    return out;
}

/// Same layout as to_field_vector, built from the spec's canonical
/// states and expected aux. This is the prover's witness vector.
inline std::vector<ff::Fe> spec_to_field_vector(const ProcessSpec& spec) {
    std::vector<ff::Fe> out;
    out.reserve(3 * spec.steps.size());
    for (const auto& step : spec.steps) {
        out.push_back(ff::Fe(step.canonical_state()));
        auto [tag, val] = aux_to_field(step.expected_aux);
        out.push_back(tag);
        out.push_back(val);
    }
    return out;
}

// ---- JSON forms ----

inline nlohmann::json aux_to_json(const AuxData& aux) {
    nlohmann::json j;
    j["tag"] = aux.tag();
    if (aux.tag() == 1) j["value"] = aux.as_int();
    if (aux.tag() == 2) j["value"] = aux.as_str();
    return j;
}

inline AuxData aux_from_json(const nlohmann::json& j) {
    int tag = j.at("tag").get<int>();
    if (tag == 0) return AuxData::empty();
    if (tag == 1) return AuxData::integer(j.at("value").get<std::uint64_t>());
    if (tag == 2) return AuxData::str(j.at("value").get<std::string>());
    throw std::invalid_argument("bad aux tag in JSON");
}

inline nlohmann::json spec_to_json(const ProcessSpec& spec) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : spec.steps) {
        nlohmann::json s;
        s["allowed_states"] = step.allowed_states;
        s["expected_aux"] = aux_to_json(step.expected_aux);
        steps.push_back(std::move(s));
    }
    return {{"name", spec.name}, {"steps", std::move(steps)}};
}

inline ProcessSpec spec_from_json(const nlohmann::json& j) {
    ProcessSpec spec;
    spec.name = j.at("name").get<std::string>();
    for (const auto& s : j.at("steps")) {
        StepSpec step;
        for (const auto& v : s.at("allowed_states"))
            step.allowed_states.insert(v.get<std::uint32_t>());
        step.expected_aux = aux_from_json(s.at("expected_aux"));
        spec.steps.push_back(std::move(step));
    }
    validate_spec(spec);
    return spec;
}

inline nlohmann::json sequence_to_json(const StateSequence& seq) {
    nlohmann::json tuples = nlohmann::json::array();
    for (const auto& t : seq.tuples)
        tuples.push_back({{"state", t.state}, {"aux", aux_to_json(t.aux)}});
    return {{"item_id", seq.item_id}, {"tuples", std::move(tuples)}};
}

inline StateSequence sequence_from_json(const nlohmann::json& j) {
    StateSequence seq;
    seq.item_id = j.at("item_id").get<std::string>();
    for (const auto& t : j.at("tuples"))
        seq.tuples.push_back({t.at("state").get<std::uint32_t>(), aux_from_json(t.at("aux"))});
    return seq;
}

// ---- Demo process (barcode scan + CNC machining run) ----

inline const char* DEMO_FILE_HASH =
    "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";
inline const char* DEMO_BARCODE = "ITEM-BARCODE-0468";

/// Six-step run: init, read-file (file hash), read-config (success
/// code), scan (barcode), inspection, end (result code).
inline ProcessSpec demo_spec() {
    ProcessSpec spec;
    spec.name = "demo-cnc-run";
    spec.steps = {
        {{0}, AuxData::empty()},
        {{1}, AuxData::str(DEMO_FILE_HASH)},
        {{2}, AuxData::integer(200)},
        {{3}, AuxData::str(DEMO_BARCODE)},
        {{4}, AuxData::empty()},
        {{5}, AuxData::integer(0)},
    };
    return spec;
}

} // namespace vfab::process
