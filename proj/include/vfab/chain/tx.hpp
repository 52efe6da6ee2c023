#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vfab/process/process.hpp"
#include "vfab/util/hex.hpp"
#include "vfab/util/sha256.hpp"

namespace vfab::chain {

enum class Verdict : std::uint8_t { Verified = 1, Failed = 2, Mismatch = 3 };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Verified: return "VERIFIED";
    case Verdict::Failed: return "FAILED";
    default: return "MISMATCH";
    }
}

inline Verdict verdict_from_name(const std::string& s) {
    if (s == "VERIFIED") return Verdict::Verified;
    if (s == "FAILED") return Verdict::Failed;
    if (s == "MISMATCH") return Verdict::Mismatch;
    throw std::invalid_argument("bad verdict");
}

struct DeployTx {
    std::string contract_id;
    process::ProcessSpec spec;
};

struct VerifyRequestTx {
    std::string contract_id;
    std::string item_id;
    process::StateSequence seq;
};

/// Only the outcome and the item identity go on chain; keys and proofs
/// stay node-local.
struct VerifyResultTx {
    Hash32 request_tx_id{};
    std::string item_id;
    Verdict verdict = Verdict::Failed;
    Hash32 rho_x{};
    std::uint32_t endorsements = 0;
};

struct Transaction {
    std::variant<DeployTx, VerifyRequestTx, VerifyResultTx> payload;
    Hash32 tx_id{};

    std::uint8_t kind_tag() const { return static_cast<std::uint8_t>(payload.index() + 1); }
};

namespace detail {
using process::detail::put_u32;
using process::detail::put_u64;

inline void put_str(std::vector<std::uint8_t>& out, const std::string& s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.insert(out.end(), s.begin(), s.end());
}

inline void put_bytes(std::vector<std::uint8_t>& out, const std::vector<std::uint8_t>& b) {
    put_u32(out, static_cast<std::uint32_t>(b.size()));
    out.insert(out.end(), b.begin(), b.end());
}

inline std::vector<std::uint8_t> encode_spec(const process::ProcessSpec& spec) {
    std::vector<std::uint8_t> out;
    put_str(out, spec.name);
    put_u32(out, static_cast<std::uint32_t>(spec.steps.size()));
    for (const auto& step : spec.steps) {
        put_u32(out, static_cast<std::uint32_t>(step.allowed_states.size()));
        for (std::uint32_t s : step.allowed_states) put_u32(out, s); // std::set: sorted
        process::detail::put_aux(out, step.expected_aux);
    }
    return out;
}
} // namespace detail

/// Bit-exact canonical bytes: kind tag, then length-prefixed fields in
/// declaration order, integers little-endian. tx_id and block hashes
/// are computed over this form.
inline std::vector<std::uint8_t> canonical_tx_bytes(const Transaction& tx) {
    std::vector<std::uint8_t> out;
    out.push_back(tx.kind_tag());
    if (const auto* d = std::get_if<DeployTx>(&tx.payload)) {
        detail::put_str(out, d->contract_id);
        detail::put_bytes(out, detail::encode_spec(d->spec));
    } else if (const auto* r = std::get_if<VerifyRequestTx>(&tx.payload)) {
        detail::put_str(out, r->contract_id);
        detail::put_str(out, r->item_id);
        detail::put_bytes(out, process::canonical_encode(r->seq));
    } else {
        const auto& res = std::get<VerifyResultTx>(tx.payload);
        out.insert(out.end(), res.request_tx_id.begin(), res.request_tx_id.end());
        detail::put_str(out, res.item_id);
        out.push_back(static_cast<std::uint8_t>(res.verdict));
        out.insert(out.end(), res.rho_x.begin(), res.rho_x.end());
        detail::put_u32(out, res.endorsements);
    }
    return out;
}

inline Transaction make_tx(std::variant<DeployTx, VerifyRequestTx, VerifyResultTx> payload) {
    Transaction tx{std::move(payload), {}};
    tx.tx_id = sha256(canonical_tx_bytes(tx));
    return tx;
}

inline nlohmann::json tx_to_json(const Transaction& tx) {
    nlohmann::json j;
    j["tx_id"] = to_hex(tx.tx_id);
    if (const auto* d = std::get_if<DeployTx>(&tx.payload)) {
        j["kind"] = "deploy";
        j["contract_id"] = d->contract_id;
        j["spec"] = process::spec_to_json(d->spec);
    } else if (const auto* r = std::get_if<VerifyRequestTx>(&tx.payload)) {
        j["kind"] = "verify_request";
        j["contract_id"] = r->contract_id;
        j["item_id"] = r->item_id;
        j["sequence"] = process::sequence_to_json(r->seq);
    } else {
        const auto& res = std::get<VerifyResultTx>(tx.payload);
        j["kind"] = "verify_result";
        j["request_tx_id"] = to_hex(res.request_tx_id);
        j["item_id"] = res.item_id;
        j["verdict"] = verdict_name(res.verdict);
        j["rho_x"] = to_hex(res.rho_x);
        j["endorsements"] = res.endorsements;
    }
    return j;
}

inline Transaction tx_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    Transaction tx;
    if (kind == "deploy") {
        tx = make_tx(DeployTx{j.at("contract_id").get<std::string>(),
                              process::spec_from_json(j.at("spec"))});
    } else if (kind == "verify_request") {
        auto seq = process::sequence_from_json(j.at("sequence"));
        tx = make_tx(VerifyRequestTx{j.at("contract_id").get<std::string>(),
                                     j.at("item_id").get<std::string>(), std::move(seq)});
    } else if (kind == "verify_result") {
        tx = make_tx(VerifyResultTx{hash_from_hex(j.at("request_tx_id").get<std::string>()),
                                    j.at("item_id").get<std::string>(),
                                    verdict_from_name(j.at("verdict").get<std::string>()),
                                    hash_from_hex(j.at("rho_x").get<std::string>()),
                                    j.at("endorsements").get<std::uint32_t>()});
    } else {
        throw std::invalid_argument("bad tx kind");
    }
    if (to_hex(tx.tx_id) != j.at("tx_id").get<std::string>())
        throw std::invalid_argument("tx_id does not match canonical bytes");
    return tx;
}

} // namespace vfab::chain
