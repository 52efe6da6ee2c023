#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vfab/chain/tx.hpp"

namespace vfab::chain {

struct Block {
    std::uint64_t index = 0;
    Hash32 prev_hash{};
    std::uint64_t timestamp = 0; // logical counter, not wall clock
    std::vector<Transaction> txs;
    Hash32 block_hash{};
};

inline Hash32 compute_block_hash(const Block& b) {
    std::vector<std::uint8_t> bytes;
    detail::put_u64(bytes, b.index);
    bytes.insert(bytes.end(), b.prev_hash.begin(), b.prev_hash.end());
    detail::put_u64(bytes, b.timestamp);
    for (const auto& tx : b.txs) {
        auto t = canonical_tx_bytes(tx);
        bytes.insert(bytes.end(), t.begin(), t.end());
    }
    return sha256(bytes);
}

/// Append-only hash-chained block list.
struct Ledger {
    std::vector<Block> blocks;

    Hash32 tip_hash() const {
        return blocks.empty() ? Hash32{} : blocks.back().block_hash;
    }

    bool chains(const Block& b) const {
        return b.index == blocks.size() && b.prev_hash == tip_hash() &&
               b.block_hash == compute_block_hash(b);
    }

    void append(const Block& b) {
        if (!chains(b)) throw std::invalid_argument("block does not chain onto ledger");
        blocks.push_back(b);
    }
};

/// Recompute every hash and link; returns the first violating block
/// index, or nullopt when intact.
inline std::optional<std::uint64_t> audit_chain(const Ledger& ledger) {
    Hash32 prev{};
    for (std::size_t i = 0; i < ledger.blocks.size(); ++i) {
        const Block& b = ledger.blocks[i];
        if (b.index != i || b.prev_hash != prev || b.block_hash != compute_block_hash(b))
            return i;
        prev = b.block_hash;
    }
    return std::nullopt;
}

inline nlohmann::json block_to_json(const Block& b) {
    nlohmann::json txs = nlohmann::json::array();
    for (const auto& tx : b.txs) txs.push_back(tx_to_json(tx));
    return {{"index", b.index},
            {"prev_hash", to_hex(b.prev_hash)},
            {"timestamp", b.timestamp},
            {"txs", std::move(txs)},
            {"block_hash", to_hex(b.block_hash)}};
}

/// Trusts the stored hashes; audit_chain checks them.
inline Block block_from_json(const nlohmann::json& j) {
    Block b;
    b.index = j.at("index").get<std::uint64_t>();
    b.prev_hash = hash_from_hex(j.at("prev_hash").get<std::string>());
    b.timestamp = j.at("timestamp").get<std::uint64_t>();
    for (const auto& t : j.at("txs")) b.txs.push_back(tx_from_json(t));
    b.block_hash = hash_from_hex(j.at("block_hash").get<std::string>());
    return b;
}

/// JSON-lines persistence, one block per line.
inline void save_ledger(const Ledger& ledger, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open ledger file for writing: " + path);
    for (const auto& b : ledger.blocks)
        out << block_to_json(b).dump() << '\n';
}

inline Ledger load_ledger(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ledger file: " + path);
    Ledger ledger;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ledger.blocks.push_back(block_from_json(nlohmann::json::parse(line)));
    }
    return ledger;
}

} // namespace vfab::chain
