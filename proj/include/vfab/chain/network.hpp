#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vfab/chain/ledger.hpp"
#include "vfab/chain/tx.hpp"
#include "vfab/circuit/compiler.hpp"
#include "vfab/vc/scheme.hpp"

namespace vfab::chain {

/// One peer's locally compiled verification contract: circuit, QAP, and
/// key/proof material generated from the peer's own entropy.
struct VerificationContract {
    std::string contract_id;
    process::ProcessSpec spec;
    circuit::MembershipCircuit circuit;
    vc::Qap qap;
    vc::EvaluationKey ek;
    vc::VerificationKey vk;
    vc::Proof proof;
    std::vector<ff::Fe> x_star;
};

struct Endorsement {
    Hash32 request_tx_id{};
    std::string peer_id;
    Verdict verdict = Verdict::Failed;
    Hash32 rho_x{};
};

/// Full node: ledger copy, contract table, private entropy. Test hooks
/// (invert_verdicts, silent) model a faulty or compromised node.
class Peer {
public:
    Peer(std::string id, ff::Rng rng) : id_(std::move(id)), rng_(rng) {}

    const std::string& id() const { return id_; }
    const Ledger& ledger() const { return ledger_; }
    bool has_contract(const std::string& cid) const { return contracts_.count(cid) != 0; }
    const VerificationContract& contract(const std::string& cid) const {
        return contracts_.at(cid);
    }

    std::uint64_t prove_calls() const { return prove_calls_; }
    std::uint64_t verify_calls() const { return verify_calls_; }

    bool invert_verdicts = false;
    bool silent = false;

    /// Validate, execute, and commit one block. Throws if the block
    /// does not chain onto the local ledger; the ledger is untouched.
    std::vector<Endorsement> execute_block(const Block& block) {
        if (!ledger_.chains(block))
            throw std::invalid_argument("block does not chain onto peer ledger");
        std::vector<Endorsement> endorsements;
        for (const auto& tx : block.txs) {
            if (const auto* d = std::get_if<DeployTx>(&tx.payload)) {
                apply_deploy(*d);
            } else if (const auto* r = std::get_if<VerifyRequestTx>(&tx.payload)) {
                auto e = endorse(tx.tx_id, *r);
                if (e && !silent) endorsements.push_back(*e);
            }
            // VerifyResultTx carries no execution; it is the record itself.
        }
        ledger_.blocks.push_back(block);
        return endorsements;
    }

    /// Re-apply a block from a persisted ledger: contracts are
    /// recompiled but requests are not re-endorsed (their results are
    /// already on chain).
    void replay_block(const Block& block) {
        if (!ledger_.chains(block))
            throw std::invalid_argument("block does not chain onto peer ledger");
        for (const auto& tx : block.txs)
            if (const auto* d = std::get_if<DeployTx>(&tx.payload))
                apply_deploy(*d);
        ledger_.blocks.push_back(block);
    }

private:
    void apply_deploy(const DeployTx& d) {
        if (contracts_.count(d.contract_id)) return; // duplicate: invalid, skipped

        VerificationContract vcn;
        vcn.contract_id = d.contract_id;
        vcn.spec = d.spec;
        vcn.circuit = circuit::compile_membership_circuit(d.spec);
        vcn.qap = vc::r1cs_to_qap(vcn.circuit.cs);
        auto [ek, vk] = vc::setup(vcn.circuit.cs, vcn.qap, rng_);
        vcn.ek = std::move(ek);
        vcn.vk = std::move(vk);
        vcn.x_star = process::spec_to_field_vector(d.spec);
        vcn.proof = vc::prove(vcn.ek, vcn.circuit, vcn.qap, vcn.x_star, vcn.x_star);
        ++prove_calls_;

        // Deployment self-check; abort registration on failure.
        if (vc::verify(vcn.vk, vcn.x_star, vcn.proof) != vc::Outcome::Accept)
            return;
        contracts_.emplace(d.contract_id, std::move(vcn));
    }

    std::optional<Endorsement> endorse(const Hash32& request_tx_id, const VerifyRequestTx& r) {
        auto it = contracts_.find(r.contract_id);
        if (it == contracts_.end()) return std::nullopt;
        const auto& vcn = it->second;

        auto enc = vc::probgen(r.seq);
        Verdict verdict = Verdict::Failed;
        auto padded = circuit::padded_public_vector(r.seq, vcn.circuit.num_steps());
        if (padded) {
            ++verify_calls_;
            if (vc::verify(vcn.vk, *padded, vcn.proof) == vc::Outcome::Accept)
                verdict = Verdict::Verified;
        }
        if (invert_verdicts)
            verdict = (verdict == Verdict::Verified) ? Verdict::Failed : Verdict::Verified;
        return Endorsement{request_tx_id, id_, verdict, enc.rho_x};
    }

    std::string id_;
    Ledger ledger_;
    std::map<std::string, VerificationContract> contracts_;
    ff::Rng rng_;
    std::uint64_t prove_calls_ = 0;
    std::uint64_t verify_calls_ = 0;
};

/// Single serialization point: FIFO transaction queue cut into blocks.
class Orderer {
public:
    void enqueue(Transaction tx) { queue_.push_back(std::move(tx)); }
    std::size_t pending() const { return queue_.size(); }

    std::optional<Block> cut_block(std::size_t max_txs) {
        if (queue_.empty()) return std::nullopt;
        Block b;
        b.index = height_;
        b.prev_hash = tip_;
        b.timestamp = clock_;
        while (!queue_.empty() && b.txs.size() < max_txs) {
            b.txs.push_back(std::move(queue_.front()));
            queue_.pop_front();
        }
        b.block_hash = compute_block_hash(b);
        ++height_;
        ++clock_;
        tip_ = b.block_hash;
        return b;
    }

    void resume_from(const Ledger& ledger) {
        height_ = ledger.blocks.size();
        tip_ = ledger.tip_hash();
        clock_ = ledger.blocks.empty() ? 0 : ledger.blocks.back().timestamp + 1;
    }

private:
    std::deque<Transaction> queue_;
    std::uint64_t height_ = 0;
    std::uint64_t clock_ = 0;
    Hash32 tip_{};
};

/// Unanimous-endorsement consensus: all roster verdicts equal, or an
/// explicit MISMATCH (also when any endorsement is missing).
inline Verdict consensus_check(const std::vector<Endorsement>& endorsements,
                               std::size_t roster_size) {
    if (endorsements.size() != roster_size) return Verdict::Mismatch;
    for (const auto& e : endorsements)
        if (e.verdict != endorsements.front().verdict) return Verdict::Mismatch;
    return endorsements.front().verdict;
}

struct NetworkConfig {
    std::size_t num_peers = 2;
    std::size_t max_block_txs = 10;
    std::uint64_t seed = 1;
};

struct FinalResult {
    Hash32 request_tx_id{};
    Hash32 result_tx_id{};
    std::string item_id;
    Verdict verdict = Verdict::Failed;
    Hash32 rho_x{};
};

struct VerificationRecord {
    std::string item_id;
    Verdict verdict;
    Hash32 rho_x{};
    Hash32 request_tx_id{};
    Hash32 result_tx_id{};
};

inline std::vector<VerificationRecord> query_record(const Ledger& ledger,
                                                    const std::string& item_id) {
    std::vector<VerificationRecord> out;
    for (const auto& b : ledger.blocks)
        for (const auto& tx : b.txs)
            if (const auto* res = std::get_if<VerifyResultTx>(&tx.payload))
                if (res->item_id == item_id)
                    out.push_back({res->item_id, res->verdict, res->rho_x,
                                   res->request_tx_id, tx.tx_id});
    return out;
}

/// In-process simulation of the permissioned network: one orderer plus
/// num_peers full nodes, all driven synchronously.
class Network {
public:
    explicit Network(const NetworkConfig& cfg) : cfg_(cfg) {
        if (cfg.num_peers < 1) throw std::invalid_argument("need at least one peer");
        ff::Rng root(cfg.seed);
        for (std::size_t i = 0; i < cfg.num_peers; ++i)
            peers_.emplace_back("peer-" + std::to_string(i), root.fork());
    }

    /// Resume from a persisted ledger: replays deployments on every peer.
    Network(const NetworkConfig& cfg, const Ledger& existing) : Network(cfg) {
        for (const auto& b : existing.blocks)
            for (auto& p : peers_) p.replay_block(b);
        orderer_.resume_from(existing);
    }

    const NetworkConfig& config() const { return cfg_; }
    std::vector<Peer>& peers() { return peers_; }
    const std::vector<Peer>& peers() const { return peers_; }
    Orderer& orderer() { return orderer_; }
    const Ledger& ledger() const { return peers_.front().ledger(); }

    bool contract_deployed(const std::string& cid) const {
        return peers_.front().has_contract(cid);
    }

    struct DeployOutcome {
        Hash32 tx_id{};
        bool accepted = false;
    };

    DeployOutcome deploy_contract(const std::string& contract_id,
                                  const process::ProcessSpec& spec) {
        process::validate_spec(spec);
        bool was_new = !contract_deployed(contract_id);
        Transaction tx = make_tx(DeployTx{contract_id, spec});
        Hash32 id = tx.tx_id;
        orderer_.enqueue(std::move(tx));
        process_pending();
        return {id, was_new && contract_deployed(contract_id)};
    }

    Hash32 submit_verification(const std::string& contract_id, const std::string& item_id,
                               process::StateSequence seq) {
        if (!contract_deployed(contract_id))
            throw std::invalid_argument("unknown contract: " + contract_id);
        seq.item_id = item_id;
        Transaction tx = make_tx(VerifyRequestTx{contract_id, item_id, std::move(seq)});
        Hash32 id = tx.tx_id;
        orderer_.enqueue(std::move(tx));
        return id;
    }

    /// Drain the orderer: cut blocks, let every peer execute them,
    /// run consensus over the collected endorsements, and memorialize
    /// the final verdicts as VerifyResult transactions.
    std::vector<FinalResult> process_pending() {
        std::vector<FinalResult> finals;
        while (auto block = orderer_.cut_block(cfg_.max_block_txs)) {
            std::map<std::string, std::vector<Endorsement>> by_request; // hex tx id
            for (auto& p : peers_) {
                for (auto& e : p.execute_block(*block))
                    by_request[to_hex(e.request_tx_id)].push_back(std::move(e));
            }
            for (const auto& tx : block->txs) {
                const auto* req = std::get_if<VerifyRequestTx>(&tx.payload);
                if (!req) continue;
                const auto& endorsements = by_request[to_hex(tx.tx_id)];
                Verdict verdict = consensus_check(endorsements, peers_.size());
                Hash32 rho = vc::probgen(req->seq).rho_x;

                Transaction result = make_tx(
                    VerifyResultTx{tx.tx_id, req->item_id, verdict, rho,
                                   static_cast<std::uint32_t>(endorsements.size())});
                finals.push_back({tx.tx_id, result.tx_id, req->item_id, verdict, rho});
                orderer_.enqueue(std::move(result));
            }
        }
        return finals;
    }

private:
    NetworkConfig cfg_;
    Orderer orderer_;
    std::vector<Peer> peers_;
};

} // namespace vfab::chain
