// vfabctl: drive the simulated verifiable-manufacturing network from the
// command line: deploy verification contracts, submit state sequences,
// inspect and audit the on-disk ledger.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "vfab/chain/network.hpp"
#include "vfab/scenario.hpp"

namespace {

// Exit codes, stable and documented in the README.
constexpr int EXIT_PARSE = 2;     // unreadable/invalid input file
constexpr int EXIT_UNKNOWN = 3;   // unknown contract id
constexpr int EXIT_AUDIT = 4;     // ledger audit failure
constexpr int EXIT_MISMATCH = 5;  // consensus mismatch
constexpr int EXIT_INVALID = 6;   // invalid spec / duplicate contract id

struct Options {
    std::string config_path;
    std::string ledger_path = "vfab-ledger.jsonl";
    vfab::chain::NetworkConfig net;
    bool seed_set = false;
};

void load_config(Options& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw std::runtime_error("cannot open config: " + opt.config_path);
    auto j = nlohmann::json::parse(in);
    if (j.contains("num_peers")) opt.net.num_peers = j["num_peers"].get<std::size_t>();
    if (j.contains("max_block_txs")) opt.net.max_block_txs = j["max_block_txs"].get<std::size_t>();
    if (j.contains("ledger_path")) opt.ledger_path = j["ledger_path"].get<std::string>();
    if (j.contains("seed")) { opt.net.seed = j["seed"].get<std::uint64_t>(); opt.seed_set = true; }
}

vfab::chain::Network open_network(const Options& opt, bool fresh) {
    if (!fresh && std::filesystem::exists(opt.ledger_path))
        return vfab::chain::Network(opt.net, vfab::chain::load_ledger(opt.ledger_path));
    return vfab::chain::Network(opt.net);
}

// Mirror the chaincode-VM workaround: each node's proof and keys live in
// node-local files beside the ledger, never in transactions.
void store_node_material(const vfab::chain::Network& net, const Options& opt,
                         const std::string& contract_id) {
    auto base = std::filesystem::path(opt.ledger_path + ".nodes");
    for (const auto& peer : net.peers()) {
        if (!peer.has_contract(contract_id)) continue;
        const auto& c = peer.contract(contract_id);
        auto dir = base / peer.id();
        std::filesystem::create_directories(dir);
        std::ofstream(dir / (contract_id + ".proof.json"))
            << vfab::vc::proof_to_json(c.proof).dump(2) << '\n';
        std::ofstream(dir / (contract_id + ".vk.json"))
            << vfab::vc::vk_to_json(c.vk).dump(2) << '\n';
        std::ofstream(dir / (contract_id + ".ek.json"))
            << vfab::vc::ek_to_json(c.ek).dump(2) << '\n';
    }
}

void print_report(const vfab::scenario::ScenarioReport& report) {
    std::cout << "deploy tx: " << vfab::to_hex(report.deploy_tx_id) << "\n";
    for (const auto& item : report.items) {
        std::cout << "item " << item.item_id << " [scenario " << item.scenario
                  << ", faults " << item.fault_count
                  << "]: " << vfab::chain::verdict_name(item.verdict);
        if (item.failing_step)
            std::cout << "  <-- first deviation at step " << *item.failing_step;
        std::cout << "\n  request tx: " << vfab::to_hex(item.request_tx_id)
                  << "\n  result tx:  " << vfab::to_hex(item.result_tx_id) << "\n";
    }
}

int cmd_demo(const Options& opt, const std::vector<std::string>& scenarios) {
    auto net = open_network(opt, /*fresh=*/true);
    auto report = vfab::scenario::run_demo(net, scenarios);
    vfab::chain::save_ledger(net.ledger(), opt.ledger_path);
    store_node_material(net, opt, "demo");
    print_report(report);
    for (const auto& item : report.items)
        if (item.verdict == vfab::chain::Verdict::Mismatch) return EXIT_MISMATCH;
    return 0;
}

int cmd_deploy(const Options& opt, const std::string& spec_file,
               const std::string& contract_id) {
    std::ifstream in(spec_file);
    if (!in) { std::cerr << "cannot open spec file: " << spec_file << "\n"; return EXIT_PARSE; }
    vfab::process::ProcessSpec spec;
    try {
        spec = vfab::process::spec_from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
        std::cerr << "invalid spec: " << e.what() << "\n";
        return spec_file.empty() ? EXIT_PARSE : EXIT_INVALID;
    }

    auto net = open_network(opt, /*fresh=*/false);
    auto outcome = net.deploy_contract(contract_id, spec);
    vfab::chain::save_ledger(net.ledger(), opt.ledger_path);
    std::cout << "deploy tx: " << vfab::to_hex(outcome.tx_id) << "\n";
    if (!outcome.accepted) {
        std::cerr << "deployment rejected (duplicate contract id or failed self-check); "
                     "invalid transaction recorded on ledger\n";
        return EXIT_INVALID;
    }
    store_node_material(net, opt, contract_id);
    for (const auto& peer : net.peers())
        std::cout << peer.id() << ": compiled, keys generated, self-check Accept\n";
    return 0;
}

int cmd_verify(const Options& opt, const std::string& contract_id,
               const std::string& sequence_file) {
    std::ifstream in(sequence_file);
    if (!in) { std::cerr << "cannot open sequence file: " << sequence_file << "\n"; return EXIT_PARSE; }
    vfab::process::StateSequence seq;
    try {
        seq = vfab::process::sequence_from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
        std::cerr << "invalid sequence file: " << e.what() << "\n";
        return EXIT_PARSE;
    }

    auto net = open_network(opt, /*fresh=*/false);
    if (!net.contract_deployed(contract_id)) {
        std::cerr << "unknown contract: " << contract_id << "\n";
        return EXIT_UNKNOWN;
    }
    auto req_id = net.submit_verification(contract_id, seq.item_id, seq);
    auto finals = net.process_pending();
    vfab::chain::save_ledger(net.ledger(), opt.ledger_path);

    for (const auto& fin : finals) {
        if (fin.request_tx_id != req_id) continue;
        std::cout << "item " << fin.item_id << ": " << vfab::chain::verdict_name(fin.verdict)
                  << "\nrequest tx: " << vfab::to_hex(fin.request_tx_id)
                  << "\nresult tx:  " << vfab::to_hex(fin.result_tx_id) << "\n";
        return fin.verdict == vfab::chain::Verdict::Mismatch ? EXIT_MISMATCH : 0;
    }
    std::cerr << "no result recorded\n";
    return 1;
}

int cmd_ledger(const Options& opt, const std::string& sub, const std::string& item_id) {
    vfab::chain::Ledger ledger;
    try {
        ledger = vfab::chain::load_ledger(opt.ledger_path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return EXIT_PARSE;
    }

    if (sub == "dump") {
        for (const auto& b : ledger.blocks)
            std::cout << vfab::chain::block_to_json(b).dump(2) << "\n";
        return 0;
    }
    if (sub == "audit") {
        if (auto bad = vfab::chain::audit_chain(ledger)) {
            std::cout << "audit FAILED at block " << *bad << "\n";
            return EXIT_AUDIT;
        }
        std::cout << "audit ok (" << ledger.blocks.size() << " blocks)\n";
        return 0;
    }
    // query
    auto records = vfab::chain::query_record(ledger, item_id);
    for (const auto& r : records)
        std::cout << r.item_id << " " << vfab::chain::verdict_name(r.verdict)
                  << " rho_x=" << vfab::to_hex(r.rho_x)
                  << " result_tx=" << vfab::to_hex(r.result_tx_id) << "\n";
    if (records.empty()) std::cout << "no records for item " << item_id << "\n";
    return 0;
}

int cmd_emit_sequence(const std::string& scenario, const std::string& item_id,
                      const std::string& out_path) {
    auto seq = vfab::process::run_process(vfab::process::demo_spec(),
                                          vfab::scenario::faults_for(scenario),
                                          item_id.empty() ? scenario : item_id);
    auto j = vfab::process::sequence_to_json(seq);
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) { std::cerr << "cannot write " << out_path << "\n"; return EXIT_PARSE; }
        out << j.dump(2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verifiable manufacturing over a simulated permissioned blockchain"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file");
    auto* seed_opt = app.add_option("--seed", opt.net.seed, "entropy seed (reproducible runs)");
    app.add_option("--peers", opt.net.num_peers, "number of full nodes");
    app.add_option("--ledger", opt.ledger_path, "ledger file (JSON lines)");

    auto* demo = app.add_subcommand("demo", "deploy the demo contract and run scenarios");
    std::vector<std::string> scenarios = {"good", "bad-filehash"};
    demo->add_option("--scenarios", scenarios, "scenario names to run");

    auto* deploy = app.add_subcommand("deploy", "deploy a verification contract");
    std::string spec_file, contract_id;
    deploy->add_option("spec_file", spec_file, "ProcessSpec JSON")->required();
    deploy->add_option("contract_id", contract_id, "contract id")->required();

    auto* verify = app.add_subcommand("verify", "submit a state sequence for verification");
    std::string v_contract, sequence_file;
    verify->add_option("contract_id", v_contract, "contract id")->required();
    verify->add_option("sequence_file", sequence_file, "StateSequence JSON")->required();

    auto* ledger = app.add_subcommand("ledger", "inspect the persisted ledger");
    ledger->require_subcommand(1);
    auto* dump = ledger->add_subcommand("dump", "print all blocks");
    auto* audit = ledger->add_subcommand("audit", "recheck every hash and link");
    auto* query = ledger->add_subcommand("query", "list verification records for an item");
    std::string item_id;
    query->add_option("item_id", item_id, "item id")->required();

    auto* emit = app.add_subcommand("emit-sequence", "write a demo-scenario state sequence");
    std::string e_scenario = "good", e_item, e_out;
    emit->add_option("--scenario", e_scenario, "scenario name");
    emit->add_option("--item", e_item, "item id (defaults to scenario name)");
    emit->add_option("-o,--out", e_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        load_config(opt);
        if (!seed_opt->empty()) opt.seed_set = true;
        if (!opt.seed_set) opt.net.seed = std::random_device{}();

        if (*demo) return cmd_demo(opt, scenarios);
        if (*deploy) return cmd_deploy(opt, spec_file, contract_id);
        if (*verify) return cmd_verify(opt, v_contract, sequence_file);
        if (*dump) return cmd_ledger(opt, "dump", "");
        if (*audit) return cmd_ledger(opt, "audit", "");
        if (*query) return cmd_ledger(opt, "query", item_id);
        if (*emit) return cmd_emit_sequence(e_scenario, e_item, e_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
