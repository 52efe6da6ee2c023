#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vfab/chain/network.hpp"
#include "vfab/process/process.hpp"

namespace vfab::scenario {

/// Named fault menu for the demo process.
inline std::vector<process::FaultSpec> faults_for(const std::string& name) {
    if (name == "good") return {};
    if (name == "bad-filehash")
        return {{process::FaultKind::WrongAux, 1,
                 process::AuxData::str("0000000000000000000000000000000000000000"
                                       "000000000000000000000000"), 0}};
    if (name == "bad-config")
        return {{process::FaultKind::WrongAux, 2, process::AuxData::integer(500), 0}};
    if (name == "truncated")
        return {{process::FaultKind::TruncateAfter, 2, process::AuxData::empty(), 0}};
    throw std::invalid_argument("unknown scenario: " + name);
}

inline const std::vector<std::string>& all_scenarios() {
    static const std::vector<std::string> names = {"good", "bad-filehash", "bad-config",
                                                   "truncated"};
    return names;
}

struct ItemReport {
    std::string item_id;
    std::string scenario;
    std::size_t fault_count = 0;
    chain::Verdict verdict = chain::Verdict::Failed;
    std::optional<std::size_t> failing_step; // per plain oracle
    Hash32 request_tx_id{};
    Hash32 result_tx_id{};
};

struct ScenarioReport {
    Hash32 deploy_tx_id{};
    std::vector<ItemReport> items;
};

/// Deploy the demo contract and run the named scenarios, one item per
/// scenario (item_id = scenario name). The caller owns ledger persistence.
inline ScenarioReport run_demo(chain::Network& net,
                               const std::vector<std::string>& scenarios) {
    const auto spec = process::demo_spec();
    ScenarioReport report;

    auto deploy = net.deploy_contract("demo", spec);
    if (!deploy.accepted) throw std::runtime_error("demo contract deployment failed");
    report.deploy_tx_id = deploy.tx_id;

    for (const auto& name : scenarios) {
        auto faults = faults_for(name);
        auto seq = process::run_process(spec, faults, name);

        ItemReport item;
        item.item_id = name;
        item.scenario = name;
        item.fault_count = faults.size();
        auto [ok, bad_step] = process::validate_plain(spec, seq);
        item.failing_step = bad_step;

        item.request_tx_id = net.submit_verification("demo", name, seq);
        for (const auto& fin : net.process_pending()) {
            if (fin.request_tx_id == item.request_tx_id) {
                item.verdict = fin.verdict;
                item.result_tx_id = fin.result_tx_id;
            }
        }
        report.items.push_back(std::move(item));
    }
    return report;
}

} // namespace vfab::scenario
