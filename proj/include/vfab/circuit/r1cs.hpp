#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "vfab/ff/field.hpp"

namespace vfab::circuit {

/// Sparse linear combination over wires. Wire 0 is the constant-one wire.
struct Lc {
    std::vector<std::pair<std::size_t, ff::Fe>> terms;

    Lc& add(std::size_t wire, ff::Fe coeff) {
        for (auto& [w, c] : terms)
            if (w == wire) { c += coeff; return *this; }
        terms.emplace_back(wire, coeff);
        return *this;
    }

    ff::Fe eval(const std::vector<ff::Fe>& z) const {
        ff::Fe acc;
        for (auto& [w, c] : terms) acc += c * z[w];
        return acc;
    }
};

struct Constraint {
    Lc a, b, c; // <a,z> * <b,z> = <c,z>
};

/// Rank-1 constraint system. Wire layout: 0 = constant one,
/// 1..num_public = public inputs, the rest are witness wires.
struct ConstraintSystem {
    std::size_t num_public = 0;
    std::size_t num_witness = 0;
    std::vector<Constraint> constraints;

    std::size_t num_wires() const { return 1 + num_public + num_witness; }
};

/// Full wire valuation; values[0] must be 1.
struct Assignment {
    std::vector<ff::Fe> values;
};

inline std::pair<bool, std::optional<std::size_t>>
is_satisfied(const ConstraintSystem& cs, const Assignment& a) {
    if (a.values.size() != cs.num_wires())
        throw std::invalid_argument("assignment length mismatch");
    for (std::size_t j = 0; j < cs.constraints.size(); ++j) {
        const auto& con = cs.constraints[j];
        if (con.a.eval(a.values) * con.b.eval(a.values) != con.c.eval(a.values))
            return {false, j};
    }
    return {true, std::nullopt};
}

inline nlohmann::json lc_to_json(const Lc& lc) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& [w, c] : lc.terms) j.push_back({w, c.to_hex()});
    return j;
}

inline nlohmann::json cs_to_json(const ConstraintSystem& cs) {
    nlohmann::json cons = nlohmann::json::array();
    for (const auto& c : cs.constraints)
        cons.push_back({{"a", lc_to_json(c.a)}, {"b", lc_to_json(c.b)}, {"c", lc_to_json(c.c)}});
    return {{"num_public", cs.num_public},
            {"num_witness", cs.num_witness},
            {"constraints", std::move(cons)}};
}

} // namespace vfab::circuit
