#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vfab/circuit/r1cs.hpp"
#include "vfab/process/process.hpp"

namespace vfab::circuit {

/// Compiled set-membership circuit for one ProcessSpec, together with
/// the layout metadata needed to complete witness assignments.
///
/// Public wires, 3 per step i (1-based indices):
///   1+3i = observed state, 2+3i = observed aux tag, 3+3i = observed aux value.
/// Witness wires, per step: spec aux tag, spec aux value, then the m-1
/// product-chain intermediates for a step with m allowed states.
///
/// Constraints, step-major, membership before aux:
///   membership: t_1 = (x - v_1); t_k = t_{k-1} * (x - v_k); t_m * 1 = 0
///   aux:        (x_tag - w_tag + 1) * 1 = 1; (x_val - w_val + 1) * 1 = 1
/// The +1/=1 form is equivalent to a plain difference test but keeps the
/// aggregated QAP polynomials A and C nonzero on satisfied assignments,
/// so the verification equation stays sensitive to every proof field.
struct MembershipCircuit {
    ConstraintSystem cs;

    struct StepLayout {
        std::vector<std::uint32_t> allowed; // sorted
        std::size_t w_tag = 0;
        std::size_t w_val = 0;
        std::size_t chain_base = 0; // first intermediate wire, if allowed.size() > 1
    };
    std::vector<StepLayout> steps;

    std::size_t num_steps() const { return steps.size(); }
    std::size_t public_state_wire(std::size_t i) const { return 1 + 3 * i; }
    std::size_t public_tag_wire(std::size_t i) const { return 2 + 3 * i; }
    std::size_t public_val_wire(std::size_t i) const { return 3 + 3 * i; }

    /// Constraint index of the aux-value equality test for step i,
    /// useful for pinpointing which step a failed check belongs to.
    std::size_t aux_value_constraint(std::size_t i) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < i; ++k) idx += steps[k].allowed.size() + 2;
        return idx + steps[i].allowed.size() + 1;
    }
};

inline MembershipCircuit compile_membership_circuit(const process::ProcessSpec& spec) {
    process::validate_spec(spec);

    MembershipCircuit mc;
    auto& cs = mc.cs;
    cs.num_public = 3 * spec.steps.size();

    std::size_t next_witness = 1 + cs.num_public;
    for (const auto& step : spec.steps) {
        MembershipCircuit::StepLayout lay;
        lay.allowed.assign(step.allowed_states.begin(), step.allowed_states.end());
        lay.w_tag = next_witness++;
        lay.w_val = next_witness++;
        if (lay.allowed.size() > 1) {
            lay.chain_base = next_witness;
            next_witness += lay.allowed.size() - 1;
        }
        mc.steps.push_back(std::move(lay));
    }
    cs.num_witness = next_witness - 1 - cs.num_public;

    const Lc one_lc = Lc{}.add(0, ff::Fe::one());
    for (std::size_t i = 0; i < mc.steps.size(); ++i) {
        const auto& lay = mc.steps[i];
        const std::size_t x = mc.public_state_wire(i);

        // x - v, as a linear combination
        auto shifted = [&](std::uint32_t v) {
            return Lc{}.add(x, ff::Fe::one()).add(0, -ff::Fe(v));
        };

        if (lay.allowed.size() == 1) {
            cs.constraints.push_back({shifted(lay.allowed[0]), one_lc, Lc{}});
        } else {
            Lc prev = shifted(lay.allowed[0]);
            for (std::size_t k = 1; k < lay.allowed.size(); ++k) {
                std::size_t t = lay.chain_base + (k - 1);
                cs.constraints.push_back(
                    {prev, shifted(lay.allowed[k]), Lc{}.add(t, ff::Fe::one())});
                prev = Lc{}.add(t, ff::Fe::one());
            }
            cs.constraints.push_back({prev, one_lc, Lc{}});
        }

        cs.constraints.push_back({Lc{}
                                      .add(mc.public_tag_wire(i), ff::Fe::one())
                                      .add(lay.w_tag, -ff::Fe::one())
                                      .add(0, ff::Fe::one()),
                                  one_lc, one_lc});
        cs.constraints.push_back({Lc{}
                                      .add(mc.public_val_wire(i), ff::Fe::one())
                                      .add(lay.w_val, -ff::Fe::one())
                                      .add(0, ff::Fe::one()),
                                  one_lc, one_lc});
    }
    return mc;
}

/// Complete an assignment from the public vector (3 per step, observed
/// sequence) and the spec witness vector (3 per step; the state slot is
/// not a wire, membership sets are baked into the constraints).
inline Assignment assign(const MembershipCircuit& mc,
                         const std::vector<ff::Fe>& public_inputs,
                         const std::vector<ff::Fe>& spec_witness) {
    const auto& cs = mc.cs;
    if (public_inputs.size() != cs.num_public)
        throw std::invalid_argument("public input length mismatch");
    if (spec_witness.size() != 3 * mc.num_steps())
        throw std::invalid_argument("spec witness length mismatch");

    Assignment a;
    a.values.assign(cs.num_wires(), ff::Fe::zero());
    a.values[0] = ff::Fe::one();
    for (std::size_t i = 0; i < public_inputs.size(); ++i)
        a.values[1 + i] = public_inputs[i];

    for (std::size_t i = 0; i < mc.num_steps(); ++i) {
        const auto& lay = mc.steps[i];
        a.values[lay.w_tag] = spec_witness[3 * i + 1];
        a.values[lay.w_val] = spec_witness[3 * i + 2];
        if (lay.allowed.size() > 1) {
            ff::Fe x = a.values[mc.public_state_wire(i)];
            ff::Fe t = x - ff::Fe(lay.allowed[0]);
            for (std::size_t k = 1; k < lay.allowed.size(); ++k) {
                t *= x - ff::Fe(lay.allowed[k]);
                a.values[lay.chain_base + (k - 1)] = t;
            }
        }
    }
    return a;
}

/// Field vector of an observed sequence, padded with sentinel tuples up
/// to the circuit's step count. Sequences longer than the spec do not
/// fit the fixed-size circuit and are rejected here (nullopt).
inline std::optional<std::vector<ff::Fe>>
padded_public_vector(const process::StateSequence& seq, std::size_t num_steps) {
    if (seq.tuples.size() > num_steps) return std::nullopt;
    auto vec = process::to_field_vector(seq);
    while (vec.size() < 3 * num_steps) {
        vec.push_back(ff::Fe(process::SENTINEL_STATE));
        vec.push_back(ff::Fe::zero());
        vec.push_back(ff::Fe::zero());
    }
    return vec;
}

} // namespace vfab::circuit
