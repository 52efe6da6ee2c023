#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfab/circuit/compiler.hpp"
#include "vfab/ff/rng.hpp"
#include "vfab/process/process.hpp"
#include "vfab/vc/qap.hpp"

namespace vfab::vc {

/// Designated-verifier instantiation: the QAP identity is checked at a
/// secret random point s held by the verifying node. The prover's key
/// material is derived from s but never leaves the node; the adversary
/// controls only the public input.

struct EvaluationKey {
    std::vector<ff::Fe> a_eval, b_eval, c_eval; // per wire, at s
    ff::Fe t_at_s;
    std::vector<ff::Fe> powers_of_s; // s^0 .. s^degree
};

struct VerificationKey {
    ff::Fe secret_point;
    std::vector<ff::Fe> public_a_eval, public_b_eval, public_c_eval; // wires 0..num_public
    ff::Fe t_at_s;
};

struct Proof {
    ff::Fe a_w, b_w, c_w; // witness-wire sums at s
    ff::Fe h_at_s;
};

enum class Outcome { Accept, Reject };

/// (sigma_x, rho_x): field image of the observed sequence plus a digest
/// binding the sequence bytes to the item identity.
struct PublicInputEncoding {
    std::vector<ff::Fe> sigma_x;
    Hash32 rho_x{};
};

struct VerificationOutcome {
    bool verified = false;
    Hash32 rho_x{};
};

inline std::pair<EvaluationKey, VerificationKey>
setup(const circuit::ConstraintSystem& cs, const Qap& qap, ff::Rng& entropy) {
    // s must avoid the interpolation points or T(s) = 0.
    ff::Fe s;
    for (;;) {
        s = entropy.next_fe();
        if (s.value() == 0 || s.value() > qap.degree) break;
    }

    EvaluationKey ek;
    VerificationKey vk;
    vk.secret_point = s;
    ek.t_at_s = vk.t_at_s = qap.target.eval(s);

    const std::size_t wires = cs.num_wires();
    ek.a_eval.reserve(wires);
    for (std::size_t k = 0; k < wires; ++k) {
        ek.a_eval.push_back(qap.a[k].eval(s));
        ek.b_eval.push_back(qap.b[k].eval(s));
        ek.c_eval.push_back(qap.c[k].eval(s));
    }
    for (std::size_t k = 0; k <= cs.num_public; ++k) {
        vk.public_a_eval.push_back(ek.a_eval[k]);
        vk.public_b_eval.push_back(ek.b_eval[k]);
        vk.public_c_eval.push_back(ek.c_eval[k]);
    }
    ek.powers_of_s.reserve(qap.degree + 1);
    ff::Fe pw = ff::Fe::one();
    for (std::size_t i = 0; i <= qap.degree; ++i) {
        ek.powers_of_s.push_back(pw);
        pw *= s;
    }
    return {std::move(ek), std::move(vk)};
}

inline PublicInputEncoding probgen(const process::StateSequence& seq) {
    PublicInputEncoding enc;
    enc.sigma_x = process::to_field_vector(seq);
    auto bytes = process::canonical_encode(seq);
    bytes.insert(bytes.end(), seq.item_id.begin(), seq.item_id.end());
    enc.rho_x = sha256(bytes);
    return enc;
}

inline Proof prove_assignment(const EvaluationKey& ek, const circuit::ConstraintSystem& cs,
                              const Qap& qap, const circuit::Assignment& z) {
    auto div = qap_divide(qap, cs, z);
    if (!div.exact)
        throw std::runtime_error("specification does not satisfy its own circuit");

    Proof proof;
    for (std::size_t k = cs.num_public + 1; k < cs.num_wires(); ++k) {
        proof.a_w += z.values[k] * ek.a_eval[k];
        proof.b_w += z.values[k] * ek.b_eval[k];
        proof.c_w += z.values[k] * ek.c_eval[k];
    }
    const auto& h = div.quotient.coeffs();
    for (std::size_t i = 0; i < h.size(); ++i)
        proof.h_at_s += h[i] * ek.powers_of_s[i];
    return proof;
}

inline Proof prove(const EvaluationKey& ek, const circuit::MembershipCircuit& mc,
                   const Qap& qap, const std::vector<ff::Fe>& x_star,
                   const std::vector<ff::Fe>& spec_witness) {
    return prove_assignment(ek, mc.cs, qap, circuit::assign(mc, x_star, spec_witness));
}

inline Outcome verify(const VerificationKey& vk, const std::vector<ff::Fe>& x,
                      const Proof& proof) {
    if (x.size() + 1 != vk.public_a_eval.size())
        throw std::invalid_argument("public input length mismatch");

    ff::Fe a = vk.public_a_eval[0], b = vk.public_b_eval[0], c = vk.public_c_eval[0];
    for (std::size_t i = 0; i < x.size(); ++i) {
        a += x[i] * vk.public_a_eval[i + 1];
        b += x[i] * vk.public_b_eval[i + 1];
        c += x[i] * vk.public_c_eval[i + 1];
    }
    a += proof.a_w;
    b += proof.b_w;
    c += proof.c_w;
    return (a * b - c == proof.h_at_s * vk.t_at_s) ? Outcome::Accept : Outcome::Reject;
}

inline VerificationOutcome decode_result(Outcome outcome, const Hash32& rho_x) {
    return {outcome == Outcome::Accept, rho_x};
}

// ---- node-local JSON serialization (never placed in transactions) ----

inline nlohmann::json proof_to_json(const Proof& p) {
    return {{"a_w", p.a_w.to_hex()},
            {"b_w", p.b_w.to_hex()},
            {"c_w", p.c_w.to_hex()},
            {"h_at_s", p.h_at_s.to_hex()}};
}

inline Proof proof_from_json(const nlohmann::json& j) {
    return {ff::Fe::from_hex(j.at("a_w").get<std::string>()),
            ff::Fe::from_hex(j.at("b_w").get<std::string>()),
            ff::Fe::from_hex(j.at("c_w").get<std::string>()),
            ff::Fe::from_hex(j.at("h_at_s").get<std::string>())};
}

inline nlohmann::json fe_list_to_json(const std::vector<ff::Fe>& v) {
    nlohmann::json j = nlohmann::json::array();
    for (auto e : v) j.push_back(e.to_hex());
    return j;
}

inline nlohmann::json ek_to_json(const EvaluationKey& ek) {
    return {{"a_eval", fe_list_to_json(ek.a_eval)},
            {"b_eval", fe_list_to_json(ek.b_eval)},
            {"c_eval", fe_list_to_json(ek.c_eval)},
            {"t_at_s", ek.t_at_s.to_hex()},
            {"powers_of_s", fe_list_to_json(ek.powers_of_s)}};
}

inline nlohmann::json vk_to_json(const VerificationKey& vk) {
    return {{"secret_point", vk.secret_point.to_hex()},
            {"public_a_eval", fe_list_to_json(vk.public_a_eval)},
            {"public_b_eval", fe_list_to_json(vk.public_b_eval)},
            {"public_c_eval", fe_list_to_json(vk.public_c_eval)},
            {"t_at_s", vk.t_at_s.to_hex()}};
}

} // namespace vfab::vc
