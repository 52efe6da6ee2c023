#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "vfab/vc/scheme.hpp"

using namespace vfab;
using namespace vfab::vc;
using vfab::ff::Fe;
using vfab::ff::Poly;

namespace {

// x * w = 6: wire 0 constant, wire 1 public x, wire 2 witness w
circuit::ConstraintSystem toy_system() {
    circuit::ConstraintSystem cs;
    cs.num_public = 1;
    cs.num_witness = 1;
    circuit::Constraint con;
    con.a.add(1, Fe::one());
    con.b.add(2, Fe::one());
    con.c.add(0, Fe(6));
    cs.constraints.push_back(con);
    return cs;
}

} // namespace

TEST_CASE("qap of a one-constraint system") {
    auto cs = toy_system();
    auto qap = r1cs_to_qap(cs);
    CHECK(qap.degree == 1);
    CHECK(qap.target == Poly({Fe(Fe::MOD - 1), Fe(1)})); // X - 1
    // single interpolation point: per-wire polynomials are constants
    CHECK(qap.a[1] == Poly::constant(Fe(1)));
    CHECK(qap.b[2] == Poly::constant(Fe(1)));
    CHECK(qap.c[0] == Poly::constant(Fe(6)));
    CHECK(qap.a[0].is_zero());
}

TEST_CASE("qap interpolation matches constraint rows") {
    ff::Rng rng(61);
    for (int t = 0; t < 20; ++t) {
        auto cs = testutil::random_r1cs(rng);
        auto qap = r1cs_to_qap(cs);
        CHECK(qap.target.degree() == static_cast<int>(cs.constraints.size()));
        for (std::size_t j = 0; j < cs.constraints.size(); ++j) {
            CHECK(qap.target.eval(qap.point(j)) == Fe::zero());
            for (auto& [w, coeff] : cs.constraints[j].a.terms)
                CHECK(qap.a[w].eval(qap.point(j)) == coeff);
        }
    }
}

TEST_CASE("divisibility by T tracks R1CS satisfaction") {
    ff::Rng rng(67);
    for (int t = 0; t < 40; ++t) {
        auto cs = testutil::random_r1cs(rng, 8);
        auto z = testutil::random_assignment(rng, cs);
        testutil::anchor_r1cs(cs, z); // z satisfies by construction
        auto qap = r1cs_to_qap(cs);
        CHECK(qap_divide(qap, cs, z).exact);

        // violated constraint j leaves P(r_j) nonzero
        auto bad = z;
        bad.values[1 + rng.next_below(cs.num_public + cs.num_witness)] += Fe(1);
        auto [ok, first] = circuit::is_satisfied(cs, bad);
        if (!ok) {
            auto p = assignment_poly(qap, cs, bad);
            CHECK(p.eval(qap.point(*first)) != Fe::zero());
            CHECK(!qap_divide(qap, cs, bad).exact);
        }
    }
}

TEST_CASE("setup determinism and entropy separation") {
    auto mc = circuit::compile_membership_circuit(process::demo_spec());
    auto qap = r1cs_to_qap(mc.cs);
    CHECK(qap.degree == 18);

    ff::Rng r1(99), r2(99);
    auto [ek1, vk1] = setup(mc.cs, qap, r1);
    auto [ek2, vk2] = setup(mc.cs, qap, r2);
    CHECK(ek_to_json(ek1) == ek_to_json(ek2));
    CHECK(vk_to_json(vk1) == vk_to_json(vk2));
    CHECK(vk1.t_at_s == qap.target.eval(vk1.secret_point));

    int distinct = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        ff::Rng a(s), b(s + 5000);
        auto [eka, vka] = setup(mc.cs, qap, a);
        auto [ekb, vkb] = setup(mc.cs, qap, b);
        if (vka.secret_point != vkb.secret_point) ++distinct;
    }
    CHECK(distinct == 100);
}

TEST_CASE("probgen") {
    auto spec = process::demo_spec();
    auto seq = process::run_process(spec, {}, "item-A");
    auto enc = probgen(seq);
    CHECK(enc.sigma_x.size() == 18);

    auto seq2 = seq;
    seq2.item_id = "item-B";
    auto enc2 = probgen(seq2);
    CHECK(enc.sigma_x == enc2.sigma_x);
    CHECK(enc.rho_x != enc2.rho_x); // rho binds item identity

    process::StateSequence single{"x", {{0, process::AuxData::empty()}}};
    CHECK(probgen(single).sigma_x == std::vector<Fe>{Fe(0), Fe(0), Fe(0)});
}

TEST_CASE("prove and verify on the demo circuit") {
    auto spec = process::demo_spec();
    auto mc = circuit::compile_membership_circuit(spec);
    auto qap = r1cs_to_qap(mc.cs);
    ff::Rng rng(7);
    auto [ek, vk] = setup(mc.cs, qap, rng);
    auto x_star = process::spec_to_field_vector(spec);

    auto proof = prove(ek, mc, qap, x_star, x_star);
    CHECK(verify(vk, x_star, proof) == Outcome::Accept);

    SECTION("wrong witness is rejected by the prover itself") {
        auto bad_witness = x_star;
        bad_witness[4] += Fe(1);
        CHECK_THROWS_AS(prove(ek, mc, qap, x_star, bad_witness), std::runtime_error);
    }

    SECTION("tampered public input rejected") {
        for (std::size_t i = 0; i < x_star.size(); ++i) {
            auto x = x_star;
            x[i] += Fe(1);
            CHECK(verify(vk, x, proof) == Outcome::Reject);
        }
    }

    SECTION("tampered proof rejected") {
        auto p = proof;
        p.h_at_s += Fe(1);
        CHECK(verify(vk, x_star, p) == Outcome::Reject);
        p = proof;
        p.a_w += Fe(3);
        CHECK(verify(vk, x_star, p) == Outcome::Reject);
        p = proof;
        p.b_w += Fe(7);
        CHECK(verify(vk, x_star, p) == Outcome::Reject);
        p = proof;
        p.c_w += Fe(11);
        CHECK(verify(vk, x_star, p) == Outcome::Reject);
    }

    SECTION("length mismatch is an error, not a Reject") {
        CHECK_THROWS_AS(verify(vk, std::vector<Fe>(3, Fe(0)), proof),
                        std::invalid_argument);
    }
}

TEST_CASE("hand-computed one-constraint proof") {
    auto cs = toy_system();
    auto qap = r1cs_to_qap(cs);
    ff::Rng rng(3);
    auto [ek, vk] = setup(cs, qap, rng);

    circuit::Assignment z{{Fe::one(), Fe(2), Fe(3)}}; // x=2, w=3
    auto proof = prove_assignment(ek, cs, qap, z);

    // A = 2, B = 3, C = 6 as constants; P = 2*3 - 6 = 0, so H = 0.
    // Witness sums: a_w = 3*A_2(s) = 0, b_w = 3*B_2(s) = 3, c_w = 0.
    CHECK(proof.a_w == Fe(0));
    CHECK(proof.b_w == Fe(3));
    CHECK(proof.c_w == Fe(0));
    CHECK(proof.h_at_s == Fe(0));
    CHECK(verify(vk, {Fe(2)}, proof) == Outcome::Accept);
    CHECK(verify(vk, {Fe(5)}, proof) == Outcome::Reject);
}

TEST_CASE("verdicts are key-independent") {
    auto spec = process::demo_spec();
    auto mc = circuit::compile_membership_circuit(spec);
    auto qap = r1cs_to_qap(mc.cs);
    auto x_star = process::spec_to_field_vector(spec);
    auto tampered = x_star;
    tampered[7] += Fe(42);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ff::Rng rng(seed * 7919);
        auto [ek, vk] = setup(mc.cs, qap, rng);
        auto proof = prove(ek, mc, qap, x_star, x_star);
        CHECK(verify(vk, x_star, proof) == Outcome::Accept);
        CHECK(verify(vk, tampered, proof) == Outcome::Reject);
    }
}

TEST_CASE("decode_result") {
    Hash32 d{};
    d[0] = 0xab;
    auto ok = decode_result(Outcome::Accept, d);
    CHECK(ok.verified);
    CHECK(ok.rho_x == d);
    auto bad = decode_result(Outcome::Reject, d);
    CHECK(!bad.verified);

    auto p = Proof{Fe(1), Fe(2), Fe(3), Fe(4)};
    CHECK(proof_from_json(proof_to_json(p)).h_at_s == Fe(4));
}
