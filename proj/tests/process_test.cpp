#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "test_util.hpp"
#include "vfab/process/process.hpp"

using namespace vfab;
using namespace vfab::process;

TEST_CASE("demo good run emits the six-state sequence") {
    auto spec = demo_spec();
    auto seq = run_process(spec, {}, "item-001");
    REQUIRE(seq.tuples.size() == 6);
    for (std::uint32_t i = 0; i < 6; ++i) CHECK(seq.tuples[i].state == i);
    CHECK(seq.tuples[0].aux == AuxData::empty());
    CHECK(seq.tuples[1].aux == AuxData::str(DEMO_FILE_HASH));
    CHECK(seq.tuples[2].aux == AuxData::integer(200));
    CHECK(seq.tuples[5].aux == AuxData::integer(0));
}

TEST_CASE("fault injection") {
    auto spec = demo_spec();
    auto good = run_process(spec, {}, "x");

    SECTION("WrongAux perturbs only its step") {
        auto bad = run_process(spec, {{FaultKind::WrongAux, 1, AuxData::str("tampered"), 0}}, "x");
        REQUIRE(bad.tuples.size() == good.tuples.size());
        for (std::size_t i = 0; i < good.tuples.size(); ++i) {
            if (i == 1) {
                CHECK(bad.tuples[i].state == good.tuples[i].state);
                CHECK(bad.tuples[i].aux != good.tuples[i].aux);
            } else {
                CHECK(bad.tuples[i] == good.tuples[i]);
            }
        }
    }
    SECTION("WrongState leaves the allowed set") {
        auto bad = run_process(spec, {{FaultKind::WrongState, 3, AuxData::empty(), 0}}, "x");
        CHECK(!spec.steps[3].allowed_states.count(bad.tuples[3].state));
    }
    SECTION("TruncateAfter drops later tuples") {
        auto bad = run_process(spec, {{FaultKind::TruncateAfter, 2, AuxData::empty(), 0}}, "x");
        CHECK(bad.tuples.size() == 3);
    }
    SECTION("out-of-range fault index rejected") {
        CHECK_THROWS_AS(run_process(spec, {{FaultKind::WrongAux, 9, AuxData::empty(), 0}}, "x"),
                        std::invalid_argument);
    }
}

TEST_CASE("run_process input validation") {
    CHECK_THROWS_AS(run_process(ProcessSpec{}, {}, "x"), std::invalid_argument);
    CHECK_THROWS_AS(run_process(demo_spec(), {}, ""), std::invalid_argument);
    ProcessSpec bad = demo_spec();
    bad.steps[0].allowed_states.clear();
    CHECK_THROWS_AS(run_process(bad, {}, "x"), std::invalid_argument);
}

TEST_CASE("validate_plain") {
    auto spec = demo_spec();
    auto good = run_process(spec, {}, "x");
    CHECK(validate_plain(spec, good) == std::pair{true, std::optional<std::size_t>{}});

    auto filehash = run_process(spec, {{FaultKind::WrongAux, 1, AuxData::str("nope"), 0}}, "x");
    CHECK(validate_plain(spec, filehash) == std::pair{false, std::optional<std::size_t>{1}});

    auto truncated = run_process(spec, {{FaultKind::TruncateAfter, 2, AuxData::empty(), 0}}, "x");
    CHECK(validate_plain(spec, truncated) == std::pair{false, std::optional<std::size_t>{3}});

    auto wrongstate = run_process(spec, {{FaultKind::WrongState, 4, AuxData::empty(), 0}}, "x");
    CHECK(validate_plain(spec, wrongstate) == std::pair{false, std::optional<std::size_t>{4}});
}

TEST_CASE("every single fault flips the plain verdict") {
    ff::Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        auto spec = testutil::random_spec(rng);
        auto fault = testutil::random_fault(rng, spec);
        // TruncateAfter on the last step drops nothing
        if (fault.kind == FaultKind::TruncateAfter &&
            fault.step_index + 1 >= spec.steps.size())
            continue;
        auto seq = run_process(spec, {fault}, "x");
        auto [ok, bad_step] = validate_plain(spec, seq);
        CHECK(!ok);
        REQUIRE(bad_step.has_value());
        CHECK(*bad_step <= fault.step_index + 1);
    }
}

TEST_CASE("canonical byte encoding") {
    StateSequence s{"item", {{0, AuxData::empty()}}};
    auto bytes = canonical_encode(s);
    CHECK(bytes == std::vector<std::uint8_t>{1, 0, 0, 0, 0, 0, 0, 0, 0});

    ff::Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        auto seq = testutil::random_sequence(rng);
        auto enc = canonical_encode(seq);
        auto back = canonical_decode(enc, seq.item_id);
        CHECK(back == seq);
    }
}

TEST_CASE("canonical encoding is injective on a random corpus") {
    ff::Rng rng(37);
    std::map<std::vector<std::uint8_t>, StateSequence> seen;
    for (int t = 0; t < 10000; ++t) {
        auto seq = testutil::random_sequence(rng);
        seq.item_id = "x"; // excluded from the encoding anyway
        auto enc = canonical_encode(seq);
        auto [it, inserted] = seen.emplace(std::move(enc), seq);
        if (!inserted) CHECK(it->second == seq); // equal bytes => equal sequence
    }

    StateSequence a{"x", {{1, AuxData::integer(5)}}};
    StateSequence b{"x", {{1, AuxData::integer(6)}}};
    CHECK(canonical_encode(a) != canonical_encode(b));
}

TEST_CASE("field vector mapping") {
    using vfab::ff::Fe;
    StateSequence s{"x", {{0, AuxData::empty()}}};
    CHECK(to_field_vector(s) == std::vector<Fe>{Fe(0), Fe(0), Fe(0)});

    StateSequence si{"x", {{2, AuxData::integer(7)}}};
    CHECK(to_field_vector(si) == std::vector<Fe>{Fe(2), Fe(1), Fe(7)});

    // SHA-256("abc") interpreted big-endian, reduced mod p; frozen from a
    // reference hash tool plus big-integer reduction.
    StateSequence ss{"x", {{1, AuxData::str("abc")}}};
    CHECK(to_field_vector(ss) ==
          std::vector<Fe>{Fe(1), Fe(2), Fe(1488935780228551592ULL)});
}

TEST_CASE("spec field vector") {
    using vfab::ff::Fe;
    ProcessSpec one{"one", {{{0}, AuxData::empty()}}};
    CHECK(spec_to_field_vector(one) == std::vector<Fe>{Fe(0), Fe(0), Fe(0)});

    CHECK(spec_to_field_vector(demo_spec()).size() == 18);

    // singleton-set specs: fault-free run vector coincides with the spec vector
    ff::Rng rng(41);
    for (int t = 0; t < 50; ++t) {
        auto spec = testutil::random_spec(rng, 5, 1);
        auto seq = run_process(spec, {}, "x");
        CHECK(to_field_vector(seq) == spec_to_field_vector(spec));
    }
}

TEST_CASE("JSON round trips") {
    auto spec = demo_spec();
    CHECK(spec_from_json(spec_to_json(spec)).name == spec.name);
    auto j = spec_to_json(spec);
    auto spec2 = spec_from_json(j);
    CHECK(spec_to_json(spec2) == j);

    auto seq = run_process(spec, {}, "item-7");
    CHECK(sequence_from_json(sequence_to_json(seq)) == seq);
}
