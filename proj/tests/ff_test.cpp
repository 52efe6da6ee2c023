#include <catch2/catch_amalgamated.hpp>

#include "vfab/ff/field.hpp"
#include "vfab/ff/polynomial.hpp"
#include "vfab/ff/rng.hpp"

using namespace vfab::ff;

TEST_CASE("field basics") {
    CHECK(Fe(Fe::MOD - 1) + Fe(1) == Fe::zero());
    CHECK(Fe(5) * Fe::one() == Fe(5));
    CHECK(Fe(0) - Fe(1) == Fe(Fe::MOD - 1));
    // 2^62 mod (2^61-1) = 2, frozen from big-integer reference arithmetic
    CHECK(Fe(1ULL << 31) * Fe(1ULL << 31) == Fe(2));
}

TEST_CASE("field inverse") {
    CHECK(Fe::one().inv() == Fe::one());
    CHECK(Fe(2).inv() == Fe(1152921504606846976ULL)); // (p+1)/2
    CHECK(Fe(2) * Fe(2).inv() == Fe::one());
    CHECK_THROWS_AS(Fe::zero().inv(), std::domain_error);

    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Fe a = rng.next_fe();
        if (a.is_zero()) continue;
        CHECK(a.inv().inv() == a);
        CHECK(a * a.inv() == Fe::one());
    }
}

TEST_CASE("field axioms on random triples") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        Fe a = rng.next_fe(), b = rng.next_fe(), c = rng.next_fe();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("random source is deterministic and in range") {
    Rng r1(42), r2(42);
    for (int i = 0; i < 100; ++i) CHECK(r1.next_fe() == r2.next_fe());

    // two distinct seeds differ (100 pairs)
    int distinct = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng a(s), b(s + 1000);
        if (a.next_fe() != b.next_fe()) ++distinct;
    }
    CHECK(distinct == 100);

    Rng r(3);
    for (int i = 0; i < 10000; ++i) CHECK(r.next_fe().value() < Fe::MOD);
}

TEST_CASE("field element serialization") {
    Fe x(0x0123456789abcdefULL);
    CHECK(Fe::from_le_bytes(x.to_le_bytes()) == x);
    CHECK(x.to_hex().size() == 16);
    CHECK(Fe::from_hex(x.to_hex()) == x);
    CHECK(Fe(1).to_hex() == "0000000000000001");
}

TEST_CASE("polynomial evaluation") {
    Poly x2({Fe(0), Fe(0), Fe(1)});
    CHECK(x2.eval(Fe(3)) == Fe(9));
    CHECK(Poly::zero().eval(Fe(12345)) == Fe::zero());

    // random deg<=8 polynomial vs naive sum-of-monomials oracle
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        std::vector<Fe> coeffs(1 + rng.next_below(9));
        for (auto& c : coeffs) c = rng.next_fe();
        Poly p(coeffs);
        Fe x = rng.next_fe();
        Fe naive;
        for (std::size_t i = 0; i < coeffs.size(); ++i) naive += coeffs[i] * x.pow(i);
        CHECK(p.eval(x) == naive);
    }
}

TEST_CASE("interpolation") {
    Poly q = interpolate({{Fe(1), Fe(1)}, {Fe(2), Fe(4)}, {Fe(3), Fe(9)}});
    CHECK(q == Poly({Fe(0), Fe(0), Fe(1)}));

    CHECK(interpolate({{Fe(5), Fe(7)}}) == Poly::constant(Fe(7)));

    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        std::vector<std::pair<Fe, Fe>> pts;
        for (int i = 0; i < 6; ++i) pts.emplace_back(Fe(100 * t + i), rng.next_fe());
        Poly p = interpolate(pts);
        CHECK(p.degree() < 6);
        for (auto& [x, y] : pts) CHECK(p.eval(x) == y);
    }

    CHECK_THROWS_AS(interpolate({{Fe(1), Fe(1)}, {Fe(1), Fe(2)}}),
                    std::invalid_argument);
}

TEST_CASE("polynomial multiplication and division") {
    Poly xm1 = Poly::linear_root(Fe(1));  // X - 1
    Poly xp1({Fe(1), Fe(1)});             // X + 1
    CHECK(xm1 * xp1 == Poly({Fe(Fe::MOD - 1), Fe(0), Fe(1)})); // X^2 - 1

    auto [q, r] = Poly({Fe(Fe::MOD - 1), Fe(0), Fe(1)}).divrem(xm1);
    CHECK(q == xp1);
    CHECK(r.is_zero());

    CHECK_THROWS_AS(xp1.divrem(Poly::zero()), std::domain_error);

    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        std::vector<Fe> pc(11), dc(5);
        for (auto& c : pc) c = rng.next_fe();
        for (auto& c : dc) c = rng.next_fe();
        Poly p(pc), d(dc);
        if (d.is_zero()) continue;
        auto [qq, rr] = p.divrem(d);
        CHECK(d * qq + rr == p);
        CHECK(rr.degree() < d.degree());
    }

    // degree additivity on nonzero inputs
    Rng rng2(17);
    for (int t = 0; t < 50; ++t) {
        std::vector<Fe> a(1 + rng2.next_below(6)), b(1 + rng2.next_below(6));
        for (auto& c : a) c = rng2.next_fe();
        for (auto& c : b) c = rng2.next_fe();
        Poly pa(a), pb(b);
        if (pa.is_zero() || pb.is_zero()) continue;
        CHECK((pa * pb).degree() == pa.degree() + pb.degree());
    }
}
