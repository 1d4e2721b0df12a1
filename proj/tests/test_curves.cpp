#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goodfrey/curves.hpp"

#include <cmath>
#include <random>

using namespace goodfrey;

namespace {

bool close(std::optional<double> v, double expect, double tol = 1e-3) {
    return v && std::abs(*v - expect) < tol;
}

std::pair<Int, Int> random_canonical_pair(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> v(1, 3000);
    while (true) {
        Int a = 16 * v(rng);
        Int b = 4 * v(rng) + 1;
        if (gcd(a, b) == 1) return {a, b};
    }
}

}  // namespace

TEST_CASE("frey_model") {
    WeierstrassModel m = frey_model(Int(1), Int(8));
    CHECK(m.a2 == 7);
    CHECK(m.a4 == -8);
    CHECK(m.a1 == 0);
    CHECK(m.a3 == 0);
    CHECK(m.a6 == 0);

    CHECK_THROWS_AS(frey_model(Int(2), Int(2)), std::invalid_argument);
    CHECK_NOTHROW(frey_model(Int(9834496), Int(1896129)));
}

TEST_CASE("standard invariants against the closed forms") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> v(1, 100000);
    for (int i = 0; i < 300; ++i) {
        Int a(v(rng)), b(v(rng));
        if (gcd(a, b) != 1) continue;
        WeierstrassModel m = frey_model(a, b);
        StandardInvariants si = standard_invariants(m);
        CHECK(si.c4 == Rat(16 * (a * a + a * b + b * b)));
        Int abc = a * b * (a + b);
        CHECK(si.disc == Rat(16 * abc * abc));
        CHECK(si.c4 > 0);
        CHECK(si.disc > 0);
    }
}

TEST_CASE("defining identities hold on random long models") {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<long> v(-40, 40);
    int done = 0;
    while (done < 500) {
        WeierstrassModel m{Rat(v(rng)), Rat(v(rng)), Rat(v(rng)), Rat(v(rng)), Rat(v(rng))};
        StandardInvariants si = standard_invariants(m);
        CHECK(1728 * si.disc == si.c4 * si.c4 * si.c4 - si.c6 * si.c6);
        CHECK(4 * si.b8 == si.b2 * si.b6 - si.b4 * si.b4);
        ++done;
    }
}

TEST_CASE("minimal invariants at the first pipeline steps") {
    SUBCASE("C2xC4 step 1: sigma_m = 7.4219") {
        CurveInvariants inv = minimal_invariants(Int(9834496), Int(1896129));
        CHECK(close(inv.sigma_m, 7.4219));
        CHECK(inv.good == true);
        CHECK(inv.max_is_c4_cubed);
        // c4_min at the seed equals 32^8 + 14*32^4*49^4 + 49^8
        Int a0(32), b0(49);
        Int expect = pow_ui(a0, 8) + 14 * pow_ui(a0, 4) * pow_ui(b0, 4) + pow_ui(b0, 8);
        CHECK(inv.c4_min == expect);
    }
    SUBCASE("C2xC2 step 1: sigma_m = 6.4204") {
        CurveInvariants inv = minimal_invariants(Int(56751904), Int(187388721));
        CHECK(close(inv.sigma_m, 6.4204));
        CHECK(inv.good == true);
    }
    SUBCASE("non-canonical congruence class is refused") {
        CHECK_THROWS_AS(minimal_invariants(Int(4), Int(121)), std::invalid_argument);
        CHECK_THROWS_AS(minimal_invariants(Int(32), Int(51)), std::invalid_argument);
    }
}

TEST_CASE("divisibility of the scaled invariants") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto [a, b] = random_canonical_pair(rng);
        WeierstrassModel m = frey_model(a, b);
        StandardInvariants si = standard_invariants(m);
        CHECK(si.c4.get_num() % 16 == 0);
        CHECK(si.c6.get_num() % 64 == 0);
        CHECK(si.disc.get_num() % 4096 == 0);
        CurveInvariants inv = minimal_invariants(a, b);
        CHECK(1728 * inv.delta_min ==
              pow_ui(inv.c4_min, 3) - pow_ui(inv.c6_min, 2));
        Int q = a * b * (a + b) / 16;
        CHECK(inv.delta_min == q * q);
    }
}

TEST_CASE("conductor versus rad(abc)") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 60; ++i) {
        auto [a, b] = random_canonical_pair(rng);
        CurveInvariants inv = minimal_invariants(a, b);
        REQUIRE(inv.conductor.has_value());
        REQUIRE(inv.rad_abc.has_value());
        Int ratio = *inv.rad_abc / inv.conductor->value;
        CHECK(*inv.rad_abc % inv.conductor->value == 0);
        CHECK((ratio == 1 || ratio == 2));
        // v2(a)=4 exactly would drop the 2; canonical pairs have v2 >= 4
        CHECK(inv.conductor_drops_2 == (v2(a) == 4));
    }
}

TEST_CASE("conductor drops 2 exactly when v2(abc) = 4") {
    // a = 16 * odd gives v2(abc) = 4: delta_min odd
    CurveInvariants inv = minimal_invariants(Int(16), Int(9));
    CHECK(inv.conductor_drops_2);
    REQUIRE(inv.conductor.has_value());
    CHECK(inv.conductor->value % 2 == 1);
    CHECK(*inv.rad_abc == 2 * inv.conductor->value);
    CHECK(inv.delta_min % 2 == 1);
}

TEST_CASE("is_good_curve agrees with the sigma_m threshold") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 60; ++i) {
        auto [a, b] = random_canonical_pair(rng);
        CurveInvariants inv = minimal_invariants(a, b);
        REQUIRE(inv.sigma_m.has_value());
        bool exact = is_good_curve(inv);
        CHECK(exact == *inv.good);
        // the log ratio never disagrees with the exact comparison at 1e-9
        if (std::abs(*inv.sigma_m - 6.0) > 1e-9) CHECK(exact == (*inv.sigma_m > 6.0));
    }
}

TEST_CASE("is_good_curve on a small odd-discriminant curve") {
    // y^2 = x(x-16)(x+9): c4_min = 481, delta_min = 225^2, N = 15
    CurveInvariants inv = minimal_invariants(Int(16), Int(9));
    CHECK(inv.c4_min == 481);
    CHECK(inv.delta_min == 225 * 225);
    REQUIRE(inv.conductor.has_value());
    CHECK(inv.conductor->value == 15);
    CHECK(is_good_curve(inv));  // 481^3 = 111284641 > 15^6 = 11390625
}

TEST_CASE("is_good_curve: boundary is strict") {
    CurveInvariants inv;
    inv.c4_min = 4;  // c4^3 = 64 = 2^6 = N^6
    inv.c6_min = 0;
    inv.delta_min = 1;
    inv.conductor = FactoredInteger::from_prime_powers({{Int(2), 1}});
    CHECK_FALSE(is_good_curve(inv));
}

TEST_CASE("c4 cross-check at the documented seeds") {
    CHECK(c4_cross_check(TorsionFamily::c2x4, Int(32), Int(49)));
    CHECK(c4_cross_check(TorsionFamily::c2x6, Int(432), Int(299693)));
    CHECK(c4_cross_check(TorsionFamily::c2x2, Int(4), Int(121)));
    CHECK(c4_cross_check(TorsionFamily::c2x8, Int(4), Int(121)));
    CHECK_THROWS_AS(c4_cross_check(TorsionFamily::c2x2, Int(3), Int(5)), std::invalid_argument);
}

TEST_CASE("c4 cross-check at random valid pairs") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<long> v(1, 2000);
    for (TorsionFamily t : kAllFamilies) {
        int done = 0;
        while (done < 50) {
            Int a = 2 * v(rng);
            if (family_n(t) == 3) a *= 3;
            Int b = 2 * v(rng) + 1;
            if (gcd(a, b) != 1) continue;
            CHECK(c4_cross_check(t, a, b));
            ++done;
        }
    }
}
