#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goodfrey/families.hpp"
#include "goodfrey/polynomial.hpp"

#include <random>

using namespace goodfrey;

namespace {

const MultiPoly a = MultiPoly::variable(Var::a);
const MultiPoly b = MultiPoly::variable(Var::b);

MultiPoly random_poly(std::mt19937_64& rng, int max_terms = 6, int max_exp = 4,
                      long coeff_span = 20) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<std::uint32_t> exp(0, max_exp);
    std::uniform_int_distribution<long> coeff(-coeff_span, coeff_span);
    MultiPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        MultiPoly term(coeff(rng));
        term = term * a.pow(exp(rng)) * b.pow(exp(rng)) *
               MultiPoly::variable(Var::r).pow(exp(rng) % 2) *
               MultiPoly::variable(Var::s).pow(exp(rng) % 2);
        p = p + term;
    }
    return p;
}

std::array<Int, 4> random_point(std::mt19937_64& rng, long span = 50) {
    std::uniform_int_distribution<long> v(-span, span);
    return {Int(v(rng)), Int(v(rng)), Int(v(rng)), Int(v(rng))};
}

// binomial expansion oracle
Int binomial(unsigned n, unsigned k) {
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

}  // namespace

TEST_CASE("add: identity, table identity, cancellation") {
    std::mt19937_64 rng(7);
    MultiPoly p = random_poly(rng);
    CHECK(p + MultiPoly() == p);

    // A + B = C term-for-term for every family
    for (TorsionFamily t : kAllFamilies) {
        const MapTable& mt = table(t);
        CHECK(mt.A + mt.B == mt.C);
    }

    CHECK((a - b) + (b - a) == MultiPoly());
}

TEST_CASE("mul: identity, difference of squares, binomial quartic") {
    std::mt19937_64 rng(11);
    MultiPoly p = random_poly(rng);
    CHECK(p * MultiPoly(1L) == p);

    CHECK((a + b) * (a - b) == a.pow(2) - b.pow(2));

    // ((a+b)^2)^2 expanded: coefficients C(4,k)
    MultiPoly quartic = (a + b).pow(2).pow(2);
    CHECK(quartic.term_count() == 5);
    for (const auto& [mon, c] : quartic.terms()) {
        CHECK(mon[0] + mon[1] == 4);
        CHECK(c == binomial(4, mon[1]));
    }
}

TEST_CASE("evaluate: table instances") {
    const std::array<Int, 4> p3249{Int(32), Int(49), Int(0), Int(0)};
    CHECK(table(TorsionFamily::c2x4).A.evaluate(p3249) == 9834496);  // 2^12 7^4

    const std::array<Int, 4> p4_121{Int(4), Int(121), Int(0), Int(0)};
    CHECK(table(TorsionFamily::c2x2).B.evaluate(p4_121) == 187388721);  // 3^8 13^4

    const std::array<Int, 4> p35{Int(3), Int(5), Int(0), Int(0)};
    for (TorsionFamily t : kAllFamilies) {
        const MapTable& mt = table(t);
        CHECK((mt.A + mt.B - mt.C).evaluate(p35) == 0);
    }
}

TEST_CASE("specialize: table rows and zero") {
    std::array<std::optional<Rat>, 4> fix_a;
    fix_a[0] = Rat(1);

    UniPoly d22 = table(TorsionFamily::c2x2).D.specialize(fix_a, Var::b);
    CHECK(d22 == UniPoly({Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)}));  // t^4 - 1

    CHECK(MultiPoly().specialize(fix_a, Var::b).is_zero());

    const MapTable& mt6 = table(TorsionFamily::c2x6);
    UniPoly diff = (mt6.C - mt6.D).specialize(fix_a, Var::b);
    CHECK(diff == UniPoly({Rat(-12), Rat(8), Rat(4)}));  // 4t^2 + 8t - 12

    CHECK_THROWS_AS((void)(a * MultiPoly::variable(Var::r)).specialize(fix_a, Var::b),
                    std::invalid_argument);
}

TEST_CASE("homogeneous degree") {
    CHECK(table(TorsionFamily::c2x2).A.homogeneous_degree_ab() == 4u);
    CHECK(table(TorsionFamily::c2x8).D.homogeneous_degree_ab() == 8u);
    CHECK_FALSE((a + b.pow(2)).homogeneous_degree_ab().has_value());
    CHECK_THROWS_AS((void)(a * MultiPoly::variable(Var::s)).homogeneous_degree_ab(),
                    std::invalid_argument);
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(202608);
    for (int i = 0; i < 1000; ++i) {
        MultiPoly p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(40);
    for (int i = 0; i < 300; ++i) {
        MultiPoly p = random_poly(rng), q = random_poly(rng);
        auto pt = random_point(rng);
        CHECK((p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt));
        CHECK((p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt));
    }
}

TEST_CASE("map evaluations satisfy A+B=C at random integer pairs") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> v(1, 1'000'000);
    for (TorsionFamily t : kAllFamilies) {
        const MapTable& mt = table(t);
        for (int i = 0; i < 500; ++i) {
            std::array<Int, 4> pt{Int(v(rng)), Int(v(rng)), Int(0), Int(0)};
            CHECK(mt.A.evaluate(pt) + mt.B.evaluate(pt) == mt.C.evaluate(pt));
        }
    }
}

TEST_CASE("homogeneity scaling identity via exact rationals") {
    // a^m * P(1, b/a) = P(a, b), checked through specialize at rational b/a
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> v(1, 10'000);
    std::array<std::optional<Rat>, 4> fix_a;
    fix_a[0] = Rat(1);
    for (TorsionFamily t : kAllFamilies) {
        const MapTable& mt = table(t);
        UniPoly spec = mt.A.specialize(fix_a, Var::b);
        for (int i = 0; i < 50; ++i) {
            Int av(v(rng)), bv(v(rng));
            Rat scaled = pow_ui(Rat(av), mt.m) * spec.eval(Rat(bv) / Rat(av));
            CHECK(scaled == Rat(mt.A.evaluate({av, bv, Int(0), Int(0)})));
        }
    }
}
