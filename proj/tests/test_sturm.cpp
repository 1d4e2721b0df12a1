#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "goodfrey/sturm.hpp"

#include <algorithm>
#include <random>

using namespace goodfrey;

namespace {

UniPoly uni(std::initializer_list<long> low_first) {
    std::vector<Rat> v;
    for (long c : low_first) v.emplace_back(c);
    return UniPoly(std::move(v));
}

// Builds a polynomial from chosen rational roots (distinct) times a
// rootless quadratic, so expected counts are known exactly and
// independently of the Sturm machinery.
struct KnownRoots {
    UniPoly poly;
    std::vector<Rat> roots;
};

KnownRoots random_known_roots(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nroots(0, 5), num(-12, 12), den(1, 4), mult(1, 2);
    KnownRoots out;
    out.poly = UniPoly::constant(Rat(1));
    std::vector<Rat> used;
    int n = nroots(rng);
    for (int i = 0; i < n; ++i) {
        Rat root(num(rng), den(rng));
        root.canonicalize();
        if (std::find(used.begin(), used.end(), root) != used.end()) continue;
        used.push_back(root);
        UniPoly lin({-root, Rat(1)});
        for (int m = mult(rng); m > 0; --m) out.poly = out.poly * lin;  // multiplicities allowed
        out.roots.push_back(root);
    }
    out.poly = out.poly * uni({1, 0, 1});  // x^2 + 1, no real roots
    return out;
}

int oracle_count(const std::vector<Rat>& roots, const Rat& lo, const Rat& hi) {
    int c = 0;
    for (const Rat& r : roots)
        if (lo < r && r <= hi) ++c;
    return c;
}

// Independent confirmation: a sign change of p on (x, y) certifies a root.
int bisection_signchange_count(const UniPoly& p, Rat lo, Rat hi, int depth = 14) {
    Rat flo = p.eval(lo), fhi = p.eval(hi);
    if (depth == 0) return (flo > 0) != (fhi > 0) && flo != 0 && fhi != 0 ? 1 : 0;
    Rat mid = (lo + hi) / 2;
    return bisection_signchange_count(p, lo, mid, depth - 1) +
           bisection_signchange_count(p, mid, hi, depth - 1);
}

}  // namespace

TEST_CASE("sturm_count basics") {
    CHECK(sturm_count(uni({1, 0, 1}), NegInf{}, PosInf{}) == 0);  // t^2+1
    CHECK(sturm_count(uni({-1, 0, 1}), Rat(0), PosInf{}) == 1);   // t^2-1 on (0,inf)
    // the f numerator for C2xC6 has exactly one root in (4,5)
    CHECK(sturm_count(uni({-3, -8, -22, 0, 1}), Rat(4), Rat(5)) == 1);
    CHECK_THROWS_AS(sturm_count(UniPoly(), NegInf{}, PosInf{}), std::domain_error);
}

TEST_CASE("sturm_count half-open endpoint semantics") {
    UniPoly p = uni({-1, 1});  // t - 1
    CHECK(sturm_count(p, Rat(0), Rat(1)) == 1);   // root at right endpoint counted
    CHECK(sturm_count(p, Rat(1), Rat(2)) == 0);   // root at left endpoint excluded
    UniPoly q = uni({-1, 0, 1});                  // t^2 - 1
    CHECK(sturm_count(q, Rat(-1), Rat(1)) == 1);
    CHECK(sturm_count(q, Rat(-2), Rat(2)) == 2);
}

TEST_CASE("sturm counts match known-root and bisection oracles") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<long> bound(-20, 20);
    int checked = 0;
    while (checked < 120) {
        KnownRoots kr = random_known_roots(rng);
        if (kr.poly.degree() > 16) continue;
        long lo_i = bound(rng), hi_i = bound(rng);
        if (lo_i >= hi_i) continue;
        Rat lo(lo_i), hi(hi_i);
        int expected = oracle_count(kr.roots, lo, hi);
        CHECK(sturm_count(kr.poly, lo, hi) == expected);
        CHECK(sturm_count(kr.poly, NegInf{}, PosInf{}) == static_cast<int>(kr.roots.size()));
        ++checked;
    }
    // bisection sign changes give a lower bound that is tight for
    // well-separated simple roots
    UniPoly f6 = uni({-3, -8, -22, 0, 1});
    CHECK(bisection_signchange_count(f6, Rat(-10), Rat(10)) ==
          sturm_count(f6, Rat(-10), Rat(10)));
}

TEST_CASE("greatest_real_root: table thresholds") {
    Rat eps(1, 100000);
    // numerator of f for C2xC6: t^4 - 22 t^2 - 8 t - 3, root 4.87516...
    auto iv = greatest_real_root(uni({-3, -8, -22, 0, 1}), eps);
    CHECK(iv.contains_root);
    CHECK(iv.width() < eps);
    CHECK(iv.lo < Rat(487517, 100000));
    CHECK(iv.hi > Rat(487515, 100000));

    // numerator of f for C2xC8: (1-6t^2+t^4)(1+t^2)^2 - 16 t^5, root 3.17373...
    UniPoly f8 = (uni({1, 0, -6, 0, 1}) * uni({1, 0, 1}).pow(2)) - uni({0, 0, 0, 0, 0, 16});
    auto iv8 = greatest_real_root(f8, eps);
    CHECK(iv8.width() < eps);
    CHECK(iv8.lo < Rat(317374, 100000));
    CHECK(iv8.hi > Rat(317373, 100000));

    // t - 1: exact rational root
    auto iv1 = greatest_real_root(uni({-1, 1}), eps);
    CHECK(iv1.lo < 1);
    CHECK(iv1.hi > 1);
    CHECK(iv1.width() < eps);

    CHECK_THROWS_AS(greatest_real_root(uni({1, 0, 1}), eps), std::domain_error);
}

TEST_CASE("greatest_real_root: shrinking eps nests") {
    UniPoly p = uni({-3, -8, -22, 0, 1});
    Rat eps(1, 10);
    IsolatingInterval prev = greatest_real_root(p, eps);
    for (int i = 0; i < 8; ++i) {
        eps /= 16;
        IsolatingInterval next = greatest_real_root(p, eps);
        CHECK(next.lo >= prev.lo);
        CHECK(next.hi <= prev.hi);
        prev = next;
    }
}

TEST_CASE("certify_positive_on") {
    // g for C2xC4 is 2t^2+2, positive beyond 0
    auto cert = certify_positive_on(uni({2, 0, 2}), Rat(0));
    CHECK(cert.certified);

    // t - 2 on (0, inf) refuted; witness value must actually violate
    auto ref = certify_positive_on(uni({-2, 1}), Rat(0));
    CHECK_FALSE(ref.certified);
    REQUIRE(ref.witness.has_value());
    CHECK(uni({-2, 1}).eval(*ref.witness) <= 0);
    CHECK(*ref.witness > 0);

    // negative leading coefficient beyond all roots
    auto neg = certify_positive_on(uni({1, -4, -2, -4, -7}), Rat(1));
    CHECK_FALSE(neg.certified);
    CHECK(neg.witness.has_value());

    CHECK_THROWS_AS(certify_positive_on(UniPoly(), Rat(0)), std::domain_error);
}

TEST_CASE("certified positivity holds on random samples") {
    // g for C2xC8 certified beyond theta, then spot checked at 10^4 points
    UniPoly g8 = uni({2, 0, -10, 0, 6, 0, 2});
    Rat lo(317374, 100000);
    auto cert = certify_positive_on(g8, lo);
    REQUIRE(cert.certified);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(0, 1'000'000), den(1, 1000);
    for (int i = 0; i < 10'000; ++i) {
        Rat x = lo + Rat(num(rng), den(rng)) + Rat(1, 1'000'000);
        CHECK(g8.eval(x) > 0);
    }
}

TEST_CASE("certify_positive_between") {
    // g for C2xC2 is positive on (0,1); D(1,t) = t^4 - 1 is not
    CHECK(certify_positive_between(uni({2, 4, 6, 4}), Rat(0), Rat(1)).certified);
    auto ref = certify_positive_between(uni({-1, 0, 0, 0, 1}), Rat(0), Rat(1));
    CHECK_FALSE(ref.certified);
    REQUIRE(ref.witness.has_value());
    CHECK(uni({-1, 0, 0, 0, 1}).eval(*ref.witness) <= 0);
}
