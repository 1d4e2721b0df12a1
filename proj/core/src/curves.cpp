#include "goodfrey/curves.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace goodfrey {

std::string WeierstrassModel::to_string() const {
    std::ostringstream os;
    os << "[" << to_decimal(a1) << ", " << to_decimal(a2) << ", " << to_decimal(a3) << ", "
       << to_decimal(a4) << ", " << to_decimal(a6) << "]";
    return os.str();
}

StandardInvariants standard_invariants(const WeierstrassModel& m) {
    StandardInvariants v;
    v.b2 = m.a1 * m.a1 + 4 * m.a2;
    v.b4 = 2 * m.a4 + m.a1 * m.a3;
    v.b6 = m.a3 * m.a3 + 4 * m.a6;
    v.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 -
           m.a4 * m.a4;
    v.c4 = v.b2 * v.b2 - 24 * v.b4;
    v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
    v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 +
             9 * v.b2 * v.b4 * v.b6;
    return v;
}

WeierstrassModel frey_model(const Int& a, const Int& b) {
    if (a < 1 || b < 1) throw std::invalid_argument("frey_model: a,b must be positive");
    if (gcd(a, b) != 1)
        throw std::invalid_argument("frey_model: gcd(a,b) = " + gcd(a, b).get_str());
    WeierstrassModel m{Rat(0), Rat(b - a), Rat(0), Rat(-a * b), Rat(0)};
    if (standard_invariants(m).disc == 0)
        throw std::invalid_argument("frey_model: degenerate curve (zero discriminant)");
    return m;
}

namespace {

Int rat_to_int(const Rat& q, const char* what) {
    if (q.get_den() != 1) throw std::logic_error(std::string(what) + " is not integral");
    return q.get_num();
}

CurveInvariants minimal_from_parts(const Int& a, const Int& b, const FactoredInteger& fa,
                                   const FactoredInteger& fb, const FactoredInteger& fc) {
    if (a % 16 != 0 || ((b % 4) + 4) % 4 != 1)
        throw std::invalid_argument(
            "non-canonical Frey input: need a = 0 mod 16 and b = 1 mod 4 "
            "(minimality at 2 not guaranteed otherwise)");
    WeierstrassModel m = frey_model(a, b);
    StandardInvariants si = standard_invariants(m);

    CurveInvariants inv;
    // One scaling step by u = 2 reaches the minimal model in this
    // congruence class: (c4, c6, disc) / (2^4, 2^6, 2^12).
    inv.c4_min = rat_to_int(si.c4 / 16, "c4/16");
    inv.c6_min = rat_to_int(si.c6 / 64, "c6/64");
    inv.delta_min = rat_to_int(si.disc / 4096, "disc/4096");

    FactoredInteger abc = product({fa, fb, fc});
    inv.conductor_drops_2 = v2(abc.value) == 4;  // delta_min odd, 2 leaves N
    if (abc.complete) {
        inv.rad_abc = radical(abc);
        Int n = inv.conductor_drops_2 ? Int(*inv.rad_abc / 2) : *inv.rad_abc;
        std::vector<std::pair<Int, unsigned>> pf;
        for (const auto& [p, e] : abc.factors)
            if (!(inv.conductor_drops_2 && p == 2)) pf.emplace_back(p, 1);
        inv.conductor = FactoredInteger::from_prime_powers(std::move(pf));
        if (inv.conductor->value != n) throw std::logic_error("conductor assembly mismatch");

        Int c4_cubed = pow_ui(inv.c4_min, 3);
        Int c6_squared = pow_ui(inv.c6_min, 2);
        inv.max_is_c4_cubed = c4_cubed >= c6_squared && inv.c4_min > 0;
        Int max_val = std::max(Int(abs(c4_cubed)), c6_squared);
        inv.sigma_m = log_ratio(max_val, n);
        inv.sigma = log_ratio(abs(inv.delta_min), n);
        inv.good = max_val > pow_ui(n, 6);
    } else {
        inv.blocked_cofactor = abc.cofactor;  // ratios stay unavailable
    }
    return inv;
}

}  // namespace

CurveInvariants minimal_invariants(const Int& a, const Int& b, const FactorBudget& budget) {
    return minimal_from_parts(a, b, factor(a, budget), factor(b, budget), factor(a + b, budget));
}

CurveInvariants minimal_invariants(const ABCTriple& triple) {
    return minimal_from_parts(triple.a.value, triple.b.value, triple.a, triple.b, triple.c);
}

bool is_good_curve(const CurveInvariants& inv) {
    if (!inv.conductor) throw RadicalUnavailable(inv.blocked_cofactor);
    Int max_val = std::max(Int(abs(pow_ui(inv.c4_min, 3))), pow_ui(inv.c6_min, 2));
    return max_val > pow_ui(inv.conductor->value, 6);
}

const MultiPoly& c4_table_poly(TorsionFamily t) {
    static std::array<MultiPoly, 4> polys;
    static std::once_flag once;
    std::call_once(once, [] {
        const MultiPoly a = MultiPoly::variable(Var::a);
        const MultiPoly b = MultiPoly::variable(Var::b);
        polys[0] = a.pow(8) + 60 * a.pow(6) * b.pow(2) + 134 * a.pow(4) * b.pow(4) +
                   60 * a.pow(2) * b.pow(6) + b.pow(8);
        polys[1] = a.pow(8) + 14 * a.pow(4) * b.pow(4) + b.pow(8);
        polys[2] = 9 * a.pow(8) + 228 * a.pow(6) * b.pow(2) + 30 * a.pow(4) * b.pow(4) -
                   12 * a.pow(2) * b.pow(6) + b.pow(8);
        polys[3] = a.pow(16) - 8 * a.pow(14) * b.pow(2) + 12 * a.pow(12) * b.pow(4) +
                   8 * a.pow(10) * b.pow(6) + 230 * a.pow(8) * b.pow(8) +
                   8 * a.pow(6) * b.pow(10) + 12 * a.pow(4) * b.pow(12) -
                   8 * a.pow(2) * b.pow(14) + b.pow(16);
    });
    return polys[static_cast<std::size_t>(t)];
}

bool c4_cross_check(TorsionFamily t, const Int& a, const Int& b) {
    if (a % 2 != 0 || b % 2 == 0 || gcd(a, b) != 1)
        throw std::invalid_argument("c4_cross_check: need a even, b odd, gcd(a,b)=1");
    if (family_n(t) == 3 && a % 3 != 0)
        throw std::invalid_argument("c4_cross_check: need 3 | a for C2xC6");
    const MapTable& mt = table(t);
    const std::array<Int, 4> point{a, b, Int(0), Int(0)};
    Int av = mt.A.evaluate(point);
    Int bv = mt.B.evaluate(point);
    // c4_min of y^2 = x(x-A)(x+B) is A^2 + AB + B^2.
    Int c4m = av * av + av * bv + bv * bv;
    return c4m == c4_table_poly(t).evaluate(point);
}

}  // namespace goodfrey
