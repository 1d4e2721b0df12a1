#include "goodfrey/families.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace goodfrey {

unsigned family_n(TorsionFamily t) {
    switch (t) {
        case TorsionFamily::c2x2: return 1;
        case TorsionFamily::c2x4: return 2;
        case TorsionFamily::c2x6: return 3;
        case TorsionFamily::c2x8: return 4;
    }
    return 0;
}

std::string family_name(TorsionFamily t) {
    return "C2xC" + std::to_string(2 * family_n(t));
}

std::optional<TorsionFamily> parse_family(const std::string& s) {
    std::string k;
    for (char c : s)
        if (c != '_' && c != '-') k.push_back(static_cast<char>(std::tolower(c)));
    for (TorsionFamily t : kAllFamilies) {
        unsigned n2 = 2 * family_n(t);
        if (k == "c2x" + std::to_string(n2) || k == "c2xc" + std::to_string(n2)) return t;
    }
    return std::nullopt;
}

namespace {

using PP = MultiPoly;

const PP pa = PP::variable(Var::a);
const PP pb = PP::variable(Var::b);
const PP pr = PP::variable(Var::r);
const PP ps = PP::variable(Var::s);

UniPoly uni(std::initializer_list<long> coeffs_low_first) {
    std::vector<Rat> v;
    for (long c : coeffs_low_first) v.emplace_back(c);
    return UniPoly(std::move(v));
}

UniPoly at_1t(const MultiPoly& p) {
    std::array<std::optional<Rat>, 4> fixed;
    fixed[0] = Rat(1);
    return p.specialize(fixed, Var::b);
}

MapTable build_table(TorsionFamily fam) {
    MapTable t;
    t.family = fam;
    const PP a2b2 = pa * pa + pb * pb;    // a^2+b^2
    const PP amb = pa - pb;               // a-b
    const PP apb = pa + pb;               // a+b
    switch (fam) {
        case TorsionFamily::c2x2:
            t.A = 8 * pa * pb * a2b2;
            t.B = amb.pow(4);
            t.C = apb.pow(4);
            t.D = pb.pow(4) - pa.pow(4);
            t.A_red = pa * pb * a2b2;
            t.B_red = amb;
            t.C_red = apb;
            t.U = pr * (16 * pa.pow(3) + 29 * pa.pow(2) * pb + 20 * pa * pb.pow(2) + 5 * pb.pow(3)) +
                  ps * (5 * pa.pow(3) + 20 * pa.pow(2) * pb + 29 * pa * pb.pow(2) + 16 * pb.pow(3));
            t.V = pr * (16 * pa.pow(3) - 29 * pa.pow(2) * pb + 20 * pa * pb.pow(2) - 5 * pb.pow(3)) +
                  ps * (-5 * pa.pow(3) + 20 * pa.pow(2) * pb - 29 * pa * pb.pow(2) + 16 * pb.pow(3));
            t.W = 32 * (pr * pa.pow(7) + ps * pb.pow(7));
            t.f_num = uni({1, -4, -2, -4, -7});
            t.f_den = uni({0, 8, 0, 8});  // 8t(1+t^2)
            t.g = uni({2, 4, 6, 4});
            t.theta_tabulated = Rat(1);
            t.pieces_A = {{PP(2L), 3}, {pa, 1}, {pb, 1}, {a2b2, 1}};
            t.pieces_B = {{amb, 4}};
            t.pieces_C = {{apb, 4}};
            t.pieces_D = {{pb - pa, 1}, {apb, 1}, {a2b2, 1}};
            break;
        case TorsionFamily::c2x4:
            t.A = (2 * pa * pb).pow(2);
            t.B = (pa.pow(2) - pb.pow(2)).pow(2);
            t.C = a2b2.pow(2);
            t.D = pb.pow(4) - pa.pow(4);
            t.A_red = pa * pb;
            t.B_red = pa.pow(2) - pb.pow(2);
            t.C_red = a2b2;
            t.U = pr * (2 * pa.pow(2) + pb.pow(2)) + ps * (pa.pow(2) + 2 * pb.pow(2));
            t.V = pr * (2 * pa.pow(2) - pb.pow(2)) + ps * (2 * pb.pow(2) - pa.pow(2));
            t.W = 4 * (pr * pa.pow(6) + ps * pb.pow(6));
            t.f_num = uni({1, 0, -2, -4, 1});
            t.f_den = uni({0, 0, 4});  // (2t)^2
            t.g = uni({2, 0, 2});
            t.theta_tabulated = Rat(1);
            t.pieces_A = {{PP(2L), 2}, {pa, 2}, {pb, 2}};
            t.pieces_B = {{amb, 2}, {apb, 2}};
            t.pieces_C = {{a2b2, 2}};
            t.pieces_D = {{pb - pa, 1}, {apb, 1}, {a2b2, 1}};
            break;
        case TorsionFamily::c2x6: {
            const PP bm3a = pb - 3 * pa;
            const PP bp3a = pb + 3 * pa;
            t.A = 16 * pa.pow(3) * pb;
            t.B = apb.pow(3) * bm3a;
            t.C = bp3a * (pb - pa).pow(3);
            t.D = (pb.pow(2) - pa.pow(2)) * (pb.pow(2) - 9 * pa.pow(2));
            t.A_red = pa * pb;
            t.B_red = apb * bm3a;
            t.C_red = bp3a * (pb - pa);
            t.U = pr * (-8 * pa.pow(3) + 6 * pa.pow(2) * pb - pb.pow(3)) +
                  ps * (-54 * pa.pow(3) + 144 * pa.pow(2) * pb - 117 * pa * pb.pow(2) + 24 * pb.pow(3));
            t.V = pr * (-8 * pa.pow(3) - 6 * pa.pow(2) * pb + pb.pow(3)) +
                  ps * (54 * pa.pow(3) + 144 * pa.pow(2) * pb + 117 * pa * pb.pow(2) + 24 * pb.pow(3));
            t.W = 48 * (pr * pa.pow(7) + ps * pb.pow(7));
            t.f_num = uni({-3, -8, -22, 0, 1});
            t.f_den = uni({0, 16});  // 16t
            t.g = uni({-12, 8, 4});
            t.theta_tabulated = Rat(487517, 100000);
            t.pieces_A = {{PP(2L), 4}, {pa, 3}, {pb, 1}};
            t.pieces_B = {{apb, 3}, {bm3a, 1}};
            t.pieces_C = {{bp3a, 1}, {pb - pa, 3}};
            t.pieces_D = {{pb - pa, 1}, {apb, 1}, {bm3a, 1}, {bp3a, 1}};
            break;
        }
        case TorsionFamily::c2x8: {
            // a^4 - 6a^2b^2 + b^4 splits as (a^2+2ab-b^2)(a^2-2ab-b^2)
            const PP q_plus = pa.pow(2) + 2 * pa * pb - pb.pow(2);
            const PP q_minus = pa.pow(2) - 2 * pa * pb - pb.pow(2);
            const PP quartic = q_plus * q_minus;
            t.A = (2 * pa * pb).pow(4);
            t.B = quartic * a2b2.pow(2);
            t.C = (pa.pow(2) - pb.pow(2)).pow(4);
            t.D = quartic * (pb.pow(4) - pa.pow(4));
            t.A_red = pa * pb;
            t.B_red = quartic * a2b2;
            t.C_red = pa.pow(2) - pb.pow(2);
            t.U = pr * (-10 * pa.pow(6) + 20 * pa.pow(4) * pb.pow(2) - 15 * pa.pow(2) * pb.pow(4) + 4 * pb.pow(6)) +
                  ps * (4 * pa.pow(6) - 15 * pa.pow(4) * pb.pow(2) + 20 * pa.pow(2) * pb.pow(4) - 10 * pb.pow(6));
            t.V = pr * (26 * pa.pow(6) + 44 * pa.pow(4) * pb.pow(2) + 15 * pa.pow(2) * pb.pow(4) - 4 * pb.pow(6)) +
                  ps * (-4 * pa.pow(6) + 15 * pa.pow(4) * pb.pow(2) + 44 * pa.pow(2) * pb.pow(4) + 26 * pb.pow(6));
            t.W = 16 * (pr * pa.pow(14) + ps * pb.pow(14));
            t.f_num = uni({1, 0, -4, 0, -10, -16, -4, 0, 1});
            t.f_den = uni({0, 0, 0, 0, 16});  // (2t)^4
            t.g = uni({2, 0, -10, 0, 6, 0, 2});
            t.theta_tabulated = Rat(317374, 100000);
            t.pieces_A = {{PP(2L), 4}, {pa, 4}, {pb, 4}};
            t.pieces_B = {{q_plus, 1}, {q_minus, 1}, {a2b2, 2}};
            t.pieces_C = {{amb, 4}, {apb, 4}};
            t.pieces_D = {{q_plus, 1}, {q_minus, 1}, {pb - pa, 1}, {apb, 1}, {a2b2, 1}};
            break;
        }
    }
    return t;
}

void check(bool ok, TorsionFamily fam, const std::string& what) {
    if (!ok)
        throw std::logic_error("map table " + family_name(fam) + ": " + what +
                               " failed verification (transcription bug)");
}

MultiPoly piece_product(const std::vector<Piece>& pieces) {
    MultiPoly p(1L);
    for (const auto& [poly, mult] : pieces) p = p * poly.pow(mult);
    return p;
}

void validate(const MapTable& t) {
    const TorsionFamily fam = t.family;
    check(t.A.coefficients_divisible_by(4), fam, "A in 4R");
    check(t.A + t.B == t.C, fam, "A+B=C");
    check(t.U * t.B + t.V * t.C == t.W, fam, "U*B+V*C=W");
    check(t.g == at_1t(t.C) - at_1t(t.D), fam, "g = C(1,t)-D(1,t)");
    // f(b/a) = B/A - b/a as rational functions, checked by cross-multiplying
    // against the one-variable specializations.
    UniPoly a1 = at_1t(t.A), b1 = at_1t(t.B);
    UniPoly tpoly = UniPoly::monomial(Rat(1), 1);
    check(t.f_num * a1 == t.f_den * (b1 - tpoly * a1), fam, "f identity");
    check(t.f_den == a1, fam, "f denominator = A(1,t)");

    auto dm = [&](const MultiPoly& p) { return p.homogeneous_degree_ab(); };
    auto ma = dm(t.A);
    check(ma && dm(t.B) == ma && dm(t.C) == ma && dm(t.D) == ma, fam,
          "A,B,C,D homogeneous of equal degree");

    check(piece_product(t.pieces_A) == t.A, fam, "A piece product");
    check(piece_product(t.pieces_B) == t.B, fam, "B piece product");
    check(piece_product(t.pieces_C) == t.C, fam, "C piece product");
    check(piece_product(t.pieces_D) == t.D, fam, "D piece product");
}

}  // namespace

const MapTable& table(TorsionFamily fam) {
    static std::array<MapTable, 4> tables;
    static std::once_flag once;
    std::call_once(once, [] {
        for (TorsionFamily f : kAllFamilies) {
            MapTable t = build_table(f);
            validate(t);
            t.m = *t.A.homogeneous_degree_ab();
            t.theta_computed = greatest_real_root(t.f_num, Rat(1, 10'000'000));
            // sign of f on an interval is decided on f_num alone once the
            // denominator is certified positive there
            t.f_den_positive_beyond_zero = certify_positive_on(t.f_den, Rat(0)).certified;
            check(t.f_den_positive_beyond_zero, f, "f denominator positive on (0,inf)");
            tables[static_cast<std::size_t>(f)] = std::move(t);
        }
    });
    return tables[static_cast<std::size_t>(fam)];
}

namespace {

PositivityCheck run_check(const std::string& name, const UniPoly& p,
                          const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
    PositivityCheck out;
    out.function = name;
    PositivityResult r = hi ? certify_positive_between(p, *lo, *hi)
                            : certify_positive_on(p, *lo);
    out.holds = r.certified;
    std::ostringstream os;
    if (r.certified) {
        os << "certified (no roots, positive at t=" << r.sample.get_str() << ")";
    } else if (r.witness) {
        os << "refuted: value <= 0 at t=" << r.witness->get_str();
    } else if (r.touch_point) {
        os << "refuted: vanishes inside (" << r.touch_point->lo.get_str() << ", "
           << r.touch_point->hi.get_str() << ")";
    }
    out.detail = os.str();
    return out;
}

}  // namespace

MapIdentityReport verify_map_identities(TorsionFamily fam) {
    const MapTable& t = table(fam);
    MapIdentityReport rep;
    rep.family = fam;
    rep.a_in_4r = t.A.coefficients_divisible_by(4);
    rep.sum_identity = t.A + t.B == t.C;
    rep.bezout_identity = t.U * t.B + t.V * t.C == t.W;
    UniPoly a1 = at_1t(t.A), b1 = at_1t(t.B);
    UniPoly tpoly = UniPoly::monomial(Rat(1), 1);
    rep.f_identity = t.f_num * a1 == t.f_den * (b1 - tpoly * a1);
    rep.g_identity = t.g == at_1t(t.C) - at_1t(t.D);
    auto ma = t.A.homogeneous_degree_ab();
    rep.homogeneous = ma && t.B.homogeneous_degree_ab() == ma &&
                      t.C.homogeneous_degree_ab() == ma && t.D.homogeneous_degree_ab() == ma;

    // f, g, and the one-variable specializations, positive beyond theta.
    // f is decided on its numerator; the denominator A(1,t) is certified
    // positive for t > 0 separately.
    const Rat& th = t.theta_tabulated;
    rep.positive_beyond_theta.push_back(run_check("f", t.f_num, th, std::nullopt));
    rep.positive_beyond_theta.push_back(run_check("g", t.g, th, std::nullopt));
    rep.positive_beyond_theta.push_back(run_check("A", at_1t(t.A), th, std::nullopt));
    rep.positive_beyond_theta.push_back(run_check("B", at_1t(t.B), th, std::nullopt));
    rep.positive_beyond_theta.push_back(run_check("C", at_1t(t.C), th, std::nullopt));
    rep.positive_beyond_theta.push_back(run_check("D", at_1t(t.D), th, std::nullopt));

    if (family_n(fam) <= 2) {
        Rat zero(0), one(1);
        rep.positive_on_unit_interval.push_back(run_check("f", t.f_num, zero, one));
        rep.positive_on_unit_interval.push_back(run_check("g", t.g, zero, one));
        rep.positive_on_unit_interval.push_back(run_check("A", at_1t(t.A), zero, one));
        rep.positive_on_unit_interval.push_back(run_check("B", at_1t(t.B), zero, one));
        rep.positive_on_unit_interval.push_back(run_check("C", at_1t(t.C), zero, one));
        rep.positive_on_unit_interval.push_back(run_check("D", at_1t(t.D), zero, one));
    }
    return rep;
}

namespace {

FactoredInteger fi_pow(const FactoredInteger& f, unsigned e) {
    FactoredInteger out;
    out.value = pow_ui(f.value, e);
    out.cofactor = pow_ui(f.cofactor, e);
    out.complete = f.complete;
    for (const auto& [p, k] : f.factors) out.factors.emplace_back(p, k * e);
    return out;
}

}  // namespace

MappedTriple apply_map(TorsionFamily fam, const FactoredInteger& a, const FactoredInteger& b,
                       const FactoredInteger& c, const FactorBudget& budget) {
    const MapTable& t = table(fam);
    if (a.value < 1 || b.value < 1) throw std::invalid_argument("apply_map: a,b must be positive");
    if (a.value % 2 != 0) throw std::invalid_argument("apply_map: a must be even");
    if (family_n(fam) == 3 && a.value % 3 != 0)
        throw std::invalid_argument("apply_map: a must be divisible by 3 for C2xC6");
    if (gcd(a.value, b.value) != 1) throw std::invalid_argument("apply_map: gcd(a,b) != 1");

    const std::array<Int, 4> point{a.value, b.value, Int(0), Int(0)};

    // Evaluate every distinct piece once; factor the unknown ones together,
    // reusing the factorizations the triple already carries (a, b, and
    // a+b = c all reappear as pieces).
    std::map<Int, FactoredInteger> piece_values;  // keyed by |value|
    auto visit = [&](const std::vector<Piece>& pieces) {
        for (const auto& piece : pieces) {
            Int v = piece.poly.evaluate(point);
            if (v == 0) throw std::domain_error("apply_map: degenerate input, a piece vanishes");
            piece_values.try_emplace(abs(v), FactoredInteger{});
        }
    };
    visit(t.pieces_A);
    visit(t.pieces_B);
    visit(t.pieces_C);

    std::vector<Int> to_factor;
    for (auto& [av, fi] : piece_values) {
        if (av == 1)
            fi = FactoredInteger::one();
        else if (av == a.value)
            fi = a;
        else if (av == b.value)
            fi = b;
        else if (av == c.value)
            fi = c;
        else
            to_factor.push_back(av);
    }
    std::vector<FactoredInteger> factored = factor_pieces(to_factor, {a, b, c}, budget);
    for (std::size_t i = 0; i < to_factor.size(); ++i)
        piece_values.at(to_factor[i]) = factored[i];

    auto assemble = [&](const std::vector<Piece>& pieces, const char* which) {
        std::vector<FactoredInteger> parts;
        long sign = 1;
        for (const auto& piece : pieces) {
            Int v = piece.poly.evaluate(point);
            if (v < 0 && piece.multiplicity % 2 == 1) sign = -sign;
            parts.push_back(fi_pow(piece_values.at(abs(v)), piece.multiplicity));
        }
        if (sign < 0)
            throw std::domain_error(std::string("apply_map: ") + which +
                                    " is negative; input outside the valid ratio region");
        return product(parts);
    };

    MappedTriple out;
    out.a = assemble(t.pieces_A, "A");
    out.b = assemble(t.pieces_B, "B");
    out.c = assemble(t.pieces_C, "C");
    out.d_value = t.D.evaluate(point);
    if (out.a.value + out.b.value != out.c.value)
        throw std::logic_error("apply_map: A+B=C violated at runtime");
    return out;
}

}  // namespace goodfrey
