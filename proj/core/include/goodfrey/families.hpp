// The four torsion families C2xC2N (N = 1..4) and their polynomial map
// data: the triple maps A,B,C,D, reduced forms, Bezout cofactors U,V,W,
// the rational functions f,g, the threshold theta, and the factorization
// piece lists the recursion uses.
//
// Every table is transcribed once and cross-validated at construction;
// a transcription slip aborts startup instead of corrupting results.
#pragma once

#include "goodfrey/factor.hpp"
#include "goodfrey/polynomial.hpp"
#include "goodfrey/sturm.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace goodfrey {

enum class TorsionFamily { c2x2, c2x4, c2x6, c2x8 };

constexpr std::array<TorsionFamily, 4> kAllFamilies{
    TorsionFamily::c2x2, TorsionFamily::c2x4, TorsionFamily::c2x6, TorsionFamily::c2x8};

// N in C2 x C2N.
unsigned family_n(TorsionFamily t);
std::string family_name(TorsionFamily t);             // "C2xC2", ...
std::optional<TorsionFamily> parse_family(const std::string& s);

// One irreducible factor of a map polynomial together with its multiplicity
// in the full product.
struct Piece {
    MultiPoly poly;
    unsigned multiplicity;
};

struct MapTable {
    TorsionFamily family;
    MultiPoly A, B, C, D;        // the triple map and the bounding quantity
    MultiPoly A_red, B_red, C_red;  // radical-preserving reduced forms
    MultiPoly U, V, W;           // Bezout identity U*B + V*C = W
    UniPoly f_num, f_den;        // f = f_num/f_den, f_den = A(1,t)
    UniPoly g;                   // g = C(1,t) - D(1,t)
    unsigned m;                  // common homogeneous degree of A,B,C,D
    Rat theta_tabulated;             // the tabulated threshold constant
    IsolatingInterval theta_computed;  // greatest real root of f_num
    bool f_den_positive_beyond_zero;   // certified once: f_den > 0 on (0,inf)

    std::vector<Piece> pieces_A, pieces_B, pieces_C, pieces_D;
};

// The verified table for a family; construction failures throw
// std::logic_error. Tables are immutable and shared.
const MapTable& table(TorsionFamily t);

// Outcome of one positivity sub-check of a map-table function.
struct PositivityCheck {
    std::string function;  // "f", "g", "A", "B", "C", "D"
    bool holds;
    std::string detail;    // witness or certificate note
};

struct MapIdentityReport {
    TorsionFamily family;
    bool a_in_4r;            // every coefficient of A divisible by 4
    bool sum_identity;       // A + B = C
    bool bezout_identity;    // U*B + V*C = W in Z[a,b,r,s]
    bool f_identity;         // f(b/a) = B/A - b/a as rational functions
    bool g_identity;         // g = C(1,t) - D(1,t)
    bool homogeneous;        // A,B,C,D homogeneous of the same degree m
    std::vector<PositivityCheck> positive_beyond_theta;     // on (theta, inf)
    std::vector<PositivityCheck> positive_on_unit_interval;  // (0,1); N = 1,2 only
    bool symbolic_all_pass() const {
        return a_in_4r && sum_identity && bezout_identity && f_identity && g_identity &&
               homogeneous;
    }
};

MapIdentityReport verify_map_identities(TorsionFamily t);

// Evaluates the map at (a,b) and assembles the factored images from the
// factored pieces, reusing the factorizations carried by the inputs.
// Preconditions: a even (and 3 | a for C2xC6), gcd(a,b) = 1, a,b >= 1.
struct MappedTriple {
    FactoredInteger a, b, c;
    Int d_value;  // D(a,b), sign preserved
};

MappedTriple apply_map(TorsionFamily t, const FactoredInteger& a, const FactoredInteger& b,
                       const FactoredInteger& c, const FactorBudget& budget = {});

}  // namespace goodfrey
