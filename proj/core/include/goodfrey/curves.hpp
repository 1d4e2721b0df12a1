// Weierstrass models, the Frey curve construction, standard and minimal
// invariants, conductors, Szpiro ratios, and the c4 cross-check against
// the tabulated polynomials.
#pragma once

#include "goodfrey/factor.hpp"
#include "goodfrey/families.hpp"
#include "goodfrey/triples.hpp"

#include <optional>

namespace goodfrey {

// Long Weierstrass form y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
// Rational coefficients are permitted (universal-curve instances).
struct WeierstrassModel {
    Rat a1, a2, a3, a4, a6;
    bool operator==(const WeierstrassModel&) const = default;
    std::string to_string() const;
};

struct StandardInvariants {
    Rat b2, b4, b6, b8, c4, c6, disc;
};

// The b- and c-covariants and the discriminant; exact.
StandardInvariants standard_invariants(const WeierstrassModel& m);

// y^2 = x(x-a)(x+b); throws on gcd(a,b) != 1, nonpositive input, or zero
// discriminant.
WeierstrassModel frey_model(const Int& a, const Int& b);

struct CurveInvariants {
    Int c4_min, c6_min, delta_min;
    std::optional<FactoredInteger> conductor;  // rad(|delta_min|); nullopt when blocked
    Int blocked_cofactor{1};          // unfactored residue blocking the conductor
    std::optional<Int> rad_abc;       // rad(A*B*C) for comparison with the conductor
    std::optional<double> sigma_m;    // log max(|c4^3|, c6^2) / log N
    std::optional<double> sigma;      // log |delta_min| / log N
    std::optional<bool> good;         // sigma_m > 6, decided exactly
    bool max_is_c4_cubed = false;     // max(|c4^3|, c6^2) == c4^3 observed
    bool conductor_drops_2 = false;   // v2(abc) == 4, so 2 is not in N
};

// Minimal-model invariants for the congruence class the pipeline produces
// (a = 0 mod 16, b = 1 mod 4): one scaling step by u = 2. Other inputs
// throw a "non-canonical Frey input" invalid_argument. The conductor is
// assembled from the triple's factorizations when given, else factored
// under the budget.
CurveInvariants minimal_invariants(const Int& a, const Int& b, const FactorBudget& budget = {});
CurveInvariants minimal_invariants(const ABCTriple& triple);

// sigma_m > 6 via the exact comparison c4_min^3 > N^6; throws
// RadicalUnavailable when the conductor is incomplete.
bool is_good_curve(const CurveInvariants& inv);

// c4_min of the Frey curve of (A_T(a,b), B_T(a,b)) equals the tabulated
// c4 polynomial at (a,b). Preconditions: a even, b odd, coprime, and
// 3 | a for C2xC6.
bool c4_cross_check(TorsionFamily t, const Int& a, const Int& b);

// The tabulated c4 polynomial for the family.
const MultiPoly& c4_table_poly(TorsionFamily t);

}  // namespace goodfrey
