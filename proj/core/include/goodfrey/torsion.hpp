// Rational-point arithmetic on Weierstrass models, the universal curves
// with prescribed torsion, the admissible changes of variables onto them,
// and computational certification of the torsion subgroup: reduction-mod-p
// upper bounds combined with explicitly exhibited generators.
#pragma once

#include "goodfrey/curves.hpp"
#include "goodfrey/families.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace goodfrey {

// Affine rational point or the point at infinity.
struct RationalPoint {
    bool infinity = true;
    Rat x, y;
    static RationalPoint make(const Rat& x, const Rat& y) { return {false, x, y}; }
    static RationalPoint infinite() { return {}; }
    bool operator==(const RationalPoint&) const = default;
    std::string to_string() const;
};

bool on_curve(const WeierstrassModel& m, const RationalPoint& p);

// Exact chord-tangent addition; throws on off-curve input.
RationalPoint add_points(const WeierstrassModel& m, const RationalPoint& p,
                         const RationalPoint& q);
RationalPoint negate_point(const WeierstrassModel& m, const RationalPoint& p);
RationalPoint multiply_point(const WeierstrassModel& m, const RationalPoint& p, unsigned k);

// Least n <= bound with nP = infinity, or nullopt.
std::optional<unsigned> point_order(const WeierstrassModel& m, const RationalPoint& p,
                                    unsigned bound = 16);

// The one-parameter family with T in its rational torsion, evaluated at a
// rational t. Throws std::domain_error at parameter values where the
// coefficients have poles or the curve degenerates.
WeierstrassModel universal_curve(TorsionFamily t, const Rat& tv);

// x -> u^2 x + r, y -> u^3 y + u^2 s x + w.
struct ChangeOfVariables {
    Rat u, r, s, w;  // u != 0
    Rat t;           // the universal parameter attached to this change
};

// The tabulated change of variables for the family, evaluated at the
// precursor pair (a,b).
ChangeOfVariables cov(TorsionFamily t, const Int& a, const Int& b);

ChangeOfVariables inverse(const ChangeOfVariables& c);

// Substitutes the change of variables into m's equation (exact).
WeierstrassModel transform(const WeierstrassModel& m, const ChangeOfVariables& c);

// Point maps attached to transform: phi maps a point of m to the
// transformed model, unphi pulls one back.
RationalPoint transform_point(const RationalPoint& p, const ChangeOfVariables& c);
RationalPoint untransform_point(const RationalPoint& p, const ChangeOfVariables& c);

// Exact coefficient-by-coefficient identity between the transformed Frey
// curve of (A_T(a,b), B_T(a,b)) and the universal curve at t_T(a,b).
// Preconditions: a even, b odd, gcd(a,b)=1 (throws otherwise).
bool verify_cov(TorsionFamily t, const Int& a, const Int& b);

// #E(F_p) by direct enumeration of x with quadratic-residue counting.
// Requires an integral model, p odd, p not dividing the discriminant,
// p < 100000.
std::uint64_t count_points_mod_p(const WeierstrassModel& m, std::uint64_t p);

// gcd of #E(F_p) over the given primes; throws on a bad prime.
std::uint64_t torsion_upper_bound(const WeierstrassModel& m,
                                  const std::vector<std::uint64_t>& primes);

// The smallest odd primes of good reduction for the model.
std::vector<std::uint64_t> good_primes(const WeierstrassModel& m, unsigned count);

struct ExhibitedPoint {
    RationalPoint point;
    unsigned order;
};

struct TorsionReport {
    TorsionFamily family;
    unsigned claimed_order;                 // 4N
    std::uint64_t count_gcd = 0;            // gcd of the point counts
    unsigned upper_bound = 0;               // after refinement
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;  // (p, #E(F_p))
    bool halving_refuted = false;           // no 2-torsion point is 2-divisible
    std::vector<ExhibitedPoint> exhibited;  // generators with verified orders
    bool certified = false;
    std::string note;
};

// Certifies F(A_T(a,b), B_T(a,b))(Q)_tors = C2 x C2N: an upper bound from
// point counts over good primes (refined, when the gcd sticks at 8N, by the
// square criterion for halving a 2-torsion point), plus exhibited full
// 2-torsion and an order-2N point pulled back from (0,0) on the universal
// curve. (a,b) is the precursor pair of a pipeline step.
TorsionReport certify_torsion(TorsionFamily t, const Int& a, const Int& b,
                              unsigned max_primes = 12);

}  // namespace goodfrey
