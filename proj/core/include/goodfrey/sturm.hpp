// Exact real-root counting and isolation via Sturm sequences, plus the
// positivity certificates used for the rational-function inequalities.
// Every interval endpoint is an exact rational; floats never enter.
#pragma once

#include "goodfrey/polynomial.hpp"

#include <optional>
#include <variant>

namespace goodfrey {

// Open left / closed right endpoint, or the infinities.
struct NegInf {};
struct PosInf {};
using Bound = std::variant<NegInf, Rat, PosInf>;

struct IsolatingInterval {
    Rat lo, hi;        // lo < hi
    bool contains_root = false;  // exactly one root in (lo, hi) when set
    Rat midpoint() const { return (lo + hi) / 2; }
    Rat width() const { return hi - lo; }
};

// Signed-remainder Sturm chain of the square-free part of p.
class SturmChain {
public:
    explicit SturmChain(const UniPoly& p);  // throws on zero polynomial

    // Distinct real roots of p in the half-open interval (lo, hi].
    int count(const Bound& lo, const Bound& hi) const;
    int count_all() const { return count(NegInf{}, PosInf{}); }

    const UniPoly& square_free() const { return chain_.front(); }

    // Strict upper bound on the absolute value of every root (Cauchy).
    Rat root_bound() const;

private:
    int variations_at(const Bound& x) const;
    std::vector<UniPoly> chain_;
};

// Distinct real roots of p in (lo, hi]; p must be nonzero (square-free part
// is taken internally).
int sturm_count(const UniPoly& p, const Bound& lo, const Bound& hi);

// Isolating interval of width < eps around the greatest real root.
// Throws std::domain_error when p has no real roots.
IsolatingInterval greatest_real_root(const UniPoly& p, const Rat& eps);

// Certificate that p(x) > 0 for all x > lo, decided exactly:
// no roots in (lo, inf), positive leading coefficient, and a positive
// sample beyond lo. On failure carries a witness x > lo with p(x) <= 0
// when a rational one exists, or the isolating interval of a root where
// p merely touches zero.
struct PositivityResult {
    bool certified = false;
    std::optional<Rat> witness;                    // p(witness) <= 0
    std::optional<IsolatingInterval> touch_point;  // p vanishes inside
    Rat sample;                                    // the checked sample point
};

PositivityResult certify_positive_on(const UniPoly& p, const Rat& lo);

// Same certificate on a bounded open interval (lo, hi).
PositivityResult certify_positive_between(const UniPoly& p, const Rat& lo, const Rat& hi);

}  // namespace goodfrey
