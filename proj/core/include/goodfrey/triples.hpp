// ABC triples, quality and goodness, seed validation, and the recursive
// good-triple sequence with per-step verification.
//
// The iteration never assumes the propagation guarantees: coprimality, the
// congruences, goodness, and the radical bound are re-checked at every
// step and recorded, not asserted.
#pragma once

#include "goodfrey/factor.hpp"
#include "goodfrey/families.hpp"

#include <optional>
#include <vector>

namespace goodfrey {

struct ABCTriple {
    FactoredInteger a, b, c;  // a + b = c, gcd(a,b) = 1, all >= 1
};

// Factors a, b and c = a+b under the budget; throws on gcd(a,b) != 1 or
// nonpositive input.
ABCTriple make_triple(const Int& a, const Int& b, const FactorBudget& budget = {});

// log(c) / log(rad(abc)) at 256-bit precision; nullopt when a factorization
// is incomplete.
std::optional<double> quality(const ABCTriple& p);

// rad(abc) < c on exact integers; nullopt when incomplete.
std::optional<bool> is_good(const ABCTriple& p);

struct SeedCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct SeedReport {
    std::vector<SeedCheck> checks;
    bool all_pass() const;
};

// Checks a even, b = 1 mod 4, b/a > theta (tabulated constant, exact rational
// comparison), goodness, and 3 | a for C2xC6. Each check reported
// individually; nothing throws.
SeedReport validate_seed(TorsionFamily t, const ABCTriple& p);

struct StepCongruences {
    bool a_0_mod_16 = false;
    bool b_1_mod_4 = false;
    std::optional<bool> a_0_mod_3;  // C2xC6 only
};

struct StepReport {
    unsigned j = 0;
    FactoredInteger a, b, c;
    std::optional<double> q;             // nullopt = unavailable
    std::optional<bool> good;            // nullopt = unavailable
    bool coprime = false;
    StepCongruences congruences;
    Rat ratio;                            // b/a, exact
    bool ratio_exceeds_theta = false;     // against the tabulated constant
    bool ratio_exceeds_computed_root = false;
    std::optional<Int> rad;               // rad(abc) when complete
    Int blocked_cofactor{1};              // product of unfactored residues
    Int d_value{0};                       // D(a_{j-1}, b_{j-1}), signed
    std::optional<bool> rad_lt_abs_d;     // rad(abc) < |D|
};

struct IterateOptions {
    FactorBudget budget;
    bool force = false;  // run even when validate_seed fails (recorded)
};

struct IterateResult {
    SeedReport seed_report;
    bool seed_forced = false;
    std::vector<StepReport> steps;  // index 0 holds the seed as j=0
};

// Applies the map `steps` times from the seed, fully populating a report
// per step. Soft-check failures are recorded and iteration continues;
// factoring shortfalls mark the dependent fields unavailable.
IterateResult iterate(TorsionFamily t, const ABCTriple& seed, unsigned steps,
                      const IterateOptions& options = {});

}  // namespace goodfrey
