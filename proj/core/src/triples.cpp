#include "goodfrey/triples.hpp"

#include <sstream>
#include <stdexcept>

namespace goodfrey {

ABCTriple make_triple(const Int& a, const Int& b, const FactorBudget& budget) {
    if (a < 1 || b < 1) throw std::invalid_argument("make_triple: a,b must be positive");
    if (gcd(a, b) != 1)
        throw std::invalid_argument("make_triple: gcd(a,b) = " + gcd(a, b).get_str());
    ABCTriple p;
    p.a = factor(a, budget);
    p.b = factor(b, budget);
    p.c = factor(a + b, budget);
    return p;
}

namespace {

// rad(abc) from the three factor lists; nullopt when any is incomplete.
std::optional<Int> rad_abc(const ABCTriple& p) {
    if (!p.a.complete || !p.b.complete || !p.c.complete) return std::nullopt;
    return radical(product({p.a, p.b, p.c}));
}

}  // namespace

std::optional<double> quality(const ABCTriple& p) {
    auto rad = rad_abc(p);
    if (!rad) return std::nullopt;
    return log_ratio(p.c.value, *rad);
}

std::optional<bool> is_good(const ABCTriple& p) {
    auto rad = rad_abc(p);
    if (!rad) return std::nullopt;
    return *rad < p.c.value;
}

bool SeedReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

SeedReport validate_seed(TorsionFamily t, const ABCTriple& p) {
    const MapTable& mt = table(t);
    SeedReport rep;
    auto add = [&](std::string name, bool pass, std::string detail) {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    add("a_even", p.a.value % 2 == 0, "a = " + to_decimal(p.a.value));
    add("b_1_mod_4", p.b.value % 4 == 1, "b = 4k+" + to_decimal(Int(p.b.value % 4)));
    Rat ratio(p.b.value, p.a.value);
    ratio.canonicalize();
    add("ratio_gt_theta", ratio > mt.theta_tabulated,
        "b/a = " + to_decimal(ratio) + " vs theta = " + to_decimal(mt.theta_tabulated));
    auto good = is_good(p);
    add("seed_good", good.value_or(false),
        good ? (*good ? "rad(abc) < c" : "rad(abc) >= c") : "factorization incomplete");
    if (family_n(t) == 3)
        add("a_0_mod_3", p.a.value % 3 == 0, "a = 3k+" + to_decimal(Int(p.a.value % 3)));
    return rep;
}

namespace {

StepReport report_for(unsigned j, TorsionFamily t, const ABCTriple& triple, const Int& d_value) {
    const MapTable& mt = table(t);
    StepReport rep;
    rep.j = j;
    rep.a = triple.a;
    rep.b = triple.b;
    rep.c = triple.c;
    rep.q = quality(triple);
    rep.good = is_good(triple);
    rep.coprime = gcd(triple.a.value, triple.b.value) == 1;
    rep.congruences.a_0_mod_16 = triple.a.value % 16 == 0;
    rep.congruences.b_1_mod_4 = triple.b.value % 4 == 1;
    if (family_n(t) == 3) rep.congruences.a_0_mod_3 = triple.a.value % 3 == 0;
    rep.ratio = Rat(triple.b.value, triple.a.value);
    rep.ratio.canonicalize();
    rep.ratio_exceeds_theta = rep.ratio > mt.theta_tabulated;
    rep.ratio_exceeds_computed_root = rep.ratio > mt.theta_computed.hi;
    rep.rad = rad_abc(triple);
    rep.blocked_cofactor = triple.a.cofactor * triple.b.cofactor * triple.c.cofactor;
    rep.d_value = d_value;
    if (rep.rad && d_value != 0) rep.rad_lt_abs_d = *rep.rad < abs(d_value);
    return rep;
}

}  // namespace

IterateResult iterate(TorsionFamily t, const ABCTriple& seed, unsigned steps,
                      const IterateOptions& options) {
    IterateResult out;
    out.seed_report = validate_seed(t, seed);
    if (!out.seed_report.all_pass()) {
        if (!options.force)
            throw std::invalid_argument("iterate: seed validation failed for " + family_name(t) +
                                        " (pass force=true to override)");
        out.seed_forced = true;
    }
    out.steps.push_back(report_for(0, t, seed, Int(0)));
    ABCTriple cur = seed;
    for (unsigned j = 1; j <= steps; ++j) {
        MappedTriple next = apply_map(t, cur.a, cur.b, cur.c, options.budget);
        cur = ABCTriple{next.a, next.b, next.c};
        out.steps.push_back(report_for(j, t, cur, next.d_value));
    }
    return out;
}

}  // namespace goodfrey
