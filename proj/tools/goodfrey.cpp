// goodfrey: generates infinite sequences of good ABC triples and good Frey
// curves for the four torsion families C2xC2N, and reproduces the reference
// tables with per-value comparison.
//
// Subcommands:
//   verify-tables   symbolic identity suite, c4 cross-checks, change-of-
//                   variables identities at the documented seeds
//   generate        run the recursion from a seed, emit step reports
//   repro           reproduce the quality and sigma_m tables side by side
//   theta           print the tabulated threshold and the computed root
//   cache           inspect or clear the factorization cache

#include <CLI11.hpp>

#include "goodfrey/pipeline.hpp"
#include "goodfrey/serialize.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>

using namespace goodfrey;

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct BudgetFlags {
    std::uint64_t trial_bound = 1'000'000;
    std::uint64_t rho_iterations = 50'000'000;
    unsigned ecm_curves = 0;
    std::uint64_t time_limit_ms = 0;
    std::uint64_t rng_seed = 0;
    bool deep = false;
    std::string cache_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--trial-bound", trial_bound, "trial division bound");
        cmd->add_option("--rho-iterations", rho_iterations, "Pollard rho iteration pool");
        cmd->add_option("--ecm-curves", ecm_curves, "ECM curve pool (0 disables ECM)");
        cmd->add_option("--time-limit-ms", time_limit_ms, "wall clock limit per factorization");
        cmd->add_option("--rng-seed", rng_seed, "seed for randomized stages (reproducible runs)");
        cmd->add_flag("--deep", deep, "enable the ECM stage sized for depth-3 pieces");
        cmd->add_option("--cache", cache_path,
                        "factorization cache file (env GOODFREY_CACHE also applies)");
    }

    FactorBudget to_budget() const {
        FactorBudget b = deep ? FactorBudget::deep() : FactorBudget{};
        b.trial_bound = trial_bound;
        b.rho_iterations = std::max(rho_iterations, deep ? FactorBudget::deep().rho_iterations
                                                         : rho_iterations);
        if (ecm_curves > 0) b.ecm_curves = ecm_curves;
        b.wall_clock_limit = std::chrono::milliseconds(time_limit_ms);
        if (rng_seed != 0) b.rng_seed = rng_seed;
        return b;
    }
};

void apply_cache_path(const std::string& flag_value) {
    std::string path = flag_value;
    if (path.empty()) {
        if (const char* env = std::getenv("GOODFREY_CACHE")) path = env;
    }
    if (!path.empty()) FactorCache::instance().set_path(path);
}

struct SeedSpec {
    Int a, b;
};

SeedSpec parse_seed(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--seed", "expected the form a,b");
    return {int_from_decimal(s.substr(0, comma)), int_from_decimal(s.substr(comma + 1))};
}

TorsionFamily family_or_throw(const std::string& s) {
    auto f = parse_family(s);
    if (!f) throw CLI::ValidationError("--family", "unknown family '" + s + "'");
    return *f;
}

// ---- verify-tables ----

int cmd_verify_tables() {
    bool all_pass = true;
    auto line = [&](bool pass, bool counts, const std::string& what) {
        std::cout << (pass ? "[PASS] " : (counts ? "[FAIL] " : "[info] ")) << what << "\n";
        if (counts && !pass) all_pass = false;
    };

    for (TorsionFamily t : kAllFamilies) {
        const std::string name = family_name(t);
        MapIdentityReport rep = verify_map_identities(t);
        line(rep.a_in_4r, true, name + ": every coefficient of A divisible by 4");
        line(rep.sum_identity, true, name + ": A + B = C");
        line(rep.bezout_identity, true, name + ": U*B + V*C = W in Z[a,b,r,s]");
        line(rep.f_identity, true, name + ": f = B(1,t)/A(1,t) - t");
        line(rep.g_identity, true, name + ": g = C(1,t) - D(1,t)");
        line(rep.homogeneous, true, name + ": A,B,C,D homogeneous of equal degree");
        bool doubtful = family_n(t) <= 2;
        for (const auto& c : rep.positive_beyond_theta)
            line(c.holds, !doubtful, name + " [" + c.function + " > 0 beyond theta]: " +
                                         c.detail + (doubtful ? " (reported, not asserted)" : ""));
        for (const auto& c : rep.positive_on_unit_interval)
            line(c.holds, false, name + " [" + c.function + " > 0 on (0,1)]: " + c.detail +
                                     " (reported, not asserted)");
    }

    struct SeedCase {
        TorsionFamily t;
        long a, b;
    };
    const SeedCase seeds[] = {{TorsionFamily::c2x2, 4, 121},
                              {TorsionFamily::c2x4, 32, 49},
                              {TorsionFamily::c2x6, 432, 299693},
                              {TorsionFamily::c2x8, 4, 121}};
    for (const auto& sc : seeds) {
        const std::string name = family_name(sc.t);
        line(c4_cross_check(sc.t, Int(sc.a), Int(sc.b)), true,
             name + " c4 table polynomial matches at the seed");
        line(verify_cov(sc.t, Int(sc.a), Int(sc.b)), true,
             name + " change of variables maps the Frey curve onto the universal curve");
    }

    std::cout << (all_pass ? "all expected-pass checks passed\n"
                           : "some expected-pass checks FAILED\n");
    return all_pass ? 0 : kExitChecksFailed;
}

// ---- generate ----

int cmd_generate(TorsionFamily fam, const SeedSpec& seed, unsigned steps, bool force,
                 bool certify, const std::string& format, const FactorBudget& budget) {
    PipelineOptions opt;
    opt.budget = budget;
    opt.force = force;
    opt.certify = certify;
    PipelineResult res;
    try {
        res = run_pipeline(fam, seed.a, seed.b, steps, opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    bool incomplete = false;
    for (const auto& row : res.rows)
        incomplete = incomplete || row.step.blocked_cofactor != 1;

    if (format == "json") {
        nlohmann::json j;
        j["family"] = family_name(fam);
        j["seed_report"] = to_json(res.seed_report);
        j["seed_forced"] = res.seed_forced;
        auto& rows = j["steps"] = nlohmann::json::array();
        for (const auto& row : res.rows) rows.push_back(to_json(row));
        std::cout << j.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << csv_header() << "\n";
        for (const auto& row : res.rows) std::cout << to_csv_row(row) << "\n";
    } else {
        for (const auto& row : res.rows) {
            const StepReport& s = row.step;
            std::cout << family_name(fam) << " j=" << s.j << "\n";
            std::cout << "  a = " << s.a.to_string() << "\n";
            std::cout << "  b = " << s.b.to_string() << "\n";
            std::cout << "  c = " << s.c.to_string() << "\n";
            std::cout << "  q = " << (s.q ? format4(s.q) : "unavailable")
                      << "  good_triple = " << (s.good ? (*s.good ? "yes" : "NO") : "unavailable")
                      << "\n";
            if (row.curve) {
                std::cout << "  sigma_m = " << format4(row.curve->sigma_m)
                          << "  sigma = " << format4(row.curve->sigma) << "  good_curve = "
                          << (row.curve->good ? (*row.curve->good ? "yes" : "NO") : "unavailable")
                          << "\n";
            }
            if (row.torsion)
                std::cout << "  torsion " << family_name(fam)
                          << (row.torsion->certified ? " certified" : " NOT certified")
                          << " (upper bound " << row.torsion->upper_bound << ")\n";
        }
    }
    if (incomplete) {
        std::cerr << "warning: some factorizations incomplete under the current budget\n";
        return kExitBudget;
    }
    return 0;
}

// ---- repro ----

struct ReferenceRow {
    TorsionFamily fam;
    long a, b;
    std::vector<double> q;        // j = 1..
    std::vector<double> sigma_m;  // j = 1..
    double seed_q;
};

int cmd_repro(bool deep, const FactorBudget& budget, const std::string& format) {
    // The documented seeds. The reference example assigns (2^5,7^2,3^4) to
    // both N=1,2, but the tabulated C2xC2 row matches seed (2^2,11^2,5^3);
    // the C2xC2 run below uses (4,121) accordingly.
    const std::vector<ReferenceRow> rows = {
        {TorsionFamily::c2x2, 4, 121, {1.0755, 1.0324, 1.015}, {6.4204, 6.1912, 6.0901}, 1.0272},
        {TorsionFamily::c2x4, 32, 49, {1.2425, 1.0531, 1.0130}, {7.4219, 6.3124, 6.0769}, 1.1757},
        {TorsionFamily::c2x6, 432, 299693, {1.1211, 1.0278}, {6.7269, 6.1666}, 1.0261},
        {TorsionFamily::c2x8, 4, 121, {1.0331, 1.0040}, {6.1985, 6.0241}, 1.0272},
    };
    std::cout << "note: the reference example lists seed (2^5,7^2,3^4) for both N=1,2; the\n"
                 "C2xC2 table row matches seed (2^2,11^2,5^3), which is what runs here.\n\n";

    bool all_ok = true;
    bool any_unavailable = false;
    nlohmann::json jout = nlohmann::json::array();
    for (const auto& rr : rows) {
        unsigned steps = static_cast<unsigned>(rr.q.size());
        if (!deep && steps > 2) steps = 2;  // depth 3 needs the ECM stage
        PipelineOptions opt;
        opt.budget = budget;
        PipelineResult res = run_pipeline(rr.fam, Int(rr.a), Int(rr.b), steps, opt);

        auto compare = [&](const std::string& what, std::optional<double> got, double expect) {
            std::ostringstream os;
            os << family_name(rr.fam) << " " << what << ": computed "
               << (got ? format4(got) : "unavailable") << ", reference " << format4(expect);
            bool ok;
            if (!got) {
                ok = false;
                any_unavailable = true;
                os << "  [budget]";
            } else {
                double delta = *got - expect;
                ok = std::abs(delta) <= 1e-3;
                os << ", delta " << std::showpos << std::fixed << std::setprecision(4) << delta
                   << std::noshowpos;
                if (!ok) os << "  MISMATCH";
            }
            all_ok = all_ok && ok;
            std::cout << (ok ? "[PASS] " : "[FAIL] ") << os.str() << "\n";
        };

        compare("q(P0)", res.rows[0].step.q, rr.seed_q);
        for (unsigned j = 1; j <= steps; ++j) {
            compare("q(P" + std::to_string(j) + ")", res.rows[j].step.q, rr.q[j - 1]);
            compare("sigma_m(j=" + std::to_string(j) + ")", res.rows[j].curve->sigma_m,
                    rr.sigma_m[j - 1]);
        }
        for (unsigned j = 1; j <= steps; ++j) {
            const auto& tor = res.rows[j].torsion;
            std::cout << (tor && tor->certified ? "[PASS] " : "[FAIL] ") << family_name(rr.fam)
                      << " torsion certified at j=" << j << "\n";
            all_ok = all_ok && tor && tor->certified;
        }
        if (format == "json")
            for (const auto& row : res.rows) jout.push_back(to_json(row));
    }
    if (format == "json") std::cout << jout.dump(2) << "\n";
    if (!all_ok) return any_unavailable ? kExitBudget : kExitChecksFailed;
    return 0;
}

// ---- theta ----

int cmd_theta(TorsionFamily fam, unsigned digits) {
    const MapTable& mt = table(fam);
    Rat eps(1);
    for (unsigned i = 0; i < digits + 2; ++i) eps /= 10;
    IsolatingInterval iv = greatest_real_root(mt.f_num, eps);

    const unsigned prec = 64 + 4 * digits;
    mpf_class mid(Rat((iv.lo + iv.hi) / 2), prec);
    mpf_class lo(iv.lo, prec);
    mpf_class hi(iv.hi, prec);

    std::cout << family_name(fam) << "\n";
    std::cout << "  f numerator: " << mt.f_num.to_string() << "\n";
    std::cout << "  tabulated theta: " << to_decimal(mt.theta_tabulated) << " ("
              << mpq_get_d(mt.theta_tabulated.get_mpq_t()) << ")\n";
    gmp_printf("  computed greatest real root: %.*Ff\n", digits, mid.get_mpf_t());
    gmp_printf("  isolating interval: (%.*Ff, %.*Ff)\n", digits + 2, lo.get_mpf_t(), digits + 2,
               hi.get_mpf_t());
    if (family_n(fam) <= 2)
        std::cout << "  note: the tabulated constant 1 is not the greatest real root of the f\n"
                     "  numerator for this family; both values are reported unreconciled.\n";
    return 0;
}

// ---- cache ----

int cmd_cache(const std::string& action) {
    auto& cache = FactorCache::instance();
    if (action == "stats") {
        std::cout << "path: "
                  << (cache.path().empty() ? std::string("(disabled)") : cache.path()) << "\n";
        std::cout << "entries: " << cache.size() << "\n";
        return 0;
    }
    if (action == "clear") {
        cache.clear();
        std::cout << "cache cleared\n";
        return 0;
    }
    std::cerr << "error: unknown cache action '" << action << "' (use stats or clear)\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"good ABC triples and good Frey curves for the C2xC2N torsion families"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify-tables", "run the symbolic identity suite");

    auto* gen = app.add_subcommand("generate", "iterate the triple map from a seed");
    std::string family_str, seed_str, format = "text";
    unsigned steps = 1;
    bool force = false, no_certify = false;
    gen->add_option("--family", family_str, "c2x2 | c2x4 | c2x6 | c2x8")->required();
    gen->add_option("--seed", seed_str, "seed pair a,b")->required();
    gen->add_option("--steps", steps, "number of map applications");
    gen->add_flag("--force", force, "run even when seed validation fails");
    gen->add_flag("--no-certify", no_certify, "skip per-step torsion certification");
    gen->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    BudgetFlags gen_budget;
    gen_budget.attach(gen);

    auto* repro = app.add_subcommand("repro", "reproduce the reference tables");
    std::string repro_format = "text";
    repro->add_option("--format", repro_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    BudgetFlags repro_budget;
    repro_budget.attach(repro);

    auto* theta = app.add_subcommand("theta", "threshold root for a family");
    std::string theta_family;
    unsigned digits = 6;
    theta->add_option("--family", theta_family, "c2x2 | c2x4 | c2x6 | c2x8")->required();
    theta->add_option("--digits", digits, "decimal digits to display")
        ->check(CLI::PositiveNumber);

    auto* cache = app.add_subcommand("cache", "factorization cache management");
    std::string cache_action = "stats", cache_file;
    cache->add_option("action", cache_action, "stats | clear");
    cache->add_option("--cache", cache_file,
                      "factorization cache file (env GOODFREY_CACHE also applies)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify_tables();
        if (gen->parsed()) {
            apply_cache_path(gen_budget.cache_path);
            return cmd_generate(family_or_throw(family_str), parse_seed(seed_str), steps, force,
                                !no_certify, format, gen_budget.to_budget());
        }
        if (repro->parsed()) {
            apply_cache_path(repro_budget.cache_path);
            return cmd_repro(repro_budget.deep, repro_budget.to_budget(), repro_format);
        }
        if (theta->parsed()) return cmd_theta(family_or_throw(theta_family), digits);
        if (cache->parsed()) {
            apply_cache_path(cache_file);
            return cmd_cache(cache_action);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitChecksFailed;
    }
    return kExitUsage;
}
