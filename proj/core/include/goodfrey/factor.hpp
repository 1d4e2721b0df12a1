// Big-integer primality testing, staged factorization (trial division,
// Pollard-Brent rho, optional ECM), radicals, and factored-integer algebra.
//
// Incomplete factorization is a first-class value, never an error: a
// FactoredInteger carries the unfactored cofactor, and downstream
// quantities that need the full factorization report "unavailable".
#pragma once

#include "goodfrey/numeric.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace goodfrey {

struct FactoredInteger {
    Int value{1};
    std::vector<std::pair<Int, unsigned>> factors;  // primes strictly increasing
    Int cofactor{1};                                // unfactored residue, >= 1
    bool complete = true;                           // <=> cofactor == 1

    static FactoredInteger one() { return {}; }
    static FactoredInteger from_prime_powers(std::vector<std::pair<Int, unsigned>> pf);

    // value == cofactor * prod(p^e), primes increasing and probable-prime.
    bool invariants_hold() const;
    std::string to_string() const;  // e.g. "2^5*11^2*14657"
};

struct FactorBudget {
    std::uint64_t trial_bound = 1'000'000;  // trial division up to this bound
    std::uint64_t rho_iterations = 6'000'000;
    unsigned ecm_curves = 0;  // 0 disables the ECM stage
    std::chrono::milliseconds wall_clock_limit{0};  // 0 means unlimited
    std::uint64_t rng_seed = 0x5eed'900d'f4e5'0001ull;

    static FactorBudget deep();  // ECM enabled, sized for the j=3 pieces
};

// Deterministic for n < 2^64 (fixed Miller-Rabin base set); for larger n a
// Baillie-PSW-style strong probable-prime test (MR base 2 + strong Lucas),
// so "true" above 2^64 means probable prime.
bool is_prime(const Int& n);

// Stage pipeline: perfect-power reduction, trial division, Pollard-Brent
// rho with cycle restarts, optional ECM. Never throws on hard inputs; the
// leftover composite lands in .cofactor with complete=false.
FactoredInteger factor(const Int& n, const FactorBudget& budget = {});

// Error carrying the unfactored cofactor that blocked a radical.
class RadicalUnavailable : public std::runtime_error {
public:
    explicit RadicalUnavailable(Int cofactor);
    const Int& cofactor() const { return cofactor_; }

private:
    Int cofactor_;
};

// Product of the distinct primes; requires f.complete.
Int radical(const FactoredInteger& f);

// Merges factor lists, multiplies values and cofactors.
FactoredInteger product(const std::vector<FactoredInteger>& fs);

// Factors each piece independently, first stripping primes already known
// from `known` by divisibility. Pieces run concurrently.
std::vector<FactoredInteger> factor_pieces(const std::vector<Int>& pieces,
                                           const std::vector<FactoredInteger>& known,
                                           const FactorBudget& budget = {});

// Persistent map from decimal value to factor list, shared by concurrent
// factor_pieces calls. Load is lazy; every insert appends one JSON line.
class FactorCache {
public:
    static FactorCache& instance();

    void set_path(const std::string& path);  // empty disables persistence
    const std::string& path() const { return path_; }

    std::optional<std::vector<std::pair<Int, unsigned>>> lookup(const Int& n);
    void insert(const Int& n, const std::vector<std::pair<Int, unsigned>>& factors);
    std::size_t size();
    void clear();  // drops memory and truncates the file

private:
    FactorCache() = default;
    void ensure_loaded_locked();

    std::mutex mu_;
    bool loaded_ = false;
    std::string path_;
    std::map<Int, std::vector<std::pair<Int, unsigned>>> entries_;
};

}  // namespace goodfrey
