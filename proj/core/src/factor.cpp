#include "goodfrey/factor.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

namespace goodfrey {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    std::optional<Clock::time_point> at;
    static Deadline from(const FactorBudget& b) {
        Deadline d;
        if (b.wall_clock_limit.count() > 0) d.at = Clock::now() + b.wall_clock_limit;
        return d;
    }
    bool expired() const { return at && Clock::now() > *at; }
};

// Shared, regrown on demand; callers hold the snapshot so concurrent growth
// cannot invalidate a loop in progress.
std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint64_t bound) {
    static std::mutex mu;
    static std::uint64_t sieved = 0;
    static std::shared_ptr<const std::vector<std::uint32_t>> primes;
    std::scoped_lock lock(mu);
    bound = std::min<std::uint64_t>(std::max<std::uint64_t>(bound, 1000), 100'000'000);
    if (bound > sieved || !primes) {
        auto fresh = std::make_shared<std::vector<std::uint32_t>>();
        std::vector<bool> composite(bound + 1, false);
        for (std::uint64_t p = 2; p <= bound; ++p) {
            if (composite[p]) continue;
            fresh->push_back(static_cast<std::uint32_t>(p));
            for (std::uint64_t q = p * p; q <= bound; q += p) composite[q] = true;
        }
        sieved = bound;
        primes = std::move(fresh);
    }
    return primes;
}

bool miller_rabin_witness(const Int& n, const Int& base, const Int& d, unsigned long s) {
    Int a = base % n;
    if (a == 0) return false;
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;  // composite witness found
}

// Strong Lucas probable-prime test with Selfridge's method A parameters.
bool strong_lucas_prp(const Int& n) {
    long d_abs = 5;
    int sign = 1;
    Int D;
    while (true) {
        D = sign * d_abs;
        int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && abs(D) != n) return false;
        d_abs += 2;
        sign = -sign;
        if (d_abs > 1000) {
            // Only squares stall the search and squares were filtered upstream.
            return false;
        }
    }
    const Int P = 1;
    const Int Q = (1 - D) / 4;

    Int d = n + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    auto half_mod = [&](Int x) {
        x %= n;
        if (x < 0) x += n;
        if (mpz_odd_p(x.get_mpz_t())) x += n;
        return Int(x >> 1);
    };

    // Compute U_d, V_d, Q^d by binary expansion of d, MSB first.
    Int U = 1, V = P, Qk = Q % n;
    unsigned long bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    for (long i = static_cast<long>(bits) - 2; i >= 0; --i) {
        // double: (U,V,Q^k) -> (U*V, V^2 - 2Q^k, Q^2k)
        U = (U * V) % n;
        V = (V * V - 2 * Qk) % n;
        Qk = (Qk * Qk) % n;
        if (mpz_tstbit(d.get_mpz_t(), i)) {
            Int U1 = half_mod(P * U + V);
            Int V1 = half_mod(D * U + P * V);
            U = U1;
            V = V1;
            Qk = (Qk * Q) % n;
        }
    }
    U %= n;
    if (U < 0) U += n;
    V %= n;
    if (V < 0) V += n;
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = (V * V - 2 * Qk) % n;
        if (V < 0) V += n;
        if (V == 0) return true;
        Qk = (Qk * Qk) % n;
    }
    return false;
}

constexpr unsigned long kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (n == static_cast<long>(p)) return true;
        if (n % static_cast<long>(p) == 0) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // Deterministic for every n < 2^64 with this fixed base set.
        for (unsigned long b : kMrBases)
            if (miller_rabin_witness(n, Int(static_cast<long>(b)), d, s)) return false;
        return true;
    }
    // Baillie-PSW style: strong base-2 test plus strong Lucas. Answers above
    // 2^64 are probable-prime only.
    if (is_perfect_square(n)) return false;
    if (miller_rabin_witness(n, Int(2), d, s)) return false;
    return strong_lucas_prp(n);
}

namespace {

// Pollard rho, Brent's variant with batched gcds and cycle restarts.
// Returns a nontrivial factor of composite odd n, or nullopt on budget end.
std::optional<Int> pollard_brent(const Int& n, std::uint64_t& iteration_pool,
                                 std::mt19937_64& rng, const Deadline& deadline) {
    if (n % 2 == 0) return Int(2);
    while (iteration_pool > 0 && !deadline.expired()) {
        Int c = Int(static_cast<unsigned long>(rng() % 1'000'000 + 1));
        Int y = Int(static_cast<unsigned long>(rng() % 1'000'000 + 2));
        Int g = 1, q = 1, x, ys;
        const unsigned long m = 128;
        unsigned long r = 1;
        while (g == 1 && iteration_pool > 0 && !deadline.expired()) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) {
                y = (y * y + c) % n;
                if ((i & 8191u) == 8191u && deadline.expired()) return std::nullopt;
            }
            if (iteration_pool < r)
                iteration_pool = 0;
            else
                iteration_pool -= r;
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += lim;
                if (iteration_pool < lim)
                    iteration_pool = 0;
                else
                    iteration_pool -= lim;
                if (deadline.expired()) break;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            unsigned long guard = 0;
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
                if ((++guard & 8191u) == 0 && deadline.expired()) return std::nullopt;
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
        // cycle degenerated; restart with a new constant
    }
    return std::nullopt;
}

// ---- ECM: Montgomery curves with Suyama parameterization ----

struct XZ {
    Int X, Z;
};

struct EcmContext {
    const Int& n;
    Int a24;  // (A+2)/4 mod n
};

Int mod(const Int& x, const Int& n) {
    Int r = x % n;
    if (r < 0) r += n;
    return r;
}

XZ x_dbl(const EcmContext& ctx, const XZ& p) {
    const Int& n = ctx.n;
    Int u = mod((p.X + p.Z) * (p.X + p.Z), n);
    Int v = mod((p.X - p.Z) * (p.X - p.Z), n);
    Int diff = u - v;
    Int x = mod(u * v, n);
    Int z = mod(diff * (v + ctx.a24 * diff), n);
    return {x, z};
}

XZ x_add(const EcmContext& ctx, const XZ& p, const XZ& q, const XZ& diff) {
    const Int& n = ctx.n;
    Int u = mod((p.X - p.Z) * (q.X + q.Z), n);
    Int v = mod((p.X + p.Z) * (q.X - q.Z), n);
    Int upv = u + v, umv = u - v;
    Int x = mod(diff.Z * upv * upv, n);
    Int z = mod(diff.X * umv * umv, n);
    return {x, z};
}

XZ x_ladder(const EcmContext& ctx, const XZ& p, const Int& k) {
    XZ r0 = p;
    XZ r1 = x_dbl(ctx, p);
    long bits = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2));
    for (long i = bits - 2; i >= 0; --i) {
        if (mpz_tstbit(k.get_mpz_t(), i)) {
            r0 = x_add(ctx, r1, r0, p);
            r1 = x_dbl(ctx, r1);
        } else {
            r1 = x_add(ctx, r0, r1, p);
            r0 = x_dbl(ctx, r0);
        }
    }
    return r0;
}

// One ECM curve at the given stage-1/stage-2 bounds. Returns a nontrivial
// factor if the curve order is smooth enough modulo some prime of n.
std::optional<Int> ecm_one_curve(const Int& n, std::uint64_t sigma_seed, std::uint64_t b1,
                                 const Deadline& deadline) {
    Int sigma = Int(static_cast<unsigned long>(sigma_seed % 0x7fffffff + 6));
    Int u = mod(sigma * sigma - 5, n);
    Int v = mod(4 * sigma, n);
    Int x0 = mod(u * u * u, n);
    Int z0 = mod(v * v * v, n);
    Int num = mod((v - u) * (v - u) * (v - u) * (3 * u + v), n);
    Int den = mod(16 * x0 * v, n);
    Int den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t()) == 0) {
        Int g = gcd(den, n);
        if (g > 1 && g < n) return g;
        return std::nullopt;
    }
    EcmContext ctx{n, mod(num * den_inv, n)};
    XZ p{x0, z0};

    // Stage 1: multiply by every prime power <= B1.
    auto stage1_primes = primes_up_to(b1);
    for (std::uint32_t q : *stage1_primes) {
        if (q > b1) break;
        std::uint64_t qe = q;
        while (qe <= b1 / q) qe *= q;
        p = x_ladder(ctx, p, Int(static_cast<unsigned long>(qe)));
        if ((q & 1023u) == 1 && deadline.expired()) return std::nullopt;
    }
    Int g = gcd(p.Z, n);
    if (g > 1 && g < n) return g;
    if (g == n) return std::nullopt;

    // Stage 2, baby-step giant-step over primes in (B1, 64*B1].
    const std::uint64_t b2 = b1 * 64;
    const std::uint64_t w = 2310;
    std::vector<XZ> baby(w / 2 + 1);
    baby[1] = p;
    baby[2] = x_dbl(ctx, p);
    for (std::uint64_t j = 3; j <= w / 2; ++j)
        baby[j] = x_add(ctx, baby[j - 1], baby[1], baby[j - 2]);
    XZ giant_step = x_dbl(ctx, baby[w / 2]);  // [w]P, w even

    std::uint64_t k = std::max<std::uint64_t>((b1 / w) * w, 2 * w);
    // R walks [k]P, [k+w]P, ... with difference [w]P.
    XZ r_prev = x_ladder(ctx, p, Int(static_cast<unsigned long>(k - w)));
    XZ r_cur = x_ladder(ctx, p, Int(static_cast<unsigned long>(k)));
    Int acc = 1;
    auto primes_ptr = primes_up_to(b2);
    const auto& primes = *primes_ptr;
    std::size_t pi = 0;
    while (pi < primes.size() && primes[pi] <= b1) ++pi;
    for (std::uint64_t base = k; base <= b2 + w / 2 && pi < primes.size(); base += w) {
        while (pi < primes.size() && primes[pi] < base - w / 2) ++pi;
        while (pi < primes.size() && primes[pi] <= std::min(base + w / 2, b2)) {
            std::uint64_t q = primes[pi++];
            std::uint64_t j = q > base ? q - base : base - q;
            if (j == 0 || j > w / 2) continue;
            acc = mod(acc * (r_cur.X * baby[j].Z - baby[j].X * r_cur.Z), n);
        }
        XZ r_next = x_add(ctx, r_cur, giant_step, r_prev);
        r_prev = r_cur;
        r_cur = r_next;
        if (deadline.expired()) break;
    }
    g = gcd(acc, n);
    if (g > 1 && g < n) return g;
    return std::nullopt;
}

std::optional<Int> ecm_stage(const Int& n, unsigned& curve_pool, std::mt19937_64& rng,
                             const Deadline& deadline) {
    // B1 ladder; roughly doubles the reachable factor size every rung.
    static constexpr std::uint64_t kB1[] = {2'000, 11'000, 50'000, 250'000, 1'000'000};
    for (std::uint64_t b1 : kB1) {
        unsigned here = std::max(8u, static_cast<unsigned>(b1 / 2'500));
        for (unsigned i = 0; i < here && curve_pool > 0; ++i) {
            if (deadline.expired()) return std::nullopt;
            --curve_pool;
            if (auto f = ecm_one_curve(n, rng(), b1, deadline)) return f;
        }
        if (curve_pool == 0) break;
    }
    return std::nullopt;
}

void add_prime(std::map<Int, unsigned>& primes, const Int& p, unsigned e) { primes[p] += e; }

}  // namespace

FactorBudget FactorBudget::deep() {
    FactorBudget b;
    b.rho_iterations = 20'000'000;
    b.ecm_curves = 1200;
    return b;
}

FactoredInteger FactoredInteger::from_prime_powers(std::vector<std::pair<Int, unsigned>> pf) {
    std::map<Int, unsigned> merged;
    FactoredInteger out;
    for (auto& [p, e] : pf) merged[p] += e;
    for (auto& [p, e] : merged) {
        out.factors.emplace_back(p, e);
        out.value *= pow_ui(p, e);
    }
    return out;
}

bool FactoredInteger::invariants_hold() const {
    if (cofactor < 1 || value < 1) return false;
    if (complete != (cofactor == 1)) return false;
    Int prod = cofactor;
    const Int* prev = nullptr;
    for (const auto& [p, e] : factors) {
        if (prev && !(*prev < p)) return false;
        if (!is_prime(p)) return false;
        prod *= pow_ui(p, e);
        prev = &p;
    }
    return prod == value;
}

std::string FactoredInteger::to_string() const {
    if (factors.empty() && cofactor == 1) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, e] : factors) {
        if (!first) os << "*";
        first = false;
        os << p.get_str();
        if (e > 1) os << "^" << e;
    }
    if (cofactor != 1) {
        if (!first) os << "*";
        os << "[" << cofactor.get_str() << "]";
    }
    return os.str();
}

FactoredInteger factor(const Int& n, const FactorBudget& budget) {
    if (n < 1) throw std::invalid_argument("factor: n must be >= 1");
    FactoredInteger out;
    out.value = n;
    if (n == 1) return out;

    auto& cache = FactorCache::instance();
    const bool cacheable = mpz_sizeinbase(n.get_mpz_t(), 10) >= 12;
    if (cacheable) {
        if (auto hit = cache.lookup(n)) {
            out.factors = *hit;
            return out;
        }
    }

    Deadline deadline = Deadline::from(budget);
    std::mt19937_64 rng(budget.rng_seed ^ static_cast<std::uint64_t>(mpz_fdiv_ui(n.get_mpz_t(), 0xffffffffull)));
    std::map<Int, unsigned> primes;
    std::vector<std::pair<Int, unsigned>> pending;  // composites awaiting work

    // Stage: trial division.
    Int m = n;
    auto trial_primes = primes_up_to(budget.trial_bound);
    for (std::uint32_t p : *trial_primes) {
        if (p > budget.trial_bound) break;
        if (Int(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
            add_prime(primes, Int(p), e);
        }
    }
    if (m > 1) pending.emplace_back(m, 1);

    std::uint64_t rho_pool = budget.rho_iterations;
    unsigned ecm_pool = budget.ecm_curves;
    std::vector<std::pair<Int, unsigned>> stuck;

    while (!pending.empty()) {
        auto [v, mult] = pending.back();
        pending.pop_back();
        if (v == 1) continue;
        if (is_prime(v)) {
            add_prime(primes, v, mult);
            continue;
        }
        if (auto pp = perfect_power(v)) {
            pending.emplace_back(pp->first, mult * pp->second);
            continue;
        }
        std::optional<Int> f;
        if (!deadline.expired() && rho_pool > 0) f = pollard_brent(v, rho_pool, rng, deadline);
        if (!f && !deadline.expired() && ecm_pool > 0) f = ecm_stage(v, ecm_pool, rng, deadline);
        if (f) {
            pending.emplace_back(*f, mult);
            pending.emplace_back(v / *f, mult);
        } else {
            stuck.emplace_back(v, mult);
        }
    }

    for (const auto& [p, e] : primes) out.factors.emplace_back(p, e);
    for (const auto& [v, mult] : stuck) out.cofactor *= pow_ui(v, mult);
    out.complete = out.cofactor == 1;
    if (cacheable && out.complete) cache.insert(n, out.factors);
    return out;
}

RadicalUnavailable::RadicalUnavailable(Int cofactor)
    : std::runtime_error("radical unavailable: unfactored cofactor " + cofactor.get_str()),
      cofactor_(std::move(cofactor)) {}

Int radical(const FactoredInteger& f) {
    if (!f.complete) throw RadicalUnavailable(f.cofactor);
    Int r = 1;
    for (const auto& [p, e] : f.factors) r *= p;
    return r;
}

FactoredInteger product(const std::vector<FactoredInteger>& fs) {
    std::map<Int, unsigned> primes;
    FactoredInteger out;
    for (const auto& f : fs) {
        out.value *= f.value;
        out.cofactor *= f.cofactor;
        for (const auto& [p, e] : f.factors) primes[p] += e;
    }
    for (const auto& [p, e] : primes) out.factors.emplace_back(p, e);
    out.complete = out.cofactor == 1;
    return out;
}

std::vector<FactoredInteger> factor_pieces(const std::vector<Int>& pieces,
                                           const std::vector<FactoredInteger>& known,
                                           const FactorBudget& budget) {
    auto one = [&](const Int& piece) {
        if (piece < 1) throw std::invalid_argument("factor_pieces: pieces must be positive");
        std::map<Int, unsigned> stripped;
        Int m = piece;
        for (const auto& k : known) {
            for (const auto& [p, e] : k.factors) {
                while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
                    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
                    ++stripped[p];
                }
            }
        }
        FactoredInteger rest = factor(m, budget);
        std::vector<FactoredInteger> parts;
        parts.push_back(std::move(rest));
        if (!stripped.empty()) {
            std::vector<std::pair<Int, unsigned>> pf(stripped.begin(), stripped.end());
            parts.push_back(FactoredInteger::from_prime_powers(std::move(pf)));
        }
        return product(parts);
    };

    std::vector<FactoredInteger> out(pieces.size());
    if (pieces.size() <= 1) {
        for (std::size_t i = 0; i < pieces.size(); ++i) out[i] = one(pieces[i]);
        return out;
    }
    std::vector<std::future<FactoredInteger>> futs;
    futs.reserve(pieces.size());
    for (const auto& piece : pieces)
        futs.push_back(std::async(std::launch::async, one, piece));
    for (std::size_t i = 0; i < futs.size(); ++i) out[i] = futs[i].get();
    return out;
}

FactorCache& FactorCache::instance() {
    static FactorCache cache;
    return cache;
}

void FactorCache::set_path(const std::string& path) {
    std::scoped_lock lock(mu_);
    path_ = path;
    loaded_ = false;
    entries_.clear();
}

void FactorCache::ensure_loaded_locked() {
    if (loaded_) return;
    loaded_ = true;
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("n") || !j.contains("f")) continue;
        std::vector<std::pair<Int, unsigned>> fs;
        for (const auto& pe : j["f"])
            fs.emplace_back(int_from_decimal(pe[0].get<std::string>()), pe[1].get<unsigned>());
        entries_[int_from_decimal(j["n"].get<std::string>())] = std::move(fs);
    }
}

std::optional<std::vector<std::pair<Int, unsigned>>> FactorCache::lookup(const Int& n) {
    std::scoped_lock lock(mu_);
    ensure_loaded_locked();
    auto it = entries_.find(n);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void FactorCache::insert(const Int& n, const std::vector<std::pair<Int, unsigned>>& factors) {
    std::scoped_lock lock(mu_);
    ensure_loaded_locked();
    auto [it, fresh] = entries_.emplace(n, factors);
    if (!fresh || path_.empty()) return;
    nlohmann::json j;
    j["n"] = to_decimal(n);
    auto& arr = j["f"] = nlohmann::json::array();
    for (const auto& [p, e] : factors) arr.push_back({to_decimal(p), e});
    std::ofstream out(path_, std::ios::app);
    out << j.dump() << "\n" << std::flush;  // one whole line per insert
}

std::size_t FactorCache::size() {
    std::scoped_lock lock(mu_);
    ensure_loaded_locked();
    return entries_.size();
}

void FactorCache::clear() {
    std::scoped_lock lock(mu_);
    entries_.clear();
    loaded_ = true;
    if (!path_.empty()) std::ofstream(path_, std::ios::trunc);
}

}  // namespace goodfrey
