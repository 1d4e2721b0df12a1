#include "goodfrey/numeric.hpp"

#include <mpfr.h>

#include <cassert>
#include <stdexcept>

namespace goodfrey {

Int pow_ui(const Int& x, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), x.get_mpz_t(), e);
    return out;
}

Rat pow_ui(const Rat& x, unsigned long e) {
    Rat out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(x.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(x.get_mpq_t()), e);
    return out;  // already canonical: num/den coprime stays coprime under powers
}

Int gcd(const Int& x, const Int& y) {
    Int out;
    mpz_gcd(out.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return out;
}

unsigned long v2(const Int& n) {
    assert(n != 0);
    return mpz_scan1(n.get_mpz_t(), 0);
}

bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<std::pair<Int, unsigned>> perfect_power(const Int& n) {
    if (n < 2 || mpz_perfect_power_p(n.get_mpz_t()) == 0) return std::nullopt;
    unsigned max_k = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    for (unsigned k = max_k; k >= 2; --k) {
        Int root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return {{root, k}};
    }
    return std::nullopt;
}

double log_ratio(const Int& num, const Int& den) {
    if (num <= 1 || den <= 1) throw std::domain_error("log_ratio: arguments must exceed 1");
    mpfr_t ln, ld;
    mpfr_init2(ln, 256);
    mpfr_init2(ld, 256);
    mpfr_set_z(ln, num.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(ld, den.get_mpz_t(), MPFR_RNDN);
    mpfr_log(ln, ln, MPFR_RNDN);
    mpfr_log(ld, ld, MPFR_RNDN);
    mpfr_div(ln, ln, ld, MPFR_RNDN);
    double out = mpfr_get_d(ln, MPFR_RNDN);
    mpfr_clear(ln);
    mpfr_clear(ld);
    return out;
}

std::string to_decimal(const Int& n) { return n.get_str(10); }

std::string to_decimal(const Rat& q) { return q.get_str(10); }

Int int_from_decimal(const std::string& s) {
    Int out;
    if (s.empty() || mpz_set_str(out.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    return out;
}

}  // namespace goodfrey
