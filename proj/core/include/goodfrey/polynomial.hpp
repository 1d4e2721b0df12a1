// Exact sparse multivariate polynomials over Z in the variables {a,b,r,s},
// and dense univariate polynomials over Q obtained by specializing them.
//
// Multivariate terms are kept in a canonical graded-lex ordered map with no
// zero coefficients, so equality is structural equality. Coefficients are
// arbitrary-precision integers; specialization introduces exact rationals.
#pragma once

#include "goodfrey/numeric.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace goodfrey {

enum class Var : unsigned { a = 0, b = 1, r = 2, s = 3 };

constexpr std::array<Var, 4> kAllVars{Var::a, Var::b, Var::r, Var::s};

const char* var_name(Var v);

// Exponent vector (e_a, e_b, e_r, e_s).
using Monomial = std::array<std::uint32_t, 4>;

// Graded lexicographic: total degree first, then lexicographic on exponents.
struct GradedLex {
    bool operator()(const Monomial& x, const Monomial& y) const;
};

class UniPoly;

class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(const Int& constant);
    explicit MultiPoly(long constant);

    static MultiPoly variable(Var v);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Int, GradedLex>& terms() const { return terms_; }

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& q) const;
    MultiPoly operator-(const MultiPoly& q) const;
    MultiPoly operator*(const MultiPoly& q) const;
    bool operator==(const MultiPoly& q) const { return terms_ == q.terms_; }

    MultiPoly pow(unsigned e) const;

    // True iff every coefficient is divisible by d.
    bool coefficients_divisible_by(const Int& d) const;

    // Exact value at a full point (unused variables may be 0).
    Int evaluate(const std::array<Int, 4>& point) const;

    // Substitutes rationals for every variable but `free`; throws if any
    // other variable occurs without an assignment.
    UniPoly specialize(const std::array<std::optional<Rat>, 4>& fixed, Var free) const;

    // Degree m when every term has total degree m in {a,b}; nullopt when the
    // polynomial is inhomogeneous. Throws if r or s occurs.
    std::optional<unsigned> homogeneous_degree_ab() const;

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Int& c);
    std::map<Monomial, Int, GradedLex> terms_;
};

MultiPoly operator*(const Int& k, const MultiPoly& p);
MultiPoly operator*(long k, const MultiPoly& p);
MultiPoly operator+(long k, const MultiPoly& p);
MultiPoly operator-(long k, const MultiPoly& p);

// Dense univariate polynomial over Q, coefficients lowest degree first.
// The zero polynomial has an empty coefficient list.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs);
    static UniPoly constant(const Rat& c);
    static UniPoly monomial(const Rat& c, unsigned degree);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const;
    Rat coeff(unsigned i) const { return i < c_.size() ? c_[i] : Rat(0); }

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& q) const;
    UniPoly operator-(const UniPoly& q) const;
    UniPoly operator*(const UniPoly& q) const;
    bool operator==(const UniPoly& q) const { return c_ == q.c_; }

    UniPoly pow(unsigned e) const;
    UniPoly derivative() const;
    Rat eval(const Rat& x) const;

    // Euclidean division; divisor must be nonzero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;

    // Monic gcd; gcd(0,0) = 0.
    static UniPoly gcd(UniPoly x, UniPoly y);

    // p / gcd(p, p'), normalized monic: same distinct roots, all simple.
    UniPoly square_free_part() const;

    std::string to_string(const std::string& var = "t") const;

private:
    void normalize();
    std::vector<Rat> c_;
};

UniPoly operator*(const Rat& k, const UniPoly& p);

}  // namespace goodfrey
