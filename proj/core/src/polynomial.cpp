#include "goodfrey/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace goodfrey {

const char* var_name(Var v) {
    switch (v) {
        case Var::a: return "a";
        case Var::b: return "b";
        case Var::r: return "r";
        case Var::s: return "s";
    }
    return "?";
}

bool GradedLex::operator()(const Monomial& x, const Monomial& y) const {
    unsigned long dx = 0, dy = 0;
    for (int i = 0; i < 4; ++i) {
        dx += x[i];
        dy += y[i];
    }
    if (dx != dy) return dx < dy;
    return x < y;  // lexicographic tie-break
}

MultiPoly::MultiPoly(const Int& constant) {
    if (constant != 0) terms_.emplace(Monomial{0, 0, 0, 0}, constant);
}

MultiPoly::MultiPoly(long constant) : MultiPoly(Int(constant)) {}

MultiPoly MultiPoly::variable(Var v) {
    MultiPoly p;
    Monomial m{0, 0, 0, 0};
    m[static_cast<unsigned>(v)] = 1;
    p.terms_.emplace(m, Int(1));
    return p;
}

void MultiPoly::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

MultiPoly MultiPoly::operator+(const MultiPoly& q) const {
    MultiPoly out = *this;
    for (const auto& [m, c] : q.terms_) out.add_term(m, c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& q) const {
    MultiPoly out = *this;
    for (const auto& [m, c] : q.terms_) out.add_term(m, -c);
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& q) const {
    MultiPoly out;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : q.terms_) {
            Monomial m{m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]};
            out.add_term(m, c1 * c2);
        }
    }
    return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly out(1L);
    MultiPoly base = *this;
    while (e) {
        if (e & 1u) out = out * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return out;
}

bool MultiPoly::coefficients_divisible_by(const Int& d) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return t.second % d == 0; });
}

Int MultiPoly::evaluate(const std::array<Int, 4>& point) const {
    Int total = 0;
    for (const auto& [m, c] : terms_) {
        Int term = c;
        for (int i = 0; i < 4; ++i)
            if (m[i]) term *= pow_ui(point[i], m[i]);
        total += term;
    }
    return total;
}

UniPoly MultiPoly::specialize(const std::array<std::optional<Rat>, 4>& fixed, Var free) const {
    const unsigned fi = static_cast<unsigned>(free);
    if (fixed[fi].has_value())
        throw std::invalid_argument("specialize: free variable also fixed");
    std::vector<Rat> coeffs;
    for (const auto& [m, c] : terms_) {
        Rat term(c);
        for (unsigned i = 0; i < 4; ++i) {
            if (i == fi || m[i] == 0) continue;
            if (!fixed[i].has_value())
                throw std::invalid_argument(std::string("specialize: unfixed variable ") +
                                            var_name(static_cast<Var>(i)));
            term *= pow_ui(*fixed[i], m[i]);
        }
        unsigned d = m[fi];
        if (coeffs.size() <= d) coeffs.resize(d + 1, Rat(0));
        coeffs[d] += term;
    }
    return UniPoly(std::move(coeffs));
}

std::optional<unsigned> MultiPoly::homogeneous_degree_ab() const {
    if (is_zero()) return 0;
    std::optional<unsigned> deg;
    for (const auto& [m, c] : terms_) {
        if (m[2] || m[3])
            throw std::invalid_argument("homogeneous_degree_ab: polynomial involves r or s");
        unsigned d = m[0] + m[1];
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

std::string MultiPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest degree first reads better
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Int abs_c = abs(c);
        bool has_var = m[0] || m[1] || m[2] || m[3];
        if (abs_c != 1 || !has_var) os << abs_c.get_str();
        for (int i = 0; i < 4; ++i) {
            if (!m[i]) continue;
            os << var_name(static_cast<Var>(i));
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

MultiPoly operator*(const Int& k, const MultiPoly& p) { return MultiPoly(k) * p; }
MultiPoly operator*(long k, const MultiPoly& p) { return MultiPoly(k) * p; }
MultiPoly operator+(long k, const MultiPoly& p) { return MultiPoly(k) + p; }
MultiPoly operator-(long k, const MultiPoly& p) { return MultiPoly(k) - p; }

UniPoly::UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }

UniPoly UniPoly::constant(const Rat& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(const Rat& c, unsigned degree) {
    std::vector<Rat> v(degree + 1, Rat(0));
    v[degree] = c;
    return UniPoly(std::move(v));
}

void UniPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& UniPoly::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

UniPoly UniPoly::operator-() const {
    UniPoly out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
}

UniPoly UniPoly::operator+(const UniPoly& q) const {
    std::vector<Rat> v(std::max(c_.size(), q.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) v[i] += q.c_[i];
    return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& q) const { return *this + (-q); }

UniPoly UniPoly::operator*(const UniPoly& q) const {
    if (is_zero() || q.is_zero()) return {};
    std::vector<Rat> v(c_.size() + q.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < q.c_.size(); ++j) v[i + j] += c_[i] * q.c_[j];
    return UniPoly(std::move(v));
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly out = constant(Rat(1));
    UniPoly base = *this;
    while (e) {
        if (e & 1u) out = out * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return out;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = Rat(long(i)) * c_[i];
    return UniPoly(std::move(v));
}

Rat UniPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    UniPoly rem = *this;
    if (rem.degree() < d.degree()) return {{}, rem};
    std::vector<Rat> q(rem.degree() - d.degree() + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        unsigned shift = rem.degree() - d.degree();
        Rat f = rem.leading() / d.leading();
        q[shift] = f;
        rem = rem - UniPoly::monomial(f, shift) * d;
    }
    return {UniPoly(std::move(q)), rem};
}

UniPoly UniPoly::gcd(UniPoly x, UniPoly y) {
    while (!y.is_zero()) {
        UniPoly r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.is_zero()) x = (Rat(1) / x.leading()) * x;
    return x;
}

UniPoly UniPoly::square_free_part() const {
    if (is_zero()) throw std::domain_error("square-free part of zero polynomial");
    UniPoly g = gcd(*this, derivative());
    UniPoly sf = divmod(g).first;
    return (Rat(1) / sf.leading()) * sf;
}

std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat& c = c_[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat ac = abs(c);
        if (ac != 1 || i == 0) os << ac.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UniPoly operator*(const Rat& k, const UniPoly& p) {
    std::vector<Rat> v = p.coeffs();
    for (auto& c : v) c *= k;
    return UniPoly(std::move(v));
}

}  // namespace goodfrey
