#include "goodfrey/sturm.hpp"

#include <stdexcept>

namespace goodfrey {

namespace {

int sgn(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int sign_at(const UniPoly& f, const Bound& x) {
    if (std::holds_alternative<Rat>(x)) return sgn(f.eval(std::get<Rat>(x)));
    if (f.is_zero()) return 0;
    int lead = sgn(f.leading());
    if (std::holds_alternative<PosInf>(x)) return lead;
    return (f.degree() % 2 == 0) ? lead : -lead;
}

}  // namespace

SturmChain::SturmChain(const UniPoly& p) {
    if (p.is_zero()) throw std::domain_error("Sturm chain of the zero polynomial");
    UniPoly p0 = p.square_free_part();
    chain_.push_back(p0);
    if (p0.degree() >= 1) {
        chain_.push_back(p0.derivative());
        while (chain_.back().degree() >= 1) {
            UniPoly rem = chain_[chain_.size() - 2].divmod(chain_.back()).second;
            if (rem.is_zero()) break;
            chain_.push_back(-rem);
        }
    }
}

int SturmChain::variations_at(const Bound& x) const {
    int count = 0, prev = 0;
    for (const auto& f : chain_) {
        int s = sign_at(f, x);
        if (s == 0) continue;  // zeros are skipped; gives (lo,hi] semantics
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

int SturmChain::count(const Bound& lo, const Bound& hi) const {
    return variations_at(lo) - variations_at(hi);
}

Rat SturmChain::root_bound() const {
    const UniPoly& p = chain_.front();
    if (p.degree() <= 0) return Rat(1);
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rat q = abs(p.coeff(i) / p.leading());
        if (q > m) m = q;
    }
    return m + 1;
}

int sturm_count(const UniPoly& p, const Bound& lo, const Bound& hi) {
    return SturmChain(p).count(lo, hi);
}

IsolatingInterval greatest_real_root(const UniPoly& p, const Rat& eps) {
    if (eps <= 0) throw std::invalid_argument("greatest_real_root: eps must be positive");
    SturmChain chain(p);
    if (chain.count_all() == 0) throw std::domain_error("polynomial has no real roots");
    Rat hi = chain.root_bound();
    Rat lo = -hi;
    // Invariant: the greatest root lies in (lo, hi].
    while (chain.count(lo, hi) > 1 || hi - lo >= eps / 2) {
        Rat mid = (lo + hi) / 2;
        if (chain.count(mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    const UniPoly& sf = chain.square_free();
    if (sf.eval(hi) == 0) {
        // Root sits exactly on the right endpoint; pad to an open interval.
        return {hi - eps / 4, hi + eps / 4, true};
    }
    return {lo, hi, true};
}

namespace {

PositivityResult refute(const SturmChain& chain, const UniPoly& p, const Rat& lo,
                        const std::optional<Rat>& hi, const Rat& sample) {
    PositivityResult out;
    out.sample = sample;
    if (p.eval(sample) <= 0) {
        out.witness = sample;
        return out;
    }
    // A root lies strictly beyond lo (and before hi, when bounded); isolate
    // one and probe its flanks for a sign-failure witness.
    Rat u = lo, v = hi ? *hi : chain.root_bound() + abs(lo) + 1;
    auto roots_in = [&](const Rat& x, const Rat& y) { return chain.count(Bound{x}, Bound{y}); };
    while (roots_in(u, v) > 1 || v - u > Rat(1, 1024)) {
        Rat mid = (u + v) / 2;
        if (roots_in(u, mid) >= 1)
            v = mid;
        else
            u = mid;
        if (roots_in(u, v) == 0) break;  // root was exactly at a probed midpoint
    }
    if (p.eval(v) <= 0)
        out.witness = v;
    else if (u > lo && p.eval(u) <= 0)
        out.witness = u;
    else
        out.touch_point = IsolatingInterval{u, v + Rat(1, 4096), true};
    return out;
}

}  // namespace

PositivityResult certify_positive_on(const UniPoly& p, const Rat& lo) {
    if (p.is_zero()) throw std::domain_error("certify_positive_on: zero polynomial");
    SturmChain chain(p);
    Rat sample = lo + 1;
    bool no_roots = chain.count(Bound{lo}, PosInf{}) == 0;
    bool lead_pos = p.leading() > 0;
    if (no_roots && lead_pos && p.eval(sample) > 0) {
        PositivityResult out;
        out.certified = true;
        out.sample = sample;
        return out;
    }
    if (no_roots && !lead_pos) {
        // Negative far out; the Cauchy bound is past every sign change.
        PositivityResult out;
        out.sample = sample;
        Rat far = chain.root_bound() + abs(lo) + 1;
        out.witness = p.eval(sample) <= 0 ? sample : far;
        return out;
    }
    return refute(chain, p, lo, std::nullopt, sample);
}

PositivityResult certify_positive_between(const UniPoly& p, const Rat& lo, const Rat& hi) {
    if (p.is_zero()) throw std::domain_error("certify_positive_between: zero polynomial");
    if (!(lo < hi)) throw std::invalid_argument("certify_positive_between: empty interval");
    SturmChain chain(p);
    Rat mid = (lo + hi) / 2;
    int open_count = chain.count(Bound{lo}, Bound{hi});
    if (chain.square_free().eval(hi) == 0) --open_count;  // (lo,hi] minus endpoint
    if (open_count == 0 && p.eval(mid) > 0) {
        PositivityResult out;
        out.certified = true;
        out.sample = mid;
        return out;
    }
    return refute(chain, p, lo, hi, mid);
}

}  // namespace goodfrey
