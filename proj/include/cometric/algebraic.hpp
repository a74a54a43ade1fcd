#pragma once

#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "cometric/interval.hpp"
#include "cometric/poly.hpp"
#include "cometric/rat.hpp"

namespace cometric {

/// Sturm chain p, p', -rem(...), ... for root counting.
inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    if (p.is_zero()) return chain;
    chain.push_back(p);
    Poly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        const Poly& a = chain[chain.size() - 2];
        const Poly& b = chain[chain.size() - 1];
        Poly r = a % b;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

inline int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
    int vars = 0, prev = 0;
    for (const Poly& q : chain) {
        int s = q.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

/// Number of distinct real roots of chain[0] in (lo, hi]; exact.
inline int sturm_count(const std::vector<Poly>& chain, const Rat& lo, const Rat& hi) {
    if (chain.empty()) return 0;
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

/// 1 + max |c_i| / |lead|, rounded up to an integer: all real roots lie in (-B, B).
inline Int cauchy_root_bound(const Poly& p) {
    if (p.degree() < 1) return Int(1);
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rat a = abs_rat(p.coeff(static_cast<size_t>(i)));
        if (a > m) m = a;
    }
    Rat b = Rat(1) + m / abs_rat(p.leading());
    return ceil_int(b) + 1;
}

/**
 * A real algebraic number, held as (square-free monic defining polynomial,
 * isolating interval). Copies share one record; the record only ever
 * tightens (interval shrinks by bisection, defining polynomial is replaced
 * by a divisor still vanishing at the root), so the represented value never
 * changes and every reported enclosure stays valid.
 */
class AlgebraicReal {
    struct Rec {
        mutable std::mutex mu;
        Poly def;        // monic square-free; degree 1 <=> rational
        RatInterval iv;  // rational: point [v,v]; else def(lo)!=0, def(hi)!=0, one root inside
    };

public:
    AlgebraicReal() : rec_(make_rec(Poly{Rat(0), Rat(1)}, RatInterval::point(Rat(0)))) {}

    static AlgebraicReal from_rational(const Rat& v) {
        return AlgebraicReal(make_rec(Poly{-v, Rat(1)}, RatInterval::point(v)));
    }

    /// Validates: square-free, endpoints nonzero, exactly one root strictly inside.
    static AlgebraicReal make_root(const Poly& p, const RatInterval& iv) {
        if (p.degree() < 1) throw Error("AlgebraicReal: constant polynomial");
        Poly sf = p.square_free_part();
        if (sf.degree() == 1) {
            Rat v = -sf.constant_term();
            if (!(iv.lo <= v && v <= iv.hi)) throw Error("AlgebraicReal: root outside interval");
            return from_rational(v);
        }
        if (sf.sign_at(iv.lo) == 0 || sf.sign_at(iv.hi) == 0)
            throw Error("AlgebraicReal: defining polynomial vanishes at an interval endpoint");
        auto chain = sturm_chain(sf);
        if (sturm_count(chain, iv.lo, iv.hi) != 1)
            throw Error("AlgebraicReal: interval does not isolate exactly one root");
        return trusted(std::move(sf), iv);
    }

    /// No validation; for internal construction where invariants are known.
    static AlgebraicReal trusted(Poly sqfree_monic, RatInterval iv) {
        return AlgebraicReal(make_rec(std::move(sqfree_monic), std::move(iv)));
    }

    bool is_rational() const {
        std::lock_guard lk(rec_->mu);
        return rec_->def.degree() == 1;
    }

    Rat rational_value() const {
        std::lock_guard lk(rec_->mu);
        if (rec_->def.degree() != 1) throw Error("AlgebraicReal: not rational");
        return -rec_->def.constant_term();
    }

    Poly defining_poly() const {
        std::lock_guard lk(rec_->mu);
        return rec_->def;
    }

    RatInterval interval() const {
        std::lock_guard lk(rec_->mu);
        return rec_->iv;
    }

    bool same_root_object(const AlgebraicReal& o) const { return rec_ == o.rec_; }

    /// One bisection step; detects the midpoint landing on the root exactly.
    void refine_step() const {
        std::lock_guard lk(rec_->mu);
        refine_step_locked();
    }

    void refine_to_width(const Rat& width) const {
        if (width <= 0) throw Error("refine: width must be positive");
        std::lock_guard lk(rec_->mu);
        while (rec_->iv.width() > width) refine_step_locked();
    }

    RatInterval interval_refined(const Rat& width) const {
        refine_to_width(width);
        return interval();
    }

    /**
     * Replace the defining polynomial by a monic divisor that still has the
     * root. Caller must have certified that the root is a zero of `factor`.
     */
    void localize(const Poly& factor) const {
        std::lock_guard lk(rec_->mu);
        if (factor.degree() < 1 || factor.degree() > rec_->def.degree())
            throw Error("localize: bad factor degree");
        if (factor.degree() == rec_->def.degree()) return;
        if (factor.degree() == 1) {
            Rat v = -factor.constant_term() / factor.leading();
            rec_->def = Poly{-v, Rat(1)};
            rec_->iv = RatInterval::point(v);
            return;
        }
        rec_->def = factor.monic();
    }

    double approx() const {
        {
            std::lock_guard lk(rec_->mu);
            if (rec_->def.degree() == 1) return to_double(-rec_->def.constant_term());
        }
        refine_to_width(Rat(Int(1), Int(Int(1) << 60)));
        return to_double(interval().mid());
    }

private:
    explicit AlgebraicReal(std::shared_ptr<Rec> rec) : rec_(std::move(rec)) {}

    static std::shared_ptr<Rec> make_rec(Poly def, RatInterval iv) {
        auto rec = std::make_shared<Rec>();
        rec->def = std::move(def);
        rec->iv = std::move(iv);
        return rec;
    }

    void refine_step_locked() const {
        if (rec_->def.degree() == 1) return;
        Rat mid = rec_->iv.mid();
        int sm = rec_->def.sign_at(mid);
        if (sm == 0) {
            rec_->def = Poly{-mid, Rat(1)};
            rec_->iv = RatInterval::point(mid);
            return;
        }
        int slo = rec_->def.sign_at(rec_->iv.lo);
        if (slo != sm)
            rec_->iv = RatInterval(rec_->iv.lo, mid);
        else
            rec_->iv = RatInterval(mid, rec_->iv.hi);
    }

    std::shared_ptr<Rec> rec_;
};

/**
 * Isolates every distinct real root of p (via the square-free part) with a
 * Sturm chain and dyadic bisection. Returned roots are sorted descending;
 * each carries the full square-free part as its defining polynomial, except
 * roots hit exactly by a bisection midpoint, which come out rational.
 */
inline std::vector<AlgebraicReal> isolate_roots(const Poly& p) {
    if (p.is_zero()) throw Error("isolate_roots: zero polynomial");
    std::vector<AlgebraicReal> out;
    Poly sf = p.square_free_part();
    if (sf.degree() < 1) return out;
    if (sf.degree() == 1) {
        out.push_back(AlgebraicReal::from_rational(-sf.constant_term()));
        return out;
    }
    auto chain = sturm_chain(sf);
    Int bound = cauchy_root_bound(sf);
    Rat lo(-bound), hi(bound);

    // (lo, hi) segments with nonzero endpoint values, processed high-first.
    struct Seg { Rat lo, hi; int count; };
    std::vector<Seg> stack;
    auto push = [&](const Rat& a, const Rat& b) {
        int c = sturm_count(chain, a, b);
        if (c > 0) stack.push_back({a, b, c});
    };
    push(lo, hi);
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 1) {
            out.push_back(AlgebraicReal::trusted(sf, RatInterval(s.lo, s.hi)));
            continue;
        }
        Rat mid = (s.lo + s.hi) / 2;
        if (sf.sign_at(mid) == 0) {
            out.push_back(AlgebraicReal::from_rational(mid));
            // carve out a punctured neighbourhood of mid with nonzero endpoints
            Rat delta = (s.hi - s.lo) / 4;
            while (true) {
                Rat a = mid - delta, b = mid + delta;
                if (sf.sign_at(a) != 0 && sf.sign_at(b) != 0 && sturm_count(chain, a, b) == 1) {
                    push(s.lo, a);
                    push(b, s.hi);
                    break;
                }
                delta = delta / 2;
            }
        } else {
            push(s.lo, mid);
            push(mid, s.hi);
        }
    }
    // enclosures are pairwise disjoint (touching at worst), so midpoint order is root order
    std::sort(out.begin(), out.end(), [](const AlgebraicReal& a, const AlgebraicReal& b) {
        return a.interval().mid() > b.interval().mid();
    });
    return out;
}

inline std::vector<AlgebraicReal> sturm_isolate(const Poly& p) { return isolate_roots(p); }

/// Spec-style refine: tightens in place (shared record) and returns the handle.
inline AlgebraicReal refine(const AlgebraicReal& a, const Rat& width) {
    a.refine_to_width(width);
    return a;
}

/**
 * Element of Q[x]/(def) evaluated at a fixed root: rep(theta). All arithmetic
 * stays inside the root's (possibly reducible) quotient ring; division
 * localizes the defining polynomial when it meets a zero divisor.
 */
class ExtVal {
public:
    ExtVal(Poly rep, AlgebraicReal root) : rep_(std::move(rep)), root_(std::move(root)) { reduce(); }

    static ExtVal constant(const Rat& c, const AlgebraicReal& root) { return ExtVal(Poly(c), root); }
    static ExtVal of_root(const AlgebraicReal& root) { return ExtVal(Poly::x(), root); }

    const AlgebraicReal& root() const { return root_; }
    Poly rep() const {
        Poly d = root_.defining_poly();
        return rep_ % d;
    }

    bool rep_is_constant() const { return rep().is_constant(); }

    /// Exact value when the reduced representative is a constant.
    bool try_rational(Rat& out) const {
        if (root_.is_rational()) {
            out = rep_.eval(root_.rational_value());
            return true;
        }
        Poly r = rep();
        if (r.is_constant()) {
            out = r.constant_term();
            return true;
        }
        return false;
    }

    friend ExtVal operator+(const ExtVal& a, const ExtVal& b) {
        return ExtVal(a.rep_ + b.aligned(a), a.pick_root(b));
    }
    friend ExtVal operator-(const ExtVal& a, const ExtVal& b) {
        return ExtVal(a.rep_ - b.aligned(a), a.pick_root(b));
    }
    friend ExtVal operator*(const ExtVal& a, const ExtVal& b) {
        return ExtVal(a.rep_ * b.aligned(a), a.pick_root(b));
    }
    friend ExtVal operator+(const ExtVal& a, const Rat& s) { return ExtVal(a.rep_ + Poly(s), a.root_); }
    friend ExtVal operator-(const ExtVal& a, const Rat& s) { return ExtVal(a.rep_ - Poly(s), a.root_); }
    friend ExtVal operator*(const ExtVal& a, const Rat& s) { return ExtVal(a.rep_ * s, a.root_); }
    friend ExtVal operator*(const Rat& s, const ExtVal& a) { return a * s; }
    friend ExtVal operator-(const ExtVal& a) { return ExtVal(-a.rep_, a.root_); }

    ExtVal& operator+=(const ExtVal& b) { return *this = *this + b; }
    ExtVal& operator-=(const ExtVal& b) { return *this = *this - b; }
    ExtVal& operator*=(const ExtVal& b) { return *this = *this * b; }

    /**
     * Exact sign of rep(theta). Zero is decided by a gcd with the defining
     * polynomial (theta is a root of the gcd iff the gcd changes sign across
     * the isolating interval); a nonzero sign is found by refining the
     * enclosure, which terminates once zero has been excluded.
     */
    int sign() const {
        while (true) {
            if (root_.is_rational()) return sgn(rep_.eval(root_.rational_value()));
            Poly d = root_.defining_poly();
            Poly r = rep_ % d;
            if (r.is_zero()) return 0;
            if (r.is_constant()) return sgn(r.constant_term());
            Poly g = Poly::gcd(r, d);
            if (g.degree() >= 1) {
                RatInterval iv = root_.interval();
                if (g.sign_at(iv.lo) * g.sign_at(iv.hi) < 0) return 0;
            }
            // nonzero: refine until the interval image separates from zero
            for (int step = 0; step < 4096; ++step) {
                RatInterval iv = root_.interval();
                int s = eval_interval(r, iv).determined_sign();
                if (s != 0) return s;
                root_.refine_step();
                if (root_.is_rational()) break;
            }
            if (!root_.is_rational())
                throw Error("ExtVal::sign: refinement failed to separate from zero");
        }
    }

    bool is_zero() const { return sign() == 0; }

    ExtVal inverse() const {
        while (true) {
            if (root_.is_rational()) {
                Rat v = rep_.eval(root_.rational_value());
                if (v == 0) throw Error("ExtVal: division by zero");
                return constant(Rat(1) / v, root_);
            }
            Poly d = root_.defining_poly();
            Poly r = rep_ % d;
            if (r.is_zero()) throw Error("ExtVal: division by zero");
            auto [g, u, v] = Poly::extended_gcd(r, d);
            (void)v;
            if (g.degree() == 0) return ExtVal(u % d, root_);
            RatInterval iv = root_.interval();
            if (g.sign_at(iv.lo) * g.sign_at(iv.hi) < 0) throw Error("ExtVal: division by zero");
            // theta lives in the cofactor; shrink the defining polynomial and retry
            root_.localize(Poly::divmod(d, g).first.monic());
        }
    }

    friend ExtVal operator/(const ExtVal& a, const ExtVal& b) { return a * b.inverse(); }

    /// Enclosure of the value with width at most `width`.
    RatInterval enclosure(const Rat& width) const {
        for (int step = 0; step < 200000; ++step) {
            if (root_.is_rational())
                return RatInterval::point(rep_.eval(root_.rational_value()));
            Poly r = rep();
            if (r.is_constant()) return RatInterval::point(r.constant_term());
            RatInterval img = eval_interval(r, root_.interval());
            if (img.width() <= width) return img;
            root_.refine_step();
        }
        throw Error("ExtVal::enclosure: refinement budget exhausted");
    }

    double approx() const {
        RatInterval e = enclosure(Rat(Int(1), Int(Int(1) << 53)));
        return to_double(e.mid());
    }

private:
    void reduce() {
        Poly d = root_.defining_poly();
        rep_ = rep_ % d;
    }

    // operands must share the root record unless one side is a constant
    Poly aligned(const ExtVal& other) const {
        if (root_.same_root_object(other.root_)) return rep_;
        if (rep_.is_constant()) return rep_;
        if (other.rep_.is_constant()) return rep_;
        throw Error("ExtVal: mixing values over different roots");
    }
    const AlgebraicReal& pick_root(const ExtVal& b) const {
        if (root_.same_root_object(b.root_)) return root_;
        return rep_.is_constant() ? b.root_ : root_;
    }

    Poly rep_;
    AlgebraicReal root_;
};

/// Exact sign of g(theta).
inline int sign_at(const Poly& g, const AlgebraicReal& theta) { return ExtVal(g, theta).sign(); }

/// Exact rational roots of p; uses the fact that every rational root of the
/// primitive integer form lies in (1/lc) * Z.
inline std::vector<Rat> rational_roots(const Poly& p) {
    std::vector<Rat> out;
    if (p.degree() < 1) return out;
    // scale to integer coefficients
    Int scale = 1;
    for (const Rat& c : p.coeffs()) scale = lcm(scale, den(c));
    std::vector<Int> ic;
    for (const Rat& c : p.coeffs()) ic.push_back(num(c) * (scale / den(c)));
    Int lead = ic.back();
    if (lead < 0) lead = -lead;
    Rat grid(Int(1), lead);
    for (const AlgebraicReal& r : isolate_roots(p)) {
        if (r.is_rational()) {
            out.push_back(r.rational_value());
            continue;
        }
        r.refine_to_width(grid / 2);
        RatInterval iv = r.interval();
        Int k = ceil_int(iv.lo / grid);
        Rat cand = Rat(k) * grid;
        if (cand <= iv.hi && p.eval(cand) == 0) out.push_back(cand);
    }
    return out;
}

}  // namespace cometric
