#pragma once

#include <vector>

#include "cometric/algebraic.hpp"
#include "cometric/matrix.hpp"

namespace cometric {

/// Power sums p_1..p_kmax of the roots of a monic polynomial, by Newton's identities.
inline std::vector<Rat> power_sums(const Poly& w, size_t kmax) {
    if (w.is_zero() || w.leading() != 1) throw Error("power_sums: monic polynomial required");
    size_t d = static_cast<size_t>(w.degree());
    std::vector<Rat> p(kmax + 1, Rat(0));
    p[0] = Rat(static_cast<unsigned>(d));
    for (size_t k = 1; k <= kmax; ++k) {
        Rat s(0);
        if (k <= d) s = -Rat(static_cast<unsigned>(k)) * w.coeff(d - k);
        for (size_t i = 1; i < k && i <= d; ++i) s -= w.coeff(d - i) * p[k - i];
        p[k] = s;
    }
    return p;
}

/// Sum of rep(t) over all roots t of monic square-free w (trace on Q[x]/(w)).
inline Rat trace_over_roots(const Poly& rep, const Poly& w) {
    Poly r = rep % w;
    if (r.is_zero()) return Rat(0);
    auto p = power_sums(w, static_cast<size_t>(r.degree()));
    Rat t(0);
    for (int k = 0; k <= r.degree(); ++k) t += r.coeff(static_cast<size_t>(k)) * p[static_cast<size_t>(k)];
    return t;
}

/// Inverse of f modulo w; requires gcd(f, w) = 1.
inline Poly inverse_mod(const Poly& f, const Poly& w) {
    auto [g, u, v] = Poly::extended_gcd(f % w, w);
    (void)v;
    if (g.degree() != 0) throw Error("inverse_mod: not invertible (shared factor with modulus)");
    return u % w;
}

/**
 * Exact value of the form  sum_t coeff_t * prod_s rep_{t,s}(theta_s)
 * over a fixed list of pairwise-distinct roots theta_s. Values over a single
 * root should use ExtVal directly; this type exists for quantities mixing
 * two or three distinct irrational roots (e.g. intersection numbers whose
 * three indices live in different extensions), where exact comparisons are
 * decided through an annihilating polynomial on the tensor product algebra.
 */
class MultiRootValue {
public:
    struct Term {
        Rat coeff;
        std::vector<Poly> reps;  // one per slot
    };

    MultiRootValue(std::vector<AlgebraicReal> slots, std::vector<Term> terms)
        : slots_(std::move(slots)), terms_(std::move(terms)) {
        for (const auto& t : terms_)
            if (t.reps.size() != slots_.size()) throw Error("MultiRootValue: term arity mismatch");
    }

    /// Enclosure with width at most `width`, refining slot roots as needed.
    RatInterval enclosure(const Rat& width) const {
        for (int round = 0; round < 100000; ++round) {
            RatInterval total = RatInterval::point(Rat(0));
            for (const auto& t : terms_) {
                RatInterval prod = RatInterval::point(t.coeff);
                for (size_t s = 0; s < slots_.size(); ++s)
                    prod = prod * eval_interval(t.reps[s] % slots_[s].defining_poly(),
                                                slots_[s].interval());
                total = total + prod;
            }
            if (total.width() <= width) return total;
            for (const auto& s : slots_) s.refine_step();
        }
        throw Error("MultiRootValue::enclosure: refinement budget exhausted");
    }

    /// Exact test value == target (rational target).
    bool equals(const Rat& target) const {
        // fold slots that have become rational; collapse to cheaper forms
        auto folded = folded_form();
        if (folded.slots_.empty()) {
            Rat v(0);
            for (const auto& t : folded.terms_) v += t.coeff;
            return v == target;
        }
        if (folded.slots_.size() == 1) {
            ExtVal acc = ExtVal::constant(Rat(0), folded.slots_[0]);
            for (const auto& t : folded.terms_)
                acc += ExtVal(t.reps[0] * t.coeff, folded.slots_[0]);
            return (acc - target).sign() == 0;
        }
        return folded.equals_tensor(target);
    }

    /// Exact sign (-1, 0, +1).
    int sign() const {
        Rat w = Rat(Int(1), Int(1) << 30);
        for (int round = 0; round < 8; ++round) {
            RatInterval e = enclosure(w);
            int s = e.determined_sign();
            if (s != 0) return s;
            w = w * Rat(Int(1), Int(1) << 30);
        }
        if (equals(Rat(0))) return 0;
        Rat width = Rat(Int(1), Int(1) << 240);
        while (true) {
            RatInterval e = enclosure(width);
            int s = e.determined_sign();
            if (s != 0) return s;
            width = width * Rat(Int(1), Int(1) << 60);
        }
    }

    /**
     * Integrality decision: refines until the enclosure holds at most one
     * integer, then settles membership exactly. Returns the integer through
     * `out` on success.
     */
    bool is_integer(Int& out) const {
        Rat w(1, 4);
        while (true) {
            RatInterval e = enclosure(w);
            Int lo = ceil_int(e.lo), hi = floor_int(e.hi);
            if (lo > hi) return false;  // no integer inside
            if (lo == hi) {
                if (equals(Rat(lo))) {
                    out = lo;
                    return true;
                }
                // not that integer: shrink until it leaves the enclosure
                Rat w2 = w;
                while (true) {
                    w2 = w2 / 65536;
                    RatInterval e2 = enclosure(w2);
                    if (ceil_int(e2.lo) > floor_int(e2.hi)) return false;
                }
            }
            w = w / 65536;
        }
    }

private:
    MultiRootValue folded_form() const {
        std::vector<size_t> live;
        std::vector<AlgebraicReal> slots;
        for (size_t s = 0; s < slots_.size(); ++s) {
            if (!slots_[s].is_rational()) {
                live.push_back(s);
                slots.push_back(slots_[s]);
            }
        }
        std::vector<Term> terms;
        for (const auto& t : terms_) {
            Term nt;
            nt.coeff = t.coeff;
            for (size_t s = 0; s < slots_.size(); ++s) {
                if (slots_[s].is_rational())
                    nt.coeff *= t.reps[s].eval(slots_[s].rational_value());
                else
                    nt.reps.push_back(t.reps[s]);
            }
            if (nt.coeff != 0) terms.push_back(std::move(nt));
        }
        if (terms.empty()) terms.push_back(Term{Rat(0), std::vector<Poly>(slots.size(), Poly())});
        return MultiRootValue(std::move(slots), std::move(terms));
    }

    bool equals_tensor(const Rat& target) const {
        size_t dim = 1;
        std::vector<Poly> mods;
        for (const auto& s : slots_) {
            mods.push_back(s.defining_poly());
            dim *= static_cast<size_t>(mods.back().degree());
        }
        if (dim > 64) {
            // out-of-corpus sizes: attempt a very deep exclusion first
            RatInterval e = enclosure(Rat(Int(1), Int(1) << 512));
            if (target < e.lo || target > e.hi) return false;
            throw Error("MultiRootValue: equality undecided (tensor dimension too large)");
        }
        MatQ op(dim, dim);
        for (const auto& t : terms_) {
            MatQ m = multiplication_matrix(t.reps[0] * t.coeff, mods[0]);
            for (size_t s = 1; s < slots_.size(); ++s)
                m = m.kron(multiplication_matrix(t.reps[s], mods[s]));
            op = op + m;
        }
        Poly ann = op.char_poly().square_free_part();
        auto chain = sturm_chain(ann);
        Rat width(1, 16);
        while (true) {
            RatInterval e = enclosure(width);
            Rat pad = (e.width() + width) / 16;
            Rat lo = e.lo - pad, hi = e.hi + pad;
            // endpoints must avoid roots of the annihilating polynomial
            for (int tries = 0; ann.sign_at(lo) == 0 && tries < 64; ++tries) lo -= pad / 64;
            for (int tries = 0; ann.sign_at(hi) == 0 && tries < 64; ++tries) hi += pad / 64;
            if (ann.sign_at(lo) != 0 && ann.sign_at(hi) != 0 &&
                sturm_count(chain, lo, hi) == 1) {
                return lo < target && target < hi && ann.eval(target) == 0;
            }
            width = width / 65536;
        }
    }

    std::vector<AlgebraicReal> slots_;
    std::vector<Term> terms_;
};

}  // namespace cometric
