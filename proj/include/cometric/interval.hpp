#pragma once

#include <algorithm>

#include "cometric/poly.hpp"
#include "cometric/rat.hpp"

namespace cometric {

/// Closed interval [lo, hi] with exact rational endpoints.
struct RatInterval {
    Rat lo, hi;

    RatInterval() = default;
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw Error("RatInterval: lo > hi");
    }
    static RatInterval point(const Rat& x) { return RatInterval(x, x); }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }

    /// -1 if hi < 0, +1 if lo > 0, 0 if the interval straddles or touches 0.
    int determined_sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        return 0;
    }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }
    friend RatInterval operator*(const Rat& s, const RatInterval& a) {
        return s >= 0 ? RatInterval{s * a.lo, s * a.hi} : RatInterval{s * a.hi, s * a.lo};
    }
    friend RatInterval operator+(const RatInterval& a, const Rat& s) { return {a.lo + s, a.hi + s}; }
    friend RatInterval operator-(const RatInterval& a, const Rat& s) { return {a.lo - s, a.hi - s}; }

    /// Requires 0 not in b.
    friend RatInterval operator/(const RatInterval& a, const RatInterval& b) {
        if (b.contains_zero()) throw Error("RatInterval: division by interval containing zero");
        return a * RatInterval{Rat(1) / b.hi, Rat(1) / b.lo};
    }
};

/// Interval extension of a polynomial by Horner evaluation.
inline RatInterval eval_interval(const Poly& p, const RatInterval& x) {
    RatInterval r = RatInterval::point(Rat(0));
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

}  // namespace cometric
