#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "cometric/algebraic.hpp"
#include "cometric/poly.hpp"
#include "cometric/rat.hpp"

namespace cometric {

struct ParseError : Error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : Error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct ValidationError : Error {
    using Error::Error;
};

struct FewerThanD1RealRoots : Error {
    using Error::Error;
};

struct IdentityCheckFailed : Error {
    using Error::Error;
};

/**
 * Krein array {b*_0,...,b*_{d-1}; c*_1,...,c*_d} of a cometric scheme with d
 * classes. Validates positivity and the derived a*_i = m - b*_i - c*_i >= 0
 * (with a*_d = m - c*_d); boundary conventions a*_0 = 0, b*_d = 0, c*_0 = 0,
 * and the formal c*_{d+1} = 1.
 */
class KreinArray {
public:
    KreinArray(std::vector<Rat> b, std::vector<Rat> c) : b_(std::move(b)), c_(std::move(c)) {
        if (b_.empty() || b_.size() != c_.size())
            throw ValidationError("KreinArray: need |b| = |c| >= 1");
        d_ = b_.size();
        if (b_[0] <= 0) throw ValidationError("KreinArray: b*_0 = m must be positive");
        if (c_[0] != 1) throw ValidationError("KreinArray: c*_1 must equal 1");
        for (size_t i = 0; i < d_; ++i) {
            if (b_[i] <= 0) throw ValidationError("KreinArray: b*_" + std::to_string(i) + " must be positive");
            if (c_[i] <= 0) throw ValidationError("KreinArray: c*_" + std::to_string(i + 1) + " must be positive");
        }
        for (size_t i = 1; i <= d_; ++i) {
            if (a(i) < 0)
                throw ValidationError("KreinArray: derived a*_" + std::to_string(i) +
                                      " = " + to_string(a(i)) + " is negative");
        }
    }

    size_t classes() const { return d_; }
    const Rat& m() const { return b_[0]; }

    /// b*_i for 0 <= i <= d (b*_d = 0).
    Rat b(size_t i) const { return i < d_ ? b_[i] : Rat(0); }
    /// c*_i for 0 <= i <= d+1 (c*_0 = 0, c*_{d+1} = 1).
    Rat c(size_t i) const {
        if (i == 0) return Rat(0);
        if (i <= d_) return c_[i - 1];
        return Rat(1);
    }
    /// a*_i = m - b*_i - c*_i for 0 <= i <= d.
    Rat a(size_t i) const {
        if (i == 0) return Rat(0);
        return m() - b(i) - c(i);
    }

    friend bool operator==(const KreinArray& x, const KreinArray& y) {
        return x.b_ == y.b_ && x.c_ == y.c_;
    }

    std::string str() const {
        std::string s = "{";
        for (size_t i = 0; i < d_; ++i) s += (i ? "," : "") + to_string(b_[i]);
        s += ";";
        for (size_t i = 0; i < d_; ++i) s += (i ? "," : "") + to_string(c_[i]);
        s += "}";
        return s;
    }

    const std::vector<Rat>& b_seq() const { return b_; }
    const std::vector<Rat>& c_seq() const { return c_; }

private:
    size_t d_ = 0;
    std::vector<Rat> b_, c_;
};

/// Parses "{b0,b1,...;c1,c2,...}" with rational entries like 5/2; whitespace ignored.
inline KreinArray parse_krein(std::string_view text) {
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char ch) {
        skip_ws();
        if (pos >= text.size() || text[pos] != ch)
            throw ParseError(std::string("expected '") + ch + "'", pos);
        ++pos;
    };
    auto read_rat = [&]() -> Rat {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/' ||
                text[pos] == '-' || text[pos] == '+' || text[pos] == '.'))
            ++pos;
        if (pos == start) throw ParseError("expected a rational number", pos);
        try {
            return parse_rat(text.substr(start, pos - start));
        } catch (const Error& e) {
            throw ParseError(e.what(), start);
        }
    };
    auto read_list = [&](char terminator) {
        std::vector<Rat> out;
        out.push_back(read_rat());
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                out.push_back(read_rat());
            } else if (pos < text.size() && text[pos] == terminator) {
                return out;
            } else {
                throw ParseError(std::string("expected ',' or '") + terminator + "'", pos);
            }
        }
    };

    expect('{');
    std::vector<Rat> b = read_list(';');
    expect(';');
    std::vector<Rat> c = read_list('}');
    expect('}');
    skip_ws();
    if (pos != text.size()) throw ParseError("trailing characters", pos);
    if (b.size() != c.size())
        throw ParseError("length mismatch: |b| must equal |c|", text.size());
    return KreinArray(std::move(b), std::move(c));
}

/// v*_0 .. v*_{d+1}; deg v*_i = i; the recurrence holds exactly with c*_{d+1} = 1.
struct DualPolySeq {
    std::vector<Poly> polys;

    const Poly& operator[](size_t i) const { return polys[i]; }
    size_t size() const { return polys.size(); }
};

inline DualPolySeq dual_polys(const KreinArray& K) {
    size_t d = K.classes();
    DualPolySeq seq;
    seq.polys.reserve(d + 2);
    seq.polys.push_back(Poly{Rat(1)});
    seq.polys.push_back(Poly::x());
    for (size_t i = 1; i <= d; ++i) {
        // v_{i+1} = ((x - a_i) v_i - b_{i-1} v_{i-1}) / c_{i+1}
        Poly t = Poly::x() * seq.polys[i] - K.a(i) * seq.polys[i] - K.b(i - 1) * seq.polys[i - 1];
        seq.polys.push_back(t / K.c(i + 1));
    }
    return seq;
}

/// c*_1 c*_2 ... c*_d  (the Eq.-style scaling that makes v*_{d+1} monic).
inline Rat krein_c_product(const KreinArray& K) {
    Rat p(1);
    for (size_t i = 1; i <= K.classes(); ++i) p *= K.c(i);
    return p;
}

/// The monic polynomial whose roots are the dual eigenvalues.
inline Poly dual_char_poly(const KreinArray& K, const DualPolySeq& seq) {
    Poly w = seq[K.classes() + 1] * krein_c_product(K);
    if (w.degree() != static_cast<int>(K.classes()) + 1 || w.leading() != 1)
        throw IdentityCheckFailed("scaled v*_{d+1} is not monic of degree d+1");
    return w;
}

/**
 * All d+1 dual eigenvalues, sorted descending; x_0 = m exactly. Throws
 * FewerThanD1RealRoots when the scaled v*_{d+1} fails to have d+1 distinct
 * real roots (cannot happen for a valid Krein array, where the three-term
 * recurrence is positive definite).
 */
inline std::vector<AlgebraicReal> dual_eigenvalues(const KreinArray& K) {
    DualPolySeq seq = dual_polys(K);
    Poly w = dual_char_poly(K, seq);
    if (w.square_free_part().degree() != w.degree())
        throw FewerThanD1RealRoots("v*_{d+1} has a repeated root");
    if (w.eval(K.m()) != 0)
        throw IdentityCheckFailed("m is not a root of the scaled v*_{d+1}");
    auto [w1, rem] = Poly::divmod(w, Poly{-K.m(), Rat(1)});
    (void)rem;
    // peel off all rational roots so defining polynomials stay small
    Poly core = w1;
    std::vector<Rat> ratroots = rational_roots(core);
    for (const Rat& r : ratroots) core = Poly::divmod(core, Poly{-r, Rat(1)}).first;
    std::vector<AlgebraicReal> roots;
    roots.push_back(AlgebraicReal::from_rational(K.m()));
    for (const Rat& r : ratroots) roots.push_back(AlgebraicReal::from_rational(r));
    if (core.degree() >= 1)
        for (auto& a : isolate_roots(core)) roots.push_back(a);
    if (roots.size() != K.classes() + 1)
        throw FewerThanD1RealRoots("v*_{d+1} has fewer than d+1 real roots");
    std::sort(roots.begin(), roots.end(), [](const AlgebraicReal& a, const AlgebraicReal& b) {
        if (a.is_rational() && b.is_rational()) return a.rational_value() > b.rational_value();
        // disjoint enclosures after sufficient refinement
        while (true) {
            RatInterval ia = a.interval(), ib = b.interval();
            if (a.is_rational()) ia = RatInterval::point(a.rational_value());
            if (b.is_rational()) ib = RatInterval::point(b.rational_value());
            if (ia.lo > ib.hi) return true;
            if (ib.lo > ia.hi) return false;
            a.refine_step();
            b.refine_step();
        }
    });
    if (!(roots[0].is_rational() && roots[0].rational_value() == K.m()))
        throw IdentityCheckFailed("m is not the largest dual eigenvalue");
    return roots;
}

}  // namespace cometric
