#pragma once

#include <optional>
#include <string>

#include "cometric/krein.hpp"

namespace cometric {

/// Free parameters of the exceptional six-class family, as read off an array.
struct D6FamilyWitness {
    Rat m, c2, b3, b4, c5;

    Rat a2() const { return m - 1 - c2; }
    Rat a4() const { return m - 1 - b4; }
    Rat a5() const { return m - 1 - c5; }
    Rat c3() const { return m - b3; }
};

/// x^3 - a2 x^2 - (m + c2(m-1)) x + (m a2 - a5 c3): the factor carrying x1, x2, x3.
inline Poly d6_cubic_factor(const D6FamilyWitness& w) {
    return Poly{w.m * w.a2() - w.a5() * w.c3(), -(w.m + w.c2 * (w.m - 1)), -w.a2(), Rat(1)};
}

/// x^2 + c2 x - m: the factor carrying x4, x5.
inline Poly d6_quadratic_factor(const D6FamilyWitness& w) {
    return Poly{-w.m, w.c2, Rat(1)};
}

struct ClassificationResult {
    bool q_bipartite = false;
    bool q_antipodal = false;
    bool exceptional_d4 = false;
    bool exceptional_d6 = false;
    std::optional<D6FamilyWitness> d6_witness;
    std::optional<std::array<Rat, 3>> d4_witness;  // (m, c2, b3)

    bool none_detected() const {
        return !q_bipartite && !q_antipodal && !exceptional_d4 && !exceptional_d6;
    }

    std::string describe() const {
        std::string s;
        auto add = [&](const char* name) {
            if (!s.empty()) s += "; ";
            s += name;
        };
        if (q_bipartite) add("Q-bipartite");
        if (q_antipodal) add("Q-antipodal");
        if (exceptional_d4) add("exceptional d=4 pattern");
        if (exceptional_d6) add("exceptional d=6 pattern");
        if (s.empty()) s = "none detected";
        return s;
    }
};

/**
 * Parameter-side imprimitivity classification. Flags are not mutually
 * exclusive; none being set only means no pattern was detected at the
 * parameter level, not that the scheme is primitive.
 */
inline ClassificationResult classify(const KreinArray& K) {
    ClassificationResult res;
    size_t d = K.classes();
    const Rat& m = K.m();

    bool bip = true;
    for (size_t i = 1; i <= d; ++i)
        if (K.a(i) != 0) { bip = false; break; }
    res.q_bipartite = bip;

    bool anti = true;
    for (size_t i = 0; i <= d; ++i) {
        if (i == d / 2) continue;  // "except possibly" the middle index
        if (K.b(i) != K.c(d - i)) { anti = false; break; }
    }
    res.q_antipodal = anti;

    if (d == 4 && K.b(1) == m - 1 && K.b(2) == 1 && K.c(3) == m - K.b(3) && K.c(4) == 1) {
        res.exceptional_d4 = true;
        res.d4_witness = {m, K.c(2), K.b(3)};
    }

    if (d == 6 && K.b(1) == m - 1 && K.b(2) == 1 && K.b(5) == 1 && K.c(3) == m - K.b(3) &&
        K.c(4) == 1 && K.c(6) == m && K.a(2) == K.a(4) + K.a(5)) {
        res.exceptional_d6 = true;
        res.d6_witness = D6FamilyWitness{m, K.c(2), K.b(3), K.b(4), K.c(5)};
    }
    return res;
}

}  // namespace cometric
