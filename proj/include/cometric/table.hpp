#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cometric/algnum.hpp"
#include "cometric/classify.hpp"
#include "cometric/krein.hpp"
#include "cometric/matrix.hpp"

namespace cometric {

struct SingularQ : Error {
    using Error::Error;
};

struct TableOptions {
    /// Candidate monic factors of the dual characteristic polynomial; matching
    /// roots get their defining polynomials localized to the factor, which
    /// keeps later exact arithmetic in the smallest extension available.
    std::vector<Poly> factor_hints;
    /// Derive hints automatically when the array matches a known family shape.
    bool auto_hints = true;
};

/**
 * Full parameter table of a Krein array: eigenmatrices Q and P, valencies,
 * multiplicities, Krein parameters, and exact access to intersection numbers.
 * Rows are indexed by dual eigenvalues in the order of `roots`; columns by
 * the cometric idempotent ordering.
 */
struct ParameterTable {
    KreinArray K;
    DualPolySeq dual;
    Poly W;  // monic square-free, roots = dual eigenvalues
    Rat n;
    std::vector<AlgebraicReal> roots;
    std::vector<std::vector<ExtVal>> Q;  // Q[j][i] = v*_i(x_j), over roots[j]
    std::vector<Rat> mult;               // m_i
    std::vector<ExtVal> valency;         // k_j, over roots[j]
    std::vector<std::vector<ExtVal>> P;  // P[j][i] = k_i Q_{ij} / m_j, over roots[i]
    std::vector<std::vector<std::vector<Rat>>> qparams;  // q[h][i][j]
    MatQ B1star;                                         // (B*_1)_{ij} = q^j_{1i}

    size_t classes() const { return K.classes(); }

    const Rat& q(size_t h, size_t i, size_t j) const { return qparams[h][i][j]; }

    /// Row index whose dual eigenvalue equals the given rational, if any.
    std::optional<size_t> row_of_rational_root(const Rat& v) const {
        for (size_t j = 0; j < roots.size(); ++j)
            if (roots[j].is_rational() && roots[j].rational_value() == v) return j;
        return std::nullopt;
    }

    /// Row indices whose dual eigenvalue is a root of the given polynomial.
    std::vector<size_t> rows_with_root_of(const Poly& f) const {
        std::vector<size_t> out;
        for (size_t j = 0; j < roots.size(); ++j)
            if (ExtVal(f, roots[j]).is_zero()) out.push_back(j);
        return out;
    }

    /**
     * Intersection number p^h_{ij} = (k_i k_j / n) sum_l Q_il Q_jl Q_hl / m_l^2
     * as an exactly decidable value (rows h, i, j may live in up to three
     * distinct extensions).
     */
    MultiRootValue p_value(size_t h, size_t i, size_t j) const {
        std::vector<AlgebraicReal> slots;
        auto slot_of = [&](size_t row) -> int {
            if (roots[row].is_rational()) return -1;
            for (size_t s = 0; s < slots.size(); ++s)
                if (slots[s].same_root_object(roots[row])) return static_cast<int>(s);
            slots.push_back(roots[row]);
            return static_cast<int>(slots.size()) - 1;
        };
        int sh = slot_of(h), si = slot_of(i), sj = slot_of(j);

        // global k_i * k_j / n factor, distributed into each term
        Rat scalar = Rat(1) / n;
        auto fold_k = [&](size_t row, int slot, std::vector<Poly>& reps, Rat& coeff) {
            if (slot < 0)
                coeff *= valency[row].rep().constant_term();
            else
                reps[static_cast<size_t>(slot)] =
                    (reps[static_cast<size_t>(slot)] * valency[row].rep()) %
                    slots[static_cast<size_t>(slot)].defining_poly();
        };
        auto fold_q = [&](size_t row, size_t col, int slot, std::vector<Poly>& reps, Rat& coeff) {
            if (slot < 0) {
                Rat v;
                Q[row][col].try_rational(v);
                coeff *= v;
            } else {
                reps[static_cast<size_t>(slot)] =
                    (reps[static_cast<size_t>(slot)] * Q[row][col].rep()) %
                    slots[static_cast<size_t>(slot)].defining_poly();
            }
        };

        std::vector<MultiRootValue::Term> terms;
        size_t d = classes();
        for (size_t l = 0; l <= d; ++l) {
            MultiRootValue::Term t;
            t.coeff = scalar / (mult[l] * mult[l]);
            t.reps.assign(slots.size(), Poly{Rat(1)});
            fold_k(i, si, t.reps, t.coeff);
            fold_k(j, sj, t.reps, t.coeff);
            fold_q(i, l, si, t.reps, t.coeff);
            fold_q(j, l, sj, t.reps, t.coeff);
            fold_q(h, l, sh, t.reps, t.coeff);
            terms.push_back(std::move(t));
        }
        return MultiRootValue(std::move(slots), std::move(terms));
    }
};

namespace detail {

/// sum_l v_l(x)^2 / m_l; equals n/k at each dual eigenvalue.
inline Poly valency_denominator_poly(const DualPolySeq& dual, const std::vector<Rat>& mult) {
    Poly s;
    for (size_t l = 0; l < mult.size(); ++l) s += (dual[l] * dual[l]) / mult[l];
    return s;
}

}  // namespace detail

/**
 * Builds the table on a caller-supplied root ordering (roots[0] must be m).
 * Verifies B*_1 Q^T = Q^T diag(x_0..x_d) and P·Q = n·I exactly.
 */
inline ParameterTable build_table_with_roots(const KreinArray& K,
                                             std::vector<AlgebraicReal> roots,
                                             const TableOptions& opt = {}) {
    size_t d = K.classes();
    if (roots.size() != d + 1) throw Error("build_table: need d+1 roots");
    ParameterTable T{K, dual_polys(K), Poly(), Rat(0), std::move(roots), {}, {}, {}, {}, {}, MatQ()};
    T.W = dual_char_poly(K, T.dual);

    // localize roots onto hinted factors before any division happens
    std::vector<Poly> hints = opt.factor_hints;
    if (opt.auto_hints) {
        ClassificationResult cls = classify(K);
        if (cls.exceptional_d6) {
            hints.push_back(d6_cubic_factor(*cls.d6_witness));
            hints.push_back(d6_quadratic_factor(*cls.d6_witness));
        }
    }
    for (const Poly& hraw : hints) {
        if (hraw.degree() < 1) continue;
        Poly h = hraw.monic();
        for (const auto& root : T.roots) {
            if (root.is_rational()) continue;
            if (sign_at(h, root) == 0) {
                Poly g = Poly::gcd(h, root.defining_poly());
                if (g.degree() >= 1 && g.degree() < root.defining_poly().degree()) root.localize(g);
            }
        }
    }

    // Q rows and multiplicities
    for (size_t j = 0; j <= d; ++j) {
        std::vector<ExtVal> row;
        for (size_t i = 0; i <= d; ++i) row.emplace_back(T.dual[i], T.roots[j]);
        T.Q.push_back(std::move(row));
    }
    if (!(T.roots[0].is_rational() && T.roots[0].rational_value() == K.m()))
        throw Error("build_table: roots[0] must be m");
    for (size_t i = 0; i <= d; ++i) {
        Rat mi;
        T.Q[0][i].try_rational(mi);
        if (mi <= 0) throw SingularQ("multiplicity m_" + std::to_string(i) + " = " + to_string(mi) +
                                     " is not positive; table degenerates");
        T.mult.push_back(mi);
        T.n += mi;
    }

    // B*_1 and the recurrence identity B*_1 Q^T = Q^T diag(x)
    T.B1star = MatQ(d + 1, d + 1);
    for (size_t i = 0; i <= d; ++i) {
        for (size_t j = 0; j <= d; ++j) {
            // q^j_{1i}: a*_j on the diagonal, b*_j below (i = j+1), c*_j above (i = j-1)
            if (i == j) T.B1star.at(i, j) = K.a(j);
            else if (i == j + 1) T.B1star.at(i, j) = K.b(j);
            else if (j == i + 1) T.B1star.at(i, j) = K.c(j);
        }
    }
    for (size_t j = 0; j <= d; ++j) {
        ExtVal xj = ExtVal::of_root(T.roots[j]);
        for (size_t i = 0; i <= d; ++i) {
            ExtVal lhs = ExtVal::constant(Rat(0), T.roots[j]);
            for (size_t l = 0; l <= d; ++l) {
                const Rat& c = T.B1star.at(i, l);
                if (c != 0) lhs += c * T.Q[j][l];
            }
            if (!(lhs - xj * T.Q[j][i]).is_zero())
                throw IdentityCheckFailed("B*_1 Q^T = Q^T diag(x) fails at row " + std::to_string(j) +
                                          ", column " + std::to_string(i));
        }
    }

    // Krein parameters: expand E_i o E_j in the idempotent basis column by column
    MatQ B1T = T.B1star.transposed();
    T.qparams.assign(d + 1, std::vector<std::vector<Rat>>(d + 1, std::vector<Rat>(d + 1, Rat(0))));
    for (size_t j = 0; j <= d; ++j) {
        std::vector<std::vector<Rat>> u(d + 1, std::vector<Rat>(d + 1, Rat(0)));
        u[0][j] = 1;  // E_0 o E_j = (1/n) E_j
        if (d >= 1)
            for (size_t h = 0; h <= d; ++h) u[1][h] = B1T.at(h, j);
        for (size_t i = 1; i < d; ++i) {
            for (size_t h = 0; h <= d; ++h) {
                Rat v(0);
                for (size_t l = 0; l <= d; ++l)
                    if (B1T.at(h, l) != 0) v += B1T.at(h, l) * u[i][l];
                v -= K.a(i) * u[i][h];
                v -= K.b(i - 1) * u[i - 1][h];
                u[i + 1][h] = v / K.c(i + 1);
            }
        }
        for (size_t i = 0; i <= d; ++i)
            for (size_t h = 0; h <= d; ++h) T.qparams[h][i][j] = u[i][h];
    }
    for (size_t h = 0; h <= d; ++h)
        for (size_t i = 0; i <= d; ++i)
            for (size_t j = i; j <= d; ++j)
                if (T.qparams[h][i][j] != T.qparams[h][j][i])
                    throw IdentityCheckFailed("Krein parameters not symmetric in (i,j)");

    // valencies k_j = n / sum_l Q_jl^2 / m_l
    Poly S = detail::valency_denominator_poly(T.dual, T.mult);
    for (size_t j = 0; j <= d; ++j) {
        try {
            T.valency.push_back(T.n * ExtVal(S, T.roots[j]).inverse());
        } catch (const Error&) {
            throw SingularQ("valency denominator vanishes at dual eigenvalue " + std::to_string(j));
        }
    }

    // P by duality, then the exact P·Q = n·I verification via trace sums
    for (size_t j = 0; j <= d; ++j) {
        std::vector<ExtVal> row;
        for (size_t i = 0; i <= d; ++i) row.push_back((Rat(1) / T.mult[j]) * (T.valency[i] * T.Q[i][j]));
        T.P.push_back(std::move(row));
    }
    {
        Poly kappa;
        try {
            kappa = T.n * inverse_mod(S, T.W);
        } catch (const Error&) {
            throw SingularQ("valency denominator shares a factor with the dual characteristic polynomial");
        }
        for (size_t a = 0; a <= d; ++a) {
            for (size_t b = a; b <= d; ++b) {
                Rat t = trace_over_roots((kappa * ((T.dual[a] * T.dual[b]) % T.W)) % T.W, T.W) / T.mult[a];
                Rat expect = (a == b) ? T.n : Rat(0);
                if (t != expect)
                    throw IdentityCheckFailed("P·Q = n·I fails at (" + std::to_string(a) + "," +
                                              std::to_string(b) + ")");
            }
        }
    }
    return T;
}

/// Standard build: rows ordered by descending dual eigenvalue (x_0 = m first).
inline ParameterTable build_table(const KreinArray& K, const TableOptions& opt = {}) {
    return build_table_with_roots(K, dual_eigenvalues(K), opt);
}

// ---------------------------------------------------------------------------
// Feasibility
// ---------------------------------------------------------------------------

struct FeasibilityItem {
    std::string name;
    bool pass;
    std::string witness;
};

struct FeasibilityReport {
    std::vector<FeasibilityItem> items;
    size_t failures = 0;
    bool all_pass() const { return failures == 0; }

    void add(std::string name, bool pass, std::string witness = "") {
        if (!pass) ++failures;
        items.push_back({std::move(name), pass, std::move(witness)});
    }
};

inline bool ext_is_integer(const ExtVal& v, Int& out) {
    Rat r;
    if (v.try_rational(r)) {
        if (!is_integer(r)) return false;
        out = num(r);
        return true;
    }
    MultiRootValue mv({v.root()}, {MultiRootValue::Term{Rat(1), {v.rep()}}});
    return mv.is_integer(out);
}

inline std::string enclosure_str(const RatInterval& e) {
    return "[" + to_string(e.lo) + ", " + to_string(e.hi) + "] ~ " + std::to_string(to_double(e.mid()));
}

/**
 * Named feasibility conditions with witnesses: n, multiplicities and
 * valencies positive integers; Krein parameters nonnegative; intersection
 * numbers nonnegative integers. Failures carry the offending indices and an
 * enclosure of the value.
 */
inline FeasibilityReport feasibility_check(const ParameterTable& T) {
    FeasibilityReport rep;
    size_t d = T.classes();
    Rat w20 = Rat(Int(1), Int(1) << 20);

    rep.add("n-positive-integer", is_integer(T.n) && T.n > 0, to_string(T.n));
    for (size_t i = 0; i <= d; ++i)
        rep.add("multiplicity-positive-integer m_" + std::to_string(i),
                is_integer(T.mult[i]) && T.mult[i] > 0, to_string(T.mult[i]));
    for (size_t j = 0; j <= d; ++j) {
        Int kj;
        bool ok = ext_is_integer(T.valency[j], kj) && kj > 0;
        rep.add("valency-positive-integer k_" + std::to_string(j), ok,
                enclosure_str(T.valency[j].enclosure(w20)));
    }
    {
        bool allq = true;
        for (size_t h = 0; h <= d; ++h)
            for (size_t i = 0; i <= d; ++i)
                for (size_t j = i; j <= d; ++j) {
                    const Rat& qv = T.qparams[h][i][j];
                    if (qv < 0) {
                        allq = false;
                        rep.add("krein-parameter-nonnegative q^" + std::to_string(h) + "_{" +
                                    std::to_string(i) + "," + std::to_string(j) + "}",
                                false, to_string(qv));
                    }
                }
        if (allq) rep.add("krein-parameters-nonnegative (all h,i,j)", true, "");
    }
    for (size_t h = 0; h <= d; ++h)
        for (size_t i = 0; i <= d; ++i)
            for (size_t j = i; j <= d; ++j) {
                MultiRootValue v = T.p_value(h, i, j);
                Int pi;
                bool isint = v.is_integer(pi);
                bool ok = isint && pi >= 0;
                std::string name = "intersection-number-nonnegative-integer p^" + std::to_string(h) +
                                   "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
                if (ok) {
                    rep.add(name, true, to_string(pi));
                } else {
                    rep.add(name, false, enclosure_str(v.enclosure(w20)));
                }
            }
    return rep;
}

}  // namespace cometric
