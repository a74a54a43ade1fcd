#pragma once

#include <optional>
#include <vector>

#include "cometric/poly.hpp"
#include "cometric/rat.hpp"

namespace cometric {

/// Dense matrix over Rat. Small sizes only; no pivot-size cleverness needed.
class MatQ {
public:
    MatQ() = default;
    MatQ(size_t r, size_t c) : r_(r), c_(c), a_(r * c, Rat(0)) {}

    static MatQ identity(size_t n) {
        MatQ m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }

    Rat& at(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Rat& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

    friend bool operator==(const MatQ& x, const MatQ& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }

    friend MatQ operator+(const MatQ& x, const MatQ& y) {
        MatQ r(x.r_, x.c_);
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend MatQ operator-(const MatQ& x, const MatQ& y) {
        MatQ r(x.r_, x.c_);
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    friend MatQ operator*(const Rat& s, const MatQ& x) {
        MatQ r = x;
        for (auto& v : r.a_) v *= s;
        return r;
    }
    friend MatQ operator*(const MatQ& x, const MatQ& y) {
        if (x.c_ != y.r_) throw Error("MatQ: dimension mismatch");
        MatQ r(x.r_, y.c_);
        for (size_t i = 0; i < x.r_; ++i)
            for (size_t k = 0; k < x.c_; ++k) {
                const Rat& v = x.at(i, k);
                if (v == 0) continue;
                for (size_t j = 0; j < y.c_; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }

    MatQ transposed() const {
        MatQ r(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Rat trace() const {
        Rat t(0);
        for (size_t i = 0; i < std::min(r_, c_); ++i) t += at(i, i);
        return t;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (v != 0) return false;
        return true;
    }

    MatQ kron(const MatQ& y) const {
        MatQ r(r_ * y.r_, c_ * y.c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) {
                if (at(i, j) == 0) continue;
                for (size_t p = 0; p < y.r_; ++p)
                    for (size_t q = 0; q < y.c_; ++q)
                        r.at(i * y.r_ + p, j * y.c_ + q) = at(i, j) * y.at(p, q);
            }
        return r;
    }

    /// Characteristic polynomial (monic, lowest degree first) by Faddeev-LeVerrier.
    Poly char_poly() const {
        if (r_ != c_) throw Error("char_poly: square matrix required");
        size_t n = r_;
        std::vector<Rat> c(n + 1, Rat(0));
        c[n] = 1;
        MatQ M = identity(n);
        for (size_t k = 1; k <= n; ++k) {
            M = *this * M;
            Rat ck = -M.trace() / Rat(static_cast<unsigned>(k));
            c[n - k] = ck;
            for (size_t i = 0; i < n; ++i) M.at(i, i) += ck;
        }
        return Poly::from_coeffs(std::move(c));
    }

    /// Gaussian elimination; nullopt when singular.
    std::optional<MatQ> inverse() const {
        if (r_ != c_) throw Error("inverse: square matrix required");
        size_t n = r_;
        MatQ a = *this, inv = identity(n);
        for (size_t col = 0; col < n; ++col) {
            size_t piv = col;
            while (piv < n && a.at(piv, col) == 0) ++piv;
            if (piv == n) return std::nullopt;
            if (piv != col) {
                for (size_t j = 0; j < n; ++j) {
                    std::swap(a.at(piv, j), a.at(col, j));
                    std::swap(inv.at(piv, j), inv.at(col, j));
                }
            }
            Rat d = a.at(col, col);
            for (size_t j = 0; j < n; ++j) {
                a.at(col, j) /= d;
                inv.at(col, j) /= d;
            }
            for (size_t i = 0; i < n; ++i) {
                if (i == col || a.at(i, col) == 0) continue;
                Rat f = a.at(i, col);
                for (size_t j = 0; j < n; ++j) {
                    a.at(i, j) -= f * a.at(col, j);
                    inv.at(i, j) -= f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

/// Matrix of multiplication by f on Q[x]/(mod); column j holds f*x^j mod `mod`.
inline MatQ multiplication_matrix(const Poly& f, const Poly& mod) {
    if (mod.degree() < 1) throw Error("multiplication_matrix: modulus must be nonconstant");
    size_t n = static_cast<size_t>(mod.degree());
    MatQ m(n, n);
    Poly cur = f % mod;
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i) m.at(i, j) = cur.coeff(i);
        cur = (cur * Poly::x()) % mod;
    }
    return m;
}

}  // namespace cometric
