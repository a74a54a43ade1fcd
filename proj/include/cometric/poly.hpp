#pragma once

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <utility>
#include <vector>

#include "cometric/rat.hpp"

namespace cometric {

/**
 * Dense univariate polynomial over Rat, coefficients stored lowest degree
 * first. The zero polynomial has an empty coefficient vector and degree -1.
 */
class Poly {
public:
    Poly() = default;
    explicit Poly(Rat c) {
        if (c != 0) c_.push_back(std::move(c));
    }
    Poly(std::initializer_list<Rat> lowest_first) : c_(lowest_first) { normalize(); }

    static Poly from_coeffs(std::vector<Rat> lowest_first) {
        Poly p;
        p.c_ = std::move(lowest_first);
        p.normalize();
        return p;
    }

    static Poly x() { return Poly{Rat(0), Rat(1)}; }

    /// a * x^k
    static Poly monomial(size_t k, Rat a) {
        Poly p;
        if (a == 0) return p;
        p.c_.assign(k + 1, Rat(0));
        p.c_[k] = std::move(a);
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const std::vector<Rat>& coeffs() const { return c_; }

    /// Coefficient of x^k, zero beyond the degree.
    Rat coeff(size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }

    const Rat& leading() const { return c_.back(); }

    Rat constant_term() const { return c_.empty() ? Rat(0) : c_[0]; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
        r.normalize();
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
        r.normalize();
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        r.normalize();
        return r;
    }

    friend Poly operator*(const Poly& a, const Rat& s) {
        if (s == 0) return Poly();
        Poly r = a;
        for (auto& c : r.c_) c *= s;
        return r;
    }
    friend Poly operator*(const Rat& s, const Poly& a) { return a * s; }

    friend Poly operator/(const Poly& a, const Rat& s) {
        if (s == 0) throw Error("Poly: division by zero scalar");
        Poly r = a;
        for (auto& c : r.c_) c /= s;
        return r;
    }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error("Poly::divmod: division by zero polynomial");
        Poly q, r = a;
        if (a.degree() < b.degree()) return {q, r};
        q.c_.assign(a.c_.size() - b.c_.size() + 1, Rat(0));
        const Rat& lead = b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            size_t shift = r.c_.size() - b.c_.size();
            Rat f = r.leading() / lead;
            q.c_[shift] = f;
            for (size_t i = 0; i < b.c_.size(); ++i) r.c_[shift + i] -= f * b.c_[i];
            r.normalize();
        }
        q.normalize();
        return {q, r};
    }

    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// Monic gcd; gcd(0,0) = 0.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.monic();
    }

    /// Extended gcd: returns (g, u, v) monic with u*a + v*b = g.
    static std::tuple<Poly, Poly, Poly> extended_gcd(const Poly& a, const Poly& b) {
        Poly r0 = a, r1 = b;
        Poly s0{Rat(1)}, s1, t0, t1{Rat(1)};
        while (!r1.is_zero()) {
            auto [q, r2] = divmod(r0, r1);
            Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
            r0 = std::move(r1); r1 = std::move(r2);
            s0 = std::move(s1); s1 = std::move(s2);
            t0 = std::move(t1); t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        Rat lead = r0.leading();
        return {r0 / lead, s0 / lead, t0 / lead};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this / leading();
    }

    Poly derivative() const {
        Poly r;
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rat(static_cast<unsigned>(i));
        return r;
    }

    /// p / gcd(p, p'): same roots, all simple. Monic.
    Poly square_free_part() const {
        if (is_zero()) return *this;
        if (degree() == 0) return Poly{Rat(1)};
        Poly g = gcd(*this, derivative());
        if (g.degree() == 0) return monic();
        return divmod(*this, g).first.monic();
    }

    Rat eval(const Rat& x) const {
        Rat r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    int sign_at(const Rat& x) const { return sgn(eval(x)); }

    std::string str(const char* var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            Rat a = c_[static_cast<size_t>(k)];
            if (a == 0) continue;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
                first = false;
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            if (k == 0 || a != 1) os << a.str();
            if (k > 0) {
                os << var;
                if (k > 1) os << "^" << k;
            }
        }
        return os.str();
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

}  // namespace cometric
