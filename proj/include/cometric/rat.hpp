#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cometric {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int num(const Rat& q) { return numerator(q); }
inline Int den(const Rat& q) { return denominator(q); }

inline int sgn(const Rat& q) { return q.sign(); }
inline int sgn(const Int& n) { return n.sign(); }

inline Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

/// Largest integer <= q.
inline Int floor_int(const Rat& q) {
    Int quo = numerator(q) / denominator(q);
    if (numerator(q) < 0 && quo * denominator(q) != numerator(q)) --quo;
    return quo;
}

inline Int ceil_int(const Rat& q) { return -floor_int(-q); }

/// Accepts "p", "p/q" and decimal strings like "-2.75".
inline Rat parse_rat(std::string_view s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string_view::npos) throw Error("parse_rat: empty string");
    s = s.substr(a, b - a + 1);
    std::string t(s);
    try {
        auto dot = t.find('.');
        if (dot != std::string::npos) {
            if (t.find('/') != std::string::npos) throw Error("parse_rat: mixed notation");
            std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
            if (fp.empty()) return Rat(Int(ip));
            bool negative = !ip.empty() && ip[0] == '-';
            Int scale = 1;
            for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
            Int whole = ip.empty() || ip == "-" || ip == "+" ? Int(0) : Int(ip);
            Rat r = Rat(whole) + (negative ? -Rat(Int(fp), scale) : Rat(Int(fp), scale));
            return r;
        }
        Rat r(t);
        if (denominator(r) == 0) throw Error("parse_rat: zero denominator");
        return r;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error("parse_rat: cannot parse '" + t + "'");
    }
}

inline std::string to_string(const Rat& q) { return q.str(); }

inline std::string to_string(const Int& n) { return n.str(); }

/// Closest double; adequate for display only, never for decisions.
inline double to_double(const Rat& q) { return q.template convert_to<double>(); }

}  // namespace cometric
