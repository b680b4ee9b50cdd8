#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ufg/error.hpp"

namespace ufg {

/// Exact rational arithmetic for clause weights and UNSAT fractions.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

/// Formats as "p/q" (always with a denominator, so the text form is canonical).
inline std::string to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

/// Accepts "p/q", "p" or a decimal such as "0.3".
inline Rational parse_rational(std::string_view text) {
    auto bad = [&] { return ParseError("bad rational '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto parse_int = [&](std::string_view s) -> BigInt {
        if (s.empty()) throw bad();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw bad();
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9') throw bad();
        return BigInt(std::string(s));
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_int(text.substr(0, slash));
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string digits(text.substr(0, dot));
        std::string frac(text.substr(dot + 1));
        if (frac.empty()) throw bad();
        bool neg = !digits.empty() && digits[0] == '-';
        if (neg || (!digits.empty() && digits[0] == '+')) digits.erase(0, 1);
        if (digits.empty()) digits = "0";
        BigInt whole = parse_int(digits);
        BigInt part = parse_int(frac);
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        Rational r = Rational(whole) + Rational(part, scale);
        return neg ? Rational(-r) : r;
    }
    return Rational(parse_int(text));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt floor_of(const Rational& r) {
    BigInt q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
    if (r < 0 && Rational(q) != r) --q;
    return q;
}

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace ufg
