#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "quadform/errors.hpp"

namespace quadform {

// Exact arbitrary-precision fraction. GMP keeps results in lowest terms with a
// positive denominator.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

// Accepts "[+-]digits" or "[+-]digits/digits". Anything else (whitespace,
// decimals, exponents, zero denominators) is a parse_error.
inline Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den =
        slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!detail::all_digits(num) || (slash != std::string_view::npos && !detail::all_digits(den)))
        throw parse_error("malformed rational \"" + std::string(text) + "\"");

    mpz_class n(std::string(num), 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) d = mpz_class(std::string(den), 10);
    if (d == 0) throw parse_error("zero denominator in \"" + std::string(text) + "\"");
    if (negative) n = -n;
    Rational r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace quadform
