#pragma once

#include <gmpxx.h>

#include <string>

#include "kpos/errors.hpp"

namespace kpos {

// Exact arithmetic substrate. mpq_class keeps values reduced with a positive
// denominator, which is exactly the Rational invariant we need.
using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or "p" (decimal, optional sign). The denominator must be
/// nonzero; the result is canonicalized.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    Rational q;
    try {
        q = Rational(text, 10);
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational literal: " + text);
    }
    if (q.get_den() == 0) throw InputError("zero denominator in rational literal: " + text);
    q.canonicalize();
    return q;
}

/// Canonicalized rational from a numerator/denominator pair. The two-argument
/// mpq_class constructor does not reduce, so all ratio construction funnels
/// through here.
inline Rational make_rational(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Canonical text form: "p" when the denominator is 1, else "p/q".
inline std::string rational_str(const Rational& q) {
    return q.get_str();
}

inline int sign(const Rational& q) { return sgn(q); }

/// Integer power with signed exponent; used for the epsilon-power witness
/// matrices where exponents go negative.
inline Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    Rational b = base;
    if (exp < 0) {
        if (b == 0) throw InputError("zero to a negative power");
        b = 1 / b;
        exp = -exp;
    }
    Rational acc(1);
    while (exp > 0) {
        if (exp & 1) acc *= b;
        b *= b;
        exp >>= 1;
    }
    return acc;
}

}  // namespace kpos
