#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace polykeller {

// Coefficient field: exact rationals. GMP keeps mpq_class values canonical
// (reduced fraction, positive denominator) through all arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational_of(long num, long den = 1) {
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational_of(const Integer& num, const Integer& den) {
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// "p" for integers, "p/q" otherwise; the only rational text form used in
// reports and map files.
inline std::string rational_str(const Rational& q) {
    return q.get_str();
}

inline Rational parse_rational_str(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: " + s);
    q.canonicalize();
    return q;
}

} // namespace polykeller
