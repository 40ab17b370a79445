#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lpde {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised for conditions the caller can act on (bad input, mathematical
/// diagnostics such as a zero divisor in a presumed field).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that does not parse or does not fit the declared ring.
class InputError : public Error {
public:
    using Error::Error;
};

/// A mathematical condition the engine refuses to paper over, e.g. a
/// reducible split leaf used as a prime or a stabilization cap being hit.
class MathDiagnostic : public Error {
public:
    using Error::Error;
};

/// The field of rational numbers, backed by GMP.
struct RationalField {
    using Element = Rational;

    Element zero() const { return Element(0); }
    Element one() const { return Element(1); }
    Element from_int(long v) const { return Element(v); }
    Element from_rational(const Rational& q) const { return q; }

    bool is_zero(const Element& a) const { return sgn(a) == 0; }
    bool is_one(const Element& a) const { return a == 1; }
    bool equal(const Element& a, const Element& b) const { return a == b; }

    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const {
        if (sgn(a) == 0) throw MathDiagnostic("division by zero in Q");
        return 1 / a;
    }
    Element div(const Element& a, const Element& b) const { return a * inv(b); }

    /// Sign of the "leading" part; used when printing.
    bool is_negative(const Element& a) const { return sgn(a) < 0; }
    /// Whether the printed form needs no parentheses as a coefficient.
    bool is_atomic(const Element&) const { return true; }
    /// Total order used only for deterministic tie-breaking.
    int compare(const Element& a, const Element& b) const { return cmp(a, b); }

    std::string to_string(const Element& a) const { return a.get_str(); }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

inline Integer integer_gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer integer_lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer factorial(unsigned n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Integer binomial(unsigned n, unsigned k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

}  // namespace lpde
