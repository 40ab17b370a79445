#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lpde/gcd.hpp"
#include "lpde/parse.hpp"

namespace lpde {

/// Element of Q(s_1..s_m): numerator and denominator coprime, denominator
/// monic under grevlex.
struct RatFun {
    QPoly num;
    QPoly den;
};

/// The rational function field Q(s_1..s_m) over named parameters.
class RationalFunctionField {
public:
    using Element = RatFun;

    RationalFunctionField() : RationalFunctionField(std::vector<std::string>{}) {}
    explicit RationalFunctionField(std::vector<std::string> params)
        : ring_(make_qring(std::move(params))) {}
    explicit RationalFunctionField(QRingPtr ring) : ring_(std::move(ring)) {}

    const QRingPtr& param_ring() const { return ring_; }
    std::size_t nparams() const { return ring_->nvars(); }

    Element zero() const { return {QPoly(ring_), QPoly::constant(ring_, 1)}; }
    Element one() const { return from_int(1); }
    Element from_int(long v) const { return {QPoly::constant(ring_, v), QPoly::constant(ring_, 1)}; }
    Element from_rational(const Rational& q) const {
        return {QPoly::constant(ring_, q), QPoly::constant(ring_, 1)};
    }
    Element parameter(std::size_t i) const { return {QPoly::variable(ring_, i), QPoly::constant(ring_, 1)}; }

    /// num/den with gcd cancellation; the polynomials must live in param_ring().
    Element make(QPoly num, QPoly den) const {
        if (den.is_zero()) throw MathDiagnostic("zero denominator in rational function");
        if (num.is_zero()) return zero();
        if (!den.is_constant()) {
            QPoly g = poly_gcd(num, den);
            if (!g.is_constant()) {
                num = *divide_exact(num, g);
                den = *divide_exact(den, g);
            }
        }
        Rational lc = den.leading_coeff();
        if (lc != 1) {
            Rational inv = 1 / lc;
            num = num.scaled(inv);
            den = den.scaled(inv);
        }
        return {std::move(num), std::move(den)};
    }

    Element from_poly(const QPoly& p) const { return {p.in_ring(ring_), QPoly::constant(ring_, 1)}; }

    bool is_zero(const Element& a) const { return a.num.is_zero(); }
    bool is_one(const Element& a) const {
        return a.den.is_constant() && a.num.is_constant() && a.num.constant_term() == 1;
    }
    bool equal(const Element& a, const Element& b) const { return a.num == b.num && a.den == b.den; }

    Element add(const Element& a, const Element& b) const {
        if (is_zero(a)) return b;
        if (is_zero(b)) return a;
        if (a.den == b.den) {
            if (a.den.is_constant()) return {a.num + b.num, a.den};
            return make(a.num + b.num, a.den);
        }
        return make(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
    Element neg(const Element& a) const { return {-a.num, a.den}; }

    Element mul(const Element& a, const Element& b) const {
        if (is_zero(a) || is_zero(b)) return zero();
        if (a.den.is_constant() && b.den.is_constant()) return {a.num * b.num, a.den};
        QPoly g1 = poly_gcd(a.num, b.den), g2 = poly_gcd(b.num, a.den);
        QPoly n1 = *divide_exact(a.num, g1), d2 = *divide_exact(b.den, g1);
        QPoly n2 = *divide_exact(b.num, g2), d1 = *divide_exact(a.den, g2);
        QPoly den = d1 * d2;
        Rational lc = den.leading_coeff();
        return {(n1 * n2).scaled(1 / lc), den.scaled(1 / lc)};
    }

    Element inv(const Element& a) const {
        if (is_zero(a)) throw MathDiagnostic("division by zero in rational function field");
        Rational lc = a.num.leading_coeff();
        return {a.den.scaled(1 / lc), a.num.scaled(1 / lc)};
    }
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

    bool is_negative(const Element& a) const {
        return !a.num.is_zero() && sgn(a.num.leading_coeff()) < 0;
    }
    bool is_atomic(const Element& a) const {
        return a.den.is_constant() && a.num.size() <= 1;
    }
    int compare(const Element& a, const Element& b) const {
        int c = a.num.canonical_compare(b.num);
        return c != 0 ? c : a.den.canonical_compare(b.den);
    }

    std::string to_string(const Element& a) const {
        if (a.den.is_constant()) return a.num.to_string();
        auto wrap = [](const QPoly& p) {
            return p.size() <= 1 && !p.terms().front().mono.is_one() && p.leading_coeff() == 1
                       ? p.to_string()
                       : "(" + p.to_string() + ")";
        };
        return wrap(a.num) + "/" + wrap(a.den);
    }

    /// Least common multiple of denominators times content clearing yields
    /// integral numerators; exposed for lifting.
    QPoly denominator(const Element& a) const { return a.den; }

    friend bool operator==(const RationalFunctionField& a, const RationalFunctionField& b) {
        return a.ring_->names() == b.ring_->names();
    }

    /// Resolves parameter names when parsing polynomials over this field.
    ParamHook<RationalFunctionField> parameter_hook() const {
        RationalFunctionField self = *this;
        return [self](const std::string& name) -> std::optional<Element> {
            if (auto i = self.ring_->index_of(name)) return self.parameter(*i);
            return std::nullopt;
        };
    }

private:
    QRingPtr ring_;
};

}  // namespace lpde
