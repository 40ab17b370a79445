#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lpde/polynomial.hpp"

namespace lpde {

/// a / b when b divides a exactly, otherwise nothing.
template <class F>
std::optional<Polynomial<F>> divide_exact(const Polynomial<F>& a, const Polynomial<F>& b) {
    if (b.is_zero()) throw MathDiagnostic("division by zero polynomial");
    const auto& fld = a.field();
    Polynomial<F> rem = a;
    std::vector<Term<F>> quot;
    const auto& lb = b.leading_monomial();
    auto inv_lc = fld.inv(b.leading_coeff());
    while (!rem.is_zero()) {
        const auto& lr = rem.leading_monomial();
        if (!lb.divides(lr)) return std::nullopt;
        Monomial m = lb.quotient_of(lr);
        auto c = fld.mul(rem.leading_coeff(), inv_lc);
        quot.push_back({m, c});
        rem -= b.mul_term(c, m);
    }
    // quotient terms were produced in descending order
    return Polynomial<F>::from_sorted(a.ring(), std::move(quot));
}

/// Coefficients of p viewed as a polynomial in variable v, indexed by the
/// power of v; each coefficient lives in the same ring and is free of v.
inline std::map<unsigned, QPoly> coefficients_in(const QPoly& p, std::size_t v) {
    std::map<unsigned, std::vector<Term<RationalField>>> buckets;
    for (const auto& t : p.terms()) {
        Monomial m = t.mono;
        unsigned e = m[v];
        m.set(v, 0);
        buckets[e].push_back({m, t.coeff});
    }
    std::map<unsigned, QPoly> out;
    for (auto& [e, ts] : buckets) out.emplace(e, QPoly::from_terms(p.ring(), std::move(ts)));
    return out;
}

inline QPoly normalize_gcd(const QPoly& g) {
    if (g.is_zero()) return g;
    return g.monic();
}

inline QPoly poly_gcd(const QPoly& a, const QPoly& b);

namespace detail {

inline QPoly monomial_content(const QPoly& p) {
    Monomial g = p.terms().front().mono;
    for (const auto& t : p.terms()) g = g.gcd(t.mono);
    return QPoly::monomial(p.ring(), g, Rational(1));
}

inline QPoly content_in(const QPoly& p, std::size_t v) {
    QPoly g(p.ring());
    for (auto& [e, c] : coefficients_in(p, v)) {
        g = g.is_zero() ? normalize_gcd(c) : poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

inline QPoly pseudo_remainder(QPoly a, const QPoly& b, std::size_t v) {
    int d = b.degree_in(v);
    auto bc = coefficients_in(b, v);
    QPoly lc = bc.rbegin()->second;
    auto ring = a.ring();
    while (!a.is_zero() && a.degree_in(v) >= d) {
        int da = a.degree_in(v);
        auto ac = coefficients_in(a, v);
        QPoly la = ac.rbegin()->second;
        QPoly shift = QPoly::monomial(ring, Monomial::variable(v, static_cast<Exponent>(da - d)), Rational(1));
        a = lc * a - la * shift * b;
    }
    return a;
}

}  // namespace detail

/// Multivariate gcd over Q by recursive content extraction and primitive
/// pseudo-remainder sequences. Normalized monic in the ring's order.
inline QPoly poly_gcd(const QPoly& a, const QPoly& b) {
    if (a.is_zero()) return normalize_gcd(b);
    if (b.is_zero()) return normalize_gcd(a);
    auto one = QPoly::constant(a.ring(), 1);
    if (a.is_constant() || b.is_constant()) return one;
    if (a.size() == 1 || b.size() == 1) {
        QPoly ma = detail::monomial_content(a), mb = detail::monomial_content(b);
        return QPoly::monomial(a.ring(), ma.leading_monomial().gcd(mb.leading_monomial()), Rational(1));
    }
    if (auto q = divide_exact(a, b)) return normalize_gcd(b);
    if (auto q = divide_exact(b, a)) return normalize_gcd(a);

    std::uint32_t sa = a.support(), sb = b.support();
    // a variable in only one argument: the gcd divides the content there
    for (std::size_t v = 0; v < a.ring()->nvars(); ++v) {
        std::uint32_t bit = std::uint32_t{1} << v;
        if ((sa & bit) && !(sb & bit)) return poly_gcd(detail::content_in(a, v), b);
        if ((sb & bit) && !(sa & bit)) return poly_gcd(a, detail::content_in(b, v));
    }
    // main variable: the highest-index shared one
    std::size_t v = 0;
    for (std::size_t i = 0; i < a.ring()->nvars(); ++i)
        if (sa & (std::uint32_t{1} << i)) v = i;

    QPoly ca = detail::content_in(a, v), cb = detail::content_in(b, v);
    QPoly pa = *divide_exact(a, ca), pb = *divide_exact(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (!pb.is_zero() && pb.degree_in(v) > 0) {
        QPoly r = detail::pseudo_remainder(pa, pb, v);
        pa = pb;
        if (r.is_zero()) {
            pb = r;
            break;
        }
        if (r.degree_in(v) == 0) {
            pa = one;
            pb = QPoly(a.ring());
            break;
        }
        pb = *divide_exact(r, detail::content_in(r, v));
    }
    if (!pb.is_zero()) pa = one;  // pb is a nonzero v-free primitive part, hence a unit
    QPoly pc = *divide_exact(pa, detail::content_in(pa, v));
    return normalize_gcd(poly_gcd(ca, cb) * pc);
}

inline QPoly poly_lcm(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly(a.ring());
    return normalize_gcd(*divide_exact(a * b, poly_gcd(a, b)));
}

/// p / gcd(p, dp/dx_1, ..., dp/dx_n): the product of the distinct
/// irreducible factors of p.
inline QPoly squarefree_part(const QPoly& p) {
    QPoly g = p;
    for (std::size_t i = 0; i < p.ring()->nvars() && !g.is_constant(); ++i) {
        QPoly d = differentiate(p, i);
        if (!d.is_zero()) g = poly_gcd(g, d);
    }
    return normalize_gcd(*divide_exact(p, g));
}

}  // namespace lpde
