#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lpde/assoc.hpp"
#include "lpde/ratfunc.hpp"

namespace lpde {

/// Element of K = Q(S)[dep]/P^e: coordinates over the standard monomials.
struct ResidueElement {
    std::vector<RatFun> c;
};

namespace detail {
struct ResidueData {
    QRingPtr ring;
    std::vector<std::size_t> indep, dep;
    RationalFunctionField base;
    RingPtr<RationalFunctionField> dep_ring;
    std::vector<ModPoly<RationalFunctionField>> gb;
    std::shared_ptr<GBEngine<RationalFunctionField>> engine;
    std::vector<Monomial> basis;                                  // dep_ring monomials, basis[0] = 1
    std::vector<std::vector<std::vector<RatFun>>> table;  // basis_i * basis_j
    std::vector<ResidueElement> images;                           // u_i for every ring variable
};
}  // namespace detail

/// The residue field Frac(R/P), realized relative to an independent set S
/// as a finite extension of Q(S).
class ResidueField {
public:
    using Element = ResidueElement;

    ResidueField() = default;

    ResidueField(const QModule& prime, std::vector<std::size_t> indep) {
        auto d = std::make_shared<detail::ResidueData>();
        const auto& ring = prime.ring();
        std::size_t n = ring->nvars();
        d->ring = ring;
        d->indep = std::move(indep);
        std::sort(d->indep.begin(), d->indep.end());
        d->dep = complement(n, d->indep);
        std::vector<std::string> pnames, dnames;
        for (auto i : d->indep) pnames.push_back(ring->name(i));
        for (auto i : d->dep) dnames.push_back(ring->name(i));
        d->base = RationalFunctionField(make_qring(pnames));
        d->dep_ring = PolyRing<RationalFunctionField>::make(d->base, dnames);
        if (!eliminate(prime, d->indep).reduced().is_zero())
            throw MathDiagnostic("variables are not independent modulo the prime");

        auto gbq = prime.gb(ModuleOrder{MonomialOrder::elimination(n, d->dep), 0, true});
        std::vector<PolyVector<RationalFunctionField>> gens;
        for (const auto& v : gbq.vectors()) gens.push_back({to_dep(*d, v[0])});
        auto order = default_module_order(*d->dep_ring);
        auto gb = groebner_basis(d->dep_ring, 1, gens, order);
        if (gb.is_whole()) throw MathDiagnostic("prime extends to the unit ideal over Q(S)");
        d->engine = std::make_shared<GBEngine<RationalFunctionField>>(d->base, order, true);
        d->gb = gb.elements();
        std::vector<Monomial> lts;
        for (const auto& [m, c] : gb.leading_terms()) lts.push_back(m);
        std::vector<std::size_t> vars(d->dep.size());
        for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
        d->basis = detail::standard_monomials(lts, vars);
        std::sort(d->basis.begin() + 1, d->basis.end(), [&](const Monomial& a, const Monomial& b) {
            return d->dep_ring->order().compare(a, b) < 0;
        });
        d_ = d;
        std::size_t D = d->basis.size();
        d->table.assign(D, std::vector<std::vector<RatFun>>(D));
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = i; j < D; ++j) {
                auto p = Polynomial<RationalFunctionField>::monomial(d->dep_ring, d->basis[i] * d->basis[j],
                                                                     d->base.one());
                d->table[i][j] = coords(normal_form(p)).c;
                if (i != j) d->table[j][i] = d->table[i][j];
            }
        for (std::size_t i = 0; i < n; ++i) {
            auto pos = std::find(d->indep.begin(), d->indep.end(), i);
            if (pos != d->indep.end()) {
                d->images.push_back(scalar(d->base.parameter(static_cast<std::size_t>(pos - d->indep.begin()))));
            } else {
                auto j = static_cast<std::size_t>(std::find(d->dep.begin(), d->dep.end(), i) - d->dep.begin());
                d->images.push_back(
                    coords(normal_form(Polynomial<RationalFunctionField>::variable(d->dep_ring, j))));
            }
        }
    }

    const std::vector<std::size_t>& independent() const { return d_->indep; }
    const std::vector<std::size_t>& dependent() const { return d_->dep; }
    const std::vector<Monomial>& basis() const { return d_->basis; }
    std::size_t degree() const { return d_->basis.size(); }
    const RationalFunctionField& base() const { return d_->base; }
    const QRingPtr& ring() const { return d_->ring; }
    const RingPtr<RationalFunctionField>& dep_ring() const { return d_->dep_ring; }

    /// u_i, the image of x_i.
    const Element& image(std::size_t i) const { return d_->images[i]; }

    Element zero() const { return Element{std::vector<RatFun>(degree(), d_->base.zero())}; }
    Element one() const { return scalar(d_->base.one()); }
    Element from_int(long v) const { return scalar(d_->base.from_int(v)); }
    Element from_rational(const Rational& q) const { return scalar(d_->base.from_rational(q)); }
    Element scalar(const RatFun& a) const {
        Element e = zero();
        e.c[0] = a;
        return e;
    }

    /// Class of a polynomial of R.
    Element from_polynomial(const QPoly& p) const { return coords(normal_form(to_dep(*d_, p))); }

    bool is_zero(const Element& a) const {
        for (const auto& x : a.c)
            if (!d_->base.is_zero(x)) return false;
        return true;
    }
    bool is_one(const Element& a) const {
        if (!d_->base.is_one(a.c[0])) return false;
        for (std::size_t i = 1; i < a.c.size(); ++i)
            if (!d_->base.is_zero(a.c[i])) return false;
        return true;
    }
    bool equal(const Element& a, const Element& b) const {
        for (std::size_t i = 0; i < a.c.size(); ++i)
            if (!d_->base.equal(a.c[i], b.c[i])) return false;
        return true;
    }

    Element add(const Element& a, const Element& b) const {
        Element r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = d_->base.add(r.c[i], b.c[i]);
        return r;
    }
    Element sub(const Element& a, const Element& b) const {
        Element r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = d_->base.sub(r.c[i], b.c[i]);
        return r;
    }
    Element neg(const Element& a) const {
        Element r = a;
        for (auto& x : r.c) x = d_->base.neg(x);
        return r;
    }

    Element mul(const Element& a, const Element& b) const {
        const auto& f = d_->base;
        std::size_t D = degree();
        if (D == 1) return Element{{f.mul(a.c[0], b.c[0])}};
        Element r = zero();
        for (std::size_t i = 0; i < D; ++i) {
            if (f.is_zero(a.c[i])) continue;
            for (std::size_t j = 0; j < D; ++j) {
                if (f.is_zero(b.c[j])) continue;
                auto ab = f.mul(a.c[i], b.c[j]);
                const auto& t = d_->table[i][j];
                for (std::size_t l = 0; l < D; ++l)
                    if (!f.is_zero(t[l])) r.c[l] = f.add(r.c[l], f.mul(ab, t[l]));
            }
        }
        return r;
    }

    /// Solves a * x = 1 on the standard basis.
    Element inv(const Element& a) const {
        const auto& f = d_->base;
        if (is_zero(a)) throw MathDiagnostic("division by zero in residue field");
        std::size_t D = degree();
        if (D == 1) return Element{{f.inv(a.c[0])}};
        std::vector<DenseRow<RationalFunctionField>> m(D, DenseRow<RationalFunctionField>(D + 1, f.zero()));
        for (std::size_t j = 0; j < D; ++j) {
            Element bj = zero();
            bj.c[j] = f.one();
            auto col = mul(a, bj);
            for (std::size_t i = 0; i < D; ++i) m[i][j] = col.c[i];
        }
        m[0][D] = f.one();
        auto e = rref(f, m, D + 1);
        if (e.rank() != D || e.pivots.back() >= D)
            throw MathDiagnostic("zero divisor in residue ring: reducible leaf, supply primes");
        Element r = zero();
        for (std::size_t i = 0; i < D; ++i) r.c[e.pivots[i]] = e.rows[i][D];
        return r;
    }
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

    bool is_negative(const Element& a) const {
        for (const auto& x : a.c)
            if (!d_->base.is_zero(x)) return d_->base.is_negative(x);
        return false;
    }
    bool is_atomic(const Element& a) const {
        std::size_t nz = 0;
        for (std::size_t i = 0; i < a.c.size(); ++i)
            if (!d_->base.is_zero(a.c[i])) {
                ++nz;
                if (i != 0 || !d_->base.is_atomic(a.c[i])) return false;
            }
        return nz <= 1;
    }
    int compare(const Element& a, const Element& b) const {
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            int c = d_->base.compare(a.c[i], b.c[i]);
            if (c) return c;
        }
        return 0;
    }

    std::string to_string(const Element& a) const {
        std::string out;
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (d_->base.is_zero(a.c[i])) continue;
            std::string coef = d_->base.to_string(a.c[i]);
            std::string mono = format_monomial(*d_->dep_ring, d_->basis[i]);
            std::string term;
            if (d_->basis[i].is_one()) term = coef;
            else if (d_->base.is_one(a.c[i])) term = mono;
            else term = "(" + coef + ")*" + mono;
            out += out.empty() ? term : " + " + term;
        }
        return out.empty() ? "0" : out;
    }

    /// Numerator in R (a combination of standard monomials with polynomial
    /// coefficients in S) and denominator in Q[S] ⊂ R.
    std::pair<QPoly, QPoly> lift(const Element& a) const {
        const auto& ring = d_->ring;
        QPoly den = QPoly::constant(d_->base.param_ring(), 1);
        for (const auto& x : a.c)
            if (!d_->base.is_zero(x)) den = poly_lcm(den, x.den);
        QPoly num(ring);
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            const auto& x = a.c[i];
            if (d_->base.is_zero(x)) continue;
            QPoly scaled = x.num * *divide_exact(den, x.den);
            num = num + from_param(scaled) * from_dep_monomial(d_->basis[i]);
        }
        return {num, from_param(den)};
    }

    QPoly from_param(const QPoly& p) const {
        std::vector<Term<RationalField>> ts;
        for (const auto& t : p.terms()) {
            Monomial m;
            for (std::size_t i = 0; i < d_->indep.size(); ++i) m.set(d_->indep[i], t.mono[i]);
            ts.push_back({m, t.coeff});
        }
        return QPoly::from_terms(d_->ring, std::move(ts));
    }

    QPoly from_dep_monomial(const Monomial& dm) const {
        Monomial m;
        for (std::size_t i = 0; i < d_->dep.size(); ++i) m.set(d_->dep[i], dm[i]);
        return QPoly::monomial(d_->ring, m, Rational(1));
    }

    friend bool operator==(const ResidueField& a, const ResidueField& b) { return a.d_ == b.d_; }

private:
    static Polynomial<RationalFunctionField> to_dep(const detail::ResidueData& d, const QPoly& p) {
        std::vector<Term<RationalFunctionField>> ts;
        const auto& pr = d.base.param_ring();
        for (const auto& t : p.terms()) {
            Monomial dm, sm;
            for (std::size_t i = 0; i < d.dep.size(); ++i) dm.set(i, t.mono[d.dep[i]]);
            for (std::size_t i = 0; i < d.indep.size(); ++i) sm.set(i, t.mono[d.indep[i]]);
            ts.push_back({dm, RatFun{QPoly::monomial(pr, sm, t.coeff), QPoly::constant(pr, 1)}});
        }
        return Polynomial<RationalFunctionField>::from_terms(d.dep_ring, std::move(ts));
    }

    Polynomial<RationalFunctionField> normal_form(const Polynomial<RationalFunctionField>& p) const {
        const auto& eng = *d_->engine;
        return eng.to_vector(eng.reduce(eng.from_vector({p}), d_->gb), d_->dep_ring, 1)[0];
    }

    Element coords(const Polynomial<RationalFunctionField>& p) const {
        Element e = zero();
        for (const auto& t : p.terms()) {
            auto it = std::find(d_->basis.begin(), d_->basis.end(), t.mono);
            if (it == d_->basis.end()) throw MathDiagnostic("normal form outside the standard basis");
            e.c[static_cast<std::size_t>(it - d_->basis.begin())] = t.coeff;
        }
        return e;
    }

    std::shared_ptr<detail::ResidueData> d_;
};

/// gamma(p) = p(y + u) on dependent variables, p(u) on independent ones,
/// as a polynomial in T = K[y_dep]. Terms of y-degree above `max_degree`
/// are dropped (they act as zero on multipliers of that degree).
inline Polynomial<ResidueField> gamma_map(const ResidueField& k, const RingPtr<ResidueField>& t, const QPoly& p,
                                          int max_degree = -1) {
    const auto& dep = k.dependent();
    std::size_t c = dep.size();
    int top = p.degree();
    if (max_degree >= 0) top = std::min(top, max_degree);
    std::vector<Term<ResidueField>> ts;
    if (p.is_zero()) return Polynomial<ResidueField>(t);
    // Taylor expansion at u: sum over beta of (d^beta p)(u) / beta! * y^beta
    std::vector<std::pair<Monomial, QPoly>> frontier{{Monomial(), p}};
    for (int deg = 0; deg <= top && !frontier.empty(); ++deg) {
        std::vector<std::pair<Monomial, QPoly>> next;
        for (const auto& [beta, q] : frontier) {
            auto val = k.from_polynomial(q);
            if (!k.is_zero(val)) {
                Integer fact = 1;
                for (std::size_t i = 0; i < c; ++i) fact *= factorial(beta[i]);
                ts.push_back({beta, k.mul(val, k.from_rational(Rational(1) / Rational(fact)))});
            }
            if (deg == top) continue;
            // extend only along variables >= the last one used, so each beta appears once
            std::size_t start = 0;
            for (std::size_t i = 0; i < c; ++i)
                if (beta[i]) start = i;
            for (std::size_t i = start; i < c; ++i) {
                auto dq = differentiate(q, dep[i]);
                if (dq.is_zero()) continue;
                next.push_back({beta * Monomial::variable(i), dq});
            }
        }
        frontier = std::move(next);
    }
    return Polynomial<ResidueField>::from_terms(t, std::move(ts));
}

}  // namespace lpde
