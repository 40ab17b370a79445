#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <vector>

#include "lpde/polynomial.hpp"

namespace lpde {

template <class F>
using PolyVector = std::vector<Polynomial<F>>;

/// Order on terms m*e_c of a free module. The first `elim_blocks` blocks of
/// the monomial order dominate everything; then position-over-term (POT,
/// lower component index is larger) or term-over-position (TOP).
struct ModuleOrder {
    MonomialOrder mono;
    std::size_t elim_blocks = 0;
    bool pot = true;

    int compare(const Monomial& a, unsigned ca, const Monomial& b, unsigned cb) const {
        std::size_t nb = mono.block_list().size();
        if (elim_blocks) {
            int c = mono.compare_blocks(a, b, 0, elim_blocks);
            if (c) return c;
        }
        if (pot) {
            if (ca != cb) return ca < cb ? 1 : -1;
            return mono.compare_blocks(a, b, elim_blocks, nb);
        }
        int c = mono.compare_blocks(a, b, elim_blocks, nb);
        if (c) return c;
        if (ca != cb) return ca < cb ? 1 : -1;
        return 0;
    }

    friend bool operator==(const ModuleOrder& a, const ModuleOrder& b) {
        return a.mono == b.mono && a.elim_blocks == b.elim_blocks && a.pot == b.pot;
    }
};

template <class F>
struct ModTerm {
    Monomial mono;
    unsigned comp;
    typename F::Element coeff;
};

template <class F>
struct ModPoly {
    std::vector<ModTerm<F>> terms;
    unsigned sugar = 0;

    bool is_zero() const { return terms.empty(); }
    const ModTerm<F>& lead() const { return terms.front(); }
};

/// Buchberger's algorithm with the sugar strategy and the Gebauer-Moeller
/// criteria, plus division with remainder, for submodules of F[x]^k.
template <class F>
class GBEngine {
public:
    using Element = typename F::Element;
    using MP = ModPoly<F>;
    using MT = ModTerm<F>;

    GBEngine(F field, ModuleOrder order, bool scalar) : field_(std::move(field)), ord_(std::move(order)), scalar_(scalar) {}

    const ModuleOrder& order() const { return ord_; }
    const F& field() const { return field_; }

    int cmp(const MT& a, const MT& b) const { return ord_.compare(a.mono, a.comp, b.mono, b.comp); }

    MP from_vector(const PolyVector<F>& v) const {
        MP p;
        for (unsigned c = 0; c < v.size(); ++c)
            for (const auto& t : v[c].terms()) {
                p.terms.push_back({t.mono, c, t.coeff});
                p.sugar = std::max(p.sugar, t.mono.degree());
            }
        std::sort(p.terms.begin(), p.terms.end(), [&](const MT& a, const MT& b) { return cmp(a, b) > 0; });
        return p;
    }

    PolyVector<F> to_vector(const MP& p, const RingPtr<F>& ring, std::size_t k) const {
        std::vector<std::vector<Term<F>>> parts(k);
        for (const auto& t : p.terms) parts[t.comp].push_back({t.mono, t.coeff});
        PolyVector<F> out;
        out.reserve(k);
        for (auto& ts : parts) out.push_back(Polynomial<F>::from_terms(ring, std::move(ts)));
        return out;
    }

    /// f[start..] - c*m*g, both sorted; result sorted.
    std::vector<MT> sub_mul(const std::vector<MT>& f, std::size_t start, const Element& c, const Monomial& m,
                            const MP& g) const {
        std::vector<MT> out;
        out.reserve(f.size() - start + g.terms.size());
        std::size_t i = start, j = 0;
        while (i < f.size() && j < g.terms.size()) {
            const auto& gt = g.terms[j];
            Monomial gm = gt.mono * m;
            int s = ord_.compare(f[i].mono, f[i].comp, gm, gt.comp);
            if (s > 0) {
                out.push_back(f[i++]);
            } else if (s < 0) {
                out.push_back({gm, gt.comp, field_.neg(field_.mul(c, gt.coeff))});
                ++j;
            } else {
                auto v = field_.sub(f[i].coeff, field_.mul(c, gt.coeff));
                if (!field_.is_zero(v)) out.push_back({f[i].mono, f[i].comp, std::move(v)});
                ++i;
                ++j;
            }
        }
        for (; i < f.size(); ++i) out.push_back(f[i]);
        for (; j < g.terms.size(); ++j) {
            const auto& gt = g.terms[j];
            out.push_back({gt.mono * m, gt.comp, field_.neg(field_.mul(c, gt.coeff))});
        }
        return out;
    }

    const MP* find_reducer(const MT& t, const std::vector<MP>& basis) const {
        for (const auto& g : basis)
            if (g.lead().comp == t.comp && g.lead().mono.divides(t.mono)) return &g;
        return nullptr;
    }

    /// Remainder of f on division by `basis` (every term reduced).
    MP reduce(const MP& f, const std::vector<MP>& basis) const {
        MP rem;
        rem.sugar = f.sugar;
        std::vector<MT> cur = f.terms;
        std::size_t pos = 0;
        while (pos < cur.size()) {
            const MT& t = cur[pos];
            const MP* g = find_reducer(t, basis);
            if (!g) {
                rem.terms.push_back(t);
                ++pos;
                continue;
            }
            Monomial m = g->lead().mono.quotient_of(t.mono);
            Element c = field_.div(t.coeff, g->lead().coeff);
            rem.sugar = std::max(rem.sugar, g->sugar + m.degree());
            cur = sub_mul(cur, pos, c, m, *g);
            pos = 0;
        }
        return rem;
    }

    /// True when f reduces to zero; stops at the first irreducible leading term.
    bool reduces_to_zero(const MP& f, const std::vector<MP>& basis) const {
        std::vector<MT> cur = f.terms;
        while (!cur.empty()) {
            const MP* g = find_reducer(cur.front(), basis);
            if (!g) return false;
            Monomial m = g->lead().mono.quotient_of(cur.front().mono);
            Element c = field_.div(cur.front().coeff, g->lead().coeff);
            cur = sub_mul(cur, 0, c, m, *g);
        }
        return true;
    }

    MP monic(MP p) const {
        if (p.is_zero()) return p;
        Element inv = field_.inv(p.lead().coeff);
        for (auto& t : p.terms) t.coeff = field_.mul(t.coeff, inv);
        return p;
    }

    MP spoly(const MP& f, const MP& g) const {
        Monomial l = f.lead().mono.lcm(g.lead().mono);
        Monomial mf = f.lead().mono.quotient_of(l), mg = g.lead().mono.quotient_of(l);
        MP scaled_f;
        scaled_f.terms.reserve(f.terms.size());
        for (const auto& t : f.terms) scaled_f.terms.push_back({t.mono * mf, t.comp, t.coeff});
        MP s;
        s.terms = sub_mul(scaled_f.terms, 0, field_.one(), mg, g);
        s.sugar = std::max(f.sugar + mf.degree(), g.sugar + mg.degree());
        return s;
    }

    /// Reduced Groebner basis, sorted by ascending leading term.
    std::vector<MP> buchberger(const std::vector<MP>& input) const {
        State st;
        std::vector<MP> sorted_input;
        for (const auto& f : input)
            if (!f.is_zero()) sorted_input.push_back(f);
        std::stable_sort(sorted_input.begin(), sorted_input.end(), [&](const MP& a, const MP& b) {
            if (a.sugar != b.sugar) return a.sugar < b.sugar;
            return cmp(a.lead(), b.lead()) < 0;
        });
        for (const auto& f : sorted_input) {
            MP h = reduce(f, st.basis);
            if (h.is_zero()) continue;
            insert(st, monic(std::move(h)));
        }
        while (!st.pairs.empty()) {
            auto best = std::min_element(st.pairs.begin(), st.pairs.end(), [&](const Pair& a, const Pair& b) {
                if (a.sugar != b.sugar) return a.sugar < b.sugar;
                return ord_.compare(a.lcm, a.comp, b.lcm, b.comp) < 0;
            });
            Pair p = *best;
            st.pairs.erase(best);
            MP s = spoly(st.basis[p.i], st.basis[p.j]);
            MP h = reduce(s, st.basis);
            if (h.is_zero()) continue;
            insert(st, monic(std::move(h)));
        }
        std::vector<MP> minimal;
        for (std::size_t i = 0; i < st.basis.size(); ++i)
            if (st.active[i]) minimal.push_back(st.basis[i]);
        return interreduce(std::move(minimal));
    }

    /// Makes a minimal basis reduced: monic, no term of any element divisible
    /// by another element's leading term.
    std::vector<MP> interreduce(std::vector<MP> basis) const {
        std::sort(basis.begin(), basis.end(), [&](const MP& a, const MP& b) { return cmp(a.lead(), b.lead()) < 0; });
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<MP> others;
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (j != i) others.push_back(basis[j]);
            MP tail;
            tail.terms.assign(basis[i].terms.begin() + 1, basis[i].terms.end());
            tail.sugar = basis[i].sugar;
            MP r = reduce(tail, others);
            MP out;
            out.sugar = basis[i].sugar;
            out.terms.push_back(basis[i].lead());
            out.terms.insert(out.terms.end(), r.terms.begin(), r.terms.end());
            basis[i] = monic(std::move(out));
        }
        return basis;
    }

private:
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        unsigned comp;
        unsigned sugar;
    };

    struct State {
        std::vector<MP> basis;
        std::vector<bool> active;
        std::vector<Pair> pairs;
    };

    Pair make_pair(const State& st, std::size_t i, std::size_t j) const {
        const auto& a = st.basis[i];
        const auto& b = st.basis[j];
        Monomial l = a.lead().mono.lcm(b.lead().mono);
        unsigned s = std::max(a.sugar + l.degree() - a.lead().mono.degree(),
                              b.sugar + l.degree() - b.lead().mono.degree());
        return {i, j, l, a.lead().comp, s};
    }

    // Gebauer-Moeller installation of a new element.
    void insert(State& st, MP h) const {
        std::size_t hi = st.basis.size();
        st.basis.push_back(std::move(h));
        st.active.push_back(true);
        const MP& hp = st.basis[hi];
        const Monomial& lh = hp.lead().mono;
        unsigned hc = hp.lead().comp;

        std::vector<Pair> c;
        for (std::size_t g = 0; g < hi; ++g)
            if (st.active[g] && st.basis[g].lead().comp == hc) c.push_back(make_pair(st, g, hi));

        auto coprime = [&](const Pair& p) { return scalar_ && st.basis[p.i].lead().mono.coprime(lh); };

        std::vector<Pair> d;
        for (std::size_t x = 0; x < c.size(); ++x) {
            bool keep = coprime(c[x]);
            if (!keep) {
                keep = true;
                for (std::size_t y = x + 1; y < c.size() && keep; ++y)
                    if (c[y].lcm.divides(c[x].lcm)) keep = false;
                for (std::size_t y = 0; y < d.size() && keep; ++y)
                    if (d[y].lcm.divides(c[x].lcm)) keep = false;
            }
            if (keep) d.push_back(c[x]);
        }
        std::vector<Pair> e;
        for (auto& p : d)
            if (!coprime(p)) e.push_back(p);

        std::vector<Pair> kept;
        for (auto& p : st.pairs) {
            bool drop = false;
            if (p.comp == hc && lh.divides(p.lcm)) {
                Monomial l1 = st.basis[p.i].lead().mono.lcm(lh);
                Monomial l2 = st.basis[p.j].lead().mono.lcm(lh);
                drop = !(l1 == p.lcm) && !(l2 == p.lcm);
            }
            if (!drop) kept.push_back(p);
        }
        kept.insert(kept.end(), e.begin(), e.end());
        st.pairs = std::move(kept);

        for (std::size_t g = 0; g < hi; ++g)
            if (st.active[g] && st.basis[g].lead().comp == hc && lh.divides(st.basis[g].lead().mono))
                st.active[g] = false;
    }

    F field_;
    ModuleOrder ord_;
    bool scalar_;
};

template <class F>
ModuleOrder default_module_order(const PolyRing<F>& ring) {
    return ModuleOrder{ring.order(), 0, true};
}

/// A reduced Groebner basis of a submodule of R^k with its order.
template <class F>
class GroebnerBasis {
public:
    GroebnerBasis(RingPtr<F> ring, std::size_t k, ModuleOrder order, std::vector<ModPoly<F>> elems)
        : ring_(std::move(ring)), k_(k), engine_(ring_->field(), std::move(order), k == 1),
          elems_(std::move(elems)) {}

    const RingPtr<F>& ring() const { return ring_; }
    std::size_t rank() const { return k_; }
    const ModuleOrder& order() const { return engine_.order(); }
    const GBEngine<F>& engine() const { return engine_; }
    const std::vector<ModPoly<F>>& elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }

    std::vector<PolyVector<F>> vectors() const {
        std::vector<PolyVector<F>> out;
        for (const auto& e : elems_) out.push_back(engine_.to_vector(e, ring_, k_));
        return out;
    }

    PolyVector<F> normal_form(const PolyVector<F>& v) const {
        check_arity(v);
        return engine_.to_vector(engine_.reduce(engine_.from_vector(v), elems_), ring_, k_);
    }

    bool contains(const PolyVector<F>& v) const {
        check_arity(v);
        return engine_.reduces_to_zero(engine_.from_vector(v), elems_);
    }

    /// Whether the module is all of R^k.
    bool is_whole() const {
        std::vector<bool> seen(k_, false);
        for (const auto& e : elems_)
            if (e.lead().mono.is_one()) seen[e.lead().comp] = true;
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

    /// Leading monomials per component.
    std::vector<std::pair<Monomial, unsigned>> leading_terms() const {
        std::vector<std::pair<Monomial, unsigned>> out;
        for (const auto& e : elems_) out.emplace_back(e.lead().mono, e.lead().comp);
        return out;
    }

private:
    void check_arity(const PolyVector<F>& v) const {
        if (v.size() != k_) throw InputError("vector length does not match module rank");
    }

    RingPtr<F> ring_;
    std::size_t k_;
    GBEngine<F> engine_;
    std::vector<ModPoly<F>> elems_;
};

template <class F>
GroebnerBasis<F> groebner_basis(const RingPtr<F>& ring, std::size_t k, const std::vector<PolyVector<F>>& gens,
                                const ModuleOrder& order) {
    GBEngine<F> eng(ring->field(), order, k == 1);
    std::vector<ModPoly<F>> in;
    for (const auto& g : gens) {
        if (g.size() != k) throw InputError("generator length does not match module rank");
        in.push_back(eng.from_vector(g));
    }
    return GroebnerBasis<F>(ring, k, order, eng.buchberger(in));
}

namespace detail {
template <class F>
struct GBCache {
    std::mutex mutex;
    std::shared_ptr<const GroebnerBasis<F>> gb;
};
}  // namespace detail

/// Finitely generated submodule of R^k. The default Groebner basis
/// (position over the ring's order) is computed once and then shared.
template <class F>
class Submodule {
public:
    using Vec = PolyVector<F>;

    Submodule() = default;
    Submodule(RingPtr<F> ring, std::size_t k, std::vector<Vec> gens = {})
        : ring_(std::move(ring)), k_(k), cache_(std::make_shared<detail::GBCache<F>>()) {
        if (k_ == 0) throw InputError("module rank must be positive");
        for (auto& g : gens) {
            if (g.size() != k_) throw InputError("generator length does not match module rank");
            if (std::all_of(g.begin(), g.end(), [](const Polynomial<F>& p) { return p.is_zero(); })) continue;
            gens_.push_back(std::move(g));
        }
    }

    static Submodule ideal(RingPtr<F> ring, const std::vector<Polynomial<F>>& gens) {
        std::vector<Vec> vs;
        for (const auto& g : gens) vs.push_back(Vec{g});
        return Submodule(std::move(ring), 1, std::move(vs));
    }

    /// All of R^k.
    static Submodule whole(RingPtr<F> ring, std::size_t k) {
        std::vector<Vec> vs;
        for (std::size_t j = 0; j < k; ++j) vs.push_back(unit_vector(ring, k, j));
        return Submodule(std::move(ring), k, std::move(vs));
    }

    static Vec unit_vector(const RingPtr<F>& ring, std::size_t k, std::size_t j) {
        Vec v(k, Polynomial<F>(ring));
        v[j] = Polynomial<F>::constant(ring, ring->field().one());
        return v;
    }

    Vec zero_vector() const { return Vec(k_, Polynomial<F>(ring_)); }

    const RingPtr<F>& ring() const { return ring_; }
    std::size_t rank() const { return k_; }
    const std::vector<Vec>& generators() const { return gens_; }
    bool is_ideal() const { return k_ == 1; }

    /// Generators of an ideal (k = 1) as scalars.
    std::vector<Polynomial<F>> ideal_generators() const {
        std::vector<Polynomial<F>> out;
        for (const auto& g : gens_) out.push_back(g[0]);
        return out;
    }

    const GroebnerBasis<F>& gb() const {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        if (!cache_->gb)
            cache_->gb = std::make_shared<const GroebnerBasis<F>>(
                groebner_basis(ring_, k_, gens_, default_module_order(*ring_)));
        return *cache_->gb;
    }

    GroebnerBasis<F> gb(const ModuleOrder& order) const { return groebner_basis(ring_, k_, gens_, order); }

    /// The module generated by its reduced Groebner basis.
    Submodule reduced() const { return Submodule(ring_, k_, gb().vectors()); }

    Vec normal_form(const Vec& v) const { return gb().normal_form(v); }
    bool contains(const Vec& v) const { return gb().contains(v); }
    bool contains(const Submodule& o) const {
        for (const auto& g : o.gens_)
            if (!contains(g)) return false;
        return true;
    }
    bool equals(const Submodule& o) const { return contains(o) && o.contains(*this); }
    bool is_whole() const { return gb().is_whole(); }
    bool is_zero() const { return gens_.empty(); }

    Submodule operator+(const Submodule& o) const {
        auto gs = gens_;
        gs.insert(gs.end(), o.gens_.begin(), o.gens_.end());
        return Submodule(ring_, k_, std::move(gs));
    }

    /// f * M
    Submodule scaled(const Polynomial<F>& f) const {
        std::vector<Vec> gs;
        for (const auto& g : gens_) {
            Vec v;
            for (const auto& p : g) v.push_back(p * f);
            gs.push_back(std::move(v));
        }
        return Submodule(ring_, k_, std::move(gs));
    }

private:
    RingPtr<F> ring_;
    std::size_t k_ = 1;
    std::vector<Vec> gens_;
    std::shared_ptr<detail::GBCache<F>> cache_;
};

using QVector = PolyVector<RationalField>;
using QModule = Submodule<RationalField>;

}  // namespace lpde
