#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lpde/gcd.hpp"
#include "lpde/groebner.hpp"

namespace lpde {

namespace detail {

/// The ring with one extra variable appended (index n), ordered with the
/// new variable in its own leading block.
template <class F>
RingPtr<F> ring_with_tag(const RingPtr<F>& ring) {
    auto names = ring->names();
    std::string tag = "_t";
    while (ring->index_of(tag)) tag += "_";
    names.push_back(tag);
    std::size_t n = ring->nvars();
    std::vector<std::vector<std::size_t>> blocks{{n}};
    for (const auto& b : ring->order().block_list()) blocks.push_back(b);
    return PolyRing<F>::make(ring->field(), std::move(names), MonomialOrder::blocks(n + 1, std::move(blocks)));
}

template <class F>
PolyVector<F> vector_in(const PolyVector<F>& v, const RingPtr<F>& ring) {
    PolyVector<F> out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back(p.in_ring(ring));
    return out;
}

template <class F>
PolyVector<F> scale_vector(const PolyVector<F>& v, const Polynomial<F>& f) {
    PolyVector<F> out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back(p * f);
    return out;
}

template <class F>
bool is_zero_vector(const PolyVector<F>& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

}  // namespace detail

/// Relations among the given generators (zero generators included), as
/// vectors of length gens.size(). Computed from a Groebner basis of the
/// graph module {(g_i, e_i)} under position over term with the original
/// components leading.
template <class F>
std::vector<PolyVector<F>> syzygies(const RingPtr<F>& ring, std::size_t k, const std::vector<PolyVector<F>>& gens) {
    std::size_t l = gens.size();
    if (l == 0) return {};
    std::vector<PolyVector<F>> aug;
    for (std::size_t i = 0; i < l; ++i) {
        PolyVector<F> v = gens[i];
        if (v.size() != k) throw InputError("generator length does not match module rank");
        for (std::size_t j = 0; j < l; ++j)
            v.push_back(j == i ? Polynomial<F>::constant(ring, ring->field().one()) : Polynomial<F>(ring));
        aug.push_back(std::move(v));
    }
    auto gb = groebner_basis(ring, k + l, aug, default_module_order(*ring));
    std::vector<PolyVector<F>> out;
    for (const auto& e : gb.elements()) {
        if (e.lead().comp < k) continue;
        PolyVector<F> full = gb.engine().to_vector(e, ring, k + l);
        out.emplace_back(full.begin() + static_cast<std::ptrdiff_t>(k), full.end());
    }
    return out;
}

/// M intersected with N, by eliminating t from t*M + (1-t)*N.
template <class F>
Submodule<F> intersect(const Submodule<F>& m, const Submodule<F>& n) {
    if (m.rank() != n.rank()) throw InputError("intersect: rank mismatch");
    const auto& ring = m.ring();
    std::size_t k = m.rank();
    if (m.is_zero() || n.is_zero()) return Submodule<F>(ring, k);
    auto big = detail::ring_with_tag(ring);
    std::size_t nv = ring->nvars();
    auto t = Polynomial<F>::variable(big, nv);
    auto one_minus_t = Polynomial<F>::constant(big, big->field().one()) - t;
    std::vector<PolyVector<F>> gens;
    for (const auto& g : m.generators()) gens.push_back(detail::scale_vector(detail::vector_in(g, big), t));
    for (const auto& g : n.generators()) gens.push_back(detail::scale_vector(detail::vector_in(g, big), one_minus_t));
    auto gb = groebner_basis(big, k, gens, ModuleOrder{big->order(), 1, true});
    std::vector<PolyVector<F>> out;
    for (const auto& e : gb.elements()) {
        bool free_of_t = true;
        for (const auto& term : e.terms)
            if (term.mono[nv]) {
                free_of_t = false;
                break;
            }
        if (!free_of_t) continue;
        out.push_back(detail::vector_in(gb.engine().to_vector(e, big, k), ring));
    }
    return Submodule<F>(ring, k, std::move(out));
}

/// (M : f) = {v : f v in M}.
template <class F>
Submodule<F> colon(const Submodule<F>& m, const Polynomial<F>& f) {
    if (f.is_zero()) return Submodule<F>::whole(m.ring(), m.rank());
    if (f.is_constant()) return m;
    std::vector<PolyVector<F>> fgens;
    for (std::size_t j = 0; j < m.rank(); ++j)
        fgens.push_back(detail::scale_vector(Submodule<F>::unit_vector(m.ring(), m.rank(), j), f));
    auto inter = intersect(m, Submodule<F>(m.ring(), m.rank(), std::move(fgens)));
    std::vector<PolyVector<F>> out;
    for (const auto& g : inter.generators()) {
        PolyVector<F> v;
        for (const auto& p : g) {
            auto q = divide_exact(p, f);
            if (!q) throw MathDiagnostic("colon: inexact division");
            v.push_back(std::move(*q));
        }
        out.push_back(std::move(v));
    }
    return Submodule<F>(m.ring(), m.rank(), std::move(out));
}

/// (M : I) = intersection of (M : g) over generators g of I.
template <class F>
Submodule<F> colon(const Submodule<F>& m, const Submodule<F>& ideal) {
    if (!ideal.is_ideal()) throw InputError("colon: expected an ideal");
    if (ideal.is_zero()) return Submodule<F>::whole(m.ring(), m.rank());
    std::optional<Submodule<F>> acc;
    for (const auto& g : ideal.generators()) {
        auto q = colon(m, g[0]);
        acc = acc ? intersect(*acc, q) : q;
    }
    return *acc;
}

template <class F>
struct Saturation {
    Submodule<F> module;
    unsigned exponent;  // smallest t with (M : f^t) = (M : f^infinity)
};

inline constexpr unsigned kSaturationCap = 64;

/// (M : f^infinity) by iterated colon until two consecutive iterates agree.
template <class F>
Saturation<F> saturate(const Submodule<F>& m, const Polynomial<F>& f, unsigned cap = kSaturationCap) {
    Submodule<F> cur = m;
    for (unsigned t = 0; t < cap; ++t) {
        Submodule<F> next = colon(cur, f);
        if (cur.contains(next)) return {cur, t};
        cur = Submodule<F>(next.ring(), next.rank(), next.gb().vectors());
    }
    throw MathDiagnostic("saturation did not stabilize within " + std::to_string(cap) + " steps");
}

/// (M : I^infinity) as the intersection of (M : g^infinity) over generators.
template <class F>
Saturation<F> saturate(const Submodule<F>& m, const Submodule<F>& ideal, unsigned cap = kSaturationCap) {
    if (!ideal.is_ideal()) throw InputError("saturate: expected an ideal");
    if (ideal.is_zero()) return {Submodule<F>::whole(m.ring(), m.rank()), 1};
    std::optional<Submodule<F>> acc;
    unsigned e = 0;
    for (const auto& g : ideal.generators()) {
        auto s = saturate(m, g[0], cap);
        e = std::max(e, s.exponent);
        acc = acc ? intersect(*acc, s.module) : s.module;
    }
    return {*acc, e};
}

/// (N : v) = {f in R : f v in N}, an ideal.
template <class F>
Submodule<F> colon_vector(const Submodule<F>& n, const PolyVector<F>& v) {
    std::vector<PolyVector<F>> gens{v};
    gens.insert(gens.end(), n.generators().begin(), n.generators().end());
    std::vector<PolyVector<F>> out;
    for (const auto& s : syzygies(n.ring(), n.rank(), gens)) out.push_back({s[0]});
    return Submodule<F>(n.ring(), 1, std::move(out));
}

/// Ann(R^k / M) as the intersection of (M : e_j).
template <class F>
Submodule<F> annihilator(const Submodule<F>& m) {
    std::optional<Submodule<F>> acc;
    for (std::size_t j = 0; j < m.rank(); ++j) {
        auto q = colon_vector(m, Submodule<F>::unit_vector(m.ring(), m.rank(), j));
        acc = acc ? intersect(*acc, q) : q;
    }
    return *acc;
}

/// Ann(N / L) for submodules L of N.
template <class F>
Submodule<F> annihilator_quotient(const Submodule<F>& n, const Submodule<F>& l) {
    Submodule<F> acc = Submodule<F>::whole(n.ring(), 1);
    bool first = true;
    for (const auto& g : n.generators()) {
        if (l.contains(g)) continue;
        auto q = colon_vector(l, g);
        acc = first ? q : intersect(acc, q);
        first = false;
    }
    return acc;
}

namespace detail {
template <class F>
Polynomial<F> determinant(const std::vector<std::vector<Polynomial<F>>>& a) {
    std::size_t n = a.size();
    if (n == 1) return a[0][0];
    const auto& ring = a[0][0].ring();
    Polynomial<F> det(ring);
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c].is_zero()) continue;
        std::vector<std::vector<Polynomial<F>>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial<F>> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(a[r][cc]);
            minor.push_back(std::move(row));
        }
        auto term = a[0][c] * determinant(minor);
        det = (c % 2 == 0) ? det + term : det - term;
    }
    return det;
}
}  // namespace detail

/// Ideal of k x k minors of the k x l matrix whose columns are `columns`.
template <class F>
Submodule<F> fitting_ideal(const RingPtr<F>& ring, std::size_t k, const std::vector<PolyVector<F>>& columns) {
    std::size_t l = columns.size();
    std::vector<Polynomial<F>> minors;
    if (l >= k) {
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = i;
        for (;;) {
            std::vector<std::vector<Polynomial<F>>> sub(k);
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c : pick) sub[r].push_back(columns[c][r]);
            auto d = detail::determinant(sub);
            if (!d.is_zero()) minors.push_back(d);
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == l - k + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return Submodule<F>::ideal(ring, minors);
}

/// I intersected with K[keep], via an elimination order.
template <class F>
Submodule<F> eliminate(const Submodule<F>& ideal, const std::vector<std::size_t>& keep) {
    const auto& ring = ideal.ring();
    std::uint32_t mask = 0;
    for (auto v : keep) mask |= std::uint32_t{1} << v;
    std::vector<std::size_t> drop;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        if (!(mask & (std::uint32_t{1} << i))) drop.push_back(i);
    if (drop.empty()) return ideal;
    ModuleOrder ord{MonomialOrder::elimination(ring->nvars(), drop), 1, true};
    auto gb = ideal.gb(ord);
    std::vector<PolyVector<F>> out;
    for (const auto& v : gb.vectors())
        if (v[0].is_zero() || (v[0].support() & ~mask) == 0) out.push_back(v);
    return Submodule<F>(ring, 1, std::move(out));
}

/// f in the radical of I (Rabinowitsch: 1 in I + <1 - t f>).
template <class F>
bool radical_contains(const Submodule<F>& ideal, const Polynomial<F>& f) {
    if (f.is_zero()) return true;
    auto big = detail::ring_with_tag(ideal.ring());
    auto t = Polynomial<F>::variable(big, ideal.ring()->nvars());
    std::vector<PolyVector<F>> gens;
    for (const auto& g : ideal.generators()) gens.push_back({g[0].in_ring(big)});
    gens.push_back({Polynomial<F>::constant(big, big->field().one()) - t * f.in_ring(big)});
    return Submodule<F>(big, 1, std::move(gens)).is_whole();
}

/// Radical of J contains radical of I, i.e. V(J) is inside V(I).
template <class F>
bool radical_contains(const Submodule<F>& j, const Submodule<F>& i) {
    for (const auto& g : i.generators())
        if (!radical_contains(j, g[0])) return false;
    return true;
}

/// Generators of I^e.
template <class F>
Submodule<F> ideal_power(const Submodule<F>& ideal, unsigned e) {
    auto gens = ideal.reduced().ideal_generators();
    std::vector<Polynomial<F>> cur{Polynomial<F>::constant(ideal.ring(), ideal.ring()->field().one())};
    for (unsigned step = 0; step < e; ++step) {
        std::vector<Polynomial<F>> next;
        for (const auto& a : cur)
            for (const auto& g : gens) next.push_back(a * g);
        cur = Submodule<F>::ideal(ideal.ring(), next).reduced().ideal_generators();
    }
    return Submodule<F>::ideal(ideal.ring(), cur);
}

/// I * R^k.
template <class F>
Submodule<F> ideal_times_free(const Submodule<F>& ideal, std::size_t k) {
    std::vector<PolyVector<F>> gens;
    for (const auto& g : ideal.generators())
        for (std::size_t j = 0; j < k; ++j) {
            PolyVector<F> v(k, Polynomial<F>(ideal.ring()));
            v[j] = g[0];
            gens.push_back(std::move(v));
        }
    return Submodule<F>(ideal.ring(), k, std::move(gens));
}

}  // namespace lpde
