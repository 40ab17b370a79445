#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpde/assoc.hpp"
#include "lpde/duality.hpp"
#include "lpde/linalg.hpp"
#include "lpde/residue.hpp"

namespace lpde {

struct SolveOptions {
    std::uint64_t seed = 0;
    unsigned max_r = 32;
    std::optional<std::vector<QModule>> primes;  // candidates to verify instead of computing Ass
};

struct LocalData {
    QModule U;
    QModule V;
    unsigned r = 0;
    std::vector<std::size_t> indep;
    bool trivial = false;  // V = U: the prime contributes nothing
};

namespace detail {

inline QPoly separating_factor(const QModule& prime, const std::vector<QModule>& others) {
    QPoly f = QPoly::constant(prime.ring(), 1);
    for (const auto& pj : others) {
        if (prime.contains(pj)) continue;  // P_j inside P
        bool found = false;
        for (const auto& g : pj.reduced().ideal_generators())
            if (!prime.contains(QVector{g})) {
                f = f * g;
                found = true;
                break;
            }
        if (!found) throw MathDiagnostic("internal: no generator separates the primes");
    }
    return f;
}

/// Monomials of degree <= r in c variables, grevlex descending.
inline std::vector<Monomial> monomials_up_to(std::size_t c, unsigned r) {
    std::vector<Monomial> out{Monomial()};
    std::vector<Monomial> layer{Monomial()};
    for (unsigned d = 1; d <= r; ++d) {
        std::vector<Monomial> next;
        for (const auto& m : layer) {
            std::size_t start = 0;
            for (std::size_t i = 0; i < c; ++i)
                if (m[i]) start = i;
            for (std::size_t i = start; i < c; ++i) next.push_back(m * Monomial::variable(i));
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    auto ord = MonomialOrder::grevlex(c);
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) > 0; });
    return out;
}

/// The Diff-matrix machinery of one prime: columns are z^alpha e_j with
/// |alpha| <= r, monomials descending, components ascending within one.
class LocalSystem {
public:
    LocalSystem(const QModule& prime, const std::vector<std::size_t>& indep, std::size_t k, unsigned r)
        : K(prime, indep), k_(k), r_(r) {
        std::vector<std::string> ys;
        for (auto i : K.dependent()) ys.push_back("y" + prime.ring()->name(i));
        T = PolyRing<ResidueField>::make(K, ys);
        monos = monomials_up_to(K.dependent().size(), r);
    }

    std::size_t cols() const { return monos.size() * k_; }
    std::size_t column(std::size_t mono, std::size_t comp) const { return mono * k_ + comp; }
    std::size_t mono_of(std::size_t col) const { return col / k_; }
    std::size_t comp_of(std::size_t col) const { return col % k_; }

    /// Rows of Diff(gamma(N) + m^{r+1}T^k); the m^{r+1} part acts as zero.
    std::vector<DenseRow<ResidueField>> diff(const QModule& n) const {
        std::size_t c = K.dependent().size();
        std::map<std::pair<std::size_t, std::vector<Exponent>>, std::size_t> row_of;
        std::vector<DenseRow<ResidueField>> rows;
        std::size_t gi = 0;
        for (const auto& g : n.generators()) {
            for (std::size_t j = 0; j < k_; ++j) {
                if (g[j].is_zero()) continue;
                auto gam = gamma_map(K, T, g[j], static_cast<int>(r_));
                for (const auto& t : gam.terms()) {
                    for (std::size_t a = 0; a < monos.size(); ++a) {
                        const auto& alpha = monos[a];
                        if (!t.mono.divides(alpha)) continue;
                        Monomial target = t.mono.quotient_of(alpha);
                        Integer w = 1;
                        for (std::size_t i = 0; i < c; ++i)
                            w *= factorial(alpha[i]) / factorial(target[i]);
                        std::vector<Exponent> key(c);
                        for (std::size_t i = 0; i < c; ++i) key[i] = target[i];
                        auto [it, fresh] = row_of.try_emplace({gi, key}, rows.size());
                        if (fresh) rows.emplace_back(cols(), K.zero());
                        auto& cell = rows[it->second][column(a, j)];
                        cell = K.add(cell, K.mul(t.coeff, K.from_rational(Rational(w))));
                    }
                }
            }
            ++gi;
        }
        return rows;
    }

    /// Kernel basis ordered by leading column (lowest z-monomial first,
    /// then component), ties by free column.
    std::vector<DenseRow<ResidueField>> kernel(const QModule& n) const {
        auto ker = kernel_basis(K, diff(n), cols());
        auto key = [&](const DenseRow<ResidueField>& v) {
            std::size_t c = 0;
            while (K.is_zero(v[c])) ++c;
            return std::make_pair(monos.size() - mono_of(c), comp_of(c));
        };
        std::stable_sort(ker.begin(), ker.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
        return ker;
    }

    /// Basis of ker Diff(U) modulo ker Diff(V), reduced against ker Diff(V).
    std::vector<DenseRow<ResidueField>> quotient(const QModule& u, const QModule& v) const {
        auto ku = kernel(u);
        std::vector<DenseRow<ResidueField>> kv;
        if (!v.is_whole()) kv = kernel(v);
        auto ev = rref(K, kv, cols());
        std::vector<DenseRow<ResidueField>> span = ev.rows, out;
        std::size_t rank = ev.rank();
        for (auto w : ku) {
            reduce_against(K, ev, w);
            span.push_back(w);
            auto e = rref(K, span, cols());
            if (e.rank() == rank) {
                span.pop_back();
                continue;
            }
            rank = e.rank();
            out.push_back(std::move(w));
        }
        return out;
    }

    /// Number of classes of ker Diff(U) / ker Diff(V) first reached in each
    /// degree; independent of the chosen representatives.
    std::vector<std::size_t> quotient_profile(const QModule& u, const QModule& v) const {
        auto ku = kernel(u);
        std::vector<DenseRow<ResidueField>> base;
        if (!v.is_whole()) base = kernel(v);
        std::size_t floor = rref(K, base, cols()).rank(), prev = 0;
        std::vector<std::size_t> out;
        for (unsigned d = 0; d <= r_; ++d) {
            auto span = base;
            for (const auto& w : ku) {
                bool low = true;
                for (std::size_t c = 0; c < w.size() && low; ++c)
                    if (!K.is_zero(w[c]) && monos[mono_of(c)].degree() > d) low = false;
                if (low) span.push_back(w);
            }
            std::size_t dim = rref(K, span, cols()).rank() - floor;
            out.push_back(dim - prev);
            prev = dim;
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    }

    /// A kernel vector as a multiplier: clear denominators over Q[S] and
    /// read column (alpha, j) as u(x) dz^alpha e_j.
    QVector lift(const DenseRow<ResidueField>& v, const QRingPtr& mring) const {
        const auto& ring = K.ring();
        std::size_t n = ring->nvars();
        const auto& dep = K.dependent();
        std::vector<std::pair<QPoly, QPoly>> parts(v.size());
        QPoly l = QPoly::constant(ring, 1);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (K.is_zero(v[i])) continue;
            parts[i] = K.lift(v[i]);
            l = poly_lcm(l, parts[i].second);
        }
        QVector out(k_, QPoly(mring));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (K.is_zero(v[i])) continue;
            auto coeff = parts[i].first * *divide_exact(l, parts[i].second);
            Monomial dz;
            const auto& alpha = monos[mono_of(i)];
            for (std::size_t d = 0; d < dep.size(); ++d) dz.set(n + dep[d], alpha[d]);
            out[comp_of(i)] = out[comp_of(i)] + coeff.in_ring(mring).mul_term(Rational(1), dz);
        }
        Integer num_gcd = 0, den_lcm = 1;
        for (const auto& p : out)
            for (const auto& t : p.terms()) {
                num_gcd = integer_gcd(num_gcd, t.coeff.get_num());
                den_lcm = integer_lcm(den_lcm, t.coeff.get_den());
            }
        if (num_gcd != 0) {
            Rational s(den_lcm, abs(num_gcd));
            for (auto& p : out) p = p.scaled(s);
        }
        return out;
    }

    ResidueField K;
    RingPtr<ResidueField> T;
    std::vector<Monomial> monos;

private:
    std::size_t k_;
    unsigned r_;
};

inline QModule maximal_ideal(const QRingPtr& ring) {
    std::vector<QPoly> vars;
    for (std::size_t i = 0; i < ring->nvars(); ++i) vars.push_back(QPoly::variable(ring, i));
    return QModule::ideal(ring, vars);
}

/// Smallest r with V ∩ P^{r+1} R^k ⊆ U.
inline unsigned local_order(const QModule& U, const QModule& V, const QModule& prime, unsigned max_r) {
    for (unsigned r = 0; r <= max_r; ++r) {
        auto pk = ideal_times_free(ideal_power(prime, r + 1), U.rank());
        if (U.contains(V.is_whole() ? pk : intersect(V, pk))) return r;
    }
    throw MathDiagnostic("local order exceeds the cap of " + std::to_string(max_r));
}

}  // namespace detail

/// Lines 2-5 of the local computation at P.
inline LocalData local_data(const QModule& m, const QModule& prime, const std::vector<QModule>& all_primes,
                            unsigned max_r = 32) {
    if (prime.is_whole()) throw InputError("candidate prime is not proper");
    LocalData L;
    auto f = detail::separating_factor(prime, all_primes);
    L.U = f.is_constant() ? m : saturate(m, f).module;
    L.V = saturate(L.U, prime).module;
    L.indep = independent_set(prime);
    if (L.U.contains(L.V)) {
        L.trivial = true;
        return L;
    }
    L.r = detail::local_order(L.U, L.V, prime, max_r);
    return L;
}

/// Lines 5-17: the Noetherian multipliers of M at P.
inline std::vector<QVector> local_solve(const QModule& prime, const LocalData& L, const QRingPtr& mring) {
    if (L.trivial) return {};
    detail::LocalSystem sys(prime, L.indep, L.U.rank(), L.r);
    std::vector<QVector> out;
    for (const auto& v : sys.quotient(L.U, L.V)) out.push_back(sys.lift(v, mring));
    return out;
}

/// New multiplier classes at P per dz-degree; the length minus one is the
/// least possible top degree of any set of Noetherian multipliers at P.
inline std::vector<std::size_t> multiplier_degree_profile(const QModule& prime, const LocalData& L) {
    if (L.trivial) return {};
    detail::LocalSystem sys(prime, L.indep, L.U.rank(), L.r);
    return sys.quotient_profile(L.U, L.V);
}

inline std::vector<QModule> prime_ideals(const std::vector<PrimeIdeal>& ps) {
    std::vector<QModule> out;
    for (const auto& p : ps) out.push_back(p.ideal);
    return out;
}

/// Local multiplicity of M at a candidate prime; 0 means not associated.
inline std::size_t verify_associated(const QModule& m, const QModule& prime, const std::vector<QModule>& all_primes,
                                     unsigned max_r = 32) {
    auto L = local_data(m, prime, all_primes, max_r);
    if (L.trivial) return 0;
    detail::LocalSystem sys(prime, L.indep, L.U.rank(), L.r);
    return sys.quotient(L.U, L.V).size();
}

inline std::vector<PrimeIdeal> associated_primes(const QModule& m, const SolveOptions& opts = {}) {
    if (!opts.primes) return computed_associated_primes(m, opts.seed);
    std::vector<PrimeIdeal> out;
    for (const auto& p : *opts.primes) {
        if (p.rank() != 1 || p.ring() != m.ring()) throw InputError("provided prime must be an ideal of the same ring");
        if (p.is_whole()) throw InputError("provided prime is not proper");
        if (verify_associated(m, p, *opts.primes, opts.max_r) == 0) {
            std::string s;
            for (const auto& g : p.ideal_generators()) s += (s.empty() ? "" : ", ") + g.to_string();
            throw MathDiagnostic("provided prime <" + s + "> is not associated");
        }
        out.push_back({p.reduced(), PrimeCertificate::UserProvided, ideal_codim(p)});
    }
    sort_primes(out);
    return out;
}

/// Algorithm 1: associated primes with Noetherian multipliers, each
/// multiplier checked against every generator before returning.
inline Decomposition solve_pde(const QModule& m, const SolveOptions& opts = {}) {
    Decomposition dpd;
    dpd.ring = m.ring();
    dpd.mring = multiplier_ring(m.ring());
    dpd.k = m.rank();
    auto primes = associated_primes(m, opts);
    auto ideals = prime_ideals(primes);
    for (const auto& p : primes) {
        auto L = local_data(m, p.ideal, ideals, opts.max_r);
        Component c{p, L.indep, local_solve(p.ideal, L, dpd.mring)};
        if (c.multipliers.empty()) throw MathDiagnostic("prime " + p.ideal.ideal_generators().front().to_string() +
                                                        " has multiplicity 0");
        for (const auto& b : c.multipliers)
            if (!verify_solution(b, p.ideal, m)) throw MathDiagnostic("multiplier failed verification");
        dpd.components.push_back(std::move(c));
    }
    return dpd;
}

inline std::size_t amult(const QModule& m, const SolveOptions& opts = {}) { return solve_pde(m, opts).amult(); }

/// Number of standard (monomial, component) pairs of R^k/M, if finite.
inline std::optional<std::size_t> standard_monomial_count(const QModule& m) {
    std::size_t n = m.ring()->nvars(), total = 0;
    std::vector<std::size_t> vars(n);
    for (std::size_t i = 0; i < n; ++i) vars[i] = i;
    auto lts = m.gb().leading_terms();
    for (std::size_t j = 0; j < m.rank(); ++j) {
        std::vector<Monomial> comp;
        for (const auto& [mono, c] : lts)
            if (c == j) comp.push_back(mono);
        try {
            total += detail::standard_monomials(comp, vars).size();
        } catch (const MathDiagnostic&) {
            return std::nullopt;
        }
    }
    return total;
}

/// dim Sol(M): finite iff every associated prime is maximal; nullopt means
/// infinite.
inline std::optional<std::size_t> dim_sol(const QModule& m, const SolveOptions& opts = {}) {
    if (m.is_whole()) return 0;
    auto dpd = solve_pde(m, opts);
    std::size_t weighted = 0;
    for (const auto& c : dpd.components) {
        if (!c.indep.empty()) return std::nullopt;
        weighted += c.multiplicity() * ResidueField(c.prime.ideal, {}).degree();
    }
    auto count = standard_monomial_count(m);
    if (!count || *count != weighted)
        throw MathDiagnostic("dimension cross-check failed: " + std::to_string(weighted) + " vs standard monomials");
    return weighted;
}

struct PolynomialSolutions {
    QModule component;            // M : Ann(R^k / (M : m^inf))
    std::vector<QVector> basis;   // polynomials in the dz variables
    std::vector<std::size_t> degree_profile;  // number of new solutions in each degree
};

inline QModule origin_component(const QModule& m) {
    auto mx = detail::maximal_ideal(m.ring());
    auto sat = saturate(m, mx).module;
    if (sat.is_whole()) return m;
    return colon(m, annihilator(sat));
}

inline PolynomialSolutions polynomial_solutions(const QModule& m, const SolveOptions& opts = {}) {
    PolynomialSolutions out;
    out.component = origin_component(m);
    std::size_t k = m.rank();
    if (out.component.is_whole() || m.ring()->nvars() == 0) return out;
    auto mx = detail::maximal_ideal(m.ring());
    auto whole = QModule::whole(m.ring(), k);
    unsigned r = detail::local_order(out.component, whole, mx, opts.max_r);
    detail::LocalSystem sys(mx, {}, k, r);
    auto mring = multiplier_ring(m.ring());
    for (const auto& v : sys.kernel(out.component)) out.basis.push_back(sys.lift(v, mring));
    // dimension of solutions of degree <= d, from the column suffix of degree <= d
    auto rows = sys.diff(out.component);
    std::size_t prev = 0;
    for (unsigned d = 0; d <= r; ++d) {
        std::size_t first = sys.cols();
        for (std::size_t c = 0; c < sys.cols(); ++c)
            if (sys.monos[sys.mono_of(c)].degree() <= d) {
                first = c;
                break;
            }
        std::vector<DenseRow<ResidueField>> sub;
        for (const auto& row : rows) sub.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(first), row.end());
        std::size_t width = sys.cols() - first;
        std::size_t dim = width - rref(sys.K, sub, width).rank();
        out.degree_profile.push_back(dim - prev);
        prev = dim;
    }
    while (!out.degree_profile.empty() && out.degree_profile.back() == 0) out.degree_profile.pop_back();
    return out;
}

/// Degree profile of the Noetherian multipliers at the origin; empty when
/// the maximal ideal is not associated.
inline std::vector<std::size_t> origin_multiplier_profile(const QModule& m, const SolveOptions& opts = {}) {
    auto mx = detail::maximal_ideal(m.ring());
    auto ps = associated_primes(m, opts);
    bool found = false;
    for (const auto& p : ps) found = found || (p.ideal.contains(mx) && mx.contains(p.ideal));
    if (!found) return {};
    return multiplier_degree_profile(mx, local_data(m, mx, prime_ideals(ps), opts.max_r));
}

struct PolynomialClosure {
    bool dense = true;
    std::optional<QModule> component;
};

inline PolynomialClosure polynomial_closure(const QModule& m, const SolveOptions& opts = {}) {
    std::vector<Rational> origin(m.ring()->nvars(), Rational(0));
    for (const auto& p : associated_primes(m, opts))
        for (const auto& g : p.ideal.ideal_generators())
            if (evaluate(g, origin) != 0) return {false, origin_component(m)};
    return {};
}

/// A covector c with c . A(u) = 0, so that c exp(u.z) solves M.
inline std::optional<std::vector<Rational>> exponential_point_test(const QModule& m, const std::vector<Rational>& u) {
    if (u.size() != m.ring()->nvars()) throw InputError("point has the wrong number of coordinates");
    RationalField q;
    std::vector<DenseRow<RationalField>> rows;
    for (const auto& g : m.generators()) {
        DenseRow<RationalField> row;
        for (const auto& p : g) row.push_back(evaluate(p, u));
        rows.push_back(std::move(row));
    }
    auto ker = kernel_basis(q, rows, m.rank());
    if (ker.empty()) return std::nullopt;
    return ker.front();
}

struct CharacteristicVariety {
    QModule annihilator;
    QModule fitting;
    std::vector<PrimeIdeal> primes;
};

inline CharacteristicVariety characteristic_variety(const QModule& m, std::uint64_t seed = 0) {
    CharacteristicVariety cv{annihilator(m).reduced(), fitting_ideal(m.ring(), m.rank(), m.generators()).reduced(), {}};
    if (!radical_contains(cv.annihilator, cv.fitting) || !radical_contains(cv.fitting, cv.annihilator))
        throw MathDiagnostic("annihilator and Fitting ideal have different varieties");
    if (!cv.annihilator.is_whole()) cv.primes = minimal_primes(cv.annihilator, seed);
    return cv;
}

}  // namespace lpde
