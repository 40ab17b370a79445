#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpde/factor.hpp"
#include "lpde/gcd.hpp"
#include "lpde/linalg.hpp"
#include "lpde/module_ops.hpp"

namespace lpde {

enum class PrimeCertificate { UnivariateFactor, SplitLeaf, UserProvided };

inline std::string to_string(PrimeCertificate c) {
    switch (c) {
        case PrimeCertificate::UnivariateFactor: return "UnivariateFactor";
        case PrimeCertificate::SplitLeaf: return "SplitLeaf";
        case PrimeCertificate::UserProvided: return "UserProvided-Verified";
    }
    return "?";
}

struct PrimeIdeal {
    QModule ideal;  // generated by its reduced Groebner basis
    PrimeCertificate certificate = PrimeCertificate::UnivariateFactor;
    std::size_t codim = 0;
};

/// Total order on ideals: compares reduced Groebner bases, generators
/// ascending by leading term.
inline int canonical_ideal_compare(const QModule& a, const QModule& b) {
    auto ga = a.reduced().ideal_generators();
    auto gb = b.reduced().ideal_generators();
    std::size_t n = std::min(ga.size(), gb.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = ga[i].canonical_compare(gb[i]);
        if (c) return c;
    }
    if (ga.size() == gb.size()) return 0;
    return ga.size() < gb.size() ? -1 : 1;
}

inline void sort_primes(std::vector<PrimeIdeal>& ps) {
    std::stable_sort(ps.begin(), ps.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.codim != b.codim) return a.codim < b.codim;
        return canonical_ideal_compare(a.ideal, b.ideal) < 0;
    });
}

// ---------------------------------------------------------------------------
// Independent sets

/// A maximum-size set of variables, none of whose monomials lies in the
/// initial ideal of P (grevlex). Subsets are scanned by decreasing size,
/// lexicographically by index, so the result is deterministic.
inline std::vector<std::size_t> independent_set(const QModule& p) {
    const auto& ring = p.ring();
    std::size_t n = ring->nvars();
    auto gb = p.gb(ModuleOrder{MonomialOrder::grevlex(n), 0, true});
    if (gb.is_whole()) throw MathDiagnostic("independent set of the unit ideal");
    std::vector<Monomial> lts;
    for (const auto& [m, c] : gb.leading_terms()) lts.push_back(m);
    for (std::size_t size = n + 1; size-- > 0;) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        for (;;) {
            std::uint32_t mask = 0;
            for (auto v : pick) mask |= std::uint32_t{1} << v;
            bool ok = std::none_of(lts.begin(), lts.end(), [&](const Monomial& m) { return m.supported_in(mask); });
            if (ok) return pick;
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return {};
}

inline std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(s.begin(), s.end(), i) == s.end()) out.push_back(i);
    return out;
}

inline std::size_t ideal_codim(const QModule& p) {
    return p.ring()->nvars() - independent_set(p).size();
}

// ---------------------------------------------------------------------------
// Free resolutions and Ext

struct FreeResolution {
    QRingPtr ring;
    std::vector<std::size_t> ranks;        // ranks[0] = k
    std::vector<std::vector<QVector>> maps;  // maps[i]: columns of d_{i+1}, each of length ranks[i]
};

/// Drops generators that lie in the span of earlier kept ones, scanning by
/// ascending degree.
inline std::vector<QVector> prune_generators(const QRingPtr& ring, std::size_t k, std::vector<QVector> gens) {
    auto vdeg = [](const QVector& v) {
        int d = -1;
        for (const auto& p : v) d = std::max(d, p.degree());
        return d;
    };
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const QVector& v) { return detail::is_zero_vector(v); }),
               gens.end());
    std::stable_sort(gens.begin(), gens.end(), [&](const QVector& a, const QVector& b) { return vdeg(a) < vdeg(b); });
    std::vector<QVector> kept;
    for (auto& g : gens) {
        if (!kept.empty() && QModule(ring, k, kept).contains(g)) continue;
        kept.push_back(std::move(g));
    }
    return kept;
}

inline FreeResolution free_resolution(const QModule& m) {
    FreeResolution res{m.ring(), {m.rank()}, {}};
    std::size_t n = m.ring()->nvars();
    auto cur = prune_generators(m.ring(), m.rank(), m.generators());
    while (!cur.empty()) {
        res.ranks.push_back(cur.size());
        res.maps.push_back(cur);
        if (res.maps.size() > n) break;
        auto syz = syzygies(m.ring(), res.ranks[res.ranks.size() - 2], cur);
        cur = prune_generators(m.ring(), res.ranks.back(), std::move(syz));
    }
    return res;
}

namespace detail {
inline std::vector<QVector> transpose_rows(const std::vector<QVector>& cols, std::size_t nrows) {
    std::vector<QVector> rows(nrows);
    for (std::size_t r = 0; r < nrows; ++r)
        for (const auto& c : cols) rows[r].push_back(c[r]);
    return rows;
}
}  // namespace detail

/// Ann Ext^i(R^k/M, R) for i = 0..n, from the dual of a free resolution.
inline std::vector<QModule> ext_annihilators(const QModule& m) {
    const auto& ring = m.ring();
    std::size_t n = ring->nvars();
    auto res = free_resolution(m);
    std::vector<QModule> out;
    for (std::size_t i = 0; i <= n; ++i) {
        std::size_t li = i < res.ranks.size() ? res.ranks[i] : 0;
        if (li == 0) {
            out.push_back(QModule::whole(ring, 1));
            continue;
        }
        std::vector<QVector> ker;
        if (i < res.maps.size()) {
            auto rows = detail::transpose_rows(res.maps[i], li);
            ker = syzygies(ring, res.ranks[i + 1], rows);
        } else {
            for (std::size_t j = 0; j < li; ++j) ker.push_back(QModule::unit_vector(ring, li, j));
        }
        std::vector<QVector> img;
        if (i > 0) img = detail::transpose_rows(res.maps[i - 1], res.ranks[i - 1]);
        out.push_back(annihilator_quotient(QModule(ring, li, ker), QModule(ring, li, img)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minimal primes

namespace detail {

inline QPoly qconst(const QRingPtr& ring, long c) { return QPoly::constant(ring, c); }

/// Pieces whose product has the same radical as <g>, or nullopt if no
/// reduction applies. One piece means "replace g by it".
inline std::optional<std::vector<QPoly>> split_pieces(const QPoly& g, std::uint64_t seed) {
    const auto& ring = g.ring();
    if (g.is_constant()) return std::nullopt;
    auto m = monomial_content(g);
    if (!m.is_constant()) {
        std::vector<QPoly> pieces;
        for (std::size_t v = 0; v < ring->nvars(); ++v)
            if (m.degree_in(v) > 0) pieces.push_back(QPoly::variable(ring, v));
        auto rest = *divide_exact(g, m);
        if (!rest.is_constant()) pieces.push_back(rest);
        if (pieces.size() > 1 || pieces[0].degree() < g.degree()) return pieces;
    }
    auto s = squarefree_part(g);
    if (s.degree() < g.degree()) return std::vector<QPoly>{s};
    std::uint32_t sup = g.support();
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
        if (!(sup & (std::uint32_t{1} << v)) || sup == (std::uint32_t{1} << v)) continue;
        auto c = content_in(g, v);
        if (!c.is_constant()) return std::vector<QPoly>{c, *divide_exact(g, c)};
    }
    if (std::popcount(sup) == 1) {
        std::size_t v = static_cast<std::size_t>(std::countr_zero(sup));
        auto fs = factor_univariate(g, v, seed);
        if (fs.size() > 1) {
            std::vector<QPoly> pieces;
            for (auto& f : fs) pieces.push_back(f.factor);
            return pieces;
        }
    } else if (std::popcount(sup) == 2 && g.is_homogeneous()) {
        std::size_t x = static_cast<std::size_t>(std::countr_zero(sup));
        std::size_t y = static_cast<std::size_t>(31 - std::countl_zero(sup));
        auto fs = factor_univariate(evaluate_partial(g, y, Rational(1)), x, seed);
        if (fs.size() > 1) {
            std::vector<QPoly> pieces;
            for (auto& f : fs) {
                int d = f.factor.degree();
                std::vector<Term<RationalField>> ts;
                for (const auto& t : f.factor.terms()) {
                    Monomial mm = t.mono;
                    mm.set(y, static_cast<Exponent>(d - static_cast<int>(t.mono[x])));
                    ts.push_back({mm, t.coeff});
                }
                pieces.push_back(QPoly::from_terms(ring, std::move(ts)));
            }
            return pieces;
        }
    }
    return std::nullopt;
}

/// Coefficient of the leading dependent-variable monomial, as a polynomial
/// in the independent variables.
inline QPoly leading_coefficient_in(const QPoly& g, const std::vector<std::size_t>& dep) {
    auto dep_part = [&](const Monomial& m) {
        Monomial d;
        for (auto v : dep) d.set(v, m[v]);
        return d;
    };
    Monomial lead = dep_part(g.leading_monomial());
    std::vector<Term<RationalField>> ts;
    for (const auto& t : g.terms()) {
        if (!(dep_part(t.mono) == lead)) continue;
        Monomial m = t.mono;
        for (auto v : dep) m.set(v, 0);
        ts.push_back({m, t.coeff});
    }
    return QPoly::from_terms(g.ring(), std::move(ts));
}

/// Standard monomials (in the variables `vars`) of a zero-dimensional
/// leading-term set restricted to those variables.
inline std::vector<Monomial> standard_monomials(const std::vector<Monomial>& lts, const std::vector<std::size_t>& vars,
                                                std::size_t cap = 4096) {
    std::vector<Monomial> out;
    std::vector<Monomial> frontier{Monomial()};
    auto standard = [&](const Monomial& m) {
        return std::none_of(lts.begin(), lts.end(), [&](const Monomial& l) { return l.divides(m); });
    };
    if (!standard(Monomial())) return out;
    out.push_back(Monomial());
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (auto v : vars) {
            Monomial m = out[head] * Monomial::variable(v);
            if (!standard(m)) continue;
            if (std::find(out.begin(), out.end(), m) != out.end()) continue;
            out.push_back(m);
            if (out.size() > cap) throw MathDiagnostic("quotient is not zero-dimensional");
        }
    }
    return out;
}

/// Minimal polynomial of f in R/<gb>, where gb is a Groebner basis whose
/// standard monomials are `basis`. Returned as a dense list of
/// coefficients, low to high, monic.
inline std::vector<Rational> minimal_polynomial(const GroebnerBasis<RationalField>& gb, const std::vector<Monomial>& basis,
                                                const QPoly& f) {
    const auto& ring = f.ring();
    RationalField qq;
    auto coords = [&](const QPoly& p) {
        DenseRow<RationalField> row(basis.size(), Rational(0));
        for (const auto& t : p.terms()) {
            auto it = std::find(basis.begin(), basis.end(), t.mono);
            if (it == basis.end()) throw MathDiagnostic("normal form outside the standard basis");
            row[static_cast<std::size_t>(it - basis.begin())] = t.coeff;
        }
        return row;
    };
    std::vector<DenseRow<RationalField>> powers;
    QPoly cur = QPoly::constant(ring, 1);
    for (std::size_t d = 0; d <= basis.size(); ++d) {
        powers.push_back(coords(cur));
        // columns = powers; find a kernel vector
        std::size_t cols = powers.size();
        std::vector<DenseRow<RationalField>> mat(basis.size(), DenseRow<RationalField>(cols));
        for (std::size_t r = 0; r < basis.size(); ++r)
            for (std::size_t c = 0; c < cols; ++c) mat[r][c] = powers[c][r];
        auto ker = kernel_basis(qq, mat, cols);
        if (!ker.empty()) {
            auto v = ker.front();
            Rational lead = v.back();
            for (auto& x : v) x /= lead;
            return v;
        }
        cur = gb.normal_form({cur * f})[0];
    }
    throw MathDiagnostic("minimal polynomial not found");
}

class PrimeSplitter {
public:
    PrimeSplitter(QRingPtr ring, std::uint64_t seed) : ring_(std::move(ring)), seed_(seed) {}

    void run(const QModule& ideal) {
        if (ideal.is_whole()) return;
        auto red = ideal.reduced();
        auto gens = red.ideal_generators();
        if (gens.empty() || std::all_of(gens.begin(), gens.end(), [](const QPoly& g) { return g.degree() == 1; })) {
            emit(red, PrimeCertificate::UnivariateFactor);
            return;
        }
        for (const auto& g : gens)
            if (try_pieces(red, g)) return;

        std::size_t n = ring_->nvars();
        auto s = independent_set(red);
        auto dep = complement(n, s);
        if (!s.empty() || dep.size() > 1) {
            for (auto v : dep) {
                auto keep = s;
                keep.push_back(v);
                std::sort(keep.begin(), keep.end());
                auto elim = eliminate(red, keep).reduced().ideal_generators();
                for (const auto& g : elim)
                    if (try_pieces(red, g)) return;
            }
        }

        // split off the locus where a leading coefficient over K[S] vanishes
        auto gb = red.gb(ModuleOrder{MonomialOrder::elimination(n, dep), 0, true});
        QPoly h = qconst(ring_, 1);
        std::vector<QPoly> lcs;
        for (const auto& v : gb.vectors()) {
            auto lc = leading_coefficient_in(v[0], dep);
            lcs.push_back(lc);
            if (!lc.is_constant()) h = h * squarefree_part(lc);
        }
        if (!h.is_constant()) {
            h = squarefree_part(h);
            auto sat = saturate(red, h).module;
            if (!red.contains(sat)) {
                run(sat);
                run(red + QModule::ideal(ring_, {h}));
                return;
            }
        }
        certify(red, gb, s, dep, lcs);
    }

    std::vector<PrimeIdeal> result() {
        // drop non-minimal and duplicate leaves
        std::vector<PrimeIdeal> out;
        for (std::size_t i = 0; i < leaves_.size(); ++i) {
            bool drop = false;
            for (std::size_t j = 0; j < leaves_.size() && !drop; ++j) {
                if (i == j || !leaves_[i].ideal.contains(leaves_[j].ideal)) continue;
                if (!leaves_[j].ideal.contains(leaves_[i].ideal) || j < i) drop = true;
            }
            if (!drop) out.push_back(leaves_[i]);
        }
        sort_primes(out);
        return out;
    }

private:
    bool try_pieces(const QModule& ideal, const QPoly& g) {
        auto pieces = split_pieces(g, seed_);
        if (!pieces) return false;
        std::vector<QModule> branches;
        for (const auto& p : *pieces) {
            if (ideal.contains(QVector{p})) continue;
            branches.push_back(ideal + QModule::ideal(ring_, {p}));
        }
        if (branches.empty()) return false;
        for (const auto& b : branches) run(b);
        return true;
    }

    void emit(const QModule& p, PrimeCertificate cert) {
        for (const auto& l : leaves_)
            if (l.ideal.equals(p)) return;
        leaves_.push_back({p.reduced(), cert, ideal_codim(p)});
    }

    /// Primality test for an ideal equal to its contraction from K(S)[dep]:
    /// specialize S to a point where no leading coefficient vanishes; if a
    /// linear form then has an irreducible minimal polynomial of full degree
    /// the extension is a field, hence the ideal is prime. Zero-dimensional
    /// ideals whose minimal polynomial factors are split on the factors.
    void certify(const QModule& ideal, const GroebnerBasis<RationalField>& gb, const std::vector<std::size_t>& s,
                 const std::vector<std::size_t>& dep, const std::vector<QPoly>& lcs) {
        std::vector<Monomial> dep_lts;
        for (const auto& [m, c] : gb.leading_terms()) {
            Monomial d;
            for (auto v : dep) d.set(v, m[v]);
            dep_lts.push_back(d);
        }
        std::size_t degree = standard_monomials(dep_lts, dep).size();
        auto t_ring = make_qring({"t"});
        std::mt19937_64 rng(seed_ ^ 0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<int> small(-7, 7);
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::vector<Rational> point;
            for (std::size_t i = 0; i < s.size(); ++i) point.push_back(Rational(attempt == 0 ? int(i) + 2 : small(rng)));
            bool good = true;
            for (const auto& lc : lcs) {
                QPoly e = lc;
                for (std::size_t i = 0; i < s.size(); ++i) e = evaluate_partial(e, s[i], point[i]);
                if (e.is_zero()) good = false;
            }
            if (!good) continue;
            std::vector<QPoly> spec;
            for (const auto& v : gb.vectors()) {
                QPoly e = v[0];
                for (std::size_t i = 0; i < s.size(); ++i) e = evaluate_partial(e, s[i], point[i]);
                spec.push_back(e);
            }
            QModule special = QModule::ideal(ring_, spec);
            const auto& sgb = special.gb();
            if (sgb.is_whole()) continue;
            std::vector<Monomial> lts;
            for (const auto& [m, c] : sgb.leading_terms()) lts.push_back(m);
            auto basis = standard_monomials(lts, dep);
            if (basis.size() != degree) continue;

            QPoly ell(ring_);
            for (std::size_t j = 0; j < dep.size(); ++j) {
                long c = attempt == 0 ? static_cast<long>(j) + 1 : small(rng);
                if (c == 0) c = 1;
                ell = ell + QPoly::variable(ring_, dep[j]).scaled(Rational(c));
            }
            auto mu = minimal_polynomial(sgb, basis, ell);
            std::vector<Term<RationalField>> ts;
            for (std::size_t i = 0; i < mu.size(); ++i)
                if (mu[i] != 0) ts.push_back({Monomial::variable(0, static_cast<Exponent>(i)), mu[i]});
            auto mu_poly = QPoly::from_terms(t_ring, std::move(ts));
            auto fs = factor_univariate(mu_poly, 0, seed_);
            if (fs.size() == 1 && fs[0].exponent == 1 && mu.size() - 1 == degree) {
                emit(ideal, PrimeCertificate::UnivariateFactor);
                return;
            }
            if (s.empty() && (fs.size() > 1 || fs[0].exponent > 1)) {
                // mu(ell) lies in the ideal; split on its factors
                std::vector<QModule> branches;
                for (const auto& f : fs) {
                    auto fe = substitute(f.factor, ring_, std::vector<QPoly>{ell}, [](const Rational& c) { return c; });
                    if (!ideal.contains(QVector{fe})) branches.push_back(ideal + QModule::ideal(ring_, {fe}));
                }
                if (!branches.empty()) {
                    for (const auto& b : branches) run(b);
                    return;
                }
            }
        }
        emit(ideal, PrimeCertificate::SplitLeaf);
    }

    QRingPtr ring_;
    std::uint64_t seed_;
    std::vector<PrimeIdeal> leaves_;
};

}  // namespace detail

/// Minimal primes of a proper ideal by recursive splitting.
inline std::vector<PrimeIdeal> minimal_primes(const QModule& ideal, std::uint64_t seed = 0) {
    if (!ideal.is_ideal()) throw InputError("minimal_primes expects an ideal");
    if (ideal.is_whole()) throw MathDiagnostic("minimal primes of the unit ideal");
    detail::PrimeSplitter sp(ideal.ring(), seed);
    sp.run(ideal);
    return sp.result();
}

/// Associated primes via the Ext criterion: the primes of codimension i
/// are the minimal primes of Ann Ext^i of codimension exactly i.
inline std::vector<PrimeIdeal> computed_associated_primes(const QModule& m, std::uint64_t seed = 0) {
    std::vector<PrimeIdeal> out;
    auto anns = ext_annihilators(m);
    for (std::size_t i = 0; i < anns.size(); ++i) {
        if (anns[i].is_whole()) continue;
        for (auto& p : minimal_primes(anns[i], seed)) {
            if (p.codim != i) continue;
            bool dup = std::any_of(out.begin(), out.end(), [&](const PrimeIdeal& q) { return q.ideal.equals(p.ideal); });
            if (!dup) out.push_back(std::move(p));
        }
    }
    sort_primes(out);
    return out;
}

}  // namespace lpde
