#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "lpde/polynomial.hpp"

namespace lpde {

namespace upoly {

// Dense univariate polynomials, coefficient i is the coefficient of x^i,
// no trailing zeros.
using ZPoly = std::vector<Integer>;
using QDense = std::vector<Rational>;
using ModPoly = std::vector<std::uint64_t>;

template <class V>
void trim(V& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

// ---- arithmetic over Q ----

inline QDense q_sub(QDense a, const QDense& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

inline QDense q_mul(const QDense& a, const QDense& b) {
    if (a.empty() || b.empty()) return {};
    QDense r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline std::pair<QDense, QDense> q_divmod(QDense a, const QDense& b) {
    if (b.empty()) throw MathDiagnostic("division by zero polynomial");
    QDense q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Rational c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline QDense q_monic(QDense a) {
    if (a.empty()) return a;
    Rational l = a.back();
    for (auto& c : a) c /= l;
    return a;
}

inline QDense q_gcd(QDense a, QDense b) {
    while (!b.empty()) {
        auto r = q_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return q_monic(a);
}

inline QDense q_derivative(const QDense& a) {
    QDense d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
    trim(d);
    return d;
}

/// Primitive integer polynomial with positive leading coefficient.
inline ZPoly primitive_z(const QDense& a) {
    Integer den = 1, g = 0;
    for (const auto& c : a) den = integer_lcm(den, c.get_den());
    ZPoly z;
    for (const auto& c : a) {
        Integer v = c.get_num() * (den / c.get_den());
        z.push_back(v);
        g = integer_gcd(g, v);
    }
    if (g != 0)
        for (auto& c : z) c /= g;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

inline QDense to_q(const ZPoly& z) {
    QDense q;
    for (const auto& c : z) q.emplace_back(c);
    return q;
}

// ---- arithmetic over Z ----

inline ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

/// Exact division over Z, if b divides a.
inline std::optional<ZPoly> z_divide(ZPoly a, const ZPoly& b) {
    if (b.empty()) return std::nullopt;
    ZPoly q;
    if (a.size() < b.size()) {
        if (a.empty()) return ZPoly{};
        return std::nullopt;
    }
    q.assign(a.size() - b.size() + 1, Integer(0));
    while (!a.empty()) {
        if (a.size() < b.size()) return std::nullopt;
        std::size_t shift = a.size() - b.size();
        if (a.back() % b.back() != 0) return std::nullopt;
        Integer c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        trim(a);
    }
    trim(q);
    return q;
}

inline Integer mods(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

inline ZPoly z_mod(ZPoly a, const Integer& m) {
    for (auto& c : a) {
        c %= m;
        if (c < 0) c += m;
    }
    trim(a);
    return a;
}

// ---- arithmetic over F_p ----

struct Fp {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

    ModPoly reduce(const ZPoly& z) const {
        ModPoly r;
        Integer pp = static_cast<unsigned long>(p);
        for (const auto& c : z) {
            Integer v = c % pp;
            if (v < 0) v += pp;
            r.push_back(v.get_ui());
        }
        trim(r);
        return r;
    }

    ModPoly mul(const ModPoly& a, const ModPoly& b) const {
        if (a.empty() || b.empty()) return {};
        ModPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        trim(r);
        return r;
    }

    ModPoly sub(ModPoly a, const ModPoly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i]);
        trim(a);
        return a;
    }

    std::pair<ModPoly, ModPoly> divmod(ModPoly a, const ModPoly& b) const {
        ModPoly q;
        if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
        std::uint64_t il = inv(b.back());
        while (!a.empty() && a.size() >= b.size()) {
            std::size_t shift = a.size() - b.size();
            std::uint64_t c = mul(a.back(), il);
            q[shift] = c;
            for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = sub(a[i + shift], mul(c, b[i]));
            trim(a);
        }
        trim(q);
        return {q, a};
    }

    ModPoly rem(const ModPoly& a, const ModPoly& b) const { return divmod(a, b).second; }

    ModPoly monic(ModPoly a) const {
        if (a.empty()) return a;
        std::uint64_t il = inv(a.back());
        for (auto& c : a) c = mul(c, il);
        return a;
    }

    ModPoly gcd(ModPoly a, ModPoly b) const {
        while (!b.empty()) {
            auto r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    /// s, t with s a + t b = gcd(a, b) (monic).
    void xgcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) const {
        ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            auto ns = sub(s0, mul(q, s1));
            s0 = std::move(s1);
            s1 = std::move(ns);
            auto nt = sub(t0, mul(q, t1));
            t0 = std::move(t1);
            t1 = std::move(nt);
        }
        std::uint64_t il = inv(r0.back());
        for (auto& c : s0) c = mul(c, il);
        for (auto& c : t0) c = mul(c, il);
        s = s0;
        t = t0;
    }

    ModPoly powmod(ModPoly base, const Integer& e, const ModPoly& m) const {
        ModPoly r{1};
        base = rem(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = rem(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
        }
        return r;
    }

    ModPoly derivative(const ModPoly& a) const {
        ModPoly d;
        for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mul(a[i], i % p));
        trim(d);
        return d;
    }
};

/// Monic irreducible factors of a monic squarefree f over F_p (p odd),
/// by distinct-degree then Cantor-Zassenhaus equal-degree splitting.
inline std::vector<ModPoly> factor_mod_p(const Fp& fp, ModPoly f, std::mt19937_64& rng) {
    std::vector<ModPoly> out;
    ModPoly x{0, 1};
    ModPoly h = x;
    std::vector<std::pair<ModPoly, unsigned>> by_degree;
    for (unsigned d = 1; 2 * d <= f.size() - 1; ++d) {
        h = fp.powmod(h, Integer(static_cast<unsigned long>(fp.p)), f);
        ModPoly g = fp.gcd(f, fp.sub(h, x));
        if (g.size() > 1) {
            by_degree.emplace_back(g, d);
            f = fp.divmod(f, g).first;
            h = fp.rem(h, f);
        }
        if (f.size() <= 1) break;
    }
    if (f.size() > 1) by_degree.emplace_back(f, static_cast<unsigned>(f.size() - 1));

    for (auto& [g, d] : by_degree) {
        std::vector<ModPoly> todo{g};
        while (!todo.empty()) {
            ModPoly cur = todo.back();
            todo.pop_back();
            if (cur.size() - 1 == d) {
                out.push_back(fp.monic(cur));
                continue;
            }
            Integer pd;
            mpz_ui_pow_ui(pd.get_mpz_t(), fp.p, d);
            Integer e = (pd - 1) / 2;
            for (;;) {
                ModPoly a;
                for (std::size_t i = 0; i + 1 < cur.size(); ++i) a.push_back(rng() % fp.p);
                trim(a);
                if (a.size() < 2) continue;
                ModPoly b = fp.sub(fp.powmod(a, e, cur), ModPoly{1});
                ModPoly s = fp.gcd(cur, b);
                if (s.size() > 1 && s.size() < cur.size()) {
                    todo.push_back(s);
                    todo.push_back(fp.divmod(cur, s).first);
                    break;
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ZPoly lift_mod(const ModPoly& a) {
    ZPoly z;
    for (auto c : a) z.emplace_back(static_cast<unsigned long>(c));
    return z;
}

/// Lifts f = lc * g * h (mod p), g monic, to modulus p^k.
inline void hensel_two(const ZPoly& f, ZPoly& g, ZPoly& h, const Fp& fp, unsigned k) {
    ModPoly s, t;
    fp.xgcd(fp.reduce(g), fp.reduce(h), s, t);
    Integer p = static_cast<unsigned long>(fp.p), pj = p;
    for (unsigned j = 1; j < k; ++j) {
        ZPoly gh = z_mul(g, h);
        ZPoly e(std::max(f.size(), gh.size()), Integer(0));
        for (std::size_t i = 0; i < f.size(); ++i) e[i] += f[i];
        for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
        for (auto& c : e) c /= pj;  // exact
        trim(e);
        ModPoly em = fp.reduce(e);
        if (!em.empty()) {
            // te = q g + tau gives e = (se + q h) g + tau h, deg tau < deg g
            ModPoly se = fp.mul(s, em), te = fp.mul(t, em);
            auto [q, tau] = fp.divmod(te, fp.reduce(g));
            ModPoly sig = fp.sub(se, fp.sub(ModPoly{}, fp.mul(q, fp.reduce(h))));
            // g <- g + p^j tau, h <- h + p^j sig
            ZPoly tz = lift_mod(tau), sz = lift_mod(sig);
            if (g.size() < tz.size()) g.resize(tz.size(), Integer(0));
            for (std::size_t i = 0; i < tz.size(); ++i) g[i] += pj * tz[i];
            if (h.size() < sz.size()) h.resize(sz.size(), Integer(0));
            for (std::size_t i = 0; i < sz.size(); ++i) h[i] += pj * sz[i];
            trim(g);
            trim(h);
        }
        pj *= p;
    }
}

/// Irreducible factors over Z of a primitive squarefree f with deg f >= 2.
inline std::vector<ZPoly> factor_squarefree_z(const ZPoly& f, std::mt19937_64& rng) {
    int n = deg(f);
    if (n <= 1) return {f};
    const Integer& lc = f.back();

    // pick the good prime with fewest modular factors among the first few
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t p = 3; candidates.size() < 6 && p < 100000; p += 2) {
        bool prime = true;
        for (std::uint64_t d = 3; d * d <= p; d += 2)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (!prime || lc % static_cast<unsigned long>(p) == 0) continue;
        Fp fp{p};
        ModPoly fm = fp.reduce(f);
        if (fp.gcd(fm, fp.derivative(fm)).size() != 1) continue;
        candidates.push_back(p);
    }
    if (candidates.empty()) throw MathDiagnostic("no good prime for factorization");
    std::uint64_t best_p = 0;
    std::vector<ModPoly> best;
    for (auto p : candidates) {
        Fp fp{p};
        auto facs = factor_mod_p(fp, fp.monic(fp.reduce(f)), rng);
        if (best_p == 0 || facs.size() < best.size()) {
            best_p = p;
            best = std::move(facs);
        }
        if (best.size() == 1) return {f};
    }

    Fp fp{best_p};
    // coefficient bound: 2^n * ||f||_2 * |lc|, doubled for symmetric residues
    Integer norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    Integer bound = sqrt(norm2) + 1;
    bound <<= static_cast<unsigned>(n);
    bound *= abs(lc);
    bound *= 2;
    Integer p = static_cast<unsigned long>(best_p), pk = p;
    unsigned k = 1;
    while (pk <= bound) {
        pk *= p;
        ++k;
    }

    // multifactor lifting by peeling one monic factor at a time
    std::vector<ZPoly> lifted;
    ZPoly rest = f;
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
        ZPoly g = lift_mod(best[i]);
        ModPoly hm{1};
        for (std::size_t j = i + 1; j < best.size(); ++j) hm = fp.mul(hm, best[j]);
        ZPoly h = lift_mod(hm);
        Integer lcp = rest.back() % p;
        if (lcp < 0) lcp += p;
        for (auto& c : h) c = (c * lcp) % p;
        hensel_two(rest, g, h, fp, k);
        g = z_mod(g, pk);
        h = z_mod(h, pk);
        lifted.push_back(g);
        rest = h;
    }
    {
        // last factor: monic lift of rest / lc
        Integer inv;
        Integer lcr = rest.back();
        mpz_invert(inv.get_mpz_t(), lcr.get_mpz_t(), pk.get_mpz_t());
        ZPoly last = rest;
        for (auto& c : last) c = (c * inv) % pk;
        lifted.push_back(z_mod(last, pk));
    }

    // recombination
    std::vector<ZPoly> result;
    ZPoly cur = f;
    std::vector<bool> used(lifted.size(), false);
    std::size_t remaining = lifted.size();
    for (std::size_t size = 1; 2 * size <= remaining;) {
        bool found = false;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < lifted.size(); ++i)
            if (!used[i]) idx.push_back(i);
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            ZPoly cand{cur.back()};
            for (auto pi : pick) cand = z_mod(z_mul(cand, lifted[idx[pi]]), pk);
            for (auto& c : cand) c = mods(c, pk);
            trim(cand);
            Integer g = 0;
            for (const auto& c : cand) g = integer_gcd(g, c);
            for (auto& c : cand) c /= g;
            if (cand.back() < 0)
                for (auto& c : cand) c = -c;
            if (auto q = z_divide(cur, cand)) {
                result.push_back(cand);
                cur = *q;
                for (auto pi : pick) used[idx[pi]] = true;
                remaining -= size;
                found = true;
                break;
            }
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == idx.size() - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (!found) ++size;
    }
    if (deg(cur) > 0) result.push_back(cur);
    return result;
}

}  // namespace upoly

struct UnivariateFactor {
    QPoly factor;  // monic, irreducible over Q
    unsigned exponent;
};

/// Factorization over Q of a polynomial in the single variable `var`:
/// p = unit * prod factor^exponent, factors monic and pairwise coprime,
/// sorted by degree then coefficients.
inline std::vector<UnivariateFactor> factor_univariate(const QPoly& p, std::size_t var, std::uint64_t seed = 0) {
    if (p.is_zero()) throw MathDiagnostic("cannot factor the zero polynomial");
    if (p.support() & ~(std::uint32_t{1} << var)) throw InputError("factor_univariate: polynomial is not univariate");
    using namespace upoly;
    QDense a(static_cast<std::size_t>(std::max(0, p.degree_in(var))) + 1, Rational(0));
    for (const auto& t : p.terms()) a[t.mono[var]] = t.coeff;
    trim(a);
    std::mt19937_64 rng(seed);
    std::vector<UnivariateFactor> out;
    auto emit = [&](const QDense& f, unsigned e) {
        if (f.size() <= 1) return;
        for (const auto& z : factor_squarefree_z(primitive_z(f), rng)) {
            QDense m = q_monic(to_q(z));
            std::vector<Term<RationalField>> ts;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) ts.push_back({Monomial::variable(var, static_cast<Exponent>(i)), m[i]});
            out.push_back({QPoly::from_terms(p.ring(), std::move(ts)), e});
        }
    };
    // Yun's squarefree decomposition
    QDense f = q_monic(a);
    QDense d = q_derivative(f);
    QDense g = q_gcd(f, d);
    if (g.size() <= 1) {
        emit(f, 1);
    } else {
        QDense b = q_divmod(f, g).first;
        QDense c = q_divmod(d, g).first;
        QDense dd = q_sub(c, q_derivative(b));
        unsigned i = 1;
        while (b.size() > 1) {
            QDense h = q_gcd(b, dd);
            emit(h, i);
            b = q_divmod(b, h).first;
            c = q_divmod(dd, h).first;
            dd = q_sub(c, q_derivative(b));
            ++i;
        }
    }
    std::sort(out.begin(), out.end(), [](const UnivariateFactor& x, const UnivariateFactor& y) {
        if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
        return x.factor.canonical_compare(y.factor) < 0;
    });
    return out;
}

}  // namespace lpde
