#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lpde/assoc.hpp"

namespace lpde {

/// The ring of Noetherian multipliers: x1..xn followed by their partners
/// dx1..dxn (the z-variables).
inline QRingPtr multiplier_ring(const QRingPtr& ring) {
    std::size_t n = ring->nvars();
    if (2 * n > kMaxVars) throw InputError("too many variables for the multiplier ring (max 16)");
    auto names = ring->names();
    for (std::size_t i = 0; i < n; ++i) names.push_back("d" + ring->name(i));
    return make_qring(std::move(names));
}

struct Component {
    PrimeIdeal prime;
    std::vector<std::size_t> indep;
    std::vector<QVector> multipliers;  // entries in the multiplier ring

    std::size_t multiplicity() const { return multipliers.size(); }
};

/// Differential primary decomposition of a submodule of R^k.
struct Decomposition {
    QRingPtr ring;
    QRingPtr mring;
    std::size_t k = 1;
    std::vector<Component> components;

    std::size_t amult() const {
        std::size_t s = 0;
        for (const auto& c : components) s += c.multiplicity();
        return s;
    }
};

// ---------------------------------------------------------------------------
// Weyl operators

struct WeylTerm {
    Rational coeff;
    Monomial x;  // left factor x^r
    Monomial d;  // right factor d^s
};

/// Normally ordered operator per component; terms sorted as in the
/// multiplier ring.
using WeylOperator = std::vector<std::vector<WeylTerm>>;

inline WeylOperator multiplier_to_operator(const QVector& b, std::size_t n) {
    WeylOperator op;
    for (const auto& e : b) {
        std::vector<WeylTerm> ts;
        for (const auto& t : e.terms()) {
            WeylTerm w{t.coeff, {}, {}};
            for (std::size_t i = 0; i < n; ++i) {
                w.x.set(i, t.mono[i]);
                w.d.set(i, t.mono[n + i]);
            }
            ts.push_back(w);
        }
        op.push_back(std::move(ts));
    }
    return op;
}

inline QVector operator_to_multiplier(const WeylOperator& op, const QRingPtr& mring) {
    std::size_t n = mring->nvars() / 2;
    QVector out;
    for (const auto& comp : op) {
        std::vector<Term<RationalField>> ts;
        for (const auto& w : comp) {
            Monomial m;
            for (std::size_t i = 0; i < n; ++i) {
                m.set(i, w.x[i]);
                m.set(n + i, w.d[i]);
            }
            ts.push_back({m, w.coeff});
        }
        out.push_back(QPoly::from_terms(mring, std::move(ts)));
    }
    return out;
}

inline std::string to_string(const WeylOperator& op, const QRingPtr& ring) {
    std::string out = "(";
    for (std::size_t j = 0; j < op.size(); ++j) {
        if (j) out += ", ";
        std::string s;
        for (const auto& w : op[j]) {
            std::string x = format_monomial(*ring, w.x);
            std::string d;
            for (std::size_t i = 0; i < ring->nvars(); ++i)
                if (w.d[i]) d += "*d_" + ring->name(i) + (w.d[i] > 1 ? "^" + std::to_string(w.d[i]) : "");
            if (x.empty()) x = "1";
            std::string body = (x == "1" && !d.empty()) ? d.substr(1) : x + d;
            Rational c = abs(w.coeff);
            std::string term = c == 1 ? body : (body == "1" ? c.get_str() : c.get_str() + "*" + body);
            if (s.empty()) s = (sgn(w.coeff) < 0 ? "-" : "") + term;
            else s += (sgn(w.coeff) < 0 ? " - " : " + ") + term;
        }
        out += s.empty() ? "0" : s;
    }
    return out + ")";
}

/// delta . m = sum_j sum c(x) d^s m_j for the operator delta of multiplier b.
inline QPoly apply_multiplier(const QVector& b, const QVector& m) {
    const auto& ring = m.at(0).ring();
    std::size_t n = ring->nvars();
    QPoly acc(ring);
    for (std::size_t j = 0; j < b.size(); ++j) {
        for (const auto& t : b[j].terms()) {
            QPoly d = m[j];
            for (std::size_t i = 0; i < n && !d.is_zero(); ++i)
                for (unsigned e = 0; e < t.mono[n + i]; ++e) d = differentiate(d, i);
            if (d.is_zero()) continue;
            Monomial xm;
            for (std::size_t i = 0; i < n; ++i) xm.set(i, t.mono[i]);
            acc = acc + d.mul_term(t.coeff, xm);
        }
    }
    return acc;
}

namespace detail {
/// Splits a multiplier-ring polynomial into x-coefficients of each
/// z-monomial.
inline std::map<std::vector<Exponent>, QPoly> z_coefficients(const QPoly& p, const QRingPtr& ring) {
    std::size_t n = ring->nvars();
    std::map<std::vector<Exponent>, std::vector<Term<RationalField>>> parts;
    for (const auto& t : p.terms()) {
        std::vector<Exponent> key(n);
        Monomial xm;
        for (std::size_t i = 0; i < n; ++i) {
            key[i] = t.mono[n + i];
            xm.set(i, t.mono[i]);
        }
        parts[key].push_back({xm, t.coeff});
    }
    std::map<std::vector<Exponent>, QPoly> out;
    for (auto& [k, ts] : parts) out.emplace(k, QPoly::from_terms(ring, std::move(ts)));
    return out;
}
}  // namespace detail

/// The polynomial part of g(d_z) . (B(x,z) exp(x.z)), i.e. g(x + d_z) B.
inline QPoly exponential_action(const QPoly& g, const QPoly& b) {
    const auto& mring = b.ring();
    std::size_t n = mring->nvars() / 2;
    std::vector<std::size_t> embed(n);
    for (std::size_t i = 0; i < n; ++i) embed[i] = i;
    QPoly acc(mring);
    // Taylor expansion of g at x, paired with z-derivatives of b
    struct Item {
        Monomial beta;
        QPoly dg;
        QPoly db;
        std::size_t start;
    };
    std::vector<Item> stack{{Monomial(), g.remap(mring, embed), b, 0}};
    while (!stack.empty()) {
        auto it = std::move(stack.back());
        stack.pop_back();
        Integer fact = 1;
        for (std::size_t i = 0; i < n; ++i) fact *= factorial(it.beta[i]);
        acc = acc + (it.dg * it.db).scaled(Rational(1) / Rational(fact));
        for (std::size_t i = it.start; i < n; ++i) {
            auto db = differentiate(it.db, n + i);
            if (db.is_zero()) continue;
            auto dg = differentiate(it.dg, i);
            if (dg.is_zero()) continue;
            stack.push_back({it.beta * Monomial::variable(i), dg, db, i});
        }
    }
    return acc;
}

/// B exp(x.z) solves every generator of M for all x in V(P): the
/// polynomial part of each g(d_z) . (B exp(x.z)) vanishes modulo P.
inline bool verify_solution(const QVector& b, const QModule& prime, const QModule& m) {
    const auto& ring = m.ring();
    for (const auto& g : m.generators()) {
        QPoly total(b.at(0).ring());
        for (std::size_t j = 0; j < g.size(); ++j)
            if (!g[j].is_zero() && !b[j].is_zero()) total = total + exponential_action(g[j], b[j]);
        for (const auto& [z, coeff] : detail::z_coefficients(total, ring))
            if (!prime.contains(QVector{coeff})) return false;
    }
    return true;
}

struct MembershipResult {
    bool member = true;
    std::size_t component = 0;   // witness when not a member
    std::size_t multiplier = 0;
};

/// m lies in M iff delta . m is in P_i for every Noetherian operator.
inline MembershipResult membership_test(const QVector& m, const Decomposition& dpd) {
    if (m.size() != dpd.k) throw InputError("vector length does not match module rank");
    for (std::size_t i = 0; i < dpd.components.size(); ++i) {
        const auto& c = dpd.components[i];
        for (std::size_t j = 0; j < c.multipliers.size(); ++j)
            if (!c.prime.ideal.contains(QVector{apply_multiplier(c.multipliers[j], m)})) return {false, i, j};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Rendering

struct RenderOptions {
    std::vector<std::string> z_names;  // empty: d-prefixed names
    bool logarithmic = false;          // z -> log(z), functions in uppercase
};

namespace detail {

inline std::string function_name(std::size_t idx, bool upper) {
    std::string s(1, static_cast<char>((upper ? 'A' : 'a') + idx % 26));
    if (idx >= 26) s += std::to_string(idx / 26);
    return s;
}

inline std::string power_string(const std::string& base, unsigned e) {
    return e == 1 ? base : base + "^" + std::to_string(e);
}

/// Stirling numbers of the second kind S(e, j).
inline Integer stirling2(unsigned e, unsigned j) {
    std::vector<std::vector<Integer>> s(e + 1, std::vector<Integer>(e + 1, 0));
    s[0][0] = 1;
    for (unsigned a = 1; a <= e; ++a)
        for (unsigned b = 1; b <= a; ++b) s[a][b] = Integer(b) * s[a - 1][b] + s[a - 1][b - 1];
    return j <= e ? s[e][j] : Integer(0);
}

struct Affine {
    bool ok = false;
    std::vector<Rational> shift;                  // constant part of u_i
    std::vector<std::vector<Rational>> slope;     // slope[i][s]: coefficient of x_s in u_i
};

/// For primes x_i - (affine form in the independent variables).
inline Affine affine_prime(const QModule& prime, const std::vector<std::size_t>& indep) {
    const auto& ring = prime.ring();
    std::size_t n = ring->nvars();
    Affine a;
    a.shift.assign(n, Rational(0));
    a.slope.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t s : indep) a.slope[s][s] = 1;
    for (const auto& g : prime.reduced().ideal_generators()) {
        if (g.degree() != 1) return a;
        std::size_t lead = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (g.leading_monomial()[i]) lead = i;
        if (std::find(indep.begin(), indep.end(), lead) != indep.end()) return a;
        Rational lc = g.leading_coeff();
        for (const auto& t : g.terms()) {
            if (t.mono.is_one()) {
                a.shift[lead] = -t.coeff / lc;
                continue;
            }
            std::size_t v = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (t.mono[i]) v = i;
            if (v == lead) continue;
            if (std::find(indep.begin(), indep.end(), v) == indep.end()) return a;
            a.slope[lead][v] = -t.coeff / lc;
        }
    }
    a.ok = true;
    return a;
}

inline std::string linear_string(const std::vector<Rational>& coeffs, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto& c = coeffs[i];
        if (c == 0) continue;
        Rational ac = abs(c);
        std::string term = ac == 1 ? names[i] : ac.get_str() + "*" + names[i];
        if (s.empty()) s = (sgn(c) < 0 ? "-" : "") + term;
        else s += (sgn(c) < 0 ? " - " : " + ") + term;
    }
    return s;
}

struct SignedTerm {
    bool negative;
    std::string body;
};

inline std::string join_terms(const std::vector<SignedTerm>& ts) {
    std::string s;
    for (const auto& t : ts) {
        if (s.empty()) s = (t.negative ? "-" : "") + t.body;
        else s += (t.negative ? " - " : " + ") + t.body;
    }
    return s.empty() ? "0" : s;
}

inline std::string join_factors(const std::vector<std::string>& fs) {
    std::string s;
    for (const auto& f : fs) {
        if (f.empty() || f == "1") continue;
        s += s.empty() ? f : "*" + f;
    }
    return s.empty() ? "1" : s;
}

inline SignedTerm signed_term(const Rational& c, std::vector<std::string> factors) {
    Rational ac = abs(c);
    std::string body = join_factors(factors);
    if (ac != 1) body = body == "1" ? ac.get_str() : ac.get_str() + "*" + body;
    return {sgn(c) < 0, body};
}

}  // namespace detail

/// The general solution: one arbitrary function (or measure) per
/// multiplier. Affine primes give functions of the independent
/// directions, x-factors turning into derivatives; other primes give
/// integral kernels over the variety.
inline std::string render_general_solution(const Decomposition& dpd, const RenderOptions& opts = {}) {
    const auto& ring = dpd.ring;
    std::size_t n = ring->nvars();
    std::vector<std::string> z = opts.z_names;
    if (z.empty())
        for (std::size_t i = 0; i < n; ++i) z.push_back("d" + ring->name(i));
    std::vector<std::string> pieces;
    std::size_t fidx = 0;
    for (const auto& comp : dpd.components) {
        auto aff = detail::affine_prime(comp.prime.ideal, comp.indep);
        const auto& indep = comp.indep;
        if (aff.ok && opts.logarithmic) {
            // the log substitution only applies to coordinate directions
            for (std::size_t i = 0; i < n && aff.ok; ++i)
                for (std::size_t s : indep)
                    if (i != s && aff.slope[i][s] != 0) aff.ok = false;
        }
        for (const auto& b : comp.multipliers) {
            std::string f = detail::function_name(fidx++, opts.logarithmic);
            if (!aff.ok) {
                std::string vec;
                for (std::size_t j = 0; j < b.size(); ++j) vec += (j ? ", " : "") + b[j].to_string();
                if (b.size() > 1) vec = "(" + vec + ")";
                std::vector<std::string> gens;
                for (const auto& g : comp.prime.ideal.ideal_generators()) gens.push_back(g.to_string());
                std::string ex;
                for (std::size_t i = 0; i < n; ++i) ex += (i ? " + " : "") + ring->name(i) + "*" + z[i];
                std::string ideal;
                for (std::size_t i = 0; i < gens.size(); ++i) ideal += (i ? ", " : "") + gens[i];
                pieces.push_back("∫_{V(" + ideal + ")} (" + vec + ")*exp(" + ex + ") dμ_" + f + "(x)");
                continue;
            }
            // arguments of the arbitrary function: one per independent variable
            std::vector<std::string> args;
            for (std::size_t s : indep) {
                std::vector<Rational> w(n, Rational(0));
                for (std::size_t i = 0; i < n; ++i) w[i] = aff.slope[i][s];
                args.push_back(detail::linear_string(w, z));
            }
            std::string arglist;
            for (std::size_t i = 0; i < args.size(); ++i) arglist += (i ? ", " : "") + args[i];
            std::string expo;
            {
                std::vector<Rational> sh(aff.shift);
                bool any = std::any_of(sh.begin(), sh.end(), [](const Rational& c) { return c != 0; });
                if (any && !opts.logarithmic) {
                    expo = "exp(" + detail::linear_string(sh, z) + ")";
                } else if (any) {
                    std::vector<std::string> fs;
                    for (std::size_t i = 0; i < n; ++i)
                        if (sh[i] != 0) {
                            std::string e = sh[i].get_str();
                            fs.push_back(z[i] + "^" + (sh[i].get_den() == 1 && sgn(sh[i]) > 0 ? e : "(" + e + ")"));
                        }
                    expo = detail::join_factors(fs);
                }
            }
            auto fn = [&](const std::vector<unsigned>& order) {
                if (indep.empty()) return f;
                unsigned total = 0;
                for (auto o : order) total += o;
                std::string name = f;
                if (indep.size() == 1) {
                    if (total <= 3) name += std::string(total, '\'');
                    else name += "^(" + std::to_string(total) + ")";
                } else if (total > 0) {
                    name += "_";
                    for (std::size_t i = 0; i < indep.size(); ++i)
                        for (unsigned e = 0; e < order[i]; ++e) name += z[indep[i]];
                }
                return name + "(" + arglist + ")";
            };
            std::vector<std::string> entries;
            for (const auto& e : b) {
                std::vector<detail::SignedTerm> ts;
                for (const auto& t : e.terms()) {
                    std::vector<unsigned> order;
                    for (std::size_t s : indep) order.push_back(t.mono[s]);
                    std::vector<std::string> zf;
                    for (std::size_t i = 0; i < n; ++i) {
                        unsigned a = t.mono[n + i];
                        if (!a) continue;
                        zf.push_back(opts.logarithmic ? detail::power_string("log(" + z[i] + ")", a)
                                                      : detail::power_string(z[i], a));
                    }
                    if (!opts.logarithmic) {
                        // constants lead, functions follow their z-factors
                        std::vector<std::string> fs;
                        if (indep.empty()) fs.push_back(fn(order));
                        fs.insert(fs.end(), zf.begin(), zf.end());
                        if (!indep.empty()) fs.push_back(fn(order));
                        fs.push_back(expo);
                        ts.push_back(detail::signed_term(t.coeff, fs));
                        continue;
                    }
                    // (z d/dz)^e = sum_j S(e, j) z^j (d/dz)^j
                    std::vector<std::pair<Integer, std::vector<unsigned>>> expansion{{Integer(1), {}}};
                    for (std::size_t i = 0; i < indep.size(); ++i) {
                        std::vector<std::pair<Integer, std::vector<unsigned>>> next;
                        for (const auto& [c, ord] : expansion)
                            for (unsigned j = (order[i] ? 1 : 0); j <= order[i]; ++j) {
                                auto o = ord;
                                o.push_back(j);
                                next.push_back({c * detail::stirling2(order[i], j), o});
                            }
                        expansion = std::move(next);
                    }
                    for (const auto& [c, ord] : expansion) {
                        std::vector<std::string> fs;
                        for (std::size_t i = 0; i < indep.size(); ++i)
                            if (ord[i]) fs.push_back(detail::power_string(z[indep[i]], ord[i]));
                        fs.insert(fs.end(), zf.begin(), zf.end());
                        fs.push_back(fn(ord));
                        fs.push_back(expo);
                        ts.push_back(detail::signed_term(t.coeff * Rational(c), fs));
                    }
                }
                entries.push_back(detail::join_terms(ts));
            }
            std::string piece;
            if (entries.size() == 1) {
                piece = entries[0];
                if (!opts.logarithmic && piece.find(" + ") != std::string::npos) piece = "(" + piece + ")";
                if (!opts.logarithmic && piece.find(" - ") != std::string::npos && piece.front() != '(')
                    piece = "(" + piece + ")";
            } else {
                for (std::size_t j = 0; j < entries.size(); ++j) piece += (j ? ", " : "") + entries[j];
                piece = "(" + piece + ")";
            }
            pieces.push_back(piece);
        }
    }
    std::string out;
    for (const auto& p : pieces) {
        if (out.empty()) out = p;
        else if (p.front() == '-') out += " - " + p.substr(1);
        else out += " + " + p;
    }
    return out.empty() ? "0" : out;
}

}  // namespace lpde
