#pragma once

// Worked examples shared by the solver tests and the acceptance driver,
// plus the duality soundness sweep run over each of them.

#include <random>
#include <string>
#include <vector>

#include "lpde/lpde.hpp"
#include "oracles.hpp"

namespace fixture {

using namespace lpde;

inline QPoly P(const QRingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

inline QModule ideal_of(const QRingPtr& r, const std::vector<std::string>& gens) {
    std::vector<QPoly> ps;
    for (const auto& g : gens) ps.push_back(P(r, g));
    return QModule::ideal(r, ps);
}

/// Columns of the presentation matrix, each of length k.
inline QModule module_of(const QRingPtr& r, const std::vector<std::vector<std::string>>& cols) {
    std::vector<QVector> vs;
    for (const auto& c : cols) {
        QVector v;
        for (const auto& e : c) v.push_back(P(r, e));
        vs.push_back(v);
    }
    return QModule(r, cols.at(0).size(), vs);
}

inline QRingPtr xs(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return make_qring(names);
}

inline std::vector<std::vector<QPoly>> columns(const QModule& m) {
    std::vector<std::vector<QPoly>> out;
    for (const auto& g : m.generators()) out.push_back(g);
    return out;
}

inline const Component* find_component(const Decomposition& d, const QModule& prime) {
    for (const auto& c : d.components)
        if (c.prime.ideal.equals(prime)) return &c;
    return nullptr;
}

inline std::vector<std::size_t> multiplicities(const Decomposition& d) {
    std::vector<std::size_t> out;
    for (const auto& c : d.components) out.push_back(c.multiplicity());
    std::sort(out.begin(), out.end());
    return out;
}

/// Spans of two multiplier lists agree after specializing x to each point;
/// with entries of degree <= 1 in the free coordinate, agreement at more
/// points than the size of the largest minor forces equality over Q(x).
inline bool spans_agree_at(const std::vector<QVector>& a, const std::vector<QVector>& b,
                           const std::vector<std::vector<Rational>>& points) {
    auto zring = xs(points.at(0).size());
    for (const auto& u : points) {
        oracle::Span sa, sb;
        auto row = [&](const QVector& v) {
            std::vector<QPoly> s;
            for (const auto& e : v) s.push_back(oracle::specialize(e, u, zring));
            return oracle::to_row(s);
        };
        for (const auto& v : a) sa.add(row(v));
        for (const auto& v : b) sb.add(row(v));
        if (sa.rank() != a.size() || sb.rank() != b.size()) return false;
        for (const auto& v : b)
            if (!sa.contains(row(v))) return false;
    }
    return true;
}

struct Case {
    std::string name;
    QModule module;
};

inline QModule ode() { return ideal_of(make_qring({"x"}), {"x^3 + 3*x^2 - 9*x + 5"}); }
inline QModule line_double() { return ideal_of(xs(3), {"x1^2 - x2*x3", "x3^2"}); }
inline QModule six_primes() {
    return module_of(xs(4), {{"x1^2", "x1*x2"}, {"x2*x3", "x3^2"}, {"x1^2*x3", "x1*x2*x4"}});
}
inline QModule cone() {
    return module_of(xs(4), {{"x1*x3", "x1^2"}, {"x1*x2", "x2^2"}, {"x1^2*x2", "x1^2*x4"}});
}
inline QModule nested() {
    return module_of(xs(3), {{"x1", "0", "0"}, {"0", "x1^2", "0"}, {"0", "x2", "0"}, {"0", "0", "x1"}, {"0", "0", "x3"}});
}
inline QModule nested_i() { return ideal_of(xs(3), {"x1^2", "x1*x2"}); }
inline QModule nested_j() { return ideal_of(xs(3), {"x1^4", "x1^3*x3", "x1^2*x2", "x1*x2*x3"}); }
inline QModule three_points() { return module_of(xs(2), {{"x1", "x2"}, {"x1*x2", "x1"}, {"x2", "x1*x2"}}); }
inline QModule power_sums(int a, int b, int c) {
    auto f = [](int e) {
        auto s = std::to_string(e);
        return "x1^" + s + " + x2^" + s + " + x3^" + s;
    };
    return ideal_of(xs(3), {f(a), f(b), f(c)});
}
inline QModule flags() {
    return module_of(xs(2), {{"7*x1", "8*x1", "3*x1"},
                             {"5*x1^2", "9*x1^2", "2*x1^2"},
                             {"8*x1^3", "8*x1^3", "6*x1^3"},
                             {"5*x2", "4*x2", "4*x2"},
                             {"9*x2^2", "2*x2^2", "4*x2^2"},
                             {"5*x2^3", "4*x2^3", "7*x2^3"}});
}
inline QModule wave() { return ideal_of(xs(2), {"x2^2 - 4*x1^2"}); }

/// Everything the soundness sweep runs over.
inline std::vector<Case> all() {
    return {{"ode", ode()},
            {"line_double", line_double()},
            {"six_primes", six_primes()},
            {"cone", cone()},
            {"nested", nested()},
            {"nested_i", nested_i()},
            {"nested_j", nested_j()},
            {"three_points", three_points()},
            {"power_sums_123", power_sums(1, 2, 3)},
            {"flags", flags()},
            {"wave", wave()}};
}

inline QVector random_vector(const QRingPtr& r, std::size_t k, std::mt19937& rng, unsigned deg) {
    QVector v;
    for (std::size_t j = 0; j < k; ++j) v.push_back(oracle::random_poly(r, rng, deg, 3));
    return v;
}

struct Soundness {
    std::size_t multipliers = 0;
    std::size_t failed_multipliers = 0;
    bool generators_accepted = true;
    std::size_t nonmembers = 0;
    std::size_t nonmembers_accepted = 0;
    std::size_t members = 0;
    std::size_t members_rejected = 0;

    bool ok() const {
        return failed_multipliers == 0 && generators_accepted && nonmembers_accepted == 0 && members_rejected == 0;
    }
};

/// Verifies every multiplier, accepts every generator, and compares the
/// membership test with Groebner membership on random vectors.
inline Soundness soundness(const QModule& m, const Decomposition& dpd, std::size_t trials, std::uint32_t seed) {
    Soundness s;
    for (const auto& c : dpd.components)
        for (const auto& b : c.multipliers) {
            ++s.multipliers;
            if (!verify_solution(b, c.prime.ideal, m)) ++s.failed_multipliers;
        }
    for (const auto& g : m.generators()) s.generators_accepted = s.generators_accepted && membership_test(g, dpd).member;

    std::mt19937 rng(seed);
    const auto& r = m.ring();
    std::size_t k = m.rank();
    unsigned guard = 0;
    while (s.nonmembers < trials && ++guard < 50 * trials) {
        // alternate plain random vectors with perturbed members
        QVector v = random_vector(r, k, rng, 3);
        if (guard % 2 == 0) {
            QVector w(k, QPoly(r));
            for (const auto& g : m.generators()) {
                auto c = oracle::random_poly(r, rng, 2, 2);
                for (std::size_t j = 0; j < k; ++j) w[j] = w[j] + c * g[j];
            }
            std::size_t j = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
            w[j] = w[j] + oracle::random_poly(r, rng, 3, 1);
            v = w;
        }
        if (m.contains(v)) continue;
        ++s.nonmembers;
        if (membership_test(v, dpd).member) ++s.nonmembers_accepted;
    }
    for (std::size_t t = 0; t < trials / 4 && !m.is_zero(); ++t) {
        QVector w(k, QPoly(r));
        for (const auto& g : m.generators()) {
            auto c = oracle::random_poly(r, rng, 2, 2);
            for (std::size_t j = 0; j < k; ++j) w[j] = w[j] + c * g[j];
        }
        ++s.members;
        if (!membership_test(w, dpd).member) ++s.members_rejected;
    }
    return s;
}

}  // namespace fixture
