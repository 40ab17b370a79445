#pragma once

#include <string>
#include <vector>

#include "lpde/solver.hpp"

namespace lpde {

/// x^a p(theta) d^b with theta_i = x_i d_i; torus-fixed when a = b.
struct TorusFixedGenerator {
    Monomial a;
    QPoly p;
    Monomial b;
};

/// [theta_b] = prod_i prod_{j < b_i} (theta_i - j).
inline QPoly falling_factorial(const QRingPtr& theta, const Monomial& b) {
    QPoly acc = QPoly::constant(theta, 1);
    for (std::size_t i = 0; i < theta->nvars(); ++i)
        for (unsigned j = 0; j < b[i]; ++j)
            acc = acc * (QPoly::variable(theta, i) - QPoly::constant(theta, static_cast<long>(j)));
    return acc;
}

/// p(theta - b).
inline QPoly shift_down(const QPoly& p, const Monomial& b) {
    const auto& ring = p.ring();
    std::vector<QPoly> images;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        images.push_back(QPoly::variable(ring, i) - QPoly::constant(ring, static_cast<long>(b[i])));
    return substitute(p, ring, images, [](const Rational& c) { return c; });
}

/// Commutative image [theta_b] p(theta - b) of each generator.
inline QModule distraction(const QRingPtr& theta, const std::vector<TorusFixedGenerator>& gens) {
    std::vector<QPoly> out;
    for (const auto& g : gens) {
        if (!(g.a == g.b)) throw InputError("operator is not torus-fixed");
        out.push_back(falling_factorial(theta, g.b) * shift_down(g.p.in_ring(theta), g.b));
    }
    return QModule::ideal(theta, out);
}

struct FrobeniusSolution {
    Decomposition dpd;
    std::string rendered;
};

/// Solves theta -> d, then reads z as log(z).
inline FrobeniusSolution solve_frobenius(const QModule& f, const SolveOptions& opts = {}) {
    const auto& theta = f.ring();
    std::size_t n = theta->nvars();
    std::vector<std::string> xs, zs;
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back("x" + std::to_string(i + 1));
        zs.push_back("z" + std::to_string(i + 1));
    }
    auto ring = make_qring(xs);
    std::vector<QPoly> gens;
    for (const auto& g : f.ideal_generators()) gens.push_back(QPoly::from_terms(ring, g.terms()));
    FrobeniusSolution out;
    out.dpd = solve_pde(QModule::ideal(ring, gens), opts);
    RenderOptions ro;
    ro.z_names = zs;
    ro.logarithmic = true;
    out.rendered = render_general_solution(out.dpd, ro);
    return out;
}

}  // namespace lpde
