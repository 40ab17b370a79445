#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lpde/duality.hpp"
#include "lpde/parse.hpp"

namespace lpde {

using json = nlohmann::json;

struct ProblemInput {
    QRingPtr ring;
    std::size_t k = 1;
    QModule module;
    std::string order = "grevlex";
    std::uint64_t seed = 0;
    unsigned max_r = 32;
    std::optional<std::vector<std::vector<std::string>>> primes;
};

namespace detail {

inline std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline QPoly parse_in(const QRingPtr& ring, const json& j, const std::string& where) {
    if (j.is_number_integer()) return QPoly::constant(ring, j.get<long>());
    if (!j.is_string()) throw InputError(where + ": expected an expression string");
    try {
        return parse_polynomial(ring, j.get<std::string>());
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

}  // namespace detail

inline QRingPtr make_ring(const std::vector<std::string>& vars, const std::string& order) {
    if (vars.size() > kMaxVars / 2) throw InputError("at most 16 variables are supported");
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (vars[i] == vars[j]) throw InputError("duplicate variable '" + vars[i] + "'");
    if (order == "grevlex") return make_qring(vars);
    if (order == "lex") return make_qring(vars, MonomialOrder::lex(vars.size()));
    throw InputError("unknown monomial order '" + order + "'");
}

inline ProblemInput parse_input(std::string_view text, std::optional<std::string> order_override = {}) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON at " + detail::line_col(text, e.byte ? e.byte - 1 : 0));
    }
    if (!j.is_object()) throw InputError("input must be a JSON object");
    ProblemInput in;
    const auto& opts = j.contains("options") ? j["options"] : json::object();
    if (!opts.is_object()) throw InputError("options must be an object");
    if (opts.contains("order")) in.order = opts["order"].get<std::string>();
    if (opts.contains("seed")) in.seed = opts["seed"].get<std::uint64_t>();
    if (opts.contains("max_r")) in.max_r = opts["max_r"].get<unsigned>();
    if (opts.contains("primes")) in.primes = opts["primes"].get<std::vector<std::vector<std::string>>>();
    if (order_override) in.order = *order_override;
    if (!j.contains("ring") || !j["ring"].contains("variables")) throw InputError("missing ring.variables");
    auto vars = j["ring"]["variables"].get<std::vector<std::string>>();
    in.ring = make_ring(vars, in.order);
    if (!j.contains("k") || !j["k"].is_number_integer() || j["k"].get<long>() < 1)
        throw InputError("k must be a positive integer");
    in.k = j["k"].get<std::size_t>();
    std::vector<QVector> gens;
    const auto& gs = j.contains("generators") ? j["generators"] : json::array();
    if (!gs.is_array()) throw InputError("generators must be a list");
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const auto& g = gs[i];
        json col = g.is_array() ? g : json::array({g});
        if (col.size() != in.k)
            throw InputError("generator " + std::to_string(i + 1) + " has " + std::to_string(col.size()) +
                             " entries, expected " + std::to_string(in.k));
        QVector v;
        for (std::size_t c = 0; c < col.size(); ++c)
            v.push_back(detail::parse_in(in.ring, col[c], "generator " + std::to_string(i + 1)));
        gens.push_back(std::move(v));
    }
    in.module = QModule(in.ring, in.k, std::move(gens));
    return in;
}

inline json to_json(const ProblemInput& in) {
    json j;
    j["ring"]["variables"] = in.ring->names();
    j["k"] = in.k;
    j["generators"] = json::array();
    for (const auto& g : in.module.generators()) {
        json col = json::array();
        for (const auto& p : g) col.push_back(p.to_string());
        j["generators"].push_back(col);
    }
    j["options"] = {{"order", in.order}, {"seed", in.seed}, {"max_r", in.max_r}};
    if (in.primes) j["options"]["primes"] = *in.primes;
    return j;
}

/// Prime generators in display order: reduced basis, ascending leading terms.
inline std::vector<QPoly> display_generators(const QModule& ideal) {
    auto gens = ideal.reduced().ideal_generators();
    const auto& ord = ideal.ring()->order();
    std::sort(gens.begin(), gens.end(), [&](const QPoly& a, const QPoly& b) {
        return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    return gens;
}

inline json to_json(const Decomposition& dpd, const std::string& rendered) {
    json j;
    j["amult"] = dpd.amult();
    j["components"] = json::array();
    for (const auto& c : dpd.components) {
        json jc;
        jc["prime"] = json::array();
        for (const auto& g : display_generators(c.prime.ideal)) jc["prime"].push_back(g.to_string());
        if (jc["prime"].empty()) jc["prime"].push_back("0");
        jc["multiplicity"] = c.multiplicity();
        jc["certificate"] = to_string(c.prime.certificate);
        jc["multipliers"] = json::array();
        for (const auto& b : c.multipliers) {
            json jb = json::array();
            for (const auto& e : b) jb.push_back(e.to_string());
            jc["multipliers"].push_back(jb);
        }
        j["components"].push_back(jc);
    }
    j["rendered"] = rendered;
    return j;
}

/// Reads a decomposition back; certificates other than the computed ones
/// are taken as user supplied.
inline Decomposition decomposition_from_json(const json& j, const QRingPtr& ring, std::size_t k) {
    Decomposition dpd;
    dpd.ring = ring;
    dpd.mring = multiplier_ring(ring);
    dpd.k = k;
    for (const auto& jc : j.at("components")) {
        std::vector<QPoly> gens;
        for (const auto& g : jc.at("prime")) gens.push_back(detail::parse_in(ring, g, "prime"));
        auto ideal = QModule::ideal(ring, gens);
        PrimeCertificate cert = PrimeCertificate::UserProvided;
        std::string cs = jc.value("certificate", "");
        if (cs == to_string(PrimeCertificate::UnivariateFactor)) cert = PrimeCertificate::UnivariateFactor;
        if (cs == to_string(PrimeCertificate::SplitLeaf)) cert = PrimeCertificate::SplitLeaf;
        Component c{{ideal, cert, ideal_codim(ideal)}, independent_set(ideal), {}};
        for (const auto& jb : jc.at("multipliers")) {
            QVector b;
            for (const auto& e : jb) b.push_back(detail::parse_in(dpd.mring, e, "multiplier"));
            if (b.size() != k) throw InputError("multiplier length does not match module rank");
            c.multipliers.push_back(std::move(b));
        }
        if (c.multipliers.size() != jc.value("multiplicity", c.multipliers.size()))
            throw InputError("multiplicity does not match the multiplier count");
        dpd.components.push_back(std::move(c));
    }
    return dpd;
}

// ---------------------------------------------------------------------------
// Two-dimensional text in the style of an interactive session: exponents
// raised one line, vectors stacked between bars.

struct Net {
    std::vector<std::string> rows;
    std::size_t base = 0;

    std::size_t width() const {
        std::size_t w = 0;
        for (const auto& r : rows) w = std::max(w, display_width(r));
        return w;
    }

    static std::size_t display_width(const std::string& s) {
        std::size_t w = 0;
        for (unsigned char c : s)
            if ((c & 0xC0) != 0x80) ++w;
        return w;
    }

    static Net text(const std::string& s) { return {{s}, 0}; }

    Net& append(const Net& o) {
        std::size_t above = std::max(base, o.base);
        std::size_t below = std::max(rows.size() - base, o.rows.size() - o.base);
        std::size_t w = width(), ow = o.width();
        std::vector<std::string> out(above + below);
        for (std::size_t i = 0; i < out.size(); ++i) {
            auto li = static_cast<long>(i) - static_cast<long>(above - base);
            auto ri = static_cast<long>(i) - static_cast<long>(above - o.base);
            std::string l = li >= 0 && li < static_cast<long>(rows.size()) ? rows[static_cast<std::size_t>(li)] : "";
            l += std::string(w - display_width(l), ' ');
            std::string r =
                ri >= 0 && ri < static_cast<long>(o.rows.size()) ? o.rows[static_cast<std::size_t>(ri)] : "";
            r += std::string(ow - display_width(r), ' ');
            out[i] = l + r;
        }
        rows = std::move(out);
        base = above;
        return *this;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::string r = rows[i];
            while (!r.empty() && r.back() == ' ') r.pop_back();
            out += r;
            if (i + 1 < rows.size()) out += '\n';
        }
        return out;
    }
};

/// Polynomial with raised exponents. Compact form (matrix entries) omits
/// the spaces around + and -.
inline Net polynomial_net(const QPoly& p, bool compact) {
    if (p.is_zero()) return Net::text("0");
    std::string base, sup;
    auto put = [&](const std::string& s) {
        base += s;
        sup += std::string(Net::display_width(s), ' ');
    };
    bool first = true;
    const auto& ring = *p.ring();
    for (const auto& t : p.terms()) {
        bool neg = sgn(t.coeff) < 0;
        Rational mag = abs(t.coeff);
        if (first) put(neg ? "-" : "");
        else put(compact ? (neg ? "-" : "+") : (neg ? " - " : " + "));
        first = false;
        if (t.mono.is_one()) {
            put(mag.get_str());
            continue;
        }
        if (mag != 1) put(mag.get_str());
        bool first_var = true;
        for (std::size_t i = 0; i < ring.nvars(); ++i) {
            if (!t.mono[i]) continue;
            if (!first_var) put("*");
            first_var = false;
            put(ring.name(i));
            if (t.mono[i] > 1) {
                std::string e = std::to_string(t.mono[i]);
                base += std::string(e.size(), ' ');
                sup += e;
            }
        }
    }
    while (!sup.empty() && sup.back() == ' ') sup.pop_back();
    if (sup.empty()) return Net::text(base);
    return {{sup, base}, 1};
}

inline Net ideal_net(const QModule& ideal) {
    auto gens = display_generators(ideal);
    if (gens.empty()) return Net::text("ideal 0");
    Net n = Net::text(gens.size() == 1 ? "ideal(" : "ideal (");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) n.append(Net::text(", "));
        n.append(polynomial_net(gens[i], false));
    }
    return n.append(Net::text(")"));
}

/// A column vector between bars; baseline on the first entry.
inline Net vector_net(const QVector& v) {
    std::vector<Net> entries;
    std::size_t w = 0;
    for (const auto& e : v) {
        entries.push_back(polynomial_net(e, true));
        w = std::max(w, entries.back().width());
    }
    Net out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        std::size_t pad = w - e.width(), left = (pad + 1) / 2;
        if (i == 0) out.base = out.rows.size() + e.base;
        for (const auto& r : e.rows) {
            std::string line = std::string(left, ' ') + r;
            line += std::string(w - Net::display_width(line), ' ');
            out.rows.push_back("| " + line + " |");
        }
    }
    return out;
}

inline std::string emit_text(const Decomposition& dpd) {
    Net out = Net::text("{");
    for (std::size_t i = 0; i < dpd.components.size(); ++i) {
        const auto& c = dpd.components[i];
        if (i) out.append(Net::text(", "));
        out.append(Net::text("{")).append(ideal_net(c.prime.ideal)).append(Net::text(", {"));
        for (std::size_t j = 0; j < c.multipliers.size(); ++j) {
            if (j) out.append(Net::text(", "));
            out.append(vector_net(c.multipliers[j]));
        }
        out.append(Net::text("}}"));
    }
    return out.append(Net::text("}")).str();
}

}  // namespace lpde
