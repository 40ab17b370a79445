// Command-line front end: reads a problem as JSON (file or stdin), runs one
// command and writes JSON or text. Exit status 0 ok, 1 mathematical
// diagnostic, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lpde/lpde.hpp"

using namespace lpde;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream f(path);
    if (!f) throw InputError("cannot read '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::vector<QModule> read_primes(const QRingPtr& ring, const std::vector<std::vector<std::string>>& lists) {
    std::vector<QModule> out;
    for (const auto& gens : lists) {
        std::vector<QPoly> ps;
        for (const auto& g : gens) ps.push_back(parse_polynomial(ring, g));
        out.push_back(QModule::ideal(ring, ps));
    }
    return out;
}

json ideal_json(const QModule& ideal) {
    json j = json::array();
    if (ideal.is_whole()) return json::array({"1"});
    if (ideal.reduced().is_zero()) return json::array({"0"});
    for (const auto& g : display_generators(ideal)) j.push_back(g.to_string());
    return j;
}

json vector_json(const QVector& v) {
    json j = json::array();
    for (const auto& p : v) j.push_back(p.to_string());
    return j;
}

struct Args {
    std::string command;
    std::string input = "-";
    std::string format = "json";
    std::optional<std::string> order;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> primes_file;
    std::optional<unsigned> max_r;
    bool extended = false;
    std::vector<std::string> vector;
    std::optional<std::string> dpd_file;
};

int run(const Args& a) {
    auto in = parse_input(slurp(a.input), a.order);
    SolveOptions opts;
    opts.seed = a.seed.value_or(in.seed);
    opts.max_r = a.max_r.value_or(a.extended ? std::max(in.max_r, 128u) : in.max_r);
    if (a.primes_file) in.primes = json::parse(slurp(*a.primes_file)).get<std::vector<std::vector<std::string>>>();
    if (in.primes) opts.primes = read_primes(in.ring, *in.primes);
    const auto& m = in.module;
    bool text = a.format == "text";
    json out;

    if (a.command == "solve") {
        auto dpd = solve_pde(m, opts);
        if (text) {
            std::cout << emit_text(dpd) << "\n";
            return 0;
        }
        out = to_json(dpd, render_general_solution(dpd));
    } else if (a.command == "amult") {
        auto n = amult(m, opts);
        if (text) {
            std::cout << n << "\n";
            return 0;
        }
        out = {{"amult", n}};
    } else if (a.command == "membership") {
        if (a.vector.size() != in.k) throw InputError("--vector must be given k times");
        QVector v;
        for (const auto& s : a.vector) v.push_back(parse_polynomial(in.ring, s));
        auto dpd = solve_pde(m, opts);
        auto r = membership_test(v, dpd);
        out = {{"member", r.member}};
        if (!r.member) {
            const auto& c = dpd.components[r.component];
            out["witness"] = {{"prime", ideal_json(c.prime.ideal)},
                              {"multiplier", vector_json(c.multipliers[r.multiplier])}};
        }
        if (text) {
            std::cout << (r.member ? "true" : "false") << "\n";
            return 0;
        }
    } else if (a.command == "verify") {
        Decomposition dpd = a.dpd_file ? decomposition_from_json(json::parse(slurp(*a.dpd_file)), in.ring, in.k)
                                       : solve_pde(m, opts);
        std::size_t checked = 0, failed = 0;
        for (const auto& c : dpd.components)
            for (const auto& b : c.multipliers) {
                ++checked;
                if (!verify_solution(b, c.prime.ideal, m)) ++failed;
            }
        bool members = true;
        for (const auto& g : m.generators()) members = members && membership_test(g, dpd).member;
        out = {{"verified", failed == 0 && members}, {"multipliers_checked", checked}, {"failed", failed},
               {"generators_accepted", members}};
        if (text) {
            std::cout << (failed == 0 && members ? "verified" : "FAILED") << " (" << checked << " multipliers)\n";
            return failed == 0 && members ? 0 : 1;
        }
        if (failed || !members) {
            std::cout << out.dump(2) << "\n";
            return 1;
        }
    } else if (a.command == "charvariety") {
        auto cv = characteristic_variety(m, opts.seed);
        json ps = json::array();
        for (const auto& p : cv.primes) ps.push_back(ideal_json(p.ideal));
        out = {{"annihilator", ideal_json(cv.annihilator)}, {"fitting", ideal_json(cv.fitting)}, {"primes", ps}};
        if (auto d = dim_sol(m, opts)) out["dim_sol"] = *d;
        else out["dim_sol"] = "infinite";
    } else if (a.command == "polysols") {
        auto ps = polynomial_solutions(m, opts);
        auto closure = polynomial_closure(m, opts);
        json basis = json::array();
        for (const auto& b : ps.basis) basis.push_back(vector_json(b));
        json comp = json::array();
        auto reduced = ps.component.reduced();
        for (const auto& g : reduced.generators()) comp.push_back(vector_json(g));
        out = {{"count", ps.basis.size()}, {"basis", basis}, {"degree_profile", ps.degree_profile},
               {"component", comp}, {"dense", closure.dense},
               {"origin_multiplier_profile", origin_multiplier_profile(m, opts)}};
        if (text) {
            for (const auto& b : ps.basis) {
                std::string s;
                for (std::size_t j = 0; j < b.size(); ++j) s += (j ? ", " : "") + b[j].to_string();
                std::cout << (b.size() > 1 ? "(" + s + ")" : s) << "\n";
            }
            return 0;
        }
    } else if (a.command == "frobenius") {
        if (in.k != 1) throw InputError("frobenius expects an ideal (k = 1)");
        auto sol = solve_frobenius(m, opts);
        if (text) {
            std::cout << sol.rendered << "\n";
            return 0;
        }
        out = to_json(sol.dpd, sol.rendered);
    } else {
        throw InputError("unknown command '" + a.command + "'");
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for linear PDE with constant coefficients"};
    Args a;
    app.add_option("command", a.command, "solve | amult | membership | verify | charvariety | polysols | frobenius")
        ->required()
        ->check(CLI::IsMember({"solve", "amult", "membership", "verify", "charvariety", "polysols", "frobenius"}));
    app.add_option("input", a.input, "problem JSON file, - for stdin");
    app.add_option("--format", a.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--order", a.order, "grevlex or lex")->check(CLI::IsMember({"grevlex", "lex"}));
    app.add_option("--seed", a.seed, "seed for randomized choices");
    app.add_option("--primes", a.primes_file, "JSON list of candidate primes (lists of generators)");
    app.add_option("--max-r", a.max_r, "cap on the local order search");
    app.add_flag("--extended", a.extended, "raise caps for slow inputs");
    app.add_option("--vector", a.vector, "membership query, one entry per component");
    app.add_option("--dpd", a.dpd_file, "decomposition JSON to verify instead of solving");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run(a);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MathDiagnostic& e) {
        std::cerr << "diagnostic: " << e.what() << "\n";
        return 1;
    }
}
