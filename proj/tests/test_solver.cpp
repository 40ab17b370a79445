#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "fixtures.hpp"

using namespace lpde;
using fixture::ideal_of;
using fixture::module_of;
using fixture::P;
using fixture::xs;
using fixture::columns;
using fixture::find_component;
using fixture::multiplicities;
using fixture::spans_agree_at;

namespace {

/// A rational point of a prime generated by linear forms, with the free
/// coordinates set from values.
std::optional<std::vector<Rational>> linear_point(const QModule& prime, const std::vector<std::size_t>& indep,
                                                  const std::vector<Rational>& values) {
    std::size_t n = prime.ring()->nvars();
    std::vector<std::vector<Rational>> rows;
    for (const auto& g : prime.reduced().ideal_generators()) {
        if (g.degree() > 1) return std::nullopt;
        std::vector<Rational> r(n + 1, Rational(0));
        for (const auto& t : g.terms()) {
            std::size_t v = n;
            for (std::size_t i = 0; i < n; ++i)
                if (t.mono[i]) v = i;
            r[v] += t.coeff;
        }
        rows.push_back(r);
    }
    std::vector<Rational> u(n, Rational(0));
    std::vector<bool> fixed(n, false);
    for (std::size_t i = 0; i < indep.size(); ++i) {
        u[indep[i]] = values[i % values.size()];
        fixed[indep[i]] = true;
    }
    // substitute the free coordinates, then eliminate
    for (auto& r : rows)
        for (std::size_t i = 0; i < n; ++i)
            if (fixed[i]) {
                r[n] += r[i] * u[i];
                r[i] = 0;
            }
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0, row = 0; c < n && row < rows.size(); ++c) {
        std::size_t p = row;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[row]);
        Rational inv = 1 / rows[row][c];
        for (auto& x : rows[row]) x *= inv;
        for (std::size_t o = 0; o < rows.size(); ++o) {
            if (o == row || rows[o][c] == 0) continue;
            Rational f = rows[o][c];
            for (std::size_t j = 0; j <= n; ++j) rows[o][j] -= f * rows[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    for (std::size_t i = 0; i < pivots.size(); ++i) u[pivots[i]] = -rows[i][n];
    return u;
}

struct Run {
    int status;
    std::string out;
};

Run run_cli(const std::string& args) {
    std::string cmd = std::string(LPDE_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r{0, ""};
    FILE* pipe = popen(cmd.c_str(), "r");
    std::array<char, 4096> buf{};
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(LPDE_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Solve, OdeComponentsAndText) {
    auto m = fixture::ode();
    auto d = solve_pde(m);
    ASSERT_EQ(d.components.size(), 2u);
    auto r = m.ring();
    auto c1 = find_component(d, ideal_of(r, {"x - 1"}));
    auto c2 = find_component(d, ideal_of(r, {"x + 5"}));
    ASSERT_TRUE(c1 && c2);
    EXPECT_EQ(c1->multiplicity(), 2u);
    EXPECT_EQ(c2->multiplicity(), 1u);
    EXPECT_EQ(emit_text(d), "{{ideal(x - 1), {| 1 |, | dx |}}, {ideal(x + 5), {| 1 |}}}");
    EXPECT_EQ(render_general_solution(d), "a*exp(dx) + b*dx*exp(dx) + c*exp(-5*dx)");
}

TEST(Solve, LineDoubleSpan) {
    auto m = fixture::line_double();
    auto d = solve_pde(m);
    ASSERT_EQ(d.components.size(), 1u);
    EXPECT_TRUE(d.components[0].prime.ideal.equals(ideal_of(m.ring(), {"x1", "x3"})));
    ASSERT_EQ(d.components[0].multiplicity(), 4u);
    std::vector<QVector> expected;
    for (auto s : {"1", "dx1", "x2*dx1^2 + 2*dx3", "x2*dx1^3 + 6*dx1*dx3"}) expected.push_back({P(d.mring, s)});
    std::vector<std::vector<Rational>> points;
    for (int v = 1; v <= 8; ++v) points.push_back({Rational(0), Rational(v), Rational(0)});
    EXPECT_TRUE(spans_agree_at(d.components[0].multipliers, expected, points));
    EXPECT_EQ(render_general_solution(d),
              "a(dx2) + dx1*b(dx2) + (dx1^2*c'(dx2) + 2*dx3*c(dx2)) + (dx1^3*d'(dx2) + 6*dx1*dx3*d(dx2))");
}

TEST(Solve, SixPrimesMultiplicities) {
    auto d = solve_pde(fixture::six_primes());
    EXPECT_EQ(d.components.size(), 6u);
    EXPECT_EQ(multiplicities(d), (std::vector<std::size_t>{1, 1, 1, 2, 2, 2}));
    EXPECT_EQ(d.amult(), 9u);
}

TEST(Solve, ConeListedPrimes) {
    auto m = fixture::cone();
    auto r = m.ring();
    auto d = solve_pde(m);
    std::vector<std::pair<QModule, std::size_t>> listed{
        {ideal_of(r, {"x1"}), 1},
        {ideal_of(r, {"x2", "x4"}), 1},
        {ideal_of(r, {"x2", "x3"}), 1},
        {ideal_of(r, {"x1", "x3"}), 1},
        {ideal_of(r, {"x1", "x2"}), 4},
        {ideal_of(r, {"x1^2 - x2*x3", "x1*x2 - x3*x4", "x2^2 - x1*x4"}), 1}};
    ASSERT_EQ(d.components.size(), listed.size());
    for (const auto& [p, mult] : listed) {
        // mutual membership of generators by dense linear algebra
        const Component* hit = nullptr;
        for (const auto& c : d.components) {
            bool same = true;
            for (const auto& g : p.generators())
                same = same && oracle::dense_member(g, columns(c.prime.ideal), 2);
            for (const auto& g : c.prime.ideal.generators()) same = same && oracle::dense_member(g, columns(p), 2);
            if (same) hit = &c;
        }
        ASSERT_NE(hit, nullptr);
        EXPECT_EQ(hit->multiplicity(), mult);
    }
    // (x4, -x2) is parallel to the computed multiplier modulo the cone
    auto p6 = ideal_of(r, {"x1^2 - x2*x3", "x1*x2 - x3*x4", "x2^2 - x1*x4"});
    auto c6 = find_component(d, p6);
    ASSERT_TRUE(c6);
    auto b = c6->multipliers.at(0);
    std::vector<std::size_t> xpart{0, 1, 2, 3};
    QPoly b0 = b[0].remap(r, xpart), b1 = b[1].remap(r, xpart);
    QPoly minor = b0 * P(r, "-x2") - b1 * P(r, "x4");
    EXPECT_TRUE(oracle::dense_member({minor}, columns(p6), 2));
    EXPECT_FALSE(oracle::dense_member({b0}, columns(p6), 3));
}

TEST(Solve, NestedTriple) {
    auto r = xs(3);
    auto di = solve_pde(fixture::nested_i());
    auto dm = solve_pde(fixture::nested());
    auto dj = solve_pde(fixture::nested_j());
    EXPECT_EQ(di.components.size(), 2u);
    EXPECT_EQ(dm.components.size(), 3u);
    EXPECT_EQ(dj.components.size(), 4u);
    EXPECT_EQ(di.amult(), 2u);
    EXPECT_EQ(dm.amult(), 4u);
    EXPECT_EQ(dj.amult(), 5u);
    EXPECT_TRUE(find_component(dj, ideal_of(r, {"x1", "x2", "x3"})));
}

TEST(Solve, ThreePointsText) {
    auto m = fixture::three_points();
    auto d = solve_pde(m);
    ASSERT_EQ(d.components.size(), 3u);
    EXPECT_EQ(d.amult(), 5u);
    auto p3 = ideal_of(m.ring(), {"x1 + x2 + 1", "x2^2 + x2 + 1"});
    auto c3 = find_component(d, p3);
    ASSERT_TRUE(c3);
    ASSERT_EQ(c3->multiplicity(), 1u);
    std::vector<std::size_t> xpart{0, 1};
    auto b = c3->multipliers[0];
    QPoly minor = b[0].remap(m.ring(), xpart) - b[1].remap(m.ring(), xpart) * P(m.ring(), "x2 + 1");
    EXPECT_TRUE(oracle::dense_member({minor}, columns(p3), 2));
    std::string expected =
        "                                                                                                        2\n"
        "{{ideal (x2, x1), {| 1 |, | 0 |, | -dx1 |}}, {ideal (x2 - 1, x1 - 1), {| -1 |}}, {ideal (x1 + x2 + 1, "
        "x2  + x2 + 1), {| x2+1 |}}}\n"
        "                   | 0 |  | 1 |  |  dx2 |                              |  1 |                          "
        "               |   1  |";
    EXPECT_EQ(emit_text(d), expected);
}

TEST(Solve, MultipliersSolveAtSampledPoints) {
    std::vector<Rational> values{Rational(2), Rational(-3), Rational(5, 2)};
    for (const auto& fc : fixture::all()) {
        auto d = solve_pde(fc.module);
        auto zring = xs(fc.module.ring()->nvars());
        auto gens = columns(fc.module);
        for (const auto& c : d.components) {
            auto u = linear_point(c.prime.ideal, c.indep, values);
            if (!u) continue;
            for (const auto& b : c.multipliers) EXPECT_TRUE(oracle::solves_at(gens, b, *u, zring)) << fc.name;
        }
    }
    // the cone through its parametrization (s^2 t, s t^2, s^3, t^3)
    auto m = fixture::cone();
    auto d = solve_pde(m);
    auto c6 = find_component(d, ideal_of(m.ring(), {"x1^2 - x2*x3", "x1*x2 - x3*x4", "x2^2 - x1*x4"}));
    ASSERT_TRUE(c6);
    for (auto [s, t] : std::vector<std::pair<int, int>>{{1, 1}, {2, -1}, {3, 2}}) {
        std::vector<Rational> u{Rational(s * s * t), Rational(s * t * t), Rational(s * s * s), Rational(t * t * t)};
        EXPECT_TRUE(oracle::solves_at(columns(m), c6->multipliers[0], u, xs(4)));
    }
}

TEST(Solve, MultiplierVariablesArePartnersOfDependents) {
    for (const auto& fc : fixture::all()) {
        auto d = solve_pde(fc.module);
        std::size_t n = fc.module.ring()->nvars();
        for (const auto& c : d.components)
            for (const auto& b : c.multipliers)
                for (const auto& e : b)
                    for (const auto& t : e.terms())
                        for (auto i : c.indep) EXPECT_EQ(t.mono[n + i], 0u) << fc.name;
    }
}

TEST(LocalData, Examples) {
    auto m = fixture::line_double();
    auto p = ideal_of(m.ring(), {"x1", "x3"});
    auto L = local_data(m, p, {p});
    EXPECT_TRUE(L.U.equals(m));
    EXPECT_TRUE(L.V.is_whole());
    EXPECT_EQ(L.r, 3u);
    // P^4 inside I but P^3 not, by normal forms
    EXPECT_TRUE(m.contains(ideal_power(p, 4)));
    EXPECT_FALSE(m.contains(ideal_power(p, 3)));

    auto o = fixture::ode();
    auto p1 = ideal_of(o.ring(), {"x - 1"}), p2 = ideal_of(o.ring(), {"x + 5"});
    auto L1 = local_data(o, p1, {p1, p2});
    EXPECT_TRUE(L1.U.equals(ideal_of(o.ring(), {"x^2 - 2*x + 1"})));
    EXPECT_EQ(L1.r, 1u);
    auto mult = multiplier_ring(o.ring());
    auto at5 = local_solve(p2, local_data(o, p2, {p1, p2}), mult);
    ASSERT_EQ(at5.size(), 1u);
    EXPECT_EQ(at5[0][0], P(mult, "1"));

    auto r = xs(2);
    auto m1 = module_of(r, {{"x1", "0"}, {"0", "1"}});
    auto q = ideal_of(r, {"x1"});
    auto one = local_solve(q, local_data(m1, q, {q}), multiplier_ring(r));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0][0], P(multiplier_ring(r), "1"));
    EXPECT_TRUE(one[0][1].is_zero());

    EXPECT_THROW(local_data(m, QModule::whole(m.ring(), 1), {}), InputError);
}

TEST(VerifyAssociated, Examples) {
    auto r = xs(2);
    auto x2 = ideal_of(r, {"x2"});
    EXPECT_EQ(verify_associated(ideal_of(r, {"x1^2"}), x2, {x2}), 0u);
    auto m = fixture::cone();
    auto d = solve_pde(m);
    auto p5 = ideal_of(m.ring(), {"x1", "x2"});
    EXPECT_EQ(verify_associated(m, p5, prime_ideals(associated_primes(m))), 4u);

    auto o = fixture::ode();
    SolveOptions bad;
    bad.primes = std::vector<QModule>{ideal_of(o.ring(), {"x + 1"})};
    EXPECT_THROW(solve_pde(o, bad), MathDiagnostic);
    SolveOptions unit;
    unit.primes = std::vector<QModule>{ideal_of(o.ring(), {"1"})};
    EXPECT_THROW(solve_pde(o, unit), InputError);
    SolveOptions foreign;
    foreign.primes = std::vector<QModule>{ideal_of(fixture::ode().ring(), {"x - 1"})};
    EXPECT_THROW(solve_pde(o, foreign), InputError);
}

TEST(VerifyAssociated, ProvidedPrimesReproduceSolve) {
    auto m = fixture::six_primes();
    auto d = solve_pde(m);
    SolveOptions opts;
    opts.primes = prime_ideals(associated_primes(m));
    auto again = solve_pde(m, opts);
    EXPECT_EQ(again.amult(), d.amult());
    EXPECT_EQ(multiplicities(again), multiplicities(d));
}

TEST(Duality, OperatorConversions) {
    auto r = xs(3);
    auto mr = multiplier_ring(r);
    QVector b{P(mr, "x2*dx1^2 + 2*dx3")};
    auto op = multiplier_to_operator(b, 3);
    EXPECT_EQ(to_string(op, r), "(x2*d_x1^2 + 2*d_x3)");
    EXPECT_EQ(operator_to_multiplier(op, mr), b);
    auto one = multiplier_to_operator({P(mr, "1")}, 3);
    EXPECT_EQ(to_string(one, r), "(1)");
    auto dx = multiplier_to_operator({P(mr, "x2*dx1")}, 3);
    EXPECT_EQ(to_string(dx, r), "(x2*d_x1)");
    auto rx = make_qring({"x"});
    EXPECT_EQ(operator_to_multiplier(multiplier_to_operator({P(multiplier_ring(rx), "dx")}, 1), multiplier_ring(rx))[0],
              P(multiplier_ring(rx), "dx"));
}

TEST(Duality, VerifySolutionExamples) {
    auto m = fixture::line_double();
    auto mr = multiplier_ring(m.ring());
    auto p = ideal_of(m.ring(), {"x1", "x3"});
    EXPECT_TRUE(verify_solution({P(mr, "x2*dx1^2 + 2*dx3")}, p, m));
    EXPECT_FALSE(verify_solution({P(mr, "dx1^2")}, p, m));

    auto o = fixture::ode();
    auto om = multiplier_ring(o.ring());
    EXPECT_TRUE(verify_solution({P(om, "1")}, ideal_of(o.ring(), {"x - 1"}), o));
    EXPECT_TRUE(verify_solution({P(om, "dx")}, ideal_of(o.ring(), {"x - 1"}), o));
    EXPECT_FALSE(verify_solution({P(om, "dx")}, ideal_of(o.ring(), {"x + 5"}), o));
}

TEST(Duality, MembershipWitness) {
    auto o = fixture::ode();
    auto d = solve_pde(o);
    EXPECT_TRUE(membership_test({P(o.ring(), "(x - 1)^2*(x + 5)")}, d).member);
    EXPECT_FALSE(membership_test({P(o.ring(), "(x - 1)*(x + 5)")}, d).member);

    auto m = fixture::line_double();
    auto dl = solve_pde(m);
    QVector e1{P(m.ring(), "1")};
    EXPECT_FALSE(m.contains(e1));
    auto res = membership_test(e1, dl);
    EXPECT_FALSE(res.member);
    EXPECT_EQ(res.component, 0u);
    EXPECT_THROW(membership_test({P(m.ring(), "1"), P(m.ring(), "1")}, dl), InputError);
}

TEST(Render, IntegralKernelForNonlinearPrime) {
    auto d = solve_pde(fixture::cone());
    auto s = render_general_solution(d);
    EXPECT_NE(s.find("∫_{V(x2^2 - x1*x4, x1*x2 - x3*x4, x1^2 - x2*x3)} ((-x1, x3))*exp(x1*dx1 + x2*dx2 + x3*dx3 + "
                     "x4*dx4) dμ_i(x)"),
              std::string::npos);
    EXPECT_EQ(render_general_solution(solve_pde(fixture::nested())),
              "(a(dx2, dx3), 0, 0) + (0, 0, b(dx2)) + (0, c(dx3), 0) + (0, dx1*d(dx3), 0)");
}

TEST(Frobenius, FallingFactorial) {
    auto t = make_qring({"t1", "t2"});
    Monomial b02;
    b02.set(1, 2);
    EXPECT_EQ(falling_factorial(t, b02), P(t, "t2*(t2 - 1)"));
    EXPECT_EQ(falling_factorial(t, Monomial()), P(t, "1"));
    Monomial b11;
    b11.set(0, 1);
    b11.set(1, 1);
    EXPECT_EQ(falling_factorial(t, b11), P(t, "t1*t2"));
    EXPECT_EQ(falling_factorial(t, b02).degree(), 2);
}

TEST(Frobenius, DistractionExamples) {
    auto t = make_qring({"t1", "t2"});
    Monomial b02;
    b02.set(1, 2);
    auto d = distraction(t, {{b02, P(t, "1"), b02}});
    EXPECT_EQ(d.ideal_generators().at(0), P(t, "t2^2 - t2"));
    auto p = P(t, "t1^2 + 3*t2");
    EXPECT_EQ(distraction(t, {{Monomial(), p, Monomial()}}).ideal_generators().at(0), p);
    Monomial e1;
    e1.set(0, 1);
    EXPECT_EQ(distraction(t, {{e1, P(t, "1"), e1}}).ideal_generators().at(0), P(t, "t1"));
    EXPECT_THROW(distraction(t, {{Monomial(), P(t, "1"), e1}}), InputError);
}

TEST(Frobenius, SolveAndRender) {
    auto t = make_qring({"t1", "t2", "t3"});
    auto f = ideal_of(t, {"t2^2", "t3^2", "t2 - t1*t3"});
    auto sol = solve_frobenius(f);
    EXPECT_EQ(sol.rendered, "A(z1) + z1*log(z2)*B'(z1) + log(z3)*B(z1)");
    auto direct = solve_pde(ideal_of(xs(3), {"x2^2", "x3^2", "x2 - x1*x3"}));
    ASSERT_EQ(direct.components.size(), sol.dpd.components.size());
    for (std::size_t i = 0; i < direct.components.size(); ++i)
        EXPECT_EQ(direct.components[i].multiplicity(), sol.dpd.components[i].multiplicity());

    auto t2 = make_qring({"t1", "t2"});
    auto sq = solve_frobenius(ideal_of(t2, {"t2^2"}));
    EXPECT_EQ(sq.dpd.amult(), 2u);
    EXPECT_EQ(sq.rendered, "A(z1) + log(z2)*B(z1)");
}

TEST(Io, ParseErrors) {
    auto bad = [](const std::string& s) {
        try {
            parse_input(s);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(bad(R"({"ring": {"variables": ["x1"]}, "k": 1, "generators": [["x1^"]]})").find("position"),
              std::string::npos);
    EXPECT_NE(bad(R"({"ring": {"variables": ["x1"]}, "k": 1, "generators": [["y"]]})"), "");
    EXPECT_NE(bad(R"({"ring": {"variables": ["x1"]}, "k": 2, "generators": [["x1"]]})"), "");
    EXPECT_THROW(parse_input("{\"ring\": \n {\"variables\": [\"x1\"]},, }"), std::exception);
    auto zero = parse_input(R"({"ring": {"variables": ["x1", "x2"]}, "k": 2, "generators": []})");
    EXPECT_TRUE(zero.module.is_zero());
    EXPECT_EQ(zero.k, 2u);
}

TEST(Io, RoundTrips) {
    std::ifstream f(sample("six_primes.json"));
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    auto in = parse_input(text);
    EXPECT_EQ(in.k, 2u);
    EXPECT_EQ(in.module.generators().size(), 3u);
    auto again = parse_input(to_json(in).dump());
    EXPECT_EQ(to_json(again), to_json(in));

    auto d = solve_pde(in.module);
    auto j = to_json(d, render_general_solution(d));
    auto back = decomposition_from_json(j, in.ring, in.k);
    EXPECT_EQ(to_json(back, render_general_solution(back)), j);
}

TEST(Io, ZeroAndWholeModules) {
    auto r = xs(2);
    QModule zero(r, 2);
    auto d = solve_pde(zero);
    ASSERT_EQ(d.components.size(), 1u);
    EXPECT_TRUE(d.components[0].prime.ideal.is_zero() || d.components[0].prime.ideal.reduced().is_zero());
    EXPECT_EQ(d.amult(), 2u);
    EXPECT_EQ(to_json(d, "")["components"][0]["prime"], json::array({"0"}));

    auto whole = QModule::whole(r, 2);
    auto dw = solve_pde(whole);
    EXPECT_TRUE(dw.components.empty());
    EXPECT_EQ(dw.amult(), 0u);
    EXPECT_EQ(emit_text(dw), "{}");
}

TEST(Cli, ExitCodesAndGolden) {
    auto ok = run_cli("solve " + sample("ode.json") + " --format text");
    EXPECT_EQ(ok.status, 0);
    EXPECT_EQ(ok.out, "{{ideal(x - 1), {| 1 |, | dx |}}, {ideal(x + 5), {| 1 |}}}\n");

    auto member = run_cli("membership " + sample("line_double.json") + " --vector 'x3^2' --format text");
    EXPECT_EQ(member.status, 0);
    EXPECT_EQ(member.out, "true\n");
    auto nonmember = run_cli("membership " + sample("line_double.json") + " --vector 'x3'");
    EXPECT_EQ(nonmember.status, 0);
    EXPECT_NE(nonmember.out.find("\"member\": false"), std::string::npos);
    EXPECT_NE(nonmember.out.find("witness"), std::string::npos);

    EXPECT_EQ(run_cli("solve " + sample("ode.json") + " --primes " + sample("wrong_prime.json")).status, 1);
    EXPECT_EQ(run_cli("solve /nonexistent.json").status, 2);
    EXPECT_EQ(run_cli("bogus " + sample("ode.json")).status, 2);
    EXPECT_EQ(run_cli("amult " + sample("cone.json") + " --format text").out, "9\n");
    EXPECT_EQ(run_cli("verify " + sample("six_primes.json") + " --format text").status, 0);
    EXPECT_EQ(run_cli("frobenius " + sample("frobenius.json") + " --format text").out,
              "A(z1) + z1*log(z2)*B'(z1) + log(z3)*B(z1)\n");
}

TEST(Cli, Deterministic) {
    auto a = run_cli("solve " + sample("six_primes.json"));
    auto b = run_cli("solve " + sample("six_primes.json"));
    auto c = run_cli("solve " + sample("six_primes.json") + " --seed 7");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
}

TEST(ExponentialPoint, Examples) {
    auto w = fixture::wave();
    auto c = exponential_point_test(w, {Rational(1), Rational(2)});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->size(), 1u);
    EXPECT_FALSE(exponential_point_test(w, {Rational(1), Rational(0)}));
    auto cone = exponential_point_test(fixture::cone(), {Rational(1), Rational(1), Rational(1), Rational(1)});
    ASSERT_TRUE(cone);
    EXPECT_EQ((*cone)[0] + (*cone)[1], 0);
    EXPECT_NE((*cone)[0], 0);
    EXPECT_THROW(exponential_point_test(w, {Rational(1)}), InputError);
}

TEST(DimSol, Examples) {
    auto j = fixture::power_sums(1, 2, 3);
    EXPECT_EQ(dim_sol(j), std::optional<std::size_t>(6));
    EXPECT_EQ(standard_monomial_count(j), std::optional<std::size_t>(6));
    EXPECT_EQ(dim_sol(ideal_of(xs(2), {"x1", "x2"})), std::optional<std::size_t>(1));
    EXPECT_FALSE(dim_sol(fixture::wave()));
    // six points of a non-rational residue field count with their degree
    EXPECT_EQ(dim_sol(fixture::three_points()), std::optional<std::size_t>(6));
    EXPECT_EQ(dim_sol(ideal_of(make_qring({"x"}), {"x^2"})), std::optional<std::size_t>(2));
}

TEST(DimSol, DenseQuotientCount) {
    // R/J truncated below degree 4, where m^4 lies in J
    auto j = fixture::power_sums(1, 2, 3);
    auto r = j.ring();
    oracle::Span span;
    std::size_t total = 0;
    for (const auto& m : oracle::monomials_up_to(3, 3)) {
        ++total;
        for (const auto& g : j.ideal_generators()) {
            auto prod = g.mul_term(Rational(1), m);
            std::vector<lpde::Term<RationalField>> low;
            for (const auto& t : prod.terms())
                if (t.mono.degree() <= 3) low.push_back(t);
            span.add(oracle::to_row({QPoly::from_terms(r, low)}));
        }
    }
    EXPECT_TRUE(j.contains(ideal_power(detail::maximal_ideal(r), 4)));
    EXPECT_EQ(total - span.rank(), 6u);
}

TEST(PolynomialSolutions, PowerSums) {
    auto j = fixture::power_sums(1, 2, 3);
    auto ps = polynomial_solutions(j);
    ASSERT_EQ(ps.basis.size(), 6u);
    EXPECT_EQ(ps.degree_profile, (std::vector<std::size_t>{1, 2, 2, 1}));
    auto mr = multiplier_ring(j.ring());
    oracle::Span span;
    for (const auto& b : ps.basis) span.add(oracle::to_row(b));
    EXPECT_TRUE(span.contains(oracle::to_row({P(mr, "(dx1 - dx2)*(dx1 - dx3)*(dx2 - dx3)")})));
    // each basis element is killed by every generator
    std::vector<std::size_t> zpart{3, 4, 5};
    auto zr = xs(3);
    for (const auto& b : ps.basis) {
        std::vector<Term<RationalField>> ts;
        for (const auto& t : b[0].terms()) {
            Monomial z;
            for (std::size_t i = 0; i < 3; ++i) z.set(i, t.mono[3 + i]);
            ts.push_back({z, t.coeff});
        }
        auto q = QPoly::from_terms(zr, ts);
        for (const auto& g : j.ideal_generators()) EXPECT_TRUE(apply_operator(g.in_ring(zr), q).is_zero());
    }
}

TEST(PolynomialSolutions, FlagsProfile) {
    auto ps = polynomial_solutions(fixture::flags());
    EXPECT_EQ(ps.basis.size(), 10u);
    EXPECT_EQ(ps.degree_profile, (std::vector<std::size_t>{3, 4, 3}));
}

TEST(PolynomialSolutions, OriginProfile) {
    EXPECT_EQ(origin_multiplier_profile(fixture::three_points()), (std::vector<std::size_t>{2, 1}));
    EXPECT_TRUE(origin_multiplier_profile(fixture::ode()).empty());
    EXPECT_TRUE(polynomial_solutions(fixture::ode()).basis.empty());
}

TEST(PolynomialClosure, Examples) {
    EXPECT_TRUE(polynomial_closure(fixture::line_double()).dense);
    auto o = polynomial_closure(ideal_of(make_qring({"x"}), {"x - 1"}));
    EXPECT_FALSE(o.dense);
    ASSERT_TRUE(o.component);
    EXPECT_TRUE(o.component->is_whole());

    auto m = fixture::three_points();
    auto c = polynomial_closure(m);
    EXPECT_FALSE(c.dense);
    ASSERT_TRUE(c.component);
    // the origin component: saturating away the other two points twice
    auto r = m.ring();
    auto away = ideal_of(r, {"(x1 - 1)*(x1 + x2 + 1)"});
    auto expected = saturate(m, away.ideal_generators()[0]).module;
    EXPECT_TRUE(c.component->equals(expected));
    EXPECT_EQ(polynomial_solutions(m).basis.size(), 3u);
}

TEST(CharacteristicVariety, Examples) {
    auto cv = characteristic_variety(fixture::nested());
    auto r = xs(3);
    EXPECT_TRUE(cv.annihilator.equals(ideal_of(r, {"x1^2", "x1*x2"})));
    EXPECT_TRUE(cv.fitting.equals(ideal_of(r, {"x1^4", "x1^3*x3", "x1^2*x2", "x1*x2*x3"})));
    ASSERT_EQ(cv.primes.size(), 1u);
    EXPECT_TRUE(cv.primes[0].ideal.equals(ideal_of(r, {"x1"})));

    auto whole = characteristic_variety(QModule::whole(r, 2));
    EXPECT_TRUE(whole.annihilator.is_whole());
    EXPECT_TRUE(whole.fitting.is_whole());

    std::ifstream f(sample("koszul.json"));
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    auto k = characteristic_variety(parse_input(text).module);
    EXPECT_TRUE(k.annihilator.is_zero());
    EXPECT_TRUE(k.fitting.is_zero());
}
