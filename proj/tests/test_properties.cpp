#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "properties.hpp"

namespace {

constexpr std::size_t kCases = 200;

void expect_clean(const props::Tally& t, std::size_t cases) {
    EXPECT_EQ(t.cases, cases);
    EXPECT_EQ(t.failures, 0u) << t.first;
}

}  // namespace

TEST(Properties, DualityIdentity) { expect_clean(props::lemma_duality(kCases, 11), kCases); }
TEST(Properties, Leibniz) { expect_clean(props::leibniz(kCases, 12), kCases); }
TEST(Properties, SPairsReduceToZero) { expect_clean(props::spair_reduction(kCases, 13), kCases); }
TEST(Properties, NormalFormIdempotent) { expect_clean(props::normal_form_idempotence(kCases, 14), kCases); }
TEST(Properties, SaturationLaws) { expect_clean(props::saturation_laws(kCases, 15), kCases); }
TEST(Properties, OperatorBijection) { expect_clean(props::operator_bijection(100, 16), 100); }

TEST(Properties, DistractionNormalOrder) {
    auto t = props::distraction_normal_order();
    EXPECT_GT(t.cases, 50u);
    EXPECT_EQ(t.failures, 0u) << t.first;
}

TEST(Properties, MembershipAgreesWithGroebner) {
    std::uint32_t seed = 100;
    for (const auto& fc : fixture::all()) {
        auto d = lpde::solve_pde(fc.module);
        auto s = fixture::soundness(fc.module, d, 100, seed++);
        EXPECT_EQ(s.failed_multipliers, 0u) << fc.name;
        EXPECT_TRUE(s.generators_accepted) << fc.name;
        EXPECT_EQ(s.nonmembers, 100u) << fc.name;
        EXPECT_EQ(s.nonmembers_accepted, 0u) << fc.name;
        EXPECT_EQ(s.members_rejected, 0u) << fc.name;
    }
}

TEST(Properties, DistractionIsLinear) {
    auto theta = lpde::make_qring({"t1", "t2"});
    lpde::Monomial b;
    b.set(0, 1);
    b.set(1, 2);
    auto p = lpde::parse_polynomial(theta, "t1^2 - 3*t2"), q = lpde::parse_polynomial(theta, "5*t1*t2 + 1");
    auto d = [&](const lpde::QPoly& f) { return lpde::distraction(theta, {{b, f, b}}).ideal_generators().at(0); };
    EXPECT_EQ(d(p + q.scaled(lpde::Rational(2))), d(p) + d(q).scaled(lpde::Rational(2)));
    EXPECT_EQ(d(lpde::QPoly::constant(theta, 1)), lpde::falling_factorial(theta, b));
}
