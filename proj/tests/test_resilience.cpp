#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rlc/attacks.hpp"
#include "rlc/data.hpp"
#include "rlc/resilience.hpp"
#include "rlc/rng.hpp"

using namespace rlc;

TEST_CASE("empiricalResilience is zero without tampering on separable data") {
    const Dataset d = generateGaussians(
        GaussianSpec::isotropic({-3.0, 0.0}, {3.0, 0.0}, 0.8, 6, 6, 5));
    CHECK(empiricalResilience(TrainerId::Hinge, d, d) == 0.0);
    CHECK(empiricalResilience(TrainerId::ZeroOne, d, d) == 0.0);
    CHECK(empiricalResilience(TrainerId::MajorityZeroOne, d, d) == 0.0);
}

TEST_CASE("resilience bound spot values") {
    CHECK(resilienceBound({50, 50}, {10, 10}) == 0.6);
    const Rational r = resilienceBoundExact({50, 50}, {10, 10});
    CHECK(r.num == 3);
    CHECK(r.den == 5);

    CHECK(resilienceBound({50, 50}, {0, 0}) == 0.0);
    CHECK(resilienceBound({7, 9}, {0, 0}) == 0.0);

    CHECK(resilienceBound({75, 25}, {10, 5}) == 0.68);
    const Rational r2 = resilienceBoundExact({75, 25}, {10, 5});
    CHECK(r2.num == 17);
    CHECK(r2.den == 25);
}

TEST_CASE("bound is 1 outside the resilient region and rejects bad budgets") {
    CHECK(resilienceBound({10, 10}, {5, 0}) == 1.0);
    CHECK(resilienceBound({10, 10}, {0, 7}) == 1.0);
    CHECK_THROWS_AS(resilienceBound({10, 10}, {11, 0}), Error);
    CHECK_THROWS_AS(resilienceBound({10, 10}, {-1, 0}), Error);
}

TEST_CASE("bound is monotone in each budget component") {
    for (const ClassCounts counts : {ClassCounts{9, 7}, ClassCounts{20, 20}, ClassCounts{37, 49}}) {
        for (long ap = 0; ap <= counts.nPos; ++ap) {
            for (long an = 0; an <= counts.nNeg; ++an) {
                const double g = resilienceBound(counts, {ap, an});
                CHECK(g >= 0.0);
                CHECK(g <= 1.0);
                if (ap + 1 <= counts.nPos)
                    CHECK(resilienceBound(counts, {ap + 1, an}) >= g - 1e-15);
                if (an + 1 <= counts.nNeg)
                    CHECK(resilienceBound(counts, {ap, an + 1}) >= g - 1e-15);
            }
        }
    }
}

TEST_CASE("region predicate examples") {
    const ClassCounts c{75, 25};
    CHECK(perfectlyAttackableRegion(Algorithm::Convex, c, {1, 0}).perfectlyAttackable);
    CHECK_FALSE(perfectlyAttackableRegion(Algorithm::Convex, c, {0, 0}).perfectlyAttackable);
    // Sum condition: alpha+ + alpha- >= nNeg.
    CHECK(perfectlyAttackableRegion(Algorithm::ZeroOne, c, {25, 0}).perfectlyAttackable);
    CHECK_FALSE(perfectlyAttackableRegion(Algorithm::ZeroOne, c, {24, 0}).perfectlyAttackable);
    CHECK_FALSE(perfectlyAttackableRegion(Algorithm::MajorityZeroOne, c, {37, 12}).perfectlyAttackable);
    CHECK(perfectlyAttackableRegion(Algorithm::MajorityZeroOne, c, {38, 0}).perfectlyAttackable);
}

TEST_CASE("boundary budgets classify attackable with exact arithmetic") {
    // alpha+ = nPos/2 exactly: attackable (>= comparison), both parities.
    CHECK(perfectlyAttackableRegion(Algorithm::MajorityZeroOne, {10, 9}, {5, 0}).perfectlyAttackable);
    CHECK_FALSE(perfectlyAttackableRegion(Algorithm::MajorityZeroOne, {10, 9}, {4, 4}).perfectlyAttackable);
    // Odd class size: 2*4 = 8 < 9, 2*5 = 10 >= 9.
    CHECK_FALSE(perfectlyAttackableRegion(Algorithm::MajorityZeroOne, {9, 10}, {4, 0}).perfectlyAttackable);
    CHECK(perfectlyAttackableRegion(Algorithm::MajorityZeroOne, {9, 10}, {5, 0}).perfectlyAttackable);
}

TEST_CASE("region nesting and maximality over exhaustive budgets") {
    Rng rng(2026);
    std::vector<ClassCounts> countsList = {{75, 25}};
    for (int i = 0; i < 12; ++i)
        countsList.push_back({long(1 + rng.below(40)), long(1 + rng.below(40))});
    for (const ClassCounts& c : countsList) {
        for (long ap = 0; ap <= c.nPos; ++ap) {
            for (long an = 0; an <= c.nNeg; ++an) {
                const AttackBudget b{ap, an};
                const bool conv = perfectlyAttackableRegion(Algorithm::Convex, c, b).perfectlyAttackable;
                const bool zo = perfectlyAttackableRegion(Algorithm::ZeroOne, c, b).perfectlyAttackable;
                const bool maj =
                    perfectlyAttackableRegion(Algorithm::MajorityZeroOne, c, b).perfectlyAttackable;
                const bool any = perfectlyAttackableRegion(Algorithm::AnyLinear, c, b).perfectlyAttackable;
                if (maj) CHECK(zo);
                if (zo) CHECK(conv);
                CHECK(maj == any);
                // Inside the majority-resilient region the bound is non-trivial.
                if (!maj) CHECK(resilienceBound(c, b) < 1.0);
                else CHECK(resilienceBound(c, b) == 1.0);
            }
        }
    }
}

TEST_CASE("region grids match the predicate and the figure shapes") {
    const ClassCounts c{75, 25};
    const auto convex = regionGrid(Algorithm::Convex, c, 5);
    for (const auto& cell : convex) {
        const bool origin = cell.alphaPos == 0 && cell.alphaNeg == 0;
        CHECK(cell.attackable == !origin);
    }
    const auto maj = regionGrid(Algorithm::MajorityZeroOne, c, 5);
    for (const auto& cell : maj) {
        const bool expected = 2 * cell.alphaPos >= c.nPos || 2 * cell.alphaNeg >= c.nNeg;
        CHECK(cell.attackable == expected);
    }
    const auto zo = regionGrid(Algorithm::ZeroOne, c, 9);
    for (const auto& cell : zo) {
        const bool expected =
            perfectlyAttackableRegion(Algorithm::ZeroOne, c, {cell.alphaPos, cell.alphaNeg})
                .perfectlyAttackable;
        CHECK(cell.attackable == expected);
    }
    CHECK_THROWS_AS(regionGrid(Algorithm::Convex, c, 1), Error);
}

TEST_CASE("risk perturbation under a valid BFA is bounded by the budget") {
    // For any classifier and any bounded feature attack, per-class risks move
    // by at most alpha/classSize.
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        Dataset d(2);
        const std::size_t np = 2 + rng.below(6), nn = 2 + rng.below(6);
        for (std::size_t i = 0; i < np; ++i) d.add({rng.normal(), rng.normal()}, +1);
        for (std::size_t i = 0; i < nn; ++i) d.add({rng.normal(), rng.normal()}, -1);
        const long ap = long(rng.below(np + 1)), an = long(rng.below(nn + 1));

        Dataset tampered = d;
        const auto pos = d.posIndices(), neg = d.negIndices();
        for (std::size_t s : Rng(rng.nextU64()).sampleWithoutReplacement(pos.size(), ap))
            tampered.replaceFeatures(pos[s], {rng.normal() * 5.0, rng.normal() * 5.0});
        for (std::size_t s : Rng(rng.nextU64()).sampleWithoutReplacement(neg.size(), an))
            tampered.replaceFeatures(neg[s], {rng.normal() * 5.0, rng.normal() * 5.0});
        REQUIRE(isValidBfa(d, tampered, {ap, an}));

        const LinearClassifier h({rng.normal(), rng.normal(), rng.normal()});
        const RiskVector before = riskVector01(h, d);
        const RiskVector after = riskVector01(h, tampered);
        CHECK(std::abs(after.misPos - before.misPos) <= ap);
        CHECK(std::abs(after.misNeg - before.misNeg) <= an);
    }
}

TEST_CASE("infeasible majority program is reported distinctly") {
    // Two locations, each holding one positive and one negative: every linear
    // classifier misclassifies at least one point per location, but the
    // majority caps at class size 2 are zero.
    Dataset d(1);
    d.add({0.0}, +1);
    d.add({0.0}, -1);
    d.add({1.0}, +1);
    d.add({1.0}, -1);
    const TrainReport rep = trainMajority01(d);
    CHECK_FALSE(rep.feasible);
    CHECK_THROWS_AS(empiricalResilience(TrainerId::MajorityZeroOne, d, d), MajorityInfeasible);
    // The unconstrained trainer still works.
    CHECK(train01(d).solverObjective == 2.0);
}
