#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rlc/classifiers.hpp"
#include "rlc/rng.hpp"

using namespace rlc;

namespace {

Dataset dataset1d(const std::vector<std::pair<double, int>>& pts) {
    Dataset d(1);
    for (auto [x, y] : pts) d.add({x}, y);
    return d;
}

// Random grid-coordinate instance: duplicates, ties and collinear points are
// common on purpose.
Dataset randomGridInstance(Rng& rng, std::size_t p, std::size_t maxN) {
    while (true) {
        Dataset d(p);
        const std::size_t n = 4 + rng.below(maxN - 3);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> x(p);
            for (double& v : x) v = double(rng.below(11)) - 5.0;
            d.add(std::move(x), rng.below(2) == 0 ? +1 : -1);
        }
        if (d.nPos() >= 1 && d.nNeg() >= 1) return d;
    }
}

}  // namespace

TEST_CASE("hinge on separable 1D data reaches zero loss") {
    const Dataset d = dataset1d({{-1.0, +1}, {1.0, -1}});
    const TrainReport rep = trainHinge(d);
    CHECK(rep.solverObjective == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.trainRisk.misPos == 0);
    CHECK(rep.trainRisk.misNeg == 0);
    CHECK(rep.bigMValid);
}

TEST_CASE("train01 on the two-cluster instance sacrifices two points") {
    const Dataset d = dataset1d(
        {{-2, +1}, {-2, +1}, {3, +1}, {3, +1}, {1, -1}, {1, -1}, {1, -1}, {1, -1}});
    const TrainReport rep = train01(d);
    CHECK(rep.solverObjective == 2.0);
    const TrainReport oracle = bruteForce01(d);
    CHECK(oracle.solverObjective == 2.0);
}

TEST_CASE("separable data: hinge zero iff 0-1 zero") {
    const Dataset d = dataset1d({{-3, +1}, {-2, +1}, {2, -1}, {3, -1}});
    CHECK(trainHinge(d).solverObjective == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(train01(d).solverObjective == 0.0);
    CHECK(trainMajority01(d).solverObjective == 0.0);
}

TEST_CASE("majority equals plain 0-1 on separable data") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        Dataset d(2);
        for (int i = 0; i < 5; ++i) d.add({rng.normal() - 4.0, rng.normal()}, +1);
        for (int i = 0; i < 5; ++i) d.add({rng.normal() + 4.0, rng.normal()}, -1);
        CHECK(train01(d).solverObjective == 0.0);
        CHECK(trainMajority01(d).solverObjective == 0.0);
    }
}

TEST_CASE("oracle equivalence: train01 vs bruteForce01 on random instances") {
    Rng rng(20260810);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t p = 1 + rng.below(2);
        const Dataset d = randomGridInstance(rng, p, 12);
        const TrainReport milp = train01(d);
        const TrainReport oracle = bruteForce01(d);
        REQUIRE(milp.feasible);
        REQUIRE(oracle.feasible);
        CHECK(milp.solverObjective == oracle.solverObjective);
        // The returned classifier achieves the solver objective on its data.
        CHECK(milp.trainRisk.misPos + milp.trainRisk.misNeg == long(milp.solverObjective));
    }
}

TEST_CASE("oracle equivalence with the majority constraint") {
    Rng rng(905);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t p = 1 + rng.below(2);
        const Dataset d = randomGridInstance(rng, p, 12);
        const TrainReport milp = trainMajority01(d);
        const TrainReport oracle = bruteForce01(d, {.majority = true});
        CHECK(milp.feasible == oracle.feasible);
        if (milp.feasible && oracle.feasible) {
            CHECK(milp.solverObjective == oracle.solverObjective);
            ++compared;
        }
    }
    CHECK(compared > 10);
}

TEST_CASE("majority postcondition on the trained classifier") {
    Rng rng(333);
    for (int trial = 0; trial < 30; ++trial) {
        const Dataset d = randomGridInstance(rng, 2, 12);
        const TrainReport rep = trainMajority01(d);
        if (!rep.feasible) continue;
        const RiskVector rv = riskVector01(rep.classifier, d);
        CHECK(rv.misPos <= (long(d.nPos()) - 1) / 2);
        CHECK(rv.misNeg <= (long(d.nNeg()) - 1) / 2);
    }
}

TEST_CASE("trainers validate inputs") {
    Dataset onlyPos(1);
    onlyPos.add({1.0}, +1);
    CHECK_THROWS_AS(trainHinge(onlyPos), Error);
    const Dataset d = dataset1d({{-1.0, +1}, {1.0, -1}});
    TrainConfig bad;
    bad.regularization = 0.5;
    CHECK_THROWS_AS(train01(d, bad), Error);
    TrainConfig badM;
    badM.bigM = 0.0;
    CHECK_THROWS_AS(train01(d, badM), Error);
}

TEST_CASE("bruteForce01 guard rails") {
    Rng rng(1);
    Dataset big(4);
    for (int i = 0; i < 6; ++i) big.add({rng.normal(), rng.normal(), rng.normal(), rng.normal()}, i % 2 ? 1 : -1);
    CHECK_THROWS_AS(bruteForce01(big), Error);
}

TEST_CASE("bruteForce01 pessimistic mode prefers the worse optimum") {
    // Clean reference: positives left, negatives right. Tampered data is fully
    // ambiguous (coincident opposite pairs), so "all negative" and "all
    // positive" tie; the pessimistic pick must misclassify a full class.
    Dataset clean(1);
    clean.add({-1.0}, +1);
    clean.add({-1.0}, +1);
    clean.add({1.0}, -1);
    clean.add({1.0}, -1);
    Dataset tampered(1);
    tampered.add({0.0}, +1);
    tampered.add({0.0}, +1);
    tampered.add({0.0}, -1);
    tampered.add({0.0}, -1);
    BruteForceOptions opt;
    opt.pessimisticReference = &clean;
    const TrainReport rep = bruteForce01(tampered, opt);
    CHECK(rep.solverObjective == 2.0);
    CHECK(maxRisk(riskVector01(rep.classifier, clean)) == 1.0);
}

TEST_CASE("coincident opposite pairs force one error each") {
    Dataset d(2);
    d.add({0.0, 0.0}, +1);
    d.add({0.0, 0.0}, -1);
    d.add({1.0, 1.0}, +1);
    d.add({1.0, 1.0}, -1);
    d.add({-2.0, 0.5}, +1);
    d.add({3.0, -0.5}, -1);
    const TrainReport rep = train01(d);
    CHECK(rep.solverObjective == 2.0);
    CHECK(bruteForce01(d).solverObjective == 2.0);
}

TEST_CASE("deterministic training") {
    Rng rng(88);
    const Dataset d = randomGridInstance(rng, 2, 10);
    const TrainReport a = train01(d);
    const TrainReport b = train01(d);
    CHECK(a.classifier.weights == b.classifier.weights);
    CHECK(a.solverObjective == b.solverObjective);
    CHECK(a.nodesExplored == b.nodesExplored);
}

TEST_CASE("hinge zero loss iff 0-1 zero count on random instances") {
    Rng rng(555);
    for (int trial = 0; trial < 40; ++trial) {
        const Dataset d = randomGridInstance(rng, 2, 10);
        const bool hingeZero = trainHinge(d).solverObjective <= 1e-7;
        const bool zeroOneZero = train01(d).solverObjective == 0.0;
        CHECK(hingeZero == zeroOneZero);
    }
}

TEST_CASE("big-M validity holds on scaled desk-scale instances") {
    Rng rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        const Dataset d = randomGridInstance(rng, 2, 12);
        CHECK(trainHinge(d).bigMValid);
        CHECK(train01(d).bigMValid);
    }
}
