#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rlc/core.hpp"
#include "rlc/rng.hpp"

using namespace rlc;

namespace {

Dataset dataset1d(const std::vector<std::pair<double, int>>& pts) {
    Dataset d(1);
    for (auto [x, y] : pts) d.add({x}, y);
    return d;
}

}  // namespace

TEST_CASE("predict: sign convention with tie resolved to -1") {
    CHECK(predict(LinearClassifier({1.0, 0.0}), {2.0}) == +1);
    CHECK(predict(LinearClassifier({1.0, 0.0}), {0.0}) == -1);
    CHECK(predict(LinearClassifier({-1.0, 0.5}), {1.0}) == -1);
}

TEST_CASE("predict: dimension mismatch throws") {
    CHECK_THROWS_AS(predict(LinearClassifier({1.0, 0.0}), {1.0, 2.0}), Error);
}

TEST_CASE("riskVector01 on a separable pair") {
    const Dataset d = dataset1d({{-1.0, +1}, {+1.0, -1}});
    const RiskVector good = riskVector01(LinearClassifier({-1.0, 0.0}), d);
    CHECK(good.misPos == 0);
    CHECK(good.misNeg == 0);
    const RiskVector flipped = riskVector01(LinearClassifier({+1.0, 0.0}), d);
    CHECK(flipped.riskPos() == 1.0);
    CHECK(flipped.riskNeg() == 1.0);
}

TEST_CASE("riskVector01 hand-counted example") {
    // positives at -2,-2,3,3; negatives at 1,1,1,1; x<0 classified positive
    const Dataset d = dataset1d(
        {{-2, +1}, {-2, +1}, {3, +1}, {3, +1}, {1, -1}, {1, -1}, {1, -1}, {1, -1}});
    const RiskVector rv = riskVector01(LinearClassifier({-1.0, 0.0}), d);
    CHECK(rv.riskPos() == doctest::Approx(0.5));
    CHECK(rv.riskNeg() == 0.0);
}

TEST_CASE("riskVector01 requires both classes") {
    Dataset d(1);
    d.add({1.0}, +1);
    CHECK_THROWS_AS(riskVector01(LinearClassifier({1.0, 0.0}), d), Error);
}

TEST_CASE("maxRisk is the max component") {
    CHECK(maxRisk({0, 5, 0, 5}) == 0.0);
    CHECK(maxRisk({37, 37, 1, 37}) == 1.0);       // (1.0, 0.027)
    CHECK(maxRisk({22, 37, 2, 10}) == doctest::Approx(22.0 / 37.0));
}

TEST_CASE("risks are exact multiples of 1/classSize and inside [0,1]") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Dataset d(2);
        const std::size_t np = 1 + rng.below(6), nn = 1 + rng.below(6);
        for (std::size_t i = 0; i < np; ++i) d.add({rng.normal(), rng.normal()}, +1);
        for (std::size_t i = 0; i < nn; ++i) d.add({rng.normal(), rng.normal()}, -1);
        LinearClassifier h({rng.normal(), rng.normal(), rng.normal()});
        const RiskVector rv = riskVector01(h, d);
        CHECK(rv.misPos >= 0);
        CHECK(rv.misPos <= long(np));
        CHECK(rv.misNeg >= 0);
        CHECK(rv.misNeg <= long(nn));
        CHECK(rv.riskPos() == double(rv.misPos) / double(np));
        CHECK(rv.riskNeg() == double(rv.misNeg) / double(nn));
    }
}

TEST_CASE("negating weights flips both risks when no point sits on the boundary") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Dataset d(2);
        for (int i = 0; i < 5; ++i) d.add({rng.normal(), rng.normal()}, +1);
        for (int i = 0; i < 5; ++i) d.add({rng.normal(), rng.normal()}, -1);
        LinearClassifier h({rng.normal(), rng.normal(), rng.normal()});
        bool zeroMargin = false;
        for (const auto& p : d.points())
            if (h.score(p.features) == 0.0) zeroMargin = true;
        if (zeroMargin) continue;
        LinearClassifier neg = h;
        for (double& w : neg.weights) w = -w;
        const RiskVector a = riskVector01(h, d);
        const RiskVector b = riskVector01(neg, d);
        CHECK(a.misPos + b.misPos == a.nPos);
        CHECK(a.misNeg + b.misNeg == a.nNeg);
    }
}

TEST_CASE("dataset rejects inconsistent points") {
    Dataset d(2);
    d.add({0.0, 1.0}, +1);
    CHECK_THROWS_AS(d.add({0.0}, -1), Error);
    CHECK_THROWS_AS(d.add({0.0, 1.0}, 3), Error);
    CHECK_THROWS_AS(d.add({0.0, std::numeric_limits<double>::quiet_NaN()}, -1), Error);
}

TEST_CASE("attack budget validation") {
    AttackBudget b{2, 1};
    CHECK_NOTHROW(b.requireValidFor(2, 1));
    CHECK_THROWS_AS(b.requireValidFor(1, 1), Error);
    CHECK_THROWS_AS((AttackBudget{-1, 0}).requireValidFor(3, 3), Error);
}
