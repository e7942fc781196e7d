#pragma once

#include "rlc/classifiers.hpp"
#include "rlc/core.hpp"

namespace rlc {

/// Raised by empiricalResilience when the majority program has no feasible
/// classifier; callers report it as an outcome rather than a value.
struct MajorityInfeasible : Error {
    using Error::Error;
};

struct ClassCounts {
    long nPos = 0;
    long nNeg = 0;
};

enum class Algorithm { Convex, ZeroOne, MajorityZeroOne, AnyLinear };

const char* algorithmName(Algorithm a);

struct RegionVerdict {
    Algorithm algorithm = Algorithm::AnyLinear;
    bool perfectlyAttackable = false;
};

/// Reduced exact fraction; the bound and region predicates avoid floating
/// point so boundary budgets classify exactly.
struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return double(num) / double(den); }
};

/// Trains on the tampered data and returns the infinity norm of the 0-1 risks
/// on the clean data: the resilience value of this concrete (clean, tampered)
/// pair. Callers are responsible for having validated the attack.
double empiricalResilience(TrainerId trainer, const Dataset& clean, const Dataset& tampered,
                           const TrainConfig& cfg = {});

/// Worst-case resilience bound of the majority trainer:
///   max( min(2a+ + a-, a+ + (N+-1)/2) / N+,
///        min(a+ + 2a-, a- + (N--1)/2) / N- )
/// inside the resilient region (a+ < N+/2 and a- < N-/2); 1 outside it.
Rational resilienceBoundExact(const ClassCounts& counts, const AttackBudget& budget);
double resilienceBound(const ClassCounts& counts, const AttackBudget& budget);

/// Whether an attacker with this budget can force the trained classifier to
/// misclassify an entire clean class, per algorithm family.
RegionVerdict perfectlyAttackableRegion(Algorithm algorithm, const ClassCounts& counts,
                                        const AttackBudget& budget);

struct RegionCell {
    double alphaPosFrac = 0.0;
    double alphaNegFrac = 0.0;
    long alphaPos = 0;
    long alphaNeg = 0;
    bool attackable = false;
};

/// Evaluates the predicate over a resolution x resolution grid of normalized
/// budgets, taking the nearest integer budget at each grid node.
std::vector<RegionCell> regionGrid(Algorithm algorithm, const ClassCounts& counts,
                                   std::size_t resolution);

}  // namespace rlc
