#pragma once

#include <cstdint>

#include "rlc/classifiers.hpp"
#include "rlc/core.hpp"

namespace rlc {

/// A tampered dataset together with the indices it replaced. Labels and class
/// sizes are never altered; attacks replace feature vectors only.
struct AttackResult {
    Dataset tampered;
    std::vector<std::size_t> replacedPosIndices;
    std::vector<std::size_t> replacedNegIndices;
    std::uint64_t seed = 0;
    /// Best empirical resilience observed while tuning (overlap attack only).
    double achievedV = 0.0;
};

/// Checks the bounded-feature-attack conditions: per class, the multiset of
/// tampered feature vectors differs from the original in at most
/// budget.alphaPos / budget.alphaNeg elements. Throws on size or per-class
/// count mismatch.
bool isValidBfa(const Dataset& original, const Dataset& tampered, const AttackBudget& budget);

/// Replaces one random feature vector of targetClass with
/// meanTarget + sigma * (meanOther - meanTarget): a single point pushed far
/// along the inter-class mean axis. Budget used is (1,0) or (0,1).
AttackResult pointAttack(const Dataset& data, double sigma, int targetClass, std::uint64_t seed);

/// Randomized overlap search: each round copies alphaPos random positives onto
/// random clean negatives and alphaNeg random negatives onto random clean
/// positives, retrains `trainer` on the candidate and keeps the round with the
/// highest empirical resilience against the clean data. Stops early once
/// targetV is reached. Best-effort; the achieved value is reported.
AttackResult overlapAttack(const Dataset& data, const AttackBudget& budget, TrainerId trainer,
                           double targetV, long maxIters, std::uint64_t seed,
                           const TrainConfig& cfg = {});

/// Moves alphaPos random positives onto the extension of the mean axis beyond
/// the negative-class extreme, destroying linear separability.
AttackResult shiftBeyondAttack(const Dataset& data, const AttackBudget& budget, std::uint64_t seed);

}  // namespace rlc
