#pragma once

#include <optional>

#include "rlc/core.hpp"
#include "rlc/milp.hpp"

namespace rlc {

/// Training hyperparameters shared by all trainers.
struct TrainConfig {
    double bigM = 1000.0;        // delta linking slacks to misclassification indicators
    double weightBound = 100.0;  // box |h_j| <= weightBound on (scaled-space) weights
    double regularization = 0.0; // only 0 is supported
    long nodeLimit = 1'000'000;
};

enum class TrainerId { Hinge, ZeroOne, MajorityZeroOne };

struct TrainReport {
    LinearClassifier classifier;
    RiskVector trainRisk;         // 0-1 risks on the data trained on
    double solverObjective = 0.0;
    bool feasible = true;         // false only for an infeasible majority program
    long nodesExplored = 0;
    bool bigMValid = true;        // post-solve check that bigM covered every slack
};

/// Hinge-loss linear classification via LP: minimize sum_i max(0, 1 - y_i h.[x_i;1])
/// with weights boxed by cfg.weightBound.
TrainReport trainHinge(const Dataset& data, const TrainConfig& cfg = {});

/// Exact 0-1 loss minimization via branch and bound. solverObjective is the
/// minimal misclassification count.
TrainReport train01(const Dataset& data, const TrainConfig& cfg = {});

/// 0-1 minimization subject to the majority constraint: at most
/// floor((classSize-1)/2) misclassifications per class of the training data.
/// An infeasible program is reported via feasible=false, not an exception.
TrainReport trainMajority01(const Dataset& data, const TrainConfig& cfg = {});

TrainReport trainWith(TrainerId id, const Dataset& data, const TrainConfig& cfg = {});

const char* trainerName(TrainerId id);
std::optional<TrainerId> trainerFromName(const std::string& name);

struct BruteForceOptions {
    bool majority = false;
    /// When set, ties among minimal-count separators are broken toward the
    /// candidate with the worst maxRisk against this dataset (the adversarial
    /// "some optimizer is bad" reading).
    const Dataset* pessimisticReference = nullptr;
};

/// Independent enumeration oracle for exact 0-1 minimization. Enumerates
/// candidate normals from point pairs/triples plus coordinate axes and scans
/// all thresholds along each normal. Guarded to p <= 3 and N <= 14.
TrainReport bruteForce01(const Dataset& data, const BruteForceOptions& opt = {});

}  // namespace rlc
