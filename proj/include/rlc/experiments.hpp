#pragma once

#include <functional>
#include <string>

#include "rlc/attacks.hpp"
#include "rlc/classifiers.hpp"
#include "rlc/data.hpp"
#include "rlc/resilience.hpp"

namespace rlc {

/// Runs fn(0..count-1) across `jobs` threads. Results must be written into
/// pre-sized slots by index so the aggregate is independent of scheduling.
void parallelFor(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Bundled synthetic stand-in for the clinical dataset: two well-separated
/// Gaussian classes plus a few negatives planted inside the positive cluster.
/// The planted points pin down the 0-1 optimum under heavy overlap tampering,
/// which keeps the evaluation deterministic.
Dataset makeSurrogate(long nPos, long nNeg, int plantedNegatives, std::uint64_t seed);

enum class AttackKind { None, Point, Overlap, Shift };

const char* attackKindName(AttackKind k);

struct AttackSpec {
    AttackKind kind = AttackKind::None;
    AttackBudget budget;                            // overlap/shift
    double sigma = 1000.0;                          // point
    int targetClass = -1;                           // point
    TrainerId tunedAgainst = TrainerId::ZeroOne;    // overlap
    double targetV = 1.0;                           // overlap
    long maxIters = 200;                            // overlap
};

struct EvaluateCell {
    TrainerId trainer = TrainerId::Hinge;
    bool ok = false;
    double v = 0.0;
    std::string error;  // set when ok is false
};

struct EvaluateRow {
    AttackSpec spec;
    AttackResult attack;
    std::vector<EvaluateCell> cells;
};

/// One table row: generates the attack, validates it against the budget, then
/// evaluates every trainer on the same tampered set. Solver failures are
/// recorded per cell and the row continues.
EvaluateRow evaluateRow(const Dataset& clean, const AttackSpec& spec,
                        const std::vector<TrainerId>& trainers, const TrainConfig& cfg,
                        std::uint64_t seed);

struct BoundCurveSpec {
    long nPos = 20;
    long nNeg = 20;
    double separation = 6.0;       // distance between class means
    double sigma = 1.0;            // isotropic class noise
    long alphaMax = 9;             // sweep alphaPos = alphaNeg = 0..alphaMax
    int nDatasets = 20;
    int nAttacksPerDataset = 20;
    TrainConfig train;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

struct BoundCurvePoint {
    long alpha = 0;
    double alphaFrac = 0.0;
    double bound = 0.0;
    double empiricalMax = 0.0;         // max over this sweep point's trials
    double empiricalRunningMax = 0.0;  // max over all budgets up to alpha
    long failedTrials = 0;
};

/// Sweep protocol: for each alpha, nDatasets clean sets x nAttacksPerDataset
/// shift attacks each; the majority trainer is retrained per trial and
/// evaluated on the clean data. Budgets nest (an attack may replace fewer
/// than alpha points), so the running maximum is also a valid lower bound on
/// the metric at every sweep point and is non-decreasing by construction.
std::vector<BoundCurvePoint> boundCurve(const BoundCurveSpec& spec);

/// Max of empiricalResilience over explicit (clean, tampered) trials.
double empiricalResilienceSup(TrainerId trainer,
                              const std::vector<std::pair<Dataset, Dataset>>& trials,
                              const TrainConfig& cfg = {});

/// Fixed-format float -> text used by every CSV writer: %.17g round-trips
/// doubles exactly, so reruns produce byte-identical files.
std::string formatDouble(double v);

void writeBoundCurveCsv(const std::vector<BoundCurvePoint>& points, const std::string& path);
void writeRegionCsv(const std::vector<RegionCell>& cells, const std::string& path);
void writeEvaluateCsv(const std::vector<EvaluateRow>& rows, const std::string& path);

}  // namespace rlc
