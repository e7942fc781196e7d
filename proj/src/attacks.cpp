#include "rlc/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rlc/rng.hpp"

namespace rlc {

namespace {

std::vector<double> classMean(const Dataset& data, int label) {
    std::vector<double> mean(data.dim(), 0.0);
    std::size_t count = 0;
    for (const auto& p : data.points()) {
        if (p.label != label) continue;
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += p.features[j];
        ++count;
    }
    if (count == 0) throw Error("attack: target class is empty");
    for (double& m : mean) m /= double(count);
    return mean;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
}

std::map<std::vector<double>, long> featureMultiset(const Dataset& d, int label) {
    std::map<std::vector<double>, long> out;
    for (const auto& p : d.points())
        if (p.label == label) ++out[p.features];
    return out;
}

}  // namespace

bool isValidBfa(const Dataset& original, const Dataset& tampered, const AttackBudget& budget) {
    if (original.size() != tampered.size() || original.dim() != tampered.dim())
        throw Error("isValidBfa: dataset size mismatch");
    if (original.nPos() != tampered.nPos())
        throw Error("isValidBfa: per-class count mismatch");
    budget.requireValidFor(original.nPos(), original.nNeg());

    for (int label : {+1, -1}) {
        const auto orig = featureMultiset(original, label);
        const auto tamp = featureMultiset(tampered, label);
        long replaced = 0;
        for (const auto& [vec, count] : tamp) {
            const auto it = orig.find(vec);
            const long have = it == orig.end() ? 0 : it->second;
            replaced += std::max(0L, count - have);
        }
        const long limit = label == +1 ? budget.alphaPos : budget.alphaNeg;
        if (replaced > limit) return false;
    }
    return true;
}

AttackResult pointAttack(const Dataset& data, double sigma, int targetClass, std::uint64_t seed) {
    if (sigma <= 0.0) throw Error("pointAttack: sigma must be positive");
    data.requireBothClasses();
    const auto meanT = classMean(data, targetClass);
    const auto meanO = classMean(data, -targetClass);
    if (distance(meanT, meanO) <= 1e-12) throw Error("pointAttack: class means coincide");

    const auto victims = targetClass == +1 ? data.posIndices() : data.negIndices();
    Rng rng(seed);
    const std::size_t victim = victims[rng.below(victims.size())];

    std::vector<double> moved(data.dim());
    for (std::size_t j = 0; j < moved.size(); ++j)
        moved[j] = meanT[j] + sigma * (meanO[j] - meanT[j]);

    AttackResult out;
    out.tampered = data;
    out.tampered.replaceFeatures(victim, std::move(moved));
    out.seed = seed;
    (targetClass == +1 ? out.replacedPosIndices : out.replacedNegIndices).push_back(victim);
    return out;
}

AttackResult overlapAttack(const Dataset& data, const AttackBudget& budget, TrainerId trainer,
                           double targetV, long maxIters, std::uint64_t seed,
                           const TrainConfig& cfg) {
    data.requireBothClasses();
    budget.requireValidFor(data.nPos(), data.nNeg());
    if (targetV <= 0.0 || targetV > 1.0) throw Error("overlapAttack: targetV must be in (0,1]");
    if (maxIters <= 0) throw Error("overlapAttack: maxIters must be positive");

    const auto posIdx = data.posIndices();
    const auto negIdx = data.negIndices();
    const long rounds = (budget.alphaPos == 0 && budget.alphaNeg == 0) ? 1 : maxIters;

    AttackResult best;
    best.tampered = data;
    best.seed = seed;
    double bestV = -1.0;

    for (long round = 0; round < rounds; ++round) {
        Rng rng(deriveSeed(seed, static_cast<std::uint64_t>(round)));

        const auto posVictimSel = rng.sampleWithoutReplacement(posIdx.size(), budget.alphaPos);
        const auto negVictimSel = rng.sampleWithoutReplacement(negIdx.size(), budget.alphaNeg);
        std::vector<char> isPosVictim(posIdx.size(), 0), isNegVictim(negIdx.size(), 0);
        for (std::size_t s : posVictimSel) isPosVictim[s] = 1;
        for (std::size_t s : negVictimSel) isNegVictim[s] = 1;

        // Victims land on un-attacked opposite-class feature vectors; if every
        // opposite point is itself a victim, fall back to original positions.
        std::vector<std::size_t> cleanNeg, cleanPos;
        for (std::size_t s = 0; s < negIdx.size(); ++s)
            if (!isNegVictim[s]) cleanNeg.push_back(negIdx[s]);
        for (std::size_t s = 0; s < posIdx.size(); ++s)
            if (!isPosVictim[s]) cleanPos.push_back(posIdx[s]);
        if (cleanNeg.empty()) cleanNeg = negIdx;
        if (cleanPos.empty()) cleanPos = posIdx;

        // Balanced assignment: a shuffled pass over the clean opposite points,
        // wrapping when the budget exceeds them, so every candidate location
        // is covered once before any is covered twice.
        const auto negOrder = rng.permutation(cleanNeg.size());
        const auto posOrder = rng.permutation(cleanPos.size());

        Dataset cand = data;
        AttackResult attempt;
        attempt.seed = seed;
        std::size_t negCursor = 0, posCursor = 0;
        for (std::size_t s : posVictimSel) {
            const std::size_t victim = posIdx[s];
            const std::size_t target = cleanNeg[negOrder[negCursor++ % negOrder.size()]];
            cand.replaceFeatures(victim, data[target].features);
            attempt.replacedPosIndices.push_back(victim);
        }
        for (std::size_t s : negVictimSel) {
            const std::size_t victim = negIdx[s];
            const std::size_t target = cleanPos[posOrder[posCursor++ % posOrder.size()]];
            cand.replaceFeatures(victim, data[target].features);
            attempt.replacedNegIndices.push_back(victim);
        }

        double v = 0.0;
        try {
            const TrainReport rep = trainWith(trainer, cand, cfg);
            if (!rep.feasible) continue;
            v = maxRisk(riskVector01(rep.classifier, data));
        } catch (const NodeLimitError&) {
            continue;  // best effort: skip rounds the solver cannot close
        }

        if (v > bestV) {
            bestV = v;
            attempt.tampered = std::move(cand);
            attempt.achievedV = v;
            best = std::move(attempt);
        }
        if (bestV >= targetV - 1e-12) break;
    }

    best.achievedV = std::max(bestV, 0.0);
    return best;
}

AttackResult shiftBeyondAttack(const Dataset& data, const AttackBudget& budget, std::uint64_t seed) {
    data.requireBothClasses();
    budget.requireValidFor(data.nPos(), data.nNeg());

    AttackResult out;
    out.tampered = data;
    out.seed = seed;
    if (budget.alphaPos == 0) return out;

    const auto meanPos = classMean(data, +1);
    const auto meanNeg = classMean(data, -1);
    const double axisLen = distance(meanPos, meanNeg);
    if (axisLen <= 1e-12) throw Error("shiftBeyondAttack: class means coincide");

    // Unit axis from the positive mean toward the negative mean, and the
    // negative-class extreme along it.
    std::vector<double> axis(data.dim());
    for (std::size_t j = 0; j < axis.size(); ++j) axis[j] = (meanNeg[j] - meanPos[j]) / axisLen;
    double extreme = -kInf;
    for (const auto& p : data.points()) {
        if (p.label != -1) continue;
        double proj = 0.0;
        for (std::size_t j = 0; j < axis.size(); ++j) proj += axis[j] * p.features[j];
        extreme = std::max(extreme, proj);
    }
    double meanNegProj = 0.0;
    for (std::size_t j = 0; j < axis.size(); ++j) meanNegProj += axis[j] * meanNeg[j];
    const double tMin = std::max(0.0, (extreme - meanNegProj) / axisLen);

    Rng rng(seed);
    const auto posIdx = data.posIndices();
    for (std::size_t s : rng.sampleWithoutReplacement(posIdx.size(), budget.alphaPos)) {
        // Place on the mean axis strictly beyond the negative extreme. The
        // negative mean then lies between the positive mean and the moved
        // point, so the tampered classes cannot be linearly separated.
        const double t = tMin + 0.25 + rng.uniform();
        std::vector<double> moved(data.dim());
        for (std::size_t j = 0; j < moved.size(); ++j)
            moved[j] = meanNeg[j] + t * (meanNeg[j] - meanPos[j]);
        out.tampered.replaceFeatures(posIdx[s], std::move(moved));
        out.replacedPosIndices.push_back(posIdx[s]);
    }
    return out;
}

}  // namespace rlc
