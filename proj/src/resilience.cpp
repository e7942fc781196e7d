#include "rlc/resilience.hpp"

#include <cmath>
#include <numeric>

namespace rlc {

const char* algorithmName(Algorithm a) {
    switch (a) {
        case Algorithm::Convex: return "convex";
        case Algorithm::ZeroOne: return "zero-one";
        case Algorithm::MajorityZeroOne: return "majority-zero-one";
        case Algorithm::AnyLinear: return "any-linear";
    }
    return "?";
}

namespace {

void checkCounts(const ClassCounts& c) {
    if (c.nPos < 1 || c.nNeg < 1) throw Error("ClassCounts: both classes must be non-empty");
}

void checkBudget(const ClassCounts& c, const AttackBudget& b) {
    checkCounts(c);
    if (b.alphaPos < 0 || b.alphaNeg < 0 || b.alphaPos > c.nPos || b.alphaNeg > c.nNeg)
        throw Error("AttackBudget: outside the capability set");
}

Rational reduced(long long num, long long den) {
    const long long g = std::gcd(num, den);
    return {g == 0 ? 0 : num / g, g == 0 ? 1 : den / g};
}

}  // namespace

double empiricalResilience(TrainerId trainer, const Dataset& clean, const Dataset& tampered,
                           const TrainConfig& cfg) {
    if (clean.dim() != tampered.dim() || clean.size() != tampered.size())
        throw Error("empiricalResilience: clean/tampered shape mismatch");
    const TrainReport rep = trainWith(trainer, tampered, cfg);
    if (!rep.feasible) throw MajorityInfeasible("empiricalResilience: majority program infeasible");
    return maxRisk(riskVector01(rep.classifier, clean));
}

Rational resilienceBoundExact(const ClassCounts& counts, const AttackBudget& budget) {
    checkBudget(counts, budget);
    const long long ap = budget.alphaPos, an = budget.alphaNeg;
    const long long np = counts.nPos, nn = counts.nNeg;
    if (2 * ap >= np || 2 * an >= nn) return {1, 1};  // trivial bound outside the region

    // Numerators over the common denominators 2*np and 2*nn.
    const long long tp = std::min(2 * (2 * ap + an), 2 * ap + np - 1);
    const long long tn = std::min(2 * (ap + 2 * an), 2 * an + nn - 1);
    // max(tp/(2 np), tn/(2 nn)) by cross multiplication.
    if (tp * nn >= tn * np) return reduced(tp, 2 * np);
    return reduced(tn, 2 * nn);
}

double resilienceBound(const ClassCounts& counts, const AttackBudget& budget) {
    return resilienceBoundExact(counts, budget).value();
}

RegionVerdict perfectlyAttackableRegion(Algorithm algorithm, const ClassCounts& counts,
                                        const AttackBudget& budget) {
    checkBudget(counts, budget);
    const long long ap = budget.alphaPos, an = budget.alphaNeg;
    const long long np = counts.nPos, nn = counts.nNeg;
    const bool halfPos = 2 * ap >= np;
    const bool halfNeg = 2 * an >= nn;

    bool attackable = false;
    switch (algorithm) {
        case Algorithm::Convex:
            attackable = ap > 0 || an > 0;
            break;
        case Algorithm::ZeroOne:
            attackable = halfPos || halfNeg || ap + an >= nn || ap + an >= np;
            break;
        case Algorithm::MajorityZeroOne:
        case Algorithm::AnyLinear:
            attackable = halfPos || halfNeg;
            break;
    }
    return {algorithm, attackable};
}

std::vector<RegionCell> regionGrid(Algorithm algorithm, const ClassCounts& counts,
                                   std::size_t resolution) {
    checkCounts(counts);
    if (resolution < 2) throw Error("regionGrid: resolution must be at least 2");
    std::vector<RegionCell> cells;
    cells.reserve(resolution * resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t j = 0; j < resolution; ++j) {
            RegionCell cell;
            cell.alphaPosFrac = double(i) / double(resolution - 1);
            cell.alphaNegFrac = double(j) / double(resolution - 1);
            cell.alphaPos = std::llround(cell.alphaPosFrac * double(counts.nPos));
            cell.alphaNeg = std::llround(cell.alphaNegFrac * double(counts.nNeg));
            cell.attackable =
                perfectlyAttackableRegion(algorithm, counts, {cell.alphaPos, cell.alphaNeg})
                    .perfectlyAttackable;
            cells.push_back(cell);
        }
    }
    return cells;
}

}  // namespace rlc
