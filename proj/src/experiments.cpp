#include "rlc/experiments.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "rlc/rng.hpp"

namespace rlc {

void parallelFor(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const unsigned k = std::min<std::size_t>(jobs, count);
    std::exception_ptr firstError;
    std::mutex errMutex;
    for (unsigned w = 0; w < k; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(errMutex);
                    if (!firstError) firstError = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (firstError) std::rethrow_exception(firstError);
}

Dataset makeSurrogate(long nPos, long nNeg, int plantedNegatives, std::uint64_t seed) {
    if (plantedNegatives < 0 || plantedNegatives >= nNeg)
        throw Error("makeSurrogate: invalid planted count");
    const auto spec = GaussianSpec::isotropic({-4.0, 0.0}, {4.0, 0.0}, 1.0, nPos,
                                              nNeg - plantedNegatives, seed);
    Dataset base = generateGaussians(spec);
    Dataset out(2);
    for (const auto& p : base.points()) out.add(p);
    // Planted negatives sit well inside the positive cluster: every linear
    // classifier must give up either them or some positives, never both.
    Rng rng(deriveSeed(seed, 0xD1));
    for (int k = 0; k < plantedNegatives; ++k)
        out.add({-4.0 + 0.3 * rng.normal(), 0.3 * rng.normal()}, -1);
    return out;
}

const char* attackKindName(AttackKind k) {
    switch (k) {
        case AttackKind::None: return "none";
        case AttackKind::Point: return "point";
        case AttackKind::Overlap: return "overlap";
        case AttackKind::Shift: return "shift";
    }
    return "?";
}

EvaluateRow evaluateRow(const Dataset& clean, const AttackSpec& spec,
                        const std::vector<TrainerId>& trainers, const TrainConfig& cfg,
                        std::uint64_t seed) {
    EvaluateRow row;
    row.spec = spec;
    switch (spec.kind) {
        case AttackKind::None:
            row.attack.tampered = clean;
            row.attack.seed = seed;
            break;
        case AttackKind::Point:
            row.attack = pointAttack(clean, spec.sigma, spec.targetClass, seed);
            break;
        case AttackKind::Overlap:
            row.attack = overlapAttack(clean, spec.budget, spec.tunedAgainst, spec.targetV,
                                       spec.maxIters, seed, cfg);
            break;
        case AttackKind::Shift:
            row.attack = shiftBeyondAttack(clean, spec.budget, seed);
            break;
    }

    AttackBudget budget = spec.budget;
    if (spec.kind == AttackKind::Point) budget = spec.targetClass == +1 ? AttackBudget{1, 0} : AttackBudget{0, 1};
    if (!isValidBfa(clean, row.attack.tampered, budget))
        throw Error("evaluateRow: generated attack exceeds its budget");

    for (TrainerId trainer : trainers) {
        EvaluateCell cell;
        cell.trainer = trainer;
        try {
            cell.v = empiricalResilience(trainer, clean, row.attack.tampered, cfg);
            cell.ok = true;
        } catch (const MajorityInfeasible& e) {
            cell.error = e.what();
        } catch (const NodeLimitError& e) {
            cell.error = e.what();
        } catch (const NumericalError& e) {
            cell.error = e.what();
        }
        row.cells.push_back(std::move(cell));
    }
    return row;
}

std::vector<BoundCurvePoint> boundCurve(const BoundCurveSpec& spec) {
    if (spec.alphaMax < 0 || 2 * spec.alphaMax >= spec.nPos || 2 * spec.alphaMax >= spec.nNeg)
        throw Error("boundCurve: sweep must stay inside the resilient region");
    const std::size_t sweep = static_cast<std::size_t>(spec.alphaMax) + 1;
    const std::size_t trialsPer = std::size_t(spec.nDatasets) * spec.nAttacksPerDataset;

    std::vector<double> meanPos(2, 0.0), meanNeg(2, 0.0);
    meanPos[0] = -spec.separation / 2.0;
    meanNeg[0] = spec.separation / 2.0;

    struct Trial {
        double v = 0.0;
        bool failed = false;
    };
    std::vector<std::vector<Trial>> results(sweep, std::vector<Trial>(trialsPer));

    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    tasks.reserve(sweep * trialsPer);
    for (std::size_t a = 0; a < sweep; ++a)
        for (std::size_t t = 0; t < trialsPer; ++t) tasks.push_back({a, t});

    parallelFor(tasks.size(), spec.jobs, [&](std::size_t k) {
        const auto [a, t] = tasks[k];
        const std::size_t ds = t / spec.nAttacksPerDataset;
        const long alpha = static_cast<long>(a);
        const auto gspec = GaussianSpec::isotropic(meanPos, meanNeg, spec.sigma, spec.nPos,
                                                   spec.nNeg, deriveSeed(spec.seed, 1000 + ds));
        const Dataset clean = generateGaussians(gspec);
        Trial& out = results[a][t];
        try {
            const AttackResult atk =
                shiftBeyondAttack(clean, {alpha, alpha}, deriveSeed(spec.seed, (a << 20) + t));
            if (!isValidBfa(clean, atk.tampered, {alpha, alpha}))
                throw Error("boundCurve: invalid attack");
            out.v = empiricalResilience(TrainerId::MajorityZeroOne, clean, atk.tampered, spec.train);
        } catch (const Error&) {
            out.failed = true;
        }
    });

    std::vector<BoundCurvePoint> curve(sweep);
    double running = 0.0;
    for (std::size_t a = 0; a < sweep; ++a) {
        BoundCurvePoint& pt = curve[a];
        pt.alpha = static_cast<long>(a);
        pt.alphaFrac = double(a) / double(spec.nPos);
        pt.bound = resilienceBound({spec.nPos, spec.nNeg}, {pt.alpha, pt.alpha});
        for (const Trial& tr : results[a]) {
            if (tr.failed) {
                ++pt.failedTrials;
                continue;
            }
            pt.empiricalMax = std::max(pt.empiricalMax, tr.v);
        }
        running = std::max(running, pt.empiricalMax);
        pt.empiricalRunningMax = running;
    }
    return curve;
}

double empiricalResilienceSup(TrainerId trainer,
                              const std::vector<std::pair<Dataset, Dataset>>& trials,
                              const TrainConfig& cfg) {
    double sup = 0.0;
    for (const auto& [clean, tampered] : trials)
        sup = std::max(sup, empiricalResilience(trainer, clean, tampered, cfg));
    return sup;
}

std::string formatDouble(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream openOut(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file " + path);
    return out;
}

}  // namespace

void writeBoundCurveCsv(const std::vector<BoundCurvePoint>& points, const std::string& path) {
    auto out = openOut(path);
    out << "alpha,alpha_frac,bound,empirical_max,empirical_running_max,failed_trials\n";
    for (const auto& p : points) {
        out << p.alpha << ',' << formatDouble(p.alphaFrac) << ',' << formatDouble(p.bound) << ','
            << formatDouble(p.empiricalMax) << ',' << formatDouble(p.empiricalRunningMax) << ','
            << p.failedTrials << '\n';
    }
}

void writeRegionCsv(const std::vector<RegionCell>& cells, const std::string& path) {
    auto out = openOut(path);
    out << "alpha_pos_frac,alpha_neg_frac,alpha_pos,alpha_neg,attackable\n";
    for (const auto& c : cells) {
        out << formatDouble(c.alphaPosFrac) << ',' << formatDouble(c.alphaNegFrac) << ','
            << c.alphaPos << ',' << c.alphaNeg << ',' << (c.attackable ? 1 : 0) << '\n';
    }
}

void writeEvaluateCsv(const std::vector<EvaluateRow>& rows, const std::string& path) {
    auto out = openOut(path);
    out << "attack,alpha_pos,alpha_neg,trainer,ok,resilience,achieved_v,seed,error\n";
    for (const auto& row : rows) {
        AttackBudget b = row.spec.budget;
        if (row.spec.kind == AttackKind::Point)
            b = row.spec.targetClass == +1 ? AttackBudget{1, 0} : AttackBudget{0, 1};
        if (row.spec.kind == AttackKind::None) b = {0, 0};
        for (const auto& cell : row.cells) {
            out << attackKindName(row.spec.kind) << ',' << b.alphaPos << ',' << b.alphaNeg << ','
                << trainerName(cell.trainer) << ',' << (cell.ok ? 1 : 0) << ','
                << (cell.ok ? formatDouble(cell.v) : "") << ','
                << formatDouble(row.attack.achievedV) << ',' << row.attack.seed << ',' << cell.error
                << '\n';
        }
    }
}

}  // namespace rlc
