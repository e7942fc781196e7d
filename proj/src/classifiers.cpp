#include "rlc/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

namespace rlc {

namespace {

// Column-wise min-max scaling onto [-1,1]. The big-M constant is only valid
// when feature magnitudes are controlled, so trainers scale internally and
// unscale the returned weights.
struct FeatureScaler {
    std::vector<double> center;
    std::vector<double> halfRange;

    explicit FeatureScaler(const Dataset& data) {
        const std::size_t p = data.dim();
        std::vector<double> lo(p, kInf), hi(p, -kInf);
        for (const auto& pt : data.points()) {
            for (std::size_t j = 0; j < p; ++j) {
                lo[j] = std::min(lo[j], pt.features[j]);
                hi[j] = std::max(hi[j], pt.features[j]);
            }
        }
        center.resize(p);
        halfRange.resize(p);
        for (std::size_t j = 0; j < p; ++j) {
            center[j] = 0.5 * (lo[j] + hi[j]);
            halfRange[j] = 0.5 * (hi[j] - lo[j]);
            if (halfRange[j] <= 0.0) halfRange[j] = 1.0;  // constant column
        }
    }

    std::vector<std::vector<double>> apply(const Dataset& data) const {
        std::vector<std::vector<double>> out(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto& f = data[i].features;
            out[i].resize(f.size());
            for (std::size_t j = 0; j < f.size(); ++j)
                out[i][j] = (f[j] - center[j]) / halfRange[j];
        }
        return out;
    }

    // Maps scaled-space homogeneous weights back to raw coordinates.
    LinearClassifier unscale(const std::vector<double>& w) const {
        const std::size_t p = center.size();
        std::vector<double> out(p + 1);
        double bias = w[p];
        for (std::size_t j = 0; j < p; ++j) {
            out[j] = w[j] / halfRange[j];
            bias -= w[j] * center[j] / halfRange[j];
        }
        out[p] = bias;
        return LinearClassifier(std::move(out));
    }
};

void checkConfig(const TrainConfig& cfg) {
    if (cfg.bigM <= 0.0 || cfg.weightBound <= 0.0) throw Error("TrainConfig: bigM and weightBound must be positive");
    if (cfg.regularization != 0.0) throw Error("TrainConfig: only regularization = 0 is supported");
    if (cfg.nodeLimit <= 0) throw Error("TrainConfig: node limit must be positive");
}

double dotH(const std::vector<double>& w, const std::vector<double>& x) {
    double s = w[x.size()];
    for (std::size_t j = 0; j < x.size(); ++j) s += w[j] * x[j];
    return s;
}

// Finds, for each point, a convex-combination witness of the opposite class
// containing it. Such a point cannot be classified consistently with margin 1
// together with its witnesses, which yields a row
//   z_point + sum z_witness >= 1
// valid for every integer-feasible assignment. These rows leave the feasible
// integer set untouched but lift the LP bound enough for branch and bound to
// close overlapping instances quickly.
std::vector<std::pair<std::size_t, std::vector<std::size_t>>> forcedErrorGroups(
    const Dataset& data, const std::vector<std::vector<double>>& x) {
    const std::size_t n = data.size();
    const std::size_t p = data.dim();
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> groups;

    std::vector<std::size_t> pos = data.posIndices();
    std::vector<std::size_t> neg = data.negIndices();

    // Exactly coincident opposite-label points first: pair them one to one so
    // the rows are disjoint and the LP bound counts every forced error.
    std::vector<char> covered(n, 0);
    {
        std::map<std::vector<double>, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> locs;
        for (std::size_t i = 0; i < n; ++i)
            (data[i].label == +1 ? locs[x[i]].first : locs[x[i]].second).push_back(i);
        for (const auto& [loc, both] : locs) {
            const std::size_t k = std::min(both.first.size(), both.second.size());
            for (std::size_t i = 0; i < k; ++i) {
                groups.push_back({both.first[i], {both.second[i]}});
                covered[both.first[i]] = 1;
                covered[both.second[i]] = 1;
            }
        }
    }

    // Bounding boxes per class for a cheap exclusion test.
    auto bbox = [&](const std::vector<std::size_t>& idx) {
        std::vector<double> lo(p, kInf), hi(p, -kInf);
        for (std::size_t i : idx)
            for (std::size_t j = 0; j < p; ++j) {
                lo[j] = std::min(lo[j], x[i][j]);
                hi[j] = std::max(hi[j], x[i][j]);
            }
        return std::make_pair(lo, hi);
    };
    const auto posBox = bbox(pos);
    const auto negBox = bbox(neg);

    constexpr double kResidTol = 1e-7;

    // L1-residual LP: min sum(u+v) s.t. sum_k lambda_k x_opp_k - u + v = x_b,
    // sum lambda = 1, everything nonnegative. Returns the support or empty
    // when b lies outside the hull of the given opposite points.
    const auto hullWitnesses = [&](std::size_t b, const std::vector<std::size_t>& opp) {
        std::vector<std::size_t> witnesses;
        const std::size_t m = opp.size();
        if (m == 0) return witnesses;
        LpProblem lp;
        lp.objective.assign(m + 2 * p, 0.0);
        for (std::size_t j = 0; j < 2 * p; ++j) lp.objective[m + j] = 1.0;
        lp.bounds.assign(m + 2 * p, VarBounds{0.0, kInf});
        for (std::size_t j = 0; j < p; ++j) {
            std::vector<double> row(m + 2 * p, 0.0);
            for (std::size_t k = 0; k < m; ++k) row[k] = x[opp[k]][j];
            row[m + j] = -1.0;
            row[m + p + j] = 1.0;
            lp.addConstraint(row, x[b][j]);
            for (double& a : row) a = -a;
            lp.addConstraint(std::move(row), -x[b][j]);
        }
        std::vector<double> ones(m + 2 * p, 0.0);
        for (std::size_t k = 0; k < m; ++k) ones[k] = 1.0;
        lp.addConstraint(ones, 1.0);
        for (double& a : ones) a = -a;
        lp.addConstraint(std::move(ones), -1.0);

        LpSolution sol;
        try {
            sol = solveLp(lp);
        } catch (const NumericalError&) {
            return witnesses;  // the rows are an optimization, never required
        }
        if (sol.status != LpStatus::Optimal || sol.objectiveValue > kResidTol) return witnesses;
        for (std::size_t k = 0; k < m; ++k)
            if (sol.values[k] > 1e-7) witnesses.push_back(opp[k]);
        return witnesses;
    };

    for (std::size_t b = 0; b < n; ++b) {
        if (covered[b]) continue;
        const auto& opp = data[b].label == +1 ? neg : pos;
        const auto& box = data[b].label == +1 ? negBox : posBox;
        if (opp.empty()) continue;
        bool inBox = true;
        for (std::size_t j = 0; j < p && inBox; ++j)
            inBox = x[b][j] >= box.first[j] - 1e-12 && x[b][j] <= box.second[j] + 1e-12;
        if (!inBox) continue;

        const auto witnesses = hullWitnesses(b, opp);
        if (!witnesses.empty()) groups.push_back({b, witnesses});
    }
    return groups;
}

struct MilpBuild {
    MilpProblem problem;
    std::size_t zOffset = 0;  // z_i lives at column zOffset + i
};

// Shared 0-1 program. Variables: h (p+1 boxed weights), z (one binary per
// point). The printed program's slack e_i is eliminated exactly: e_i exists
// iff 1 - y_i h.x_i <= bigM z_i, which becomes one row per point.
MilpBuild build01Milp(const Dataset& data, const std::vector<std::vector<double>>& x,
                      const TrainConfig& cfg, bool majority) {
    const std::size_t p = data.dim();
    const std::size_t n = data.size();
    const std::size_t nh = p + 1;

    MilpBuild out;
    LpProblem& lp = out.problem.relaxation;
    out.zOffset = nh;

    lp.objective.assign(nh + n, 0.0);
    for (std::size_t i = 0; i < n; ++i) lp.objective[nh + i] = 1.0;
    lp.bounds.assign(nh + n, VarBounds{});
    for (std::size_t j = 0; j < nh; ++j) lp.bounds[j] = {-cfg.weightBound, cfg.weightBound};
    for (std::size_t i = 0; i < n; ++i) lp.bounds[nh + i] = {0.0, 1.0};

    for (std::size_t i = 0; i < n; ++i) {
        // y_i h.[x_i;1] + bigM z_i >= 1
        std::vector<double> row(nh + n, 0.0);
        const double y = data[i].label;
        for (std::size_t j = 0; j < p; ++j) row[j] = -y * x[i][j];
        row[p] = -y;
        row[nh + i] = -cfg.bigM;
        lp.addConstraint(std::move(row), -1.0);
    }

    if (majority) {
        std::vector<double> rowPos(nh + n, 0.0), rowNeg(nh + n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            (data[i].label == +1 ? rowPos : rowNeg)[nh + i] = 1.0;
        lp.addConstraint(std::move(rowPos), std::floor((double(data.nPos()) - 1.0) / 2.0));
        lp.addConstraint(std::move(rowNeg), std::floor((double(data.nNeg()) - 1.0) / 2.0));
    }

    for (const auto& [b, witnesses] : forcedErrorGroups(data, x)) {
        std::vector<double> row(nh + n, 0.0);
        row[nh + b] = -1.0;
        for (std::size_t wI : witnesses) row[nh + wI] = -1.0;
        lp.addConstraint(std::move(row), -1.0);
    }

    out.problem.binaryMask.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.problem.binaryMask[i] = nh + i;
    out.problem.nodeLimit = cfg.nodeLimit;

    // Any hyperplane yields an integer-feasible candidate by reading off its
    // misclassification indicators, which gives branch and bound a near-optimal
    // incumbent long before the LP relaxation becomes integral. The two
    // constant classifiers are offered as well; they are the optima of
    // heavily overlapped instances and are never produced by LP rounding.
    std::vector<double> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = data[i].label;
    const long capPos = majority ? (long(data.nPos()) - 1) / 2 : long(n);
    const long capNeg = majority ? (long(data.nNeg()) - 1) / 2 : long(n);
    out.problem.roundingHook = [x, labels, nh, n, capPos, capNeg](const std::vector<double>& lpValues)
        -> std::optional<std::vector<double>> {
        auto fill = [&](std::vector<double>& cand) -> long {
            cand.resize(nh + n);
            long total = 0, misPos = 0, misNeg = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double margin = labels[i] * dotH(cand, x[i]);
                const bool wrong = margin < 1.0 - 1e-9;
                cand[nh + i] = wrong ? 1.0 : 0.0;
                if (wrong) {
                    ++total;
                    ++(labels[i] > 0 ? misPos : misNeg);
                }
            }
            if (misPos > capPos || misNeg > capNeg) return -1;
            return total;
        };

        std::vector<double> best;
        long bestCount = -1;
        std::vector<double> cand(lpValues.begin(), lpValues.begin() + nh);
        if (const long c = fill(cand); c >= 0) {
            best = cand;
            bestCount = c;
        }
        for (double sign : {-1.0, 1.0}) {
            std::vector<double> flat(nh, 0.0);
            flat[nh - 1] = sign;
            if (const long c = fill(flat); c >= 0 && (bestCount < 0 || c < bestCount)) {
                best = flat;
                bestCount = c;
            }
        }
        if (bestCount < 0) return std::nullopt;
        return best;
    };
    return out;
}

bool checkBigM(const Dataset& data, const std::vector<std::vector<double>>& x,
               const std::vector<double>& w, double bigM) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double slack = 1.0 - data[i].label * dotH(w, x[i]);
        if (std::fabs(slack) > bigM + 1e-6) return false;
    }
    return true;
}

TrainReport finishReport(const Dataset& data, const FeatureScaler& scaler,
                         const std::vector<double>& scaledWeights, double objective,
                         double bigM, const std::vector<std::vector<double>>& x) {
    TrainReport rep;
    rep.classifier = scaler.unscale(scaledWeights);
    rep.trainRisk = riskVector01(rep.classifier, data);
    rep.solverObjective = objective;
    rep.bigMValid = checkBigM(data, x, scaledWeights, bigM);
    return rep;
}

TrainReport train01Impl(const Dataset& data, const TrainConfig& cfg, bool majority) {
    checkConfig(cfg);
    data.requireBothClasses();
    const FeatureScaler scaler(data);
    const auto x = scaler.apply(data);
    const MilpBuild built = build01Milp(data, x, cfg, majority);

    const MilpSolution sol = solveMilp(built.problem);
    if (sol.status == MilpStatus::Infeasible) {
        if (!majority) throw Error("train01: program unexpectedly infeasible");
        TrainReport rep;
        rep.feasible = false;
        rep.nodesExplored = sol.nodesExplored;
        return rep;
    }

    std::vector<double> w(sol.values.begin(), sol.values.begin() + data.dim() + 1);
    const double obj = std::nearbyint(sol.objectiveValue);
    TrainReport rep = finishReport(data, scaler, w, obj, cfg.bigM, x);
    rep.nodesExplored = sol.nodesExplored;
    return rep;
}

}  // namespace

TrainReport trainHinge(const Dataset& data, const TrainConfig& cfg) {
    checkConfig(cfg);
    data.requireBothClasses();
    const FeatureScaler scaler(data);
    const auto x = scaler.apply(data);
    const std::size_t p = data.dim();
    const std::size_t n = data.size();
    const std::size_t nh = p + 1;

    LpProblem lp;
    lp.objective.assign(nh + n, 0.0);
    for (std::size_t i = 0; i < n; ++i) lp.objective[nh + i] = 1.0;
    lp.bounds.assign(nh + n, VarBounds{});
    for (std::size_t j = 0; j < nh; ++j) lp.bounds[j] = {-cfg.weightBound, cfg.weightBound};
    for (std::size_t i = 0; i < n; ++i) lp.bounds[nh + i] = {0.0, kInf};
    for (std::size_t i = 0; i < n; ++i) {
        // xi_i >= 1 - y_i h.[x_i;1]
        std::vector<double> row(nh + n, 0.0);
        const double y = data[i].label;
        for (std::size_t j = 0; j < p; ++j) row[j] = -y * x[i][j];
        row[p] = -y;
        row[nh + i] = -1.0;
        lp.addConstraint(std::move(row), -1.0);
    }

    const LpSolution sol = solveLp(lp);
    if (sol.status != LpStatus::Optimal)
        throw Error("trainHinge: LP not optimal (boxed hinge program is always feasible and bounded)");

    std::vector<double> w(sol.values.begin(), sol.values.begin() + nh);
    return finishReport(data, scaler, w, sol.objectiveValue, cfg.bigM, x);
}

TrainReport train01(const Dataset& data, const TrainConfig& cfg) {
    return train01Impl(data, cfg, false);
}

TrainReport trainMajority01(const Dataset& data, const TrainConfig& cfg) {
    return train01Impl(data, cfg, true);
}

TrainReport trainWith(TrainerId id, const Dataset& data, const TrainConfig& cfg) {
    switch (id) {
        case TrainerId::Hinge: return trainHinge(data, cfg);
        case TrainerId::ZeroOne: return train01(data, cfg);
        case TrainerId::MajorityZeroOne: return trainMajority01(data, cfg);
    }
    throw Error("trainWith: unknown trainer");
}

const char* trainerName(TrainerId id) {
    switch (id) {
        case TrainerId::Hinge: return "hinge";
        case TrainerId::ZeroOne: return "zero-one";
        case TrainerId::MajorityZeroOne: return "majority-zero-one";
    }
    return "?";
}

std::optional<TrainerId> trainerFromName(const std::string& name) {
    if (name == "hinge" || name == "svm") return TrainerId::Hinge;
    if (name == "zero-one" || name == "01") return TrainerId::ZeroOne;
    if (name == "majority-zero-one" || name == "majority01" || name == "majority") return TrainerId::MajorityZeroOne;
    return std::nullopt;
}

TrainReport bruteForce01(const Dataset& data, const BruteForceOptions& opt) {
    data.requireBothClasses();
    const std::size_t p = data.dim();
    const std::size_t n = data.size();
    if (p > 3 || n > 14) throw Error("bruteForce01: guarded to p <= 3 and N <= 14");

    const long majPos = std::floor((double(data.nPos()) - 1.0) / 2.0);
    const long majNeg = std::floor((double(data.nNeg()) - 1.0) / 2.0);

    // Candidate normals.
    std::vector<std::vector<double>> dirs;
    for (std::size_t j = 0; j < p; ++j) {
        std::vector<double> e(p, 0.0);
        e[j] = 1.0;
        dirs.push_back(e);
    }
    auto diff = [&](std::size_t a, std::size_t b) {
        std::vector<double> d(p);
        for (std::size_t j = 0; j < p; ++j) d[j] = data[b].features[j] - data[a].features[j];
        return d;
    };
    auto nonzero = [](const std::vector<double>& v) {
        for (double a : v)
            if (std::fabs(a) > 1e-12) return true;
        return false;
    };
    if (p == 2) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                const auto d = diff(a, b);
                if (nonzero(d)) dirs.push_back({-d[1], d[0]});
            }
    } else if (p == 3) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                const auto d = diff(a, b);
                if (!nonzero(d)) continue;
                dirs.push_back(d);  // handles collinear configurations
                // A pair of perpendiculars spanning the orthogonal plane.
                std::vector<double> e = std::fabs(d[0]) < 0.9 * std::sqrt(d[0]*d[0]+d[1]*d[1]+d[2]*d[2])
                                            ? std::vector<double>{1.0, 0.0, 0.0}
                                            : std::vector<double>{0.0, 1.0, 0.0};
                std::vector<double> u1 = {d[1] * e[2] - d[2] * e[1], d[2] * e[0] - d[0] * e[2],
                                          d[0] * e[1] - d[1] * e[0]};
                std::vector<double> u2 = {d[1] * u1[2] - d[2] * u1[1], d[2] * u1[0] - d[0] * u1[2],
                                          d[0] * u1[1] - d[1] * u1[0]};
                if (nonzero(u1)) dirs.push_back(u1);
                if (nonzero(u2)) dirs.push_back(u2);
                for (std::size_t c = b + 1; c < n; ++c) {
                    const auto d2 = diff(a, c);
                    std::vector<double> cr = {d[1] * d2[2] - d[2] * d2[1], d[2] * d2[0] - d[0] * d2[2],
                                              d[0] * d2[1] - d[1] * d2[0]};
                    if (nonzero(cr)) dirs.push_back(cr);
                }
            }
    }

    bool found = false;
    long bestTotal = 0;
    double bestRefRisk = -1.0;
    LinearClassifier bestH;
    RiskVector bestRisk;

    auto consider = [&](const std::vector<double>& w, double t) {
        std::vector<double> hw(w);
        hw.push_back(-t);
        LinearClassifier h(std::move(hw));
        RiskVector rv = riskVector01(h, data);
        if (opt.majority && (rv.misPos > majPos || rv.misNeg > majNeg)) return;
        const long total = rv.misPos + rv.misNeg;
        double refRisk = 0.0;
        if (opt.pessimisticReference &&
            (!found || total <= bestTotal))
            refRisk = maxRisk(riskVector01(h, *opt.pessimisticReference));
        const bool better = !found || total < bestTotal ||
                            (opt.pessimisticReference && total == bestTotal && refRisk > bestRefRisk + 1e-15);
        if (better) {
            found = true;
            bestTotal = total;
            bestRefRisk = refRisk;
            bestH = h;
            bestRisk = rv;
        }
    };

    for (const auto& dRaw : dirs) {
        for (int sgn : {+1, -1}) {
            std::vector<double> w(dRaw);
            for (double& a : w) a *= sgn;
            std::vector<double> proj(n);
            for (std::size_t i = 0; i < n; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < p; ++j) s += w[j] * data[i].features[j];
                proj[i] = s;
            }
            std::vector<double> ts(proj);
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            ts.push_back(ts.front() - 1.0);  // everything predicted positive
            for (double t : ts) consider(w, t);
        }
    }

    TrainReport rep;
    if (!found) {
        rep.feasible = false;
        return rep;
    }
    rep.classifier = bestH;
    rep.trainRisk = bestRisk;
    rep.solverObjective = double(bestTotal);
    return rep;
}

}  // namespace rlc
