#include "rlc/milp.hpp"

#include <algorithm>
#include <cmath>

namespace rlc {

void MilpProblem::validate() const {
    relaxation.validate();
    const std::size_t n = relaxation.numVars();
    for (std::size_t k = 0; k < binaryMask.size(); ++k) {
        const std::size_t j = binaryMask[k];
        if (j >= n) throw Error("MilpProblem: binary index out of range");
        if (k > 0 && binaryMask[k - 1] >= j) throw Error("MilpProblem: binary mask not sorted/unique");
        const VarBounds b = j < relaxation.bounds.size() ? relaxation.bounds[j] : VarBounds{};
        if (b.lo < -kIntTol || b.hi > 1.0 + kIntTol)
            throw Error("MilpProblem: binary variable bounds must lie within [0,1]");
    }
    if (nodeLimit <= 0) throw Error("MilpProblem: node limit must be positive");
}

namespace {

bool integralObjective(const MilpProblem& p) {
    std::vector<char> isBin(p.relaxation.numVars(), 0);
    for (std::size_t j : p.binaryMask) isBin[j] = 1;
    for (std::size_t j = 0; j < p.relaxation.numVars(); ++j) {
        const double c = p.relaxation.objective[j];
        if (!isBin[j] && c != 0.0) return false;
        if (isBin[j] && c != std::nearbyint(c)) return false;
    }
    return true;
}

struct Node {
    std::vector<VarBounds> bounds;
    double parentBound = -kInf;
};

class BranchAndBound {
public:
    explicit BranchAndBound(const MilpProblem& p)
        : prob_(p), integral_(integralObjective(p)) {
        base_ = p.relaxation;
        base_.bounds.resize(base_.numVars());
    }

    MilpSolution run() {
        MilpSolution out;
        std::vector<Node> stack;
        stack.push_back({base_.bounds, -kInf});

        while (!stack.empty()) {
            Node node = std::move(stack.back());
            stack.pop_back();
            if (prunable(node.parentBound)) continue;
            if (++nodes_ > prob_.nodeLimit)
                throw NodeLimitError("solveMilp: node limit exceeded");

            base_.bounds = node.bounds;
            LpSolution lp;
            bool lpTrusted = true;
            try {
                lp = solveLp(base_);
            } catch (const NumericalError&) {
                lpTrusted = false;
            }
            if (lpTrusted) {
                if (lp.status == LpStatus::Infeasible) continue;
                if (lp.status == LpStatus::Unbounded)
                    throw Error("solveMilp: relaxation unbounded; problem violates precondition");
                if (prunable(lp.objectiveValue)) continue;
            } else {
                // The node LP broke down numerically, so neither its bound nor
                // its verdict can be used. Branching on it is always sound:
                // the children are more constrained and resolve cleanly.
                const int forced = firstUnfixedBinary(node.bounds);
                if (forced < 0) throw NumericalError("solveMilp: unresolvable fully-fixed node");
                Node down{node.bounds, node.parentBound};
                down.bounds[forced] = {0.0, 0.0};
                Node up{std::move(node.bounds), node.parentBound};
                up.bounds[forced] = {1.0, 1.0};
                stack.push_back(std::move(up));
                stack.push_back(std::move(down));
                continue;
            }

            const int branchVar = pickBranchVar(lp.values);
            if (branchVar < 0) {
                offerIncumbent(lp.objectiveValue, lp.values);
                continue;
            }
            if (prob_.roundingHook) tryHook(lp);
            if (nodes_ == 1) tryRounding(lp);
            if (prunable(lp.objectiveValue)) continue;  // an incumbent may have closed the gap

            const double frac = lp.values[branchVar];
            Node down{node.bounds, lp.objectiveValue};
            down.bounds[branchVar] = {0.0, 0.0};
            Node up{std::move(node.bounds), lp.objectiveValue};
            up.bounds[branchVar] = {1.0, 1.0};
            // Depth-first: push the far side first so the nearer side pops next.
            if (frac >= 0.5) {
                stack.push_back(std::move(down));
                stack.push_back(std::move(up));
            } else {
                stack.push_back(std::move(up));
                stack.push_back(std::move(down));
            }
        }

        out.nodesExplored = nodes_;
        if (hasIncumbent_) {
            out.status = MilpStatus::Optimal;
            out.values = incumbentValues_;
            out.objectiveValue = incumbent_;
        }
        return out;
    }

private:
    const MilpProblem& prob_;
    const bool integral_;
    LpProblem base_;
    long nodes_ = 0;
    bool hasIncumbent_ = false;
    double incumbent_ = kInf;
    std::vector<double> incumbentValues_;

    bool prunable(double bound) const {
        if (!hasIncumbent_) return false;
        if (integral_) return std::ceil(bound - 1e-9) >= incumbent_ - 1e-9;
        return bound >= incumbent_ - 1e-9;
    }

    int firstUnfixedBinary(const std::vector<VarBounds>& bounds) const {
        for (std::size_t j : prob_.binaryMask)
            if (bounds[j].lo != bounds[j].hi) return static_cast<int>(j);
        return -1;
    }

    int pickBranchVar(const std::vector<double>& v) const {
        int best = -1;
        double bestFrac = kIntTol;
        for (std::size_t j : prob_.binaryMask) {
            const double f = std::min(v[j], 1.0 - v[j]);
            if (f > bestFrac) {
                bestFrac = f;
                best = static_cast<int>(j);
            }
        }
        return best;
    }

    void offerIncumbent(double objective, const std::vector<double>& values) {
        if (!hasIncumbent_ || objective < incumbent_ - 1e-9) {
            hasIncumbent_ = true;
            incumbent_ = objective;
            incumbentValues_ = values;
        }
    }

    // Verifies a hook-proposed assignment before accepting it.
    void tryHook(const LpSolution& lp) {
        const auto cand = prob_.roundingHook(lp.values);
        if (!cand || cand->size() != prob_.relaxation.numVars()) return;
        const auto& v = *cand;
        for (std::size_t j : prob_.binaryMask)
            if (std::fabs(v[j] - std::nearbyint(v[j])) > kIntTol) return;
        for (std::size_t j = 0; j < prob_.relaxation.bounds.size(); ++j) {
            const auto& b = prob_.relaxation.bounds[j];
            if (v[j] < b.lo - 1e-9 || v[j] > b.hi + 1e-9) return;
        }
        double obj = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) obj += prob_.relaxation.objective[j] * v[j];
        if (hasIncumbent_ && obj >= incumbent_ - 1e-9) return;  // not an improvement
        for (const auto& c : prob_.relaxation.constraints) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) lhs += c.row[j] * v[j];
            if (lhs > c.rhs + 1e-7) return;
        }
        offerIncumbent(obj, v);
    }

    // Root rounding heuristic: fix binaries to the nearest integer and
    // re-solve for the continuous part. A feasible result seeds the incumbent
    // so the integral-bound pruning starts working immediately.
    void tryRounding(const LpSolution& lp) {
        std::vector<VarBounds> saved = base_.bounds;
        for (std::size_t j : prob_.binaryMask) {
            const double v = lp.values[j] >= 0.5 ? 1.0 : 0.0;
            base_.bounds[j] = {v, v};
        }
        try {
            LpSolution fixed = solveLp(base_);
            if (fixed.status == LpStatus::Optimal) offerIncumbent(fixed.objectiveValue, fixed.values);
        } catch (const NumericalError&) {
            // Heuristic only; ignore.
        }
        base_.bounds = std::move(saved);
    }
};

}  // namespace

MilpSolution solveMilp(const MilpProblem& problem) {
    problem.validate();
    BranchAndBound bb(problem);
    return bb.run();
}

}  // namespace rlc
