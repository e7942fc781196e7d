#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rlc/lp.hpp"

namespace rlc {

inline constexpr double kIntTol = 1e-6;

/// Raised when branch and bound exhausts its node budget.
struct NodeLimitError : Error {
    using Error::Error;
};

/// An LP relaxation plus the set of variables constrained to {0,1}.
struct MilpProblem {
    LpProblem relaxation;
    std::vector<std::size_t> binaryMask;  // sorted, unique
    long nodeLimit = 1'000'000;

    /// Optional problem-specific rounding heuristic: maps a node's LP values
    /// to a candidate assignment for every variable. The solver verifies
    /// bounds, integrality and all rows before accepting a candidate as an
    /// incumbent, so the hook can only speed the search up, never change the
    /// optimum.
    std::function<std::optional<std::vector<double>>(const std::vector<double>&)> roundingHook;

    void validate() const;
};

enum class MilpStatus { Optimal, Infeasible };

struct MilpSolution {
    MilpStatus status = MilpStatus::Infeasible;
    std::vector<double> values;
    double objectiveValue = 0.0;
    long nodesExplored = 0;
};

/// Depth-first branch and bound with best-incumbent pruning. Branches on the
/// most fractional binary (ties by lowest index), exploring the nearer side
/// first. When the objective is integral over integer-feasible points (zero
/// cost on continuous variables, integer cost on binaries), nodes are pruned
/// with the rounded-up bound. Deterministic.
MilpSolution solveMilp(const MilpProblem& problem);

}  // namespace rlc
