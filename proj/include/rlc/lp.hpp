#pragma once

#include <limits>
#include <vector>

#include "rlc/core.hpp"

namespace rlc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kFeasTol = 1e-8;  // feasibility tolerance
inline constexpr double kOptTol = 1e-9;   // reduced-cost optimality tolerance

/// Raised when the simplex iteration breaks down numerically. Never used to
/// signal an Infeasible/Unbounded verdict.
struct NumericalError : Error {
    using Error::Error;
};

/// Per-variable interval [lo, hi]; either side may be infinite.
struct VarBounds {
    double lo = -kInf;
    double hi = kInf;
};

/// One inequality row . v <= rhs.
struct LpConstraint {
    std::vector<double> row;
    double rhs = 0.0;
};

/// Dense linear program: minimize objective . v subject to the constraint
/// rows and per-variable bounds.
struct LpProblem {
    std::vector<double> objective;
    std::vector<LpConstraint> constraints;
    std::vector<VarBounds> bounds;  // sized to numVars(); missing entries mean free

    std::size_t numVars() const { return objective.size(); }

    void addConstraint(std::vector<double> row, double rhs) {
        constraints.push_back({std::move(row), rhs});
    }

    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> values;   // present iff Optimal
    double objectiveValue = 0.0;  // present iff Optimal
};

/// Two-phase dense simplex. Dantzig pricing with a switch to Bland's rule
/// after a run of degenerate pivots, so it terminates on cycling instances.
/// Deterministic: identical problems produce identical solutions.
LpSolution solveLp(const LpProblem& problem);

}  // namespace rlc
