#include "rlc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>

namespace rlc {

void LpProblem::validate() const {
    const std::size_t n = numVars();
    if (bounds.size() > n) throw Error("LpProblem: more bounds than variables");
    for (const auto& b : bounds) {
        if (std::isnan(b.lo) || std::isnan(b.hi) || b.lo > b.hi)
            throw Error("LpProblem: invalid variable bounds");
    }
    for (const auto& c : constraints) {
        if (c.row.size() != n) throw Error("LpProblem: constraint row length mismatch");
        if (!std::isfinite(c.rhs)) throw Error("LpProblem: non-finite rhs");
        for (double a : c.row)
            if (!std::isfinite(a)) throw Error("LpProblem: non-finite coefficient");
    }
    for (double c : objective)
        if (!std::isfinite(c)) throw Error("LpProblem: non-finite objective");
}

namespace {

constexpr double kPivTol = 1e-10;

// Description of how an original variable maps onto the nonnegative
// standard-form variables.
struct VarMap {
    enum Kind { Fixed, Shifted, Mirrored, Split } kind = Shifted;
    double offset = 0.0;   // Fixed: the value; Shifted: lo; Mirrored: hi
    int col = -1;          // first standard-form column
    int colNeg = -1;       // second column for Split
};

// Dense two-phase simplex over the standard form  A u = b, u >= 0, b >= 0.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : m_(rows), n_(cols), activeN_(cols), width_(cols + 1), data_((rows + 2) * (cols + 1), 0.0) {}

    double* row(std::size_t i) { return data_.data() + i * width_; }
    const double* row(std::size_t i) const { return data_.data() + i * width_; }

    // Columns at and beyond activeN are never priced or pivoted again;
    // shrinking it after phase 1 drops the artificial block from every
    // subsequent row operation.
    std::size_t activeN() const { return activeN_; }
    void setActiveN(std::size_t an) { activeN_ = an; }
    double* zRow() { return data_.data() + m_ * width_; }      // phase-2 reduced costs
    double* wRow() { return data_.data() + (m_ + 1) * width_; }  // phase-1 reduced costs

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }

    std::vector<int> basis;          // basic variable per row
    std::vector<char> colEnabled;    // artificials get disabled after phase 1

    void pivot(std::size_t r, std::size_t e) {
        double* pr = row(r);
        const double inv = 1.0 / pr[e];
        for (std::size_t j = 0; j < activeN_; ++j) pr[j] *= inv;
        pr[n_] *= inv;
        pr[e] = 1.0;
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            double* ri = row(i);
            const double f = ri[e];
            if (std::fabs(f) <= kPivTol) {
                ri[e] = 0.0;
                continue;
            }
            for (std::size_t j = 0; j < activeN_; ++j) ri[j] -= f * pr[j];
            ri[n_] -= f * pr[n_];
            ri[e] = 0.0;
        }
        basis[r] = static_cast<int>(e);
    }

private:
    std::size_t m_, n_, activeN_, width_;
    std::vector<double> data_;
};

class SimplexSolver {
public:
    explicit SimplexSolver(const LpProblem& p, bool perturb = false)
        : prob_(p), perturb_(perturb) { build(); }

    LpSolution solve() {
        if (!tab_) {
            // Every variable was fixed by its bounds; just check the rows.
            return solutionFromFixed();
        }
        if (!phase1()) return {LpStatus::Infeasible, {}, 0.0};
        const int p2 = phase2();
        if (p2 < 0) return {LpStatus::Unbounded, {}, 0.0};
        return extract();
    }

private:
    const LpProblem& prob_;
    const bool perturb_;
    std::vector<VarMap> varMap_;
    std::vector<double> stdObj_;   // objective over standard-form columns
    std::unique_ptr<Tableau> tab_;
    std::vector<std::size_t> refCols_;  // initial basis columns, row order
    std::vector<std::vector<double>> stdRows_;  // pristine standard-form matrix
    std::vector<double> stdRhs_;                // pristine rhs (before sign flips)
    std::vector<double> slackSign_;             // +1 slack, -1 surplus per row
    std::map<std::size_t, std::size_t> artRow_;  // artificial column -> row
    bool phase2_ = false;  // leftover artificials must stay at zero once set
    std::size_t nStruct_ = 0;
    std::size_t nArt_ = 0;

    VarBounds boundsOf(std::size_t j) const {
        return j < prob_.bounds.size() ? prob_.bounds[j] : VarBounds{};
    }

    void build() {
        const std::size_t n = prob_.numVars();
        varMap_.resize(n);

        // Standard-form columns for each variable; fixed variables drop out.
        std::size_t col = 0;
        std::vector<std::pair<std::size_t, double>> upperRows;  // (var, span) extra rows
        for (std::size_t j = 0; j < n; ++j) {
            const VarBounds b = boundsOf(j);
            VarMap& vm = varMap_[j];
            if (b.lo == b.hi) {
                vm.kind = VarMap::Fixed;
                vm.offset = b.lo;
            } else if (b.lo > -kInf) {
                vm.kind = VarMap::Shifted;
                vm.offset = b.lo;
                vm.col = static_cast<int>(col++);
                if (b.hi < kInf) upperRows.push_back({j, b.hi - b.lo});
            } else if (b.hi < kInf) {
                vm.kind = VarMap::Mirrored;
                vm.offset = b.hi;
                vm.col = static_cast<int>(col++);
            } else {
                vm.kind = VarMap::Split;
                vm.col = static_cast<int>(col++);
                vm.colNeg = static_cast<int>(col++);
            }
        }
        nStruct_ = col;
        if (nStruct_ == 0) return;  // fully fixed problem

        const std::size_t m = prob_.constraints.size() + upperRows.size();

        // Assemble rows as  a . u <= rhs  over standard-form columns.
        std::vector<std::vector<double>>& rows = stdRows_;
        std::vector<double>& rhs = stdRhs_;
        rows.assign(m, std::vector<double>(nStruct_, 0.0));
        rhs.assign(m, 0.0);
        for (std::size_t i = 0; i < prob_.constraints.size(); ++i) {
            const auto& c = prob_.constraints[i];
            double b = c.rhs;
            for (std::size_t j = 0; j < n; ++j) {
                const double a = c.row[j];
                if (a == 0.0) continue;
                const VarMap& vm = varMap_[j];
                switch (vm.kind) {
                    case VarMap::Fixed: b -= a * vm.offset; break;
                    case VarMap::Shifted:
                        rows[i][vm.col] += a;
                        b -= a * vm.offset;
                        break;
                    case VarMap::Mirrored:
                        rows[i][vm.col] -= a;
                        b -= a * vm.offset;
                        break;
                    case VarMap::Split:
                        rows[i][vm.col] += a;
                        rows[i][vm.colNeg] -= a;
                        break;
                }
            }
            rhs[i] = b;
        }
        for (std::size_t k = 0; k < upperRows.size(); ++k) {
            const std::size_t i = prob_.constraints.size() + k;
            rows[i][varMap_[upperRows[k].first].col] = 1.0;
            rhs[i] = upperRows[k].second;
        }
        if (perturb_) {
            // Deterministic right-hand-side perturbation: enlarges the
            // feasible set by a hair, which breaks the degenerate faces that
            // stall the un-perturbed iteration. The final answer is checked
            // against the original rows, so this can only trade a failure for
            // a slightly perturbed optimum within the feasibility tolerance.
            for (std::size_t i = 0; i < m; ++i) {
                const double jitter = double((i * 2654435761ULL) & 1023ULL) / 1024.0;
                rhs[i] += 1e-7 * (1.0 + jitter) * std::max(1.0, std::fabs(rhs[i]));
            }
        }

        // Standard-form objective.
        stdObj_.assign(nStruct_, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double c = prob_.objective[j];
            if (c == 0.0) continue;
            const VarMap& vm = varMap_[j];
            switch (vm.kind) {
                case VarMap::Fixed: break;
                case VarMap::Shifted: stdObj_[vm.col] += c; break;
                case VarMap::Mirrored: stdObj_[vm.col] -= c; break;
                case VarMap::Split:
                    stdObj_[vm.col] += c;
                    stdObj_[vm.colNeg] -= c;
                    break;
            }
        }

        // Columns: structural | one slack per row | artificials for b < 0 rows.
        nArt_ = 0;
        for (double b : rhs)
            if (b < 0) ++nArt_;
        const std::size_t nCols = nStruct_ + m + nArt_;
        tab_ = std::make_unique<Tableau>(m, nCols);
        tab_->basis.assign(m, -1);
        tab_->colEnabled.assign(nCols, 1);

        std::size_t art = nStruct_ + m;
        slackSign_.assign(m, 1.0);
        for (std::size_t i = 0; i < m; ++i) {
            double* r = tab_->row(i);
            const double sgn = rhs[i] < 0 ? -1.0 : 1.0;
            slackSign_[i] = sgn;
            for (std::size_t jj = 0; jj < nStruct_; ++jj) r[jj] = sgn * rows[i][jj];
            r[nStruct_ + i] = sgn;  // slack (surplus when the row was flipped)
            r[nCols] = sgn * rhs[i];
            if (rhs[i] < 0) {
                r[art] = 1.0;
                tab_->basis[i] = static_cast<int>(art);
                artRow_[art] = i;
                ++art;
            } else {
                tab_->basis[i] = static_cast<int>(nStruct_ + i);
            }
        }

        refCols_.resize(m);
        for (std::size_t i = 0; i < m; ++i) refCols_[i] = static_cast<std::size_t>(tab_->basis[i]);

        // Phase-2 reduced-cost row.
        double* z = tab_->zRow();
        for (std::size_t jj = 0; jj < nStruct_; ++jj) z[jj] = stdObj_[jj];
        // Phase-1 reduced-cost row: sum of artificial rows subtracted from
        // unit costs on the artificials, so basic columns price to zero.
        double* w = tab_->wRow();
        for (std::size_t i = 0; i < m; ++i) {
            if (tab_->basis[i] < static_cast<int>(nStruct_ + m)) continue;
            const double* r = tab_->row(i);
            for (std::size_t j = 0; j <= nCols; ++j) w[j] -= r[j];
        }
        for (std::size_t a = nStruct_ + m; a < nCols; ++a) w[a] += 1.0;
    }

    // The pristine standard-form column of variable v (before any pivoting),
    // in the sign-flipped orientation the tableau was built with.
    void pristineColumn(std::size_t v, std::vector<double>& out) const {
        const std::size_t m = tab_->m();
        out.assign(m, 0.0);
        if (v < nStruct_) {
            for (std::size_t i = 0; i < m; ++i) out[i] = slackSign_[i] * stdRows_[i][v];
        } else if (v < nStruct_ + m) {
            out[v - nStruct_] = slackSign_[v - nStruct_];
        } else {
            const auto it = artRow_.find(v);
            if (it != artRow_.end()) out[it->second] = 1.0;
        }
    }

    // Full refactorization: recomputes every active tableau column, both cost
    // rows and the rhs from pristine data through an LU of the current basis.
    // Restores the invariant the ratio test relies on after drift has built
    // up. Throws when the basis turns out singular or primal-infeasible.
    void rebuildTableau() {
        const std::size_t m = tab_->m();
        const std::size_t n = tab_->n();
        const std::size_t activeN = tab_->activeN();

        // LU factor the basis (partial pivoting), stored in place.
        std::vector<std::vector<double>> lu(m, std::vector<double>(m, 0.0));
        {
            std::vector<double> col;
            for (std::size_t k = 0; k < m; ++k) {
                const int v = tab_->basis[k];
                if (v < 0) throw NumericalError("solveLp: missing basic variable");
                pristineColumn(static_cast<std::size_t>(v), col);
                for (std::size_t i = 0; i < m; ++i) lu[i][k] = col[i];
            }
        }
        std::vector<std::size_t> perm(m);
        for (std::size_t i = 0; i < m; ++i) perm[i] = i;
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < m; ++r)
                if (std::fabs(lu[r][c]) > std::fabs(lu[piv][c])) piv = r;
            if (std::fabs(lu[piv][c]) < 1e-12)
                throw NumericalError("solveLp: singular basis during refactorization");
            std::swap(lu[piv], lu[c]);
            std::swap(perm[piv], perm[c]);
            const double inv = 1.0 / lu[c][c];
            for (std::size_t r = c + 1; r < m; ++r) {
                const double f = lu[r][c] * inv;
                lu[r][c] = f;
                if (f == 0.0) continue;
                for (std::size_t cc = c + 1; cc < m; ++cc) lu[r][cc] -= f * lu[c][cc];
            }
        }
        std::vector<double> y(m);
        const auto solveInto = [&](const std::vector<double>& rhs, std::vector<double>& out) {
            for (std::size_t i = 0; i < m; ++i) y[i] = rhs[perm[i]];
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t c = 0; c < i; ++c) y[i] -= lu[i][c] * y[c];
            out.resize(m);
            for (std::size_t i = m; i-- > 0;) {
                double s = y[i];
                for (std::size_t c = i + 1; c < m; ++c) s -= lu[i][c] * out[c];
                out[i] = s / lu[i][i];
            }
        };

        // Objective coefficients of the basic variables, both phases.
        std::vector<double> cbZ(m, 0.0), cbW(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t v = static_cast<std::size_t>(tab_->basis[i]);
            if (v < nStruct_) cbZ[i] = stdObj_[v];
            if (v >= n - nArt_) cbW[i] = 1.0;
        }

        // rhs first (also the feasibility verdict).
        std::vector<double> rhs0(m), xB;
        for (std::size_t i = 0; i < m; ++i) rhs0[i] = slackSign_[i] * stdRhs_[i];
        solveInto(rhs0, xB);
        for (std::size_t i = 0; i < m; ++i) {
            if (xB[i] < -1e-6) throw NumericalError("solveLp: basis lost feasibility");
            if (phase2_ && static_cast<std::size_t>(tab_->basis[i]) >= n - nArt_ && xB[i] > 1e-7)
                throw NumericalError("solveLp: dependent-row artificial became positive");
            tab_->row(i)[n] = xB[i];
        }
        double zRhs = 0.0, wRhs = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            zRhs += cbZ[i] * xB[i];
            wRhs += cbW[i] * xB[i];
        }
        tab_->zRow()[n] = -zRhs;
        tab_->wRow()[n] = -wRhs;

        // Active columns and their reduced costs.
        std::vector<char> isBasic(n, 0);
        for (std::size_t i = 0; i < m; ++i) isBasic[tab_->basis[i]] = 1;
        std::vector<double> col, tcol;
        for (std::size_t j = 0; j < activeN; ++j) {
            if (!tab_->colEnabled[j]) continue;
            if (isBasic[j]) {
                for (std::size_t i = 0; i < m; ++i) tab_->row(i)[j] = 0.0;
                for (std::size_t i = 0; i < m; ++i)
                    if (static_cast<std::size_t>(tab_->basis[i]) == j) tab_->row(i)[j] = 1.0;
                tab_->zRow()[j] = 0.0;
                tab_->wRow()[j] = 0.0;
                continue;
            }
            pristineColumn(j, col);
            solveInto(col, tcol);
            double cz = j < nStruct_ ? stdObj_[j] : 0.0;
            double cw = j >= n - nArt_ ? 1.0 : 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                tab_->row(i)[j] = tcol[i];
                cz -= cbZ[i] * tcol[i];
                cw -= cbW[i] * tcol[i];
            }
            tab_->zRow()[j] = cz;
            tab_->wRow()[j] = cw;
        }
    }

    // Periodic drift control: exact basic values are cheap to compute; when
    // the tableau rhs has drifted materially the whole body is refactorized.
    void refreshRhs() {
        const auto u = resolveBasis();
        if (!u) throw NumericalError("solveLp: singular basis");
        const std::size_t m = tab_->m();
        const std::size_t n = tab_->n();
        double drift = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            drift = std::max(drift, std::fabs(tab_->row(i)[n] - (*u)[tab_->basis[i]]));
        if (drift > 1e-9 || perturb_) {
            rebuildTableau();
            return;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double v = (*u)[tab_->basis[i]];
            if (v < -1e-6) {
                if (std::getenv("RLC_LP_TRACE2"))
                    std::fprintf(stderr, "[%s] refresh: basic %.3g < 0\n", perturb_ ? "pert" : "plain", v);
                throw NumericalError("solveLp: basis lost feasibility");
            }
            if (phase2_ && static_cast<std::size_t>(tab_->basis[i]) >= n - nArt_ && v > 1e-7)
                throw NumericalError("solveLp: dependent-row artificial became positive");
            tab_->row(i)[n] = v;
        }
        double zObj = 0.0;
        for (std::size_t j = 0; j < nStruct_; ++j) zObj += stdObj_[j] * (*u)[j];
        tab_->zRow()[n] = -zObj;
        double wObj = 0.0;
        for (std::size_t a = n - nArt_; a < n; ++a) wObj += (*u)[a];
        tab_->wRow()[n] = -wObj;
    }

    int iterate(double* cost) {
        const std::size_t m = tab_->m();
        const std::size_t n = tab_->n();
        const std::size_t blandAfter = 4 * (m + n);
        const std::size_t maxIter = 600 * (m + n) + 5000;
        std::size_t stagnant = 0;
        double lastObj = kInf;
        bool bland = false;
        // Long degenerate grinds corrupt the tableau body faster than any
        // refresh cadence can repair it. The un-perturbed solve gives up at
        // the first sign of stalling; the rhs-perturbed restart is then
        // non-degenerate and walks to the optimum in a short, stable run.
        const std::size_t stallAfter = perturb_ ? blandAfter : 2 * (m + n);

        const std::size_t refreshEvery = perturb_ ? 32 : 128;
        for (std::size_t iter = 0; iter < maxIter; ++iter) {
            if (iter != 0 && iter % refreshEvery == 0) refreshRhs();
            if (std::getenv("RLC_LP_TRACE2") && iter % 200 == 0)
                std::fprintf(stderr, "[%s] iter=%zu obj=%.9g stagnant? bland=%d\n",
                             perturb_ ? "pert" : "plain", iter, -cost[n], int(bland));
            // Entering column. The pricing tolerance loosens once the
            // objective stagnates: after long degenerate runs the cost row
            // carries noise around 1e-8, and chasing it only corrupts the
            // tableau further.
            const double priceTol = stagnant > (m + n) ? 1e-7 : kOptTol;
            int e = -1;
            const std::size_t activeN = tab_->activeN();
            if (!bland) {
                double best = -priceTol;
                for (std::size_t j = 0; j < activeN; ++j) {
                    if (!tab_->colEnabled[j]) continue;
                    if (cost[j] < best) {
                        best = cost[j];
                        e = static_cast<int>(j);
                    }
                }
            } else {
                for (std::size_t j = 0; j < activeN; ++j) {
                    if (tab_->colEnabled[j] && cost[j] < -priceTol) {
                        e = static_cast<int>(j);
                        break;
                    }
                }
            }
            if (e < 0) return +1;

            // Harris-style two-pass ratio test. Pass one computes the largest
            // step that keeps every basic above -featol; pass two picks the
            // largest admissible pivot element, which keeps the iteration
            // numerically stable on degenerate faces. In Bland mode the exact
            // minimum ratio with lowest-basic-index ties is used instead.
            int r = -1;
            double bestRatio = kInf;
            double bestA = 1.0;
            if (!bland) {
                constexpr double featol = 1e-9;
                double thetaMax = kInf;
                for (std::size_t i = 0; i < m; ++i) {
                    const double a = tab_->row(i)[e];
                    if (a <= kPivTol) continue;
                    thetaMax = std::min(thetaMax, (std::max(tab_->row(i)[n], 0.0) + featol) / a);
                }
                if (thetaMax == kInf) return -1;
                for (std::size_t i = 0; i < m; ++i) {
                    const double a = tab_->row(i)[e];
                    if (a <= kPivTol) continue;
                    const double ratio = std::max(tab_->row(i)[n], 0.0) / a;
                    if (ratio > thetaMax) continue;
                    if (r < 0 || a > bestA) {
                        r = static_cast<int>(i);
                        bestA = a;
                        bestRatio = ratio;
                    }
                }
            } else {
                for (std::size_t i = 0; i < m; ++i) {
                    const double a = tab_->row(i)[e];
                    if (a <= kPivTol) continue;
                    const double ratio = std::max(tab_->row(i)[n], 0.0) / a;
                    if (ratio < bestRatio - 1e-12 ||
                        (ratio <= bestRatio + 1e-12 && r >= 0 && tab_->basis[i] < tab_->basis[r])) {
                        bestRatio = ratio;
                        bestA = a;
                        r = static_cast<int>(i);
                    }
                }
            }
            if (r < 0) return -1;

            tab_->pivot(static_cast<std::size_t>(r), static_cast<std::size_t>(e));

            if (std::getenv("RLC_LP_PARANOID")) {
                if (const auto u = resolveBasis()) {
                    double worst = 0.0;
                    for (std::size_t i = 0; i < m; ++i)
                        worst = std::min(worst, (*u)[tab_->basis[i]]);
                    if (worst < -1e-7)
                        std::fprintf(stderr,
                                     "pivot iter=%zu e=%d r=%d a=%.3g ratio=%.6g -> exact min basic %.6g\n",
                                     iter, e, r, bestA, bestRatio, worst);
                }
            }

            // Objective-stagnation handling: restart perturbed, or switch to
            // Bland's entering rule when this already is the perturbed run.
            // lastObj is a watermark (best value seen) so zero-step noise
            // cannot reset the counter.
            const double obj = -cost[n];
            if (obj < lastObj - 1e-10 * (1.0 + std::fabs(lastObj))) {
                stagnant = 0;
                lastObj = obj;
            } else if (++stagnant > stallAfter) {
                if (!perturb_) throw NumericalError("solveLp: degenerate stall");
                bland = true;
            }
        }
        throw NumericalError("solveLp: iteration limit exceeded");
    }

    bool phase1() {
        if (nArt_ == 0) return true;
        if (iterate(tab_->wRow()) < 0)
            throw NumericalError("solveLp: phase 1 unbounded");
        const std::size_t n = tab_->n();

        // Drift can hide a genuinely infeasible basis, so the phase verdict
        // is taken from exact values (with a full refactorization when the
        // rhs has drifted materially).
        refreshRhs();
        const double w = -tab_->wRow()[n];
        if (w > 1e-7) return false;

        // Drive leftover artificials out of the basis, on exact entries
        // (refreshRhs above rebuilt the body if it had drifted). A row whose
        // non-artificial entries are all zero is linearly dependent; its
        // artificial stays basic at exactly zero and the positivity checks in
        // the refresh path catch any later corruption.
        const std::size_t m = tab_->m();
        const std::size_t firstArt = n - nArt_;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab_->basis[i] < static_cast<int>(firstArt)) continue;
            const double* r = tab_->row(i);
            int e = -1;
            double best = 1e-9;
            for (std::size_t j = 0; j < firstArt; ++j) {
                if (tab_->colEnabled[j] && std::fabs(r[j]) > best) {
                    best = std::fabs(r[j]);
                    e = static_cast<int>(j);
                }
            }
            if (e >= 0) {
                tab_->pivot(i, static_cast<std::size_t>(e));
                continue;
            }
            // No usable pivot. An exactly dependent row keeps its artificial
            // at zero forever and is safe to carry; a near-dependent row
            // cannot be represented faithfully by this basis, and phase 2
            // could silently relax it, so give up on this run instead.
            double maxEntry = 0.0;
            for (std::size_t j = 0; j < firstArt; ++j)
                if (tab_->colEnabled[j]) maxEntry = std::max(maxEntry, std::fabs(r[j]));
            if (maxEntry > 1e-12 || tab_->row(i)[n] > 1e-9)
                throw NumericalError("solveLp: near-dependent row blocks the phase-1 basis");
        }
        for (std::size_t a = firstArt; a < n; ++a) tab_->colEnabled[a] = 0;
        tab_->setActiveN(firstArt);
        phase2_ = true;
        return true;
    }

    int phase2() { return iterate(tab_->zRow()); }

    std::vector<double> mapBack(const std::vector<double>& u) const {
        const std::size_t n = prob_.numVars();
        std::vector<double> x(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const VarMap& vm = varMap_[j];
            switch (vm.kind) {
                case VarMap::Fixed: x[j] = vm.offset; break;
                case VarMap::Shifted: x[j] = vm.offset + u[vm.col]; break;
                case VarMap::Mirrored: x[j] = vm.offset - u[vm.col]; break;
                case VarMap::Split: x[j] = u[vm.col] - u[vm.colNeg]; break;
            }
        }
        return x;
    }

    // Re-solves B xB = b from the pristine standard-form data. The tableau's
    // rhs column drifts over long degenerate runs; the basis itself stays
    // valid, so one clean solve restores full precision.
    std::optional<std::vector<double>> resolveBasis() const {
        const std::size_t m = tab_->m();
        std::vector<std::vector<double>> B(m, std::vector<double>(m, 0.0));
        std::vector<double> b(m);
        for (std::size_t i = 0; i < m; ++i) b[i] = slackSign_[i] * stdRhs_[i];
        for (std::size_t k = 0; k < m; ++k) {
            const int v = tab_->basis[k];
            if (v < 0) return std::nullopt;
            const std::size_t vv = static_cast<std::size_t>(v);
            if (vv < nStruct_) {
                for (std::size_t i = 0; i < m; ++i) B[i][k] = slackSign_[i] * stdRows_[i][vv];
            } else if (vv < nStruct_ + m) {
                B[vv - nStruct_][k] = slackSign_[vv - nStruct_];
            } else {
                const auto it = artRow_.find(vv);
                if (it == artRow_.end()) return std::nullopt;
                B[it->second][k] = 1.0;
            }
        }
        // Gaussian elimination with partial pivoting.
        for (std::size_t col = 0; col < m; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < m; ++r)
                if (std::fabs(B[r][col]) > std::fabs(B[piv][col])) piv = r;
            if (std::fabs(B[piv][col]) < 1e-12) return std::nullopt;
            std::swap(B[piv], B[col]);
            std::swap(b[piv], b[col]);
            for (std::size_t r = col + 1; r < m; ++r) {
                const double f = B[r][col] / B[col][col];
                if (f == 0.0) continue;
                for (std::size_t c = col; c < m; ++c) B[r][c] -= f * B[col][c];
                b[r] -= f * b[col];
            }
        }
        std::vector<double> xB(m);
        for (std::size_t i = m; i-- > 0;) {
            double s = b[i];
            for (std::size_t c = i + 1; c < m; ++c) s -= B[i][c] * xB[c];
            xB[i] = s / B[i][i];
        }
        std::vector<double> u(tab_->n(), 0.0);
        for (std::size_t i = 0; i < m; ++i) u[tab_->basis[i]] = xB[i];
        return u;
    }

    LpSolution extract() const {
        const std::size_t cols = tab_->n();
        std::vector<double> u(cols, 0.0);
        for (std::size_t i = 0; i < tab_->m(); ++i) {
            const int b = tab_->basis[i];
            if (b >= 0) u[b] = static_cast<const Tableau&>(*tab_).row(i)[cols];
        }
        std::vector<double> x = mapBack(u);
        if (verify(x)) return solution(std::move(x));
        if (const auto clean = resolveBasis()) {
            x = mapBack(*clean);
            if (verify(x)) return solution(std::move(x));
        }
        if (const char* path = std::getenv("RLC_LP_DUMP")) dumpProblem(path);
        throw NumericalError("solveLp: returned point violates a constraint");
    }

    LpSolution solutionFromFixed() const {
        std::vector<double> x(prob_.numVars());
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = varMap_[j].offset;
        for (const auto& c : prob_.constraints) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) lhs += c.row[j] * x[j];
            if (lhs > c.rhs + kFeasTol) return {LpStatus::Infeasible, {}, 0.0};
        }
        return solution(std::move(x));
    }

    bool verify(const std::vector<double>& x) const {
        for (std::size_t ci = 0; ci < prob_.constraints.size(); ++ci) {
            const auto& c = prob_.constraints[ci];
            double lhs = 0.0, mag = std::fabs(c.rhs);
            for (std::size_t j = 0; j < x.size(); ++j) {
                lhs += c.row[j] * x[j];
                mag = std::max(mag, std::fabs(c.row[j] * x[j]));
            }
            if (lhs > c.rhs + 1e-6 * std::max(1.0, mag)) {
                if (std::getenv("RLC_LP_TRACE"))
                    std::fprintf(stderr, "violation row=%zu lhs=%.12g rhs=%.12g mag=%.3g\n", ci, lhs,
                                 c.rhs, mag);
                return false;
            }
        }
        return true;
    }

    LpSolution solution(std::vector<double> x) const {
        double obj = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) obj += prob_.objective[j] * x[j];
        return {LpStatus::Optimal, std::move(x), obj};
    }

    void dumpProblem(const char* path) const {
        std::FILE* f = std::fopen(path, "w");
        if (!f) return;
        const std::size_t n = prob_.numVars();
        std::fprintf(f, "%zu %zu\n", n, prob_.constraints.size());
        for (std::size_t j = 0; j < n; ++j) std::fprintf(f, "%.17g ", prob_.objective[j]);
        std::fprintf(f, "\n");
        for (std::size_t j = 0; j < n; ++j) {
            const VarBounds b = boundsOf(j);
            std::fprintf(f, "%.17g %.17g\n", b.lo, b.hi);
        }
        for (const auto& c : prob_.constraints) {
            for (double a : c.row) std::fprintf(f, "%.17g ", a);
            std::fprintf(f, "%.17g\n", c.rhs);
        }
        std::fclose(f);
    }
};

}  // namespace

LpSolution solveLp(const LpProblem& problem) {
    problem.validate();
    for (std::size_t j = 0; j < problem.bounds.size(); ++j) {
        const auto& b = problem.bounds[j];
        if (b.lo == kInf || b.hi == -kInf) return {LpStatus::Infeasible, {}, 0.0};
    }
    try {
        SimplexSolver s(problem);
        return s.solve();
    } catch (const NumericalError&) {
        SimplexSolver retry(problem, /*perturb=*/true);
        return retry.solve();
    }
}

}  // namespace rlc
