#pragma once

#include <cstdint>
#include <string>

#include "rlc/core.hpp"

namespace rlc {

/// Two-Gaussian synthetic dataset specification.
struct GaussianSpec {
    std::vector<double> meanPos;
    std::vector<double> meanNeg;
    std::vector<std::vector<double>> covPos;  // symmetric positive-definite
    std::vector<std::vector<double>> covNeg;
    long nPos = 0;
    long nNeg = 0;
    std::uint64_t seed = 0;

    /// Convenience: isotropic classes at the two means.
    static GaussianSpec isotropic(std::vector<double> meanPos, std::vector<double> meanNeg,
                                  double sigma, long nPos, long nNeg, std::uint64_t seed);
};

/// Draws nPos positive then nNeg negative points through the Cholesky factor
/// of each covariance. Deterministic per seed.
Dataset generateGaussians(const GaussianSpec& spec);

struct CsvOptions {
    std::size_t labelColumn = 0;       // 0-based
    std::string labelValue = "1";      // token compared against the label cell
    bool matchIsPositive = true;       // false maps matching rows to -1 and the rest to +1
    std::size_t featureBegin = 0;      // 0-based, inclusive
    std::size_t featureEnd = 0;        // 0-based, inclusive
    bool hasHeader = false;
};

struct CsvLoadReport {
    Dataset data;
    std::size_t droppedRows = 0;  // rows with a missing value in a selected column
};

/// Comma-separated, '.' decimal separator; missing tokens "?" and "" cause the
/// row to be dropped (and counted). Any other non-numeric feature cell is an
/// error.
CsvLoadReport loadCsv(const std::string& path, const CsvOptions& opt);

/// Writes features then the label per row, with 17 significant digits so a
/// load/write cycle preserves values exactly.
void writeCsv(const Dataset& data, const std::string& path);

/// Per-class sampling without replacement keeping ceil(fraction * classSize)
/// points of each class; original order is preserved. Deterministic per seed.
Dataset subsample(const Dataset& data, double fraction, std::uint64_t seed);

/// Same, with explicit per-class target counts.
Dataset subsampleCounts(const Dataset& data, std::size_t keepPos, std::size_t keepNeg,
                        std::uint64_t seed);

}  // namespace rlc
