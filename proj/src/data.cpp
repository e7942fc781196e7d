#include "rlc/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rlc/rng.hpp"

namespace rlc {

namespace {

// Dense lower-triangular Cholesky factor; throws if the matrix is not
// positive-definite.
std::vector<std::vector<double>> cholesky(const std::vector<std::vector<double>>& a) {
    const std::size_t p = a.size();
    for (const auto& row : a)
        if (row.size() != p) throw Error("generateGaussians: covariance is not square");
    std::vector<std::vector<double>> L(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            if (i == j) {
                if (s <= 0.0) throw Error("generateGaussians: covariance not positive-definite");
                L[i][j] = std::sqrt(s);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    return L;
}

std::vector<double> drawPoint(Rng& rng, const std::vector<double>& mean,
                              const std::vector<std::vector<double>>& L) {
    const std::size_t p = mean.size();
    std::vector<double> z(p);
    for (double& v : z) v = rng.normal();
    std::vector<double> x(mean);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = 0; k <= i; ++k) x[i] += L[i][k] * z[k];
    return x;
}

bool isMissing(const std::string& tok) { return tok.empty() || tok == "?"; }

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

GaussianSpec GaussianSpec::isotropic(std::vector<double> meanPos, std::vector<double> meanNeg,
                                     double sigma, long nPos, long nNeg, std::uint64_t seed) {
    if (sigma <= 0.0) throw Error("GaussianSpec: sigma must be positive");
    const std::size_t p = meanPos.size();
    GaussianSpec spec;
    spec.meanPos = std::move(meanPos);
    spec.meanNeg = std::move(meanNeg);
    spec.covPos.assign(p, std::vector<double>(p, 0.0));
    for (std::size_t j = 0; j < p; ++j) spec.covPos[j][j] = sigma * sigma;
    spec.covNeg = spec.covPos;
    spec.nPos = nPos;
    spec.nNeg = nNeg;
    spec.seed = seed;
    return spec;
}

Dataset generateGaussians(const GaussianSpec& spec) {
    if (spec.nPos < 1 || spec.nNeg < 1) throw Error("generateGaussians: both classes must be non-empty");
    if (spec.meanPos.size() != spec.meanNeg.size())
        throw Error("generateGaussians: mean dimensions disagree");
    const auto Lp = cholesky(spec.covPos);
    const auto Ln = cholesky(spec.covNeg);
    if (Lp.size() != spec.meanPos.size() || Ln.size() != spec.meanNeg.size())
        throw Error("generateGaussians: covariance dimension disagrees with mean");

    Rng rng(spec.seed);
    Dataset out(spec.meanPos.size());
    for (long i = 0; i < spec.nPos; ++i) out.add(drawPoint(rng, spec.meanPos, Lp), +1);
    for (long i = 0; i < spec.nNeg; ++i) out.add(drawPoint(rng, spec.meanNeg, Ln), -1);
    return out;
}

CsvLoadReport loadCsv(const std::string& path, const CsvOptions& opt) {
    if (opt.featureEnd < opt.featureBegin) throw Error("loadCsv: empty feature column range");
    std::ifstream in(path);
    if (!in) throw Error("loadCsv: cannot open " + path);

    CsvLoadReport rep;
    rep.data = Dataset(opt.featureEnd - opt.featureBegin + 1);
    std::string line;
    std::size_t lineNo = 0;
    bool skipHeader = opt.hasHeader;
    while (std::getline(in, line)) {
        ++lineNo;
        if (skipHeader) {
            skipHeader = false;
            continue;
        }
        if (trimmed(line).empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) cells.push_back(trimmed(tok));
        if (!line.empty() && line.back() == ',') cells.push_back("");

        const std::size_t needed = std::max(opt.labelColumn, opt.featureEnd);
        if (cells.size() <= needed)
            throw Error("loadCsv: row " + std::to_string(lineNo) + " has too few columns");

        bool missing = isMissing(cells[opt.labelColumn]);
        for (std::size_t c = opt.featureBegin; c <= opt.featureEnd && !missing; ++c)
            missing = isMissing(cells[c]);
        if (missing) {
            ++rep.droppedRows;
            continue;
        }

        std::vector<double> feats;
        feats.reserve(opt.featureEnd - opt.featureBegin + 1);
        for (std::size_t c = opt.featureBegin; c <= opt.featureEnd; ++c) {
            const std::string& cell = cells[c];
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw Error("loadCsv: malformed numeric cell '" + cell + "' at row " +
                            std::to_string(lineNo));
            feats.push_back(v);
        }
        const bool match = cells[opt.labelColumn] == opt.labelValue;
        const int label = (match == opt.matchIsPositive) ? +1 : -1;
        rep.data.add(std::move(feats), label);
    }
    if (rep.data.size() == 0) throw Error("loadCsv: no usable rows in " + path);
    return rep;
}

void writeCsv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("writeCsv: cannot open " + path);
    char buf[64];
    for (const auto& p : data.points()) {
        for (double v : p.features) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << ',';
        }
        out << (p.label > 0 ? "1" : "-1") << '\n';
    }
    if (!out) throw Error("writeCsv: write failed for " + path);
}

Dataset subsampleCounts(const Dataset& data, std::size_t keepPos, std::size_t keepNeg,
                        std::uint64_t seed) {
    if (keepPos == 0 || keepNeg == 0) throw Error("subsample: a class would become empty");
    if (keepPos > data.nPos() || keepNeg > data.nNeg())
        throw Error("subsample: target count exceeds class size");
    Rng rng(seed);
    const auto pos = data.posIndices();
    const auto neg = data.negIndices();
    std::vector<std::size_t> keep;
    for (std::size_t s : rng.sampleWithoutReplacement(pos.size(), keepPos)) keep.push_back(pos[s]);
    for (std::size_t s : rng.sampleWithoutReplacement(neg.size(), keepNeg)) keep.push_back(neg[s]);
    std::sort(keep.begin(), keep.end());
    Dataset out(data.dim());
    for (std::size_t i : keep) out.add(data[i]);
    return out;
}

Dataset subsample(const Dataset& data, double fraction, std::uint64_t seed) {
    if (fraction <= 0.0 || fraction > 1.0) throw Error("subsample: fraction must be in (0,1]");
    const auto target = [&](std::size_t n) {
        return static_cast<std::size_t>(std::ceil(fraction * double(n) - 1e-9));
    };
    return subsampleCounts(data, target(data.nPos()), target(data.nNeg()), seed);
}

}  // namespace rlc
