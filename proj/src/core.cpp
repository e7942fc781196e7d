#include "rlc/core.hpp"

#include <cmath>

namespace rlc {

namespace {

void requireFinite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) throw Error(std::string(what) + ": non-finite component");
    }
}

}  // namespace

Dataset::Dataset(std::size_t dim, std::vector<LabeledPoint> points) : dim_(dim) {
    for (auto& p : points) add(std::move(p));
}

void Dataset::add(LabeledPoint p) {
    if (p.label != +1 && p.label != -1) throw Error("Dataset: label must be +1 or -1");
    if (points_.empty() && dim_ == 0) dim_ = p.features.size();
    if (p.features.size() != dim_) throw Error("Dataset: feature dimension mismatch");
    requireFinite(p.features, "Dataset");
    if (p.label == +1) ++n_pos_;
    points_.push_back(std::move(p));
}

void Dataset::replaceFeatures(std::size_t i, std::vector<double> features) {
    if (i >= points_.size()) throw Error("Dataset: index out of range");
    if (features.size() != dim_) throw Error("Dataset: feature dimension mismatch");
    requireFinite(features, "Dataset");
    points_[i].features = std::move(features);
}

std::vector<std::size_t> Dataset::posIndices() const {
    std::vector<std::size_t> out;
    out.reserve(n_pos_);
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].label == +1) out.push_back(i);
    return out;
}

std::vector<std::size_t> Dataset::negIndices() const {
    std::vector<std::size_t> out;
    out.reserve(nNeg());
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].label == -1) out.push_back(i);
    return out;
}

void Dataset::requireBothClasses() const {
    if (nPos() == 0 || nNeg() == 0) throw Error("Dataset: both classes must be non-empty");
}

double LinearClassifier::score(const std::vector<double>& x) const {
    if (weights.size() != x.size() + 1) throw Error("LinearClassifier: dimension mismatch");
    double s = weights.back();
    for (std::size_t j = 0; j < x.size(); ++j) s += weights[j] * x[j];
    return s;
}

int predict(const LinearClassifier& h, const std::vector<double>& x) {
    return h.score(x) > 0.0 ? +1 : -1;
}

void AttackBudget::requireValidFor(std::size_t nPos, std::size_t nNeg) const {
    if (alphaPos < 0 || alphaNeg < 0) throw Error("AttackBudget: negative budget");
    if (alphaPos > static_cast<long>(nPos) || alphaNeg > static_cast<long>(nNeg))
        throw Error("AttackBudget: budget exceeds class size");
}

RiskVector riskVector01(const LinearClassifier& h, const Dataset& data) {
    data.requireBothClasses();
    RiskVector rv;
    rv.nPos = static_cast<long>(data.nPos());
    rv.nNeg = static_cast<long>(data.nNeg());
    for (const auto& p : data.points()) {
        int pred = predict(h, p.features);
        if (pred != p.label) {
            if (p.label == +1) ++rv.misPos;
            else ++rv.misNeg;
        }
    }
    return rv;
}

double maxRisk(const RiskVector& rv) {
    return std::max(rv.riskPos(), rv.riskNeg());
}

}  // namespace rlc
