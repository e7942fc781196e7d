#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlc {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A feature vector with a binary label (+1 or -1).
struct LabeledPoint {
    std::vector<double> features;
    int label = +1;  // +1 or -1

    LabeledPoint() = default;
    LabeledPoint(std::vector<double> f, int y) : features(std::move(f)), label(y) {}
};

/// An ordered multiset of labeled points sharing one feature dimension.
/// Duplicates are allowed; order is preserved so attack results can refer
/// to points by index.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::size_t dim) : dim_(dim) {}
    Dataset(std::size_t dim, std::vector<LabeledPoint> points);

    void add(LabeledPoint p);
    void add(std::vector<double> features, int label) { add(LabeledPoint(std::move(features), label)); }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    std::size_t nPos() const { return n_pos_; }
    std::size_t nNeg() const { return points_.size() - n_pos_; }

    const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<LabeledPoint>& points() const { return points_; }

    /// Replaces the feature vector at index i, keeping the label.
    void replaceFeatures(std::size_t i, std::vector<double> features);

    /// Indices of positive / negative points, in dataset order.
    std::vector<std::size_t> posIndices() const;
    std::vector<std::size_t> negIndices() const;

    /// Throws unless both classes are non-empty (trainer precondition).
    void requireBothClasses() const;

private:
    std::size_t dim_ = 0;
    std::vector<LabeledPoint> points_;
    std::size_t n_pos_ = 0;
};

/// Affine linear classifier in homogeneous form: weights has length p+1 and
/// the last component is the bias. Prediction is sign(w . [x;1]) with
/// sign(0) = -1.
struct LinearClassifier {
    std::vector<double> weights;

    LinearClassifier() = default;
    explicit LinearClassifier(std::vector<double> w) : weights(std::move(w)) {}

    std::size_t dim() const { return weights.empty() ? 0 : weights.size() - 1; }

    /// Raw affine score w . [x;1].
    double score(const std::vector<double>& x) const;
};

int predict(const LinearClassifier& h, const std::vector<double>& x);

/// Per-class tamper limits alpha = (alphaPos, alphaNeg).
struct AttackBudget {
    long alphaPos = 0;
    long alphaNeg = 0;

    void requireValidFor(std::size_t nPos, std::size_t nNeg) const;
};

/// Per-class 0-1 empirical risks kept as exact counts so equality tests do
/// not accumulate rounding error.
struct RiskVector {
    long misPos = 0;
    long nPos = 0;
    long misNeg = 0;
    long nNeg = 0;

    double riskPos() const { return nPos == 0 ? 0.0 : double(misPos) / double(nPos); }
    double riskNeg() const { return nNeg == 0 ? 0.0 : double(misNeg) / double(nNeg); }
};

/// Per-class 0-1 risks of h over data. Requires both classes non-empty.
RiskVector riskVector01(const LinearClassifier& h, const Dataset& data);

/// Infinity norm of the risk vector (equal class weights).
double maxRisk(const RiskVector& rv);

}  // namespace rlc
