// Python bindings for the core operations: dataset handling, the three
// trainers, the attack generators, and the resilience metric and bound.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rlc/experiments.hpp"
#include "rlc/rng.hpp"

namespace py = pybind11;
using namespace rlc;

namespace {

Dataset datasetFromLists(const std::vector<std::vector<double>>& features,
                         const std::vector<int>& labels) {
    if (features.size() != labels.size())
        throw Error("Dataset: features and labels must have the same length");
    if (features.empty()) throw Error("Dataset: empty");
    Dataset d(features.front().size());
    for (std::size_t i = 0; i < features.size(); ++i) d.add(features[i], labels[i]);
    return d;
}

py::dict reportDict(const TrainReport& rep) {
    py::dict out;
    out["feasible"] = rep.feasible;
    out["solver_objective"] = rep.solverObjective;
    out["nodes_explored"] = rep.nodesExplored;
    out["big_m_valid"] = rep.bigMValid;
    if (rep.feasible) {
        out["weights"] = rep.classifier.weights;
        out["risk_pos"] = rep.trainRisk.riskPos();
        out["risk_neg"] = rep.trainRisk.riskNeg();
        out["max_risk"] = maxRisk(rep.trainRisk);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_rlc, m) {
    m.doc() = "Resilient binary linear classification under training-data attacks";

    py::register_exception<Error>(m, "RlcError");

    py::class_<Dataset>(m, "Dataset")
        .def(py::init(&datasetFromLists), py::arg("features"), py::arg("labels"))
        .def("__len__", &Dataset::size)
        .def_property_readonly("dim", &Dataset::dim)
        .def_property_readonly("n_pos", &Dataset::nPos)
        .def_property_readonly("n_neg", &Dataset::nNeg)
        .def("features", [](const Dataset& d, std::size_t i) { return d[i].features; })
        .def("label", [](const Dataset& d, std::size_t i) { return d[i].label; });

    py::class_<LinearClassifier>(m, "LinearClassifier")
        .def(py::init<std::vector<double>>(), py::arg("weights"))
        .def_readonly("weights", &LinearClassifier::weights)
        .def("score", &LinearClassifier::score)
        .def("predict", [](const LinearClassifier& h, const std::vector<double>& x) {
            return predict(h, x);
        });

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("big_m", &TrainConfig::bigM)
        .def_readwrite("weight_bound", &TrainConfig::weightBound)
        .def_readwrite("regularization", &TrainConfig::regularization)
        .def_readwrite("node_limit", &TrainConfig::nodeLimit);

    py::enum_<TrainerId>(m, "Trainer")
        .value("HINGE", TrainerId::Hinge)
        .value("ZERO_ONE", TrainerId::ZeroOne)
        .value("MAJORITY_ZERO_ONE", TrainerId::MajorityZeroOne);

    py::enum_<Algorithm>(m, "Algorithm")
        .value("CONVEX", Algorithm::Convex)
        .value("ZERO_ONE", Algorithm::ZeroOne)
        .value("MAJORITY_ZERO_ONE", Algorithm::MajorityZeroOne)
        .value("ANY_LINEAR", Algorithm::AnyLinear);

    py::class_<AttackResult>(m, "AttackResult")
        .def_readonly("tampered", &AttackResult::tampered)
        .def_readonly("replaced_pos_indices", &AttackResult::replacedPosIndices)
        .def_readonly("replaced_neg_indices", &AttackResult::replacedNegIndices)
        .def_readonly("seed", &AttackResult::seed)
        .def_readonly("achieved_v", &AttackResult::achievedV);

    m.def("risk_vector01", [](const LinearClassifier& h, const Dataset& d) {
        const RiskVector rv = riskVector01(h, d);
        return py::make_tuple(rv.riskPos(), rv.riskNeg());
    });
    m.def("max_risk", [](const LinearClassifier& h, const Dataset& d) {
        return maxRisk(riskVector01(h, d));
    });

    const auto trainFn = [](TrainerId id) {
        return [id](const Dataset& d, const TrainConfig& cfg) {
            return reportDict(trainWith(id, d, cfg));
        };
    };
    m.def("train_hinge", trainFn(TrainerId::Hinge), py::arg("data"),
          py::arg("config") = TrainConfig{});
    m.def("train_zero_one", trainFn(TrainerId::ZeroOne), py::arg("data"),
          py::arg("config") = TrainConfig{});
    m.def("train_majority_zero_one", trainFn(TrainerId::MajorityZeroOne), py::arg("data"),
          py::arg("config") = TrainConfig{});
    m.def(
        "brute_force_zero_one",
        [](const Dataset& d, bool majority) { return reportDict(bruteForce01(d, {majority})); },
        py::arg("data"), py::arg("majority") = false);

    m.def(
        "is_valid_bfa",
        [](const Dataset& o, const Dataset& t, long alphaPos, long alphaNeg) {
            return isValidBfa(o, t, {alphaPos, alphaNeg});
        },
        py::arg("original"), py::arg("tampered"), py::arg("alpha_pos"), py::arg("alpha_neg"));
    m.def("point_attack", &pointAttack, py::arg("data"), py::arg("sigma"),
          py::arg("target_class"), py::arg("seed"));
    m.def(
        "overlap_attack",
        [](const Dataset& d, long ap, long an, TrainerId trainer, double targetV, long maxIters,
           std::uint64_t seed, const TrainConfig& cfg) {
            return overlapAttack(d, {ap, an}, trainer, targetV, maxIters, seed, cfg);
        },
        py::arg("data"), py::arg("alpha_pos"), py::arg("alpha_neg"), py::arg("trainer"),
        py::arg("target_v") = 1.0, py::arg("max_iters") = 200, py::arg("seed") = 1,
        py::arg("config") = TrainConfig{});
    m.def(
        "shift_beyond_attack",
        [](const Dataset& d, long ap, std::uint64_t seed) {
            return shiftBeyondAttack(d, {ap, 0}, seed);
        },
        py::arg("data"), py::arg("alpha_pos"), py::arg("seed"));

    m.def(
        "empirical_resilience",
        [](TrainerId trainer, const Dataset& clean, const Dataset& tampered,
           const TrainConfig& cfg) { return empiricalResilience(trainer, clean, tampered, cfg); },
        py::arg("trainer"), py::arg("clean"), py::arg("tampered"),
        py::arg("config") = TrainConfig{});
    m.def(
        "resilience_bound",
        [](long nPos, long nNeg, long alphaPos, long alphaNeg) {
            return resilienceBound({nPos, nNeg}, {alphaPos, alphaNeg});
        },
        py::arg("n_pos"), py::arg("n_neg"), py::arg("alpha_pos"), py::arg("alpha_neg"));
    m.def(
        "perfectly_attackable",
        [](Algorithm alg, long nPos, long nNeg, long alphaPos, long alphaNeg) {
            return perfectlyAttackableRegion(alg, {nPos, nNeg}, {alphaPos, alphaNeg})
                .perfectlyAttackable;
        },
        py::arg("algorithm"), py::arg("n_pos"), py::arg("n_neg"), py::arg("alpha_pos"),
        py::arg("alpha_neg"));

    m.def(
        "generate_gaussians",
        [](const std::vector<double>& meanPos, const std::vector<double>& meanNeg, double sigma,
           long nPos, long nNeg, std::uint64_t seed) {
            return generateGaussians(
                GaussianSpec::isotropic(meanPos, meanNeg, sigma, nPos, nNeg, seed));
        },
        py::arg("mean_pos"), py::arg("mean_neg"), py::arg("sigma"), py::arg("n_pos"),
        py::arg("n_neg"), py::arg("seed"));
    m.def("make_surrogate", &makeSurrogate, py::arg("n_pos") = 37, py::arg("n_neg") = 49,
          py::arg("planted") = 2, py::arg("seed") = 5);
    m.def(
        "load_csv",
        [](const std::string& path, std::size_t labelColumn, const std::string& labelValue,
           bool matchIsPositive, std::size_t featureBegin, std::size_t featureEnd,
           bool hasHeader) {
            CsvOptions opt{labelColumn, labelValue, matchIsPositive, featureBegin, featureEnd,
                           hasHeader};
            CsvLoadReport rep = loadCsv(path, opt);
            return py::make_tuple(std::move(rep.data), rep.droppedRows);
        },
        py::arg("path"), py::arg("label_column"), py::arg("label_value"),
        py::arg("match_is_positive"), py::arg("feature_begin"), py::arg("feature_end"),
        py::arg("has_header") = false);
    m.def("subsample", &subsample, py::arg("data"), py::arg("fraction"), py::arg("seed"));
}
