// Command-line front end: train a single classifier, reproduce the resilience
// table, the bound curve, or the attackable-region maps from a JSON config.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "rlc/experiments.hpp"
#include "rlc/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rlc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInfeasible = 4;

struct ConfigError : Error {
    using Error::Error;
};

json loadConfig(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
}

TrainConfig trainConfigFrom(const json& cfg) {
    TrainConfig tc;
    if (!cfg.contains("train")) return tc;
    const json& t = cfg.at("train");
    tc.bigM = t.value("big_m", tc.bigM);
    tc.weightBound = t.value("weight_bound", tc.weightBound);
    tc.regularization = t.value("regularization", tc.regularization);
    tc.nodeLimit = t.value("node_limit", tc.nodeLimit);
    return tc;
}

std::uint64_t seedFrom(const json& cfg, std::uint64_t cliSeed, bool seedSet) {
    if (seedSet) return cliSeed;
    return cfg.value("seed", std::uint64_t{1});
}

// Dataset sources: two Gaussians, the bundled synthetic surrogate, or a CSV
// file with the documented preprocessing (1-based inclusive column indices).
Dataset datasetFrom(const json& cfg, std::uint64_t seed) {
    if (!cfg.contains("dataset")) throw ConfigError("config is missing \"dataset\"");
    const json& d = cfg.at("dataset");
    const std::string type = d.value("type", "");
    if (type == "gaussian") {
        const auto meanPos = d.at("mean_pos").get<std::vector<double>>();
        const auto meanNeg = d.at("mean_neg").get<std::vector<double>>();
        const double sigma = d.value("sigma", 1.0);
        GaussianSpec spec = GaussianSpec::isotropic(meanPos, meanNeg, sigma, d.at("n_pos"),
                                                    d.at("n_neg"), d.value("seed", seed));
        if (d.contains("cov_pos")) spec.covPos = d.at("cov_pos").get<std::vector<std::vector<double>>>();
        if (d.contains("cov_neg")) spec.covNeg = d.at("cov_neg").get<std::vector<std::vector<double>>>();
        return generateGaussians(spec);
    }
    if (type == "surrogate") {
        return makeSurrogate(d.value("n_pos", 37L), d.value("n_neg", 49L), d.value("planted", 2),
                             d.value("seed", seed));
    }
    if (type == "csv") {
        CsvOptions opt;
        const long labelCol = d.value("label_column", 1L);
        const long featBegin = d.value("feature_begin", 1L);
        const long featEnd = d.value("feature_end", 1L);
        if (labelCol < 1 || featBegin < 1 || featEnd < featBegin)
            throw ConfigError("csv column indices are 1-based and inclusive");
        opt.labelColumn = static_cast<std::size_t>(labelCol - 1);
        opt.featureBegin = static_cast<std::size_t>(featBegin - 1);
        opt.featureEnd = static_cast<std::size_t>(featEnd - 1);
        opt.hasHeader = d.value("has_header", false);
        if (d.contains("negative_value")) {
            opt.labelValue = d.at("negative_value").get<std::string>();
            opt.matchIsPositive = false;
        } else {
            opt.labelValue = d.value("positive_value", std::string("1"));
            opt.matchIsPositive = true;
        }
        CsvLoadReport rep = loadCsv(d.at("path").get<std::string>(), opt);
        if (rep.droppedRows > 0)
            std::cerr << "note: dropped " << rep.droppedRows << " rows with missing values\n";
        Dataset data = std::move(rep.data);
        if (d.contains("subsample_fraction"))
            data = subsample(data, d.at("subsample_fraction").get<double>(),
                             d.value("subsample_seed", seed));
        if (d.contains("subsample_pos"))
            data = subsampleCounts(data, d.at("subsample_pos").get<std::size_t>(),
                                   d.at("subsample_neg").get<std::size_t>(),
                                   d.value("subsample_seed", seed));
        return data;
    }
    throw ConfigError("unknown dataset type \"" + type + "\"");
}

TrainerId trainerFrom(const json& v) {
    const auto name = v.get<std::string>();
    const auto id = trainerFromName(name);
    if (!id) throw ConfigError("unknown trainer \"" + name + "\"");
    return *id;
}

std::vector<TrainerId> trainersFrom(const json& cfg) {
    std::vector<TrainerId> out;
    if (cfg.contains("trainers"))
        for (const auto& t : cfg.at("trainers")) out.push_back(trainerFrom(t));
    else
        out = {TrainerId::Hinge, TrainerId::ZeroOne, TrainerId::MajorityZeroOne};
    return out;
}

AttackSpec attackFrom(const json& a) {
    AttackSpec spec;
    const std::string kind = a.value("type", "none");
    if (kind == "none") spec.kind = AttackKind::None;
    else if (kind == "point") spec.kind = AttackKind::Point;
    else if (kind == "overlap") spec.kind = AttackKind::Overlap;
    else if (kind == "shift") spec.kind = AttackKind::Shift;
    else throw ConfigError("unknown attack type \"" + kind + "\"");
    spec.budget.alphaPos = a.value("alpha_pos", 0L);
    spec.budget.alphaNeg = a.value("alpha_neg", 0L);
    spec.sigma = a.value("sigma", 1000.0);
    spec.targetClass = a.value("target_class", -1);
    if (a.contains("tuned_against")) spec.tunedAgainst = trainerFrom(a.at("tuned_against"));
    spec.targetV = a.value("target_v", 1.0);
    spec.maxIters = a.value("max_iters", 200L);
    return spec;
}

json reportToJson(const TrainReport& rep) {
    json j;
    j["feasible"] = rep.feasible;
    j["solver_objective"] = rep.solverObjective;
    j["nodes_explored"] = rep.nodesExplored;
    j["big_m_valid"] = rep.bigMValid;
    if (rep.feasible) {
        j["weights"] = rep.classifier.weights;
        j["train_risk"] = {{"mis_pos", rep.trainRisk.misPos},
                           {"n_pos", rep.trainRisk.nPos},
                           {"mis_neg", rep.trainRisk.misNeg},
                           {"n_neg", rep.trainRisk.nNeg},
                           {"risk_pos", rep.trainRisk.riskPos()},
                           {"risk_neg", rep.trainRisk.riskNeg()},
                           {"max_risk", maxRisk(rep.trainRisk)}};
    }
    return j;
}

void writeText(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file " + path.string());
    out << text;
}

int cmdTrain(const json& cfg, const fs::path& outDir, std::uint64_t seed) {
    const Dataset data = datasetFrom(cfg, seed);
    if (!cfg.contains("trainer")) throw ConfigError("train: config needs a single \"trainer\"");
    const TrainerId id = trainerFrom(cfg.at("trainer"));
    const TrainReport rep = trainWith(id, data, trainConfigFrom(cfg));
    json j;
    j["trainer"] = trainerName(id);
    j["seed"] = seed;
    j["n_pos"] = data.nPos();
    j["n_neg"] = data.nNeg();
    j["report"] = reportToJson(rep);
    writeText(outDir / "model.json", j.dump(2) + "\n");
    std::cout << "wrote " << (outDir / "model.json").string() << "\n";
    return rep.feasible ? kExitOk : kExitInfeasible;
}

int cmdEvaluate(const json& cfg, const fs::path& outDir, std::uint64_t seed) {
    const Dataset clean = datasetFrom(cfg, seed);
    const auto trainers = trainersFrom(cfg);
    const TrainConfig tc = trainConfigFrom(cfg);
    if (!cfg.contains("attacks")) throw ConfigError("evaluate: config needs an \"attacks\" list");

    std::vector<EvaluateRow> rows;
    std::size_t idx = 0;
    for (const auto& a : cfg.at("attacks")) {
        const AttackSpec spec = attackFrom(a);
        rows.push_back(evaluateRow(clean, spec, trainers, tc, deriveSeed(seed, idx)));
        ++idx;
    }
    writeEvaluateCsv(rows, (outDir / "evaluate.csv").string());

    json j;
    j["seed"] = seed;
    j["n_pos"] = clean.nPos();
    j["n_neg"] = clean.nNeg();
    j["rows"] = json::array();
    for (const auto& row : rows) {
        json r;
        r["attack"] = attackKindName(row.spec.kind);
        r["alpha_pos"] = row.spec.budget.alphaPos;
        r["alpha_neg"] = row.spec.budget.alphaNeg;
        r["achieved_v"] = row.attack.achievedV;
        r["attack_seed"] = row.attack.seed;
        r["cells"] = json::array();
        for (const auto& cell : row.cells) {
            json c;
            c["trainer"] = trainerName(cell.trainer);
            c["ok"] = cell.ok;
            if (cell.ok) c["resilience"] = cell.v;
            else c["error"] = cell.error;
            r["cells"].push_back(c);
        }
        j["rows"].push_back(r);
    }
    writeText(outDir / "evaluate.json", j.dump(2) + "\n");
    std::cout << "wrote " << (outDir / "evaluate.csv").string() << " and evaluate.json\n";
    return kExitOk;
}

int cmdBoundCurve(const json& cfg, const fs::path& outDir, std::uint64_t seed, unsigned jobs) {
    BoundCurveSpec spec;
    if (cfg.contains("curve")) {
        const json& c = cfg.at("curve");
        spec.nPos = c.value("n_pos", spec.nPos);
        spec.nNeg = c.value("n_neg", spec.nNeg);
        spec.separation = c.value("separation", spec.separation);
        spec.sigma = c.value("sigma", spec.sigma);
        spec.alphaMax = c.value("alpha_max", spec.alphaMax);
        spec.nDatasets = c.value("n_datasets", spec.nDatasets);
        spec.nAttacksPerDataset = c.value("n_attacks", spec.nAttacksPerDataset);
    }
    if (spec.nPos != spec.nNeg) throw ConfigError("bound-curve: protocol assumes n_pos == n_neg");
    spec.train = trainConfigFrom(cfg);
    spec.seed = seed;
    spec.jobs = jobs;
    const auto curve = boundCurve(spec);
    writeBoundCurveCsv(curve, (outDir / "bound_curve.csv").string());
    std::cout << "wrote " << (outDir / "bound_curve.csv").string() << "\n";
    return kExitOk;
}

int cmdRegionMap(const json& cfg, const fs::path& outDir) {
    ClassCounts counts{75, 25};
    std::size_t resolution = 101;
    if (cfg.contains("region")) {
        const json& r = cfg.at("region");
        counts.nPos = r.value("n_pos", counts.nPos);
        counts.nNeg = r.value("n_neg", counts.nNeg);
        resolution = r.value("resolution", resolution);
    }
    const std::pair<Algorithm, const char*> maps[] = {
        {Algorithm::Convex, "region_convex.csv"},
        {Algorithm::ZeroOne, "region_zero_one.csv"},
        {Algorithm::MajorityZeroOne, "region_majority.csv"},
    };
    for (const auto& [alg, name] : maps)
        writeRegionCsv(regionGrid(alg, counts, resolution), (outDir / name).string());
    std::cout << "wrote region maps to " << outDir.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resilient linear classification under training-data attacks"};
    app.require_subcommand(1);

    std::string configPath;
    std::string outDir = "out";
    std::uint64_t seed = 1;
    bool seedSet = false;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--config", configPath, "JSON config file")->required();
        sub->add_option("--out", outDir, "output directory");
        sub->add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
            seedSet = true;
        });
        sub->add_option("--jobs", jobs, "worker threads for trial fan-out");
    };

    CLI::App* train = app.add_subcommand("train", "train one classifier and write model.json");
    CLI::App* evaluate = app.add_subcommand("evaluate", "resilience table over configured attacks");
    CLI::App* curve = app.add_subcommand("bound-curve", "bound vs empirical resilience sweep");
    CLI::App* region = app.add_subcommand("region-map", "attackable-region grids per algorithm");
    for (CLI::App* sub : {train, evaluate, curve, region}) addCommon(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        const json cfg = loadConfig(configPath);
        const fs::path out(outDir);
        std::error_code ec;
        fs::create_directories(out, ec);
        const std::uint64_t masterSeed = seedFrom(cfg, seed, seedSet);

        if (train->parsed()) return cmdTrain(cfg, out, masterSeed);
        if (evaluate->parsed()) return cmdEvaluate(cfg, out, masterSeed);
        if (curve->parsed()) return cmdBoundCurve(cfg, out, masterSeed, jobs);
        if (region->parsed()) return cmdRegionMap(cfg, out);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}
