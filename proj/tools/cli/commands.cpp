#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "config.hpp"
#include "nosig/classify.hpp"
#include "nosig/cloning.hpp"
#include "nosig/errors.hpp"
#include "report.hpp"

namespace nosig::cli {

using nlohmann::json;

namespace {

// Wraps a command body with the exit-code policy: config errors -> 2,
// library contract/domain/structure errors -> 3.
int guarded(std::ostream &err, const std::function<int()> &body) {
    try {
        return body();
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::logic_error &e) {
        err << "contract violation: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    }
}

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(const json &doc, const std::optional<std::string> &out_path, std::ostream &out) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path) {
        std::ofstream f(*out_path);
        if (!f) {
            throw ConfigError("--out", "cannot write '" + *out_path + "'");
        }
        f << text;
    } else {
        out << text;
    }
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// ----------------------------------------------------------------------------
// paper-examples

struct Check {
    std::string what;
    double value;
    bool ok;
};

struct ExampleRow {
    std::string label;
    std::string map;
    std::string state;
    std::string region;
    double distance = 0.0;
    std::optional<double> fidelity;
    Verdict verdict = Verdict::NoSignal;
    std::vector<Check> checks;
};

Check near(std::string what, double value, double expected, double tol) {
    return {std::move(what) + " = " + fmt12(expected) + " +/- " + fmt12(tol), value,
            std::abs(value - expected) <= tol};
}
Check below(std::string what, double value, double bound) {
    return {std::move(what) + " < " + fmt12(bound), value, value < bound};
}
Check above(std::string what, double value, double bound) {
    return {std::move(what) + " > " + fmt12(bound), value, value > bound};
}
Check flag(std::string what, bool ok) { return {std::move(what), ok ? 1.0 : 0.0, ok}; }

constexpr std::uint64_t kExampleSeed = 1;
constexpr int kScanPairs = 100;

ExampleRow scan_row(std::string label, const LocalMap &map, const BipartiteState &shared, std::string state,
                    double threshold) {
    ExampleRow row;
    row.label = std::move(label);
    row.map = describe(map);
    row.state = std::move(state);
    const MapClassification cls = classify_map(map);
    row.region = to_string(cls.region);
    row.distance = scan_bases(shared, map, kScanPairs, kExampleSeed).max_distance;
    row.verdict = row.distance > threshold ? Verdict::Signals : Verdict::NoSignal;
    return row;
}

double z_vs_x_distance(const LocalMap &map, const BipartiteState &shared) {
    return no_signalling_distance({shared, kAxisZ, kAxisX, map, std::nullopt, std::nullopt});
}

std::vector<ExampleRow> paper_rows(double threshold) {
    std::vector<ExampleRow> rows;
    const BipartiteState s = singlet();
    const BipartiteState partial = partially_entangled(std::numbers::pi / 6.0);

    // Example 1: linear, non-positive cloner that cannot signal.
    {
        const LocalMap map = BlochAffineCloneMap(0.7, 1.0 / 3.0);
        ExampleRow row = scan_row("1 linear non-positive", map, s, "singlet", threshold);
        const MapClassification cls = classify_map(map);
        const FidelityReport fid = average_fidelity(map, 100000, kExampleSeed);
        row.fidelity = fid.average_fidelity;
        row.checks.push_back(flag("region LINEAR_NONPOSITIVE_NOSIGNAL", cls.region == MapRegion::LinearNonpositiveNoSignal));
        row.checks.push_back(below("min output eigenvalue", cls.min_output_eigenvalue, -1e-3));
        row.checks.push_back(below("max distance over 100 basis pairs", row.distance, 1e-10));
        row.checks.push_back(near("average clone fidelity", fid.average_fidelity, 0.85, 1e-3));
        row.checks.push_back(flag("fidelity exceeds 5/6", fid.exceeds_optimal_bound));
        rows.push_back(std::move(row));
    }
    {
        const LocalMap map = BlochAffineCloneMap(2.0 / 3.0, 1.0 / 3.0);
        ExampleRow row = scan_row("1 lawful boundary", map, s, "singlet", threshold);
        const FidelityReport fid = average_fidelity(map, 10000, kExampleSeed);
        row.fidelity = fid.average_fidelity;
        row.checks.push_back(flag("region QM", row.region == "QM"));
        row.checks.push_back(near("average clone fidelity", fid.average_fidelity, 5.0 / 6.0, 1e-9));
        row.checks.push_back(below("max distance over 100 basis pairs", row.distance, 1e-10));
        rows.push_back(std::move(row));
    }

    // Example 2: non-linear Bloch cloner, odd and even component functions.
    const LocalMap cube = BlochNonlinearCloneMap::isotropic(ComponentFunction::power(3), 0.0);
    const LocalMap square = BlochNonlinearCloneMap::isotropic(ComponentFunction::square(), 0.0);
    {
        ExampleRow row = scan_row("2 odd f, maximal", cube, s, "singlet", threshold);
        row.checks.push_back(flag("region NONLINEAR", row.region == "NONLINEAR"));
        row.checks.push_back(below("max distance over 100 basis pairs", row.distance, 1e-10));
        rows.push_back(std::move(row));
    }
    {
        ExampleRow row = scan_row("2 odd f, partial", cube, partial, "theta=pi/6", threshold);
        row.checks.push_back(above("max distance over 100 basis pairs", row.distance, 1e-3));
        row.checks.push_back(near("z vs x distance", z_vs_x_distance(cube, partial), 0.1875, 1e-9));
        rows.push_back(std::move(row));
    }
    {
        ExampleRow row = scan_row("2 even f, maximal", square, s, "singlet", threshold);
        row.checks.push_back(flag("region NONLINEAR", row.region == "NONLINEAR"));
        row.checks.push_back(above("max distance over 100 basis pairs", row.distance, 1e-3));
        row.checks.push_back(near("z vs x distance", z_vs_x_distance(square, s), 1.0 / std::numbers::sqrt2, 1e-9));
        rows.push_back(std::move(row));
    }

    // Example 3: pure-branch cloners decoded with the parity POVM.
    struct Ex3 {
        double f;
        BranchVariant variant;
    };
    for (const Ex3 ex : {Ex3{1.0, BranchVariant::Mixture}, Ex3{0.3, BranchVariant::Mixture},
                         Ex3{0.0, BranchVariant::Mixture}, Ex3{1.0, BranchVariant::Factorized},
                         Ex3{0.3, BranchVariant::Factorized}}) {
        const LocalMap map = PureBranchMap(2, ex.f, ex.variant);
        const SignallingExperiment exp{s, kAxisZ, kAxisX, map, parity_povm(), std::nullopt};
        const SignallingReport rep = run_experiment(exp, threshold);
        ExampleRow row;
        row.label = std::string(ex.variant == BranchVariant::Mixture ? "3 mixture" : "3 factorized") + " F=" + fmt12(ex.f);
        row.map = describe(map);
        row.state = "singlet";
        row.region = to_string(classify_map(map).region);
        row.distance = rep.distance;
        row.fidelity = average_fidelity(map, 2000, kExampleSeed).average_fidelity;
        row.verdict = rep.verdict;
        const auto &p = rep.conditional_probs->rows;
        // Outcome 0 is E0 (odd parity); message 0 is the z basis (psi), 1 the x basis (phi).
        const double p0_psi = ex.variant == BranchVariant::Mixture ? 0.0 : 2.0 * ex.f * (1.0 - ex.f);
        row.checks.push_back(flag("region NONLINEAR", row.region == "NONLINEAR"));
        row.checks.push_back(near("p(0|psi)", p[0][0], p0_psi, 1e-12));
        row.checks.push_back(near("p(1|psi)", p[0][1], 1.0 - p0_psi, 1e-12));
        row.checks.push_back(near("p(0|phi)", p[1][0], 0.5, 1e-12));
        row.checks.push_back(near("p(1|phi)", p[1][1], 0.5, 1e-12));
        if (ex.variant == BranchVariant::Mixture) {
            row.checks.push_back(near("mutual information (bits)", rep.mutual_info_bits, binary_entropy(0.25) - 0.5, 1e-9));
            row.checks.push_back(near("Helstrom success", rep.helstrom_success, 0.75, 1e-12));
        }
        row.checks.push_back(above("z vs x distance", rep.distance, 1e-3));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

int cmd_paper_examples(std::ostream &out, std::ostream &err, const GlobalOptions &opts, bool as_json) {
    return guarded(err, [&] {
        const std::vector<ExampleRow> rows = paper_rows(opts.tolerance);
        bool all_ok = true;
        json doc;
        doc["command"] = "paper-examples";
        doc["seed"] = kExampleSeed;
        doc["threshold"] = sig12(opts.tolerance);
        doc["rows"] = json::array();

        std::ostringstream table;
        char line[512];
        std::snprintf(line, sizeof line, "%-22s %-44s %-11s %-28s %-20s %-20s %s\n", "example", "map", "state",
                      "region", "distance", "fidelity", "verdict");
        table << line;
        for (const auto &row : rows) {
            std::snprintf(line, sizeof line, "%-22s %-44s %-11s %-28s %-20s %-20s %s\n", row.label.c_str(),
                          row.map.c_str(), row.state.c_str(), row.region.c_str(), fmt12(row.distance).c_str(),
                          row.fidelity ? fmt12(*row.fidelity).c_str() : "-", to_string(row.verdict).c_str());
            table << line;
        }
        table << "\nchecks:\n";
        for (const auto &row : rows) {
            json jr;
            jr["example"] = row.label;
            jr["map"] = row.map;
            jr["state"] = row.state;
            jr["region"] = row.region;
            jr["distance"] = sig12(row.distance);
            jr["fidelity"] = row.fidelity ? json(sig12(*row.fidelity)) : json(nullptr);
            jr["verdict"] = to_string(row.verdict);
            jr["checks"] = json::array();
            for (const auto &c : row.checks) {
                all_ok = all_ok && c.ok;
                table << "  [" << (c.ok ? "ok" : "FAIL") << "] " << row.label << ": " << c.what << " (got "
                      << fmt12(c.value) << ")\n";
                jr["checks"].push_back({{"check", c.what}, {"value", sig12(c.value)}, {"ok", c.ok}});
            }
            doc["rows"].push_back(std::move(jr));
        }
        doc["all_checks_pass"] = all_ok;
        if (as_json) {
            out << doc.dump(2) << "\n";
        } else {
            out << table.str();
            out << (all_ok ? "all reproduced values within tolerance\n" : "SOME VALUES MISSED THEIR TOLERANCE\n");
        }
        return all_ok ? kExitOk : kExitMismatch;
    });
}

int cmd_run(const std::string &config_path, const std::optional<std::string> &out_path, std::ostream &out,
            std::ostream &err, const GlobalOptions &opts) {
    return guarded(err, [&] {
        const ExperimentConfig cfg = load_config(config_path, true);
        const SignallingExperiment &exp = *cfg.experiment;
        const SignallingReport rep = run_experiment(exp, opts.tolerance);
        ClassifyOptions copts;
        copts.linearity_trials = cfg.samples.linearity_trials;
        copts.trace_trials = cfg.samples.trace_trials;
        copts.positivity_samples = cfg.samples.positivity_samples;
        copts.seed = cfg.seed;

        json doc = signalling_json(rep, opts.tolerance);
        doc["command"] = "run";
        doc["config_hash"] = cfg.config_hash;
        doc["seed"] = cfg.seed;
        doc["bob_map"] = describe(exp.bob_map);
        doc["shared_state"] = cfg.shared_kind;
        doc["bases"] = json::array({bloch_json(exp.basis_1), bloch_json(exp.basis_2)});
        doc["classification"] = classification_json(classify_map(exp.bob_map, copts));
        emit(doc, out_path, out);
        return kExitOk;
    });
}

int cmd_classify(const std::string &config_path, std::ostream &out, std::ostream &err, const GlobalOptions &opts) {
    (void)opts;
    return guarded(err, [&] {
        const ExperimentConfig cfg = load_config(config_path, false);
        ClassifyOptions copts;
        copts.linearity_trials = cfg.samples.linearity_trials;
        copts.trace_trials = cfg.samples.trace_trials;
        copts.positivity_samples = cfg.samples.positivity_samples;
        copts.seed = cfg.seed;

        json doc;
        doc["command"] = "classify";
        doc["config_hash"] = cfg.config_hash;
        doc["seed"] = cfg.seed;
        doc["bob_map"] = describe(cfg.bob_map);
        doc["classification"] = classification_json(classify_map(cfg.bob_map, copts));
        if (input_dim(cfg.bob_map) == 2 && output_dim(cfg.bob_map) >= 4) {
            doc["cloning"] = fidelity_json(average_fidelity(cfg.bob_map, cfg.samples.fidelity_samples, cfg.seed));
        }
        emit(doc, std::nullopt, out);
        return kExitOk;
    });
}

int cmd_scan(const std::string &config_path, int pairs, std::uint64_t seed, std::ostream &out, std::ostream &err,
             const GlobalOptions &opts) {
    return guarded(err, [&] {
        if (pairs < 1) {
            throw ConfigError("--pairs", "must be >= 1");
        }
        const ExperimentConfig cfg = load_config(config_path, false);
        if (!cfg.shared) {
            throw ConfigError("shared_state", "missing required field");
        }
        const BasisScan scan = scan_bases(*cfg.shared, cfg.bob_map, pairs, seed);
        json doc;
        doc["command"] = "scan";
        doc["config_hash"] = cfg.config_hash;
        doc["seed"] = seed;
        doc["pairs"] = pairs;
        doc["bob_map"] = describe(cfg.bob_map);
        doc["shared_state"] = cfg.shared_kind;
        doc["max_distance"] = sig12(scan.max_distance);
        doc["argmax"] = json::array({bloch_json(scan.argmax_1), bloch_json(scan.argmax_2)});
        doc["threshold"] = sig12(opts.tolerance);
        doc["verdict"] = to_string(scan.max_distance > opts.tolerance ? Verdict::Signals : Verdict::NoSignal);
        emit(doc, std::nullopt, out);
        return kExitOk;
    });
}

} // namespace nosig::cli
