#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "nosig/errors.hpp"

namespace nosig::cli {

using nlohmann::json;

namespace {

const json &require(const json &node, const char *key, const std::string &path) {
    if (!node.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    const auto it = node.find(key);
    if (it == node.end()) {
        throw ConfigError(path + "." + key, "missing required field");
    }
    return *it;
}

double number(const json &node, const std::string &path) {
    if (!node.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    const double v = node.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(path, "not finite");
    }
    return v;
}

long long integer(const json &node, const std::string &path) {
    if (!node.is_number_integer()) {
        throw ConfigError(path, "expected an integer");
    }
    return node.get<long long>();
}

std::size_t positive(const json &node, const std::string &path) {
    const long long v = integer(node, path);
    if (v < 1) {
        throw ConfigError(path, "must be >= 1");
    }
    return static_cast<std::size_t>(v);
}

std::string text(const json &node, const std::string &path) {
    if (!node.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    return node.get<std::string>();
}

// Runs a library constructor and relocates its validation errors to `path`.
template <class Fn> auto located(const std::string &path, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(path, e.what());
    } catch (const std::domain_error &e) {
        throw ConfigError(path, e.what());
    }
}

BlochVector parse_basis(const json &node, const std::string &path) {
    if (!node.is_array() || node.size() != 3) {
        throw ConfigError(path, "expected a 3-component vector");
    }
    const BlochVector v{number(node[0], path + "[0]"), number(node[1], path + "[1]"), number(node[2], path + "[2]")};
    const double n = v.norm();
    if (n < 1e-12) {
        throw ConfigError(path, "basis vector has zero norm");
    }
    if (std::abs(n - 1.0) > 1e-6) {
        throw ConfigError(path, "basis vector is not a unit vector (norm " + std::to_string(n) + ")");
    }
    return v.normalized();
}

ComponentFunction parse_component(const json &node, const std::string &path) {
    std::string family;
    int k = 1;
    if (node.is_string()) {
        family = node.get<std::string>();
    } else if (node.is_object()) {
        family = text(require(node, "family", path), path + ".family");
        if (node.contains("k")) {
            k = static_cast<int>(integer(node["k"], path + ".k"));
        }
    } else {
        throw ConfigError(path, "expected a family name or {family, k}");
    }
    if (family == "power") {
        return located(path, [&] { return ComponentFunction::power(k); });
    }
    if (family == "square") {
        return ComponentFunction::square();
    }
    if (family == "abs") {
        return ComponentFunction::abs();
    }
    throw ConfigError(path, "unknown function family '" + family + "' (power, square, abs)");
}

BipartiteState parse_shared(const json &node, const std::string &path) {
    const std::string kind = text(require(node, "kind", path), path + ".kind");
    if (kind == "singlet") {
        return singlet();
    }
    if (kind == "partially_entangled") {
        const double theta = number(require(node, "theta", path), path + ".theta");
        return located(path + ".theta", [&] { return partially_entangled(theta); });
    }
    if (kind == "explicit") {
        CMatrix m = parse_matrix(require(node, "matrix", path), path + ".matrix");
        return located(path + ".matrix", [&] { return BipartiteState(std::move(m)); });
    }
    throw ConfigError(path + ".kind", "unknown shared state kind '" + kind + "'");
}

std::vector<CMatrix> parse_povm(const json &node, const std::string &path) {
    if (node.is_string()) {
        if (node.get<std::string>() == "parity") {
            return parity_povm();
        }
        throw ConfigError(path, "unknown POVM preset '" + node.get<std::string>() + "'");
    }
    if (!node.is_array() || node.empty()) {
        throw ConfigError(path, "expected a non-empty list of matrices");
    }
    std::vector<CMatrix> out;
    for (std::size_t r = 0; r < node.size(); ++r) {
        out.push_back(parse_matrix(node[r], path + "[" + std::to_string(r) + "]"));
    }
    return out;
}

} // namespace

CMatrix parse_matrix(const json &node, const std::string &path) {
    if (!node.is_array() || node.empty()) {
        throw ConfigError(path, "expected a non-empty array of rows");
    }
    const std::size_t rows = node.size();
    std::size_t cols = 0;
    std::vector<cplx> entries;
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        const json &row = node[i];
        if (!row.is_array() || row.empty()) {
            throw ConfigError(row_path, "expected a non-empty row");
        }
        if (i == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            throw ConfigError(row_path, "row length differs from row 0");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const std::string cell = row_path + "[" + std::to_string(j) + "]";
            const json &z = row[j];
            if (z.is_number()) {
                entries.emplace_back(number(z, cell), 0.0);
            } else if (z.is_array() && z.size() == 2) {
                entries.emplace_back(number(z[0], cell + "[0]"), number(z[1], cell + "[1]"));
            } else {
                throw ConfigError(cell, "expected [re, im] or a real number");
            }
        }
    }
    return CMatrix(rows, cols, std::move(entries));
}

json matrix_to_json(const CMatrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

LocalMap parse_map(const json &node, const std::string &path) {
    const std::string kind = text(require(node, "kind", path), path + ".kind");
    if (kind == "identity") {
        const std::size_t dim = node.contains("dim") ? positive(node["dim"], path + ".dim") : 2;
        return KrausMap::identity(dim);
    }
    if (kind == "kraus") {
        const json &ops = require(node, "ops", path);
        if (!ops.is_array() || ops.empty()) {
            throw ConfigError(path + ".ops", "expected a non-empty list of matrices");
        }
        std::vector<CMatrix> mats;
        for (std::size_t k = 0; k < ops.size(); ++k) {
            mats.push_back(parse_matrix(ops[k], path + ".ops[" + std::to_string(k) + "]"));
        }
        return located(path + ".ops", [&] { return KrausMap(std::move(mats)); });
    }
    if (kind == "random_channel") {
        const std::size_t d_in = positive(require(node, "d_in", path), path + ".d_in");
        const std::size_t d_out = positive(require(node, "d_out", path), path + ".d_out");
        const std::size_t rank = positive(require(node, "kraus_rank", path), path + ".kraus_rank");
        const auto seed = static_cast<std::uint64_t>(integer(require(node, "seed", path), path + ".seed"));
        return located(path, [&] { return random_channel(d_in, d_out, rank, seed); });
    }
    if (kind == "transfer") {
        const std::size_t d_in = positive(require(node, "d_in", path), path + ".d_in");
        const std::size_t d_out = positive(require(node, "d_out", path), path + ".d_out");
        CMatrix m = parse_matrix(require(node, "matrix", path), path + ".matrix");
        return located(path + ".matrix", [&] { return TransferMap(std::move(m), d_in, d_out); });
    }
    if (kind == "random_transfer") {
        const std::size_t d_in = positive(require(node, "d_in", path), path + ".d_in");
        const std::size_t d_out = positive(require(node, "d_out", path), path + ".d_out");
        const auto seed = static_cast<std::uint64_t>(integer(require(node, "seed", path), path + ".seed"));
        bool tp = true;
        if (node.contains("trace_preserving")) {
            if (!node["trace_preserving"].is_boolean()) {
                throw ConfigError(path + ".trace_preserving", "expected a boolean");
            }
            tp = node["trace_preserving"].get<bool>();
        }
        return located(path, [&] { return random_transfer_map(d_in, d_out, seed, tp); });
    }
    if (kind == "bloch_affine") {
        const double eta = number(require(node, "eta", path), path + ".eta");
        const double t = number(require(node, "t", path), path + ".t");
        return located(path, [&] { return BlochAffineCloneMap(eta, t); });
    }
    if (kind == "bloch_nonlinear") {
        const double t = number(require(node, "t", path), path + ".t");
        const json &f = require(node, "f", path);
        if (f.is_object() && f.contains("x")) {
            std::array<ComponentFunction, 3> fs{parse_component(require(f, "x", path + ".f"), path + ".f.x"),
                                                parse_component(require(f, "y", path + ".f"), path + ".f.y"),
                                                parse_component(require(f, "z", path + ".f"), path + ".f.z")};
            return BlochNonlinearCloneMap(fs, t);
        }
        ComponentFunction fn = ComponentFunction::square();
        if (f.is_string() && f.get<std::string>() == "power") {
            const int k = static_cast<int>(integer(require(node, "k", path), path + ".k"));
            fn = located(path + ".k", [&] { return ComponentFunction::power(k); });
        } else {
            fn = parse_component(f, path + ".f");
        }
        return BlochNonlinearCloneMap::isotropic(fn, t);
    }
    if (kind == "pure_branch") {
        const long long n = integer(require(node, "n_clones", path), path + ".n_clones");
        const double f = number(require(node, "fidelity", path), path + ".fidelity");
        const std::string variant =
            node.contains("variant") ? text(node["variant"], path + ".variant") : std::string("mixture");
        BranchVariant v{};
        if (variant == "mixture") {
            v = BranchVariant::Mixture;
        } else if (variant == "factorized") {
            v = BranchVariant::Factorized;
        } else {
            throw ConfigError(path + ".variant", "expected 'mixture' or 'factorized'");
        }
        return located(path, [&] { return PureBranchMap(static_cast<int>(n), f, v); });
    }
    throw ConfigError(path + ".kind", "unknown map kind '" + kind + "'");
}

std::string config_hash(const json &doc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : doc.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig parse_config(const json &doc, bool require_experiment) {
    if (!doc.is_object()) {
        throw ConfigError("$", "configuration must be a JSON object");
    }
    ExperimentConfig cfg{std::nullopt, std::nullopt, parse_map(require(doc, "bob_map", "$"), "bob_map"), "", 1, {},
                         config_hash(doc)};

    if (doc.contains("seed")) {
        cfg.seed = static_cast<std::uint64_t>(integer(doc["seed"], "seed"));
    }
    if (doc.contains("samples")) {
        const json &s = doc["samples"];
        if (!s.is_object()) {
            throw ConfigError("samples", "expected an object");
        }
        const auto read = [&](const char *key, int &out, int min) {
            if (s.contains(key)) {
                const long long v = integer(s[key], std::string("samples.") + key);
                if (v < min) {
                    throw ConfigError(std::string("samples.") + key, "must be >= " + std::to_string(min));
                }
                out = static_cast<int>(v);
            }
        };
        read("linearity_trials", cfg.samples.linearity_trials, 1);
        read("trace_trials", cfg.samples.trace_trials, 1);
        read("positivity_samples", cfg.samples.positivity_samples, 100);
        read("fidelity_samples", cfg.samples.fidelity_samples, 1000);
    }

    if (require_experiment || doc.contains("shared_state")) {
        const json &shared_node = require(doc, "shared_state", "$");
        cfg.shared = parse_shared(shared_node, "shared_state");
        cfg.shared_kind = text(shared_node["kind"], "shared_state.kind");
    }
    if (!require_experiment && !doc.contains("bases")) {
        return cfg;
    }
    if (!cfg.shared) {
        throw ConfigError("shared_state", "missing required field");
    }

    const json &bases = require(doc, "bases", "$");
    if (!bases.is_array() || bases.size() != 2) {
        throw ConfigError("bases", "expected exactly two basis vectors");
    }
    const BlochVector b1 = parse_basis(bases[0], "bases[0]");
    const BlochVector b2 = parse_basis(bases[1], "bases[1]");

    std::optional<std::vector<CMatrix>> povm;
    if (doc.contains("povm") && !doc["povm"].is_null()) {
        povm = parse_povm(doc["povm"], "povm");
    }
    std::optional<KrausMap> premap;
    if (doc.contains("alice_premap") && !doc["alice_premap"].is_null()) {
        LocalMap m = parse_map(doc["alice_premap"], "alice_premap");
        if (!std::holds_alternative<KrausMap>(m)) {
            throw ConfigError("alice_premap", "Alice's pre-map must be a Kraus-type map");
        }
        if (input_dim(m) != 2 || output_dim(m) != 2) {
            throw ConfigError("alice_premap", "Alice's pre-map must act on one qubit");
        }
        premap = std::get<KrausMap>(std::move(m));
    }

    SignallingExperiment exp{*cfg.shared, b1, b2, cfg.bob_map, std::move(povm), std::move(premap)};
    try {
        exp.validate();
    } catch (const std::exception &e) {
        throw ConfigError("povm", e.what());
    }
    cfg.experiment = std::move(exp);
    return cfg;
}

ExperimentConfig load_config(const std::string &path, bool require_experiment) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("$", "cannot open config file '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error &e) {
        throw ConfigError("$", std::string("JSON syntax error: ") + e.what());
    }
    return parse_config(doc, require_experiment);
}

} // namespace nosig::cli
