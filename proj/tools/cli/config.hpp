#pragma once

// JSON experiment configuration.
//
//   {
//     "shared_state": {"kind": "singlet"}
//                   | {"kind": "partially_entangled", "theta": 0.5235987755982988}
//                   | {"kind": "explicit", "matrix": <matrix>},
//     "alice_premap": <map>,                       (optional, Kraus-type only)
//     "bob_map": <map>,
//     "bases": [[0, 0, 1], [1, 0, 0]],
//     "povm": [<matrix>, ...] | "parity",          (optional)
//     "seed": 1,                                    (optional)
//     "samples": {"linearity_trials": 64, "trace_trials": 64,
//                 "positivity_samples": 4096, "fidelity_samples": 10000}
//   }
//
// <map> kinds: identity{dim}, kraus{ops}, random_channel{d_in,d_out,kraus_rank,seed},
// transfer{d_in,d_out,matrix}, random_transfer{d_in,d_out,seed,trace_preserving},
// bloch_affine{eta,t}, bloch_nonlinear{f,k,t}, pure_branch{n_clones,fidelity,variant}.
// <matrix> is an array of rows, each entry a [re, im] pair or a bare real.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nosig/classify.hpp"
#include "nosig/signalling.hpp"

namespace nosig::cli {

/// Invalid configuration; `path` locates the offending field, e.g. "bases[0]".
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string path, const std::string &reason)
        : std::runtime_error(path + ": " + reason), path_(std::move(path)) {}
    [[nodiscard]] const std::string &path() const noexcept { return path_; }

  private:
    std::string path_;
};

struct SampleCounts {
    int linearity_trials = 64;
    int trace_trials = 64;
    int positivity_samples = 4096;
    int fidelity_samples = 10000;
};

struct ExperimentConfig {
    std::optional<SignallingExperiment> experiment; ///< set when shared_state and bases are present
    std::optional<BipartiteState> shared;
    LocalMap bob_map;
    std::string shared_kind;
    std::uint64_t seed = 1;
    SampleCounts samples;
    std::string config_hash;
};

/// Parses a configuration document. With `require_experiment`, shared_state
/// and bases are mandatory; otherwise only bob_map is, and the experiment is
/// built only if bases are given.
ExperimentConfig parse_config(const nlohmann::json &doc, bool require_experiment);
ExperimentConfig load_config(const std::string &path, bool require_experiment);

LocalMap parse_map(const nlohmann::json &node, const std::string &path);
CMatrix parse_matrix(const nlohmann::json &node, const std::string &path);
nlohmann::json matrix_to_json(const CMatrix &m);

/// FNV-1a 64-bit hash of the canonical (sorted-key) dump, as 16 hex digits.
std::string config_hash(const nlohmann::json &doc);

} // namespace nosig::cli
