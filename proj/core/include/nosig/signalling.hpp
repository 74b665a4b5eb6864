#pragma once

/**
 * @file
 * The entanglement-based communication protocol, end to end.
 *
 * Alice encodes a bit by measuring her half of the shared state along
 * basis_1 or basis_2. Bob, who never learns her outcome, applies his map to
 * each conditional branch and mixes the results. Signalling is possible iff
 * his two resulting states differ; the trace distance between them bounds
 * every decoder he could use.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nosig/maps.hpp"
#include "nosig/states.hpp"

namespace nosig {

/// Trace distances above this count as signalling.
inline constexpr double kSignalThreshold = 1e-8;
inline constexpr double kPovmTol = 1e-10;

enum class Verdict { Signals, NoSignal };
std::string to_string(Verdict v);

struct SignallingExperiment {
    BipartiteState shared;
    BlochVector basis_1;
    BlochVector basis_2;
    LocalMap bob_map;
    /// Decoding POVM on Bob's output space.
    std::optional<std::vector<CMatrix>> decode_povm;
    /// Optional map applied on Alice's side, as (A (x) I) rho_AB, before
    /// she measures.
    std::optional<KrausMap> alice_premap;

    /// Throws DomainError for non-unit bases and ContractError for a POVM
    /// whose elements are not PSD or do not sum to the identity.
    void validate() const;
};

struct ConditionalProbs {
    /// rows[m][r] = p(r | message m), m in {0, 1} for basis_1, basis_2.
    std::vector<std::vector<double>> rows;
    /// Set when some raw probability fell below -1e-12 before clamping,
    /// which happens only for non-positive average states.
    bool negative_clamped = false;
};

struct SignallingReport {
    double distance = 0.0;
    double helstrom_success = 0.5;
    std::optional<ConditionalProbs> conditional_probs;
    double mutual_info_bits = 0.0;
    Verdict verdict = Verdict::NoSignal;
    std::vector<std::string> warnings;
};

/// (A (x) I) rho (A (x) I)^dagger summed over Kraus operators.
BipartiteState apply_alice_premap(const KrausMap &alice, const BipartiteState &shared);

/// Bob's state averaged over Alice's outcomes for measurement direction n.
CMatrix bob_average_state(const BipartiteState &shared, const BlochVector &n, const LocalMap &bob_map);

/// Half the trace norm between Bob's average states for the two bases.
double no_signalling_distance(const SignallingExperiment &exp);

/// p(r|m) = Tr[Pi_r rho_bar_m]. Throws ContractError without a POVM.
ConditionalProbs conditional_probs(const SignallingExperiment &exp);

/// 1/2 + distance/2: optimal success for equiprobable messages.
double helstrom_success(const SignallingExperiment &exp);

/// I(M;R) in bits for a uniform prior over the table's rows.
double decode_mutual_info(const std::vector<std::vector<double>> &probs);

struct BasisScan {
    double max_distance = 0.0;
    BlochVector argmax_1;
    BlochVector argmax_2;
};

/// Maximum no-signalling distance over `pairs` seeded uniform basis pairs.
/// The whole sample sequence is drawn before any evaluation.
BasisScan scan_bases(const BipartiteState &shared, const LocalMap &bob_map, int pairs, std::uint64_t seed);

SignallingReport run_experiment(const SignallingExperiment &exp, double threshold = kSignalThreshold);

/// Projectors onto span{|01>,|10>} and span{|00>,|11>}.
std::vector<CMatrix> parity_povm();

} // namespace nosig
