#pragma once

/**
 * @file
 * Places a local map in the linear / trace-preserving / positive /
 * completely-positive taxonomy, with the numeric evidence behind each call.
 *
 * Regions:
 *  - QM: linear, trace preserving and completely positive.
 *  - LinearNonpositiveNoSignal: linear and trace preserving but not CP.
 *    Such maps cannot signal through entanglement.
 *  - Nonlinear: the output average depends on how a mixed input is
 *    decomposed into pure states. Such maps can signal.
 *  - NotTracePreserving: overrides the others when the trace test fails.
 */

#include <cstdint>
#include <optional>
#include <string>

#include "nosig/maps.hpp"

namespace nosig {

inline constexpr std::uint64_t kDefaultClassifySeed = 0x5eed'0001;
inline constexpr double kLinearityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

struct LinearityResult {
    bool linear = false;
    double max_deviation = 0.0; ///< largest trace norm between two decompositions' outputs
};

struct TracePreservationResult {
    bool preserving = false;
    double max_deviation = 0.0; ///< largest |Tr(output) - 1|
};

struct PositivityResult {
    bool positive = false;
    double min_eigenvalue = 0.0;
    /// Worst pure input found; the Bloch vector is set for qubit inputs.
    std::optional<BlochVector> witness;
    CMatrix witness_input;
};

class ChoiMatrix {
  public:
    ChoiMatrix(CMatrix mat, std::size_t d_in, std::size_t d_out);

    [[nodiscard]] const CMatrix &mat() const noexcept { return mat_; }
    [[nodiscard]] std::size_t d_in() const noexcept { return d_in_; }
    [[nodiscard]] std::size_t d_out() const noexcept { return d_out_; }
    [[nodiscard]] double min_eigenvalue() const;
    /// Tr_out J; equals the identity iff the map is trace preserving.
    [[nodiscard]] CMatrix output_trace() const;
    [[nodiscard]] bool is_completely_positive(double tol = kPsdTol) const { return min_eigenvalue() >= -tol; }
    [[nodiscard]] bool is_trace_preserving(double tol = kPsdTol) const;

  private:
    CMatrix mat_;
    std::size_t d_in_;
    std::size_t d_out_;
};

enum class MapRegion { QM, LinearNonpositiveNoSignal, Nonlinear, NotTracePreserving };

std::string to_string(MapRegion region);

struct MapClassification {
    bool is_linear = false;
    double linearity_deviation = 0.0;
    bool is_trace_preserving = false;
    double trace_deviation = 0.0;
    bool is_positive = false;
    double min_output_eigenvalue = 0.0;
    std::optional<BlochVector> positivity_witness;
    /// Unset when no linear extension exists.
    std::optional<bool> is_completely_positive;
    std::optional<double> min_choi_eigenvalue;
    MapRegion region = MapRegion::Nonlinear;
};

struct ClassifyOptions {
    int linearity_trials = 64;
    int trace_trials = 64;
    int positivity_samples = 4096;
    std::uint64_t seed = kDefaultClassifySeed;
};

/// Linear representations: a spot check of sum p L(rho) against L(sum p rho).
/// Pure-state-defined maps: the first trial compares the z-pair and x-pair
/// decompositions of I/2; later trials compare two random pure
/// decompositions of a random mixed qubit state.
LinearityResult test_linearity(const LocalMap &map, int trials, std::uint64_t seed = kDefaultClassifySeed);

TracePreservationResult test_trace_preservation(const LocalMap &map, int trials,
                                                std::uint64_t seed = kDefaultClassifySeed);

/// Smallest output eigenvalue over `samples` (>= 100) uniformly drawn pure
/// inputs plus the six axis states (or the computational basis when the
/// input is not a qubit).
PositivityResult test_positivity(const LocalMap &map, int samples, std::uint64_t seed = kDefaultClassifySeed);

/// J = sum_ij L(|i><j|) (x) |i><j|, output factor first. Throws
/// ContractError for pure-state-defined maps.
ChoiMatrix choi_matrix(const LocalMap &map);

/// Qubit-input map rebuilt from a pure-state-defined map's outputs on the
/// six axis states. Only meaningful once test_linearity has passed.
TransferMap linear_extension(const LocalMap &map);

/// Trace-preserving CP map from a seeded random isometry of shape
/// (d_out * kraus_rank) x d_in, sliced into kraus_rank operators.
KrausMap random_channel(std::size_t d_in, std::size_t d_out, std::size_t kraus_rank, std::uint64_t seed);

/// Hermiticity-preserving map with a random Hermitian Choi matrix, shifted
/// so that Tr_out J = I when `trace_preserving`. Generally not positive.
TransferMap random_transfer_map(std::size_t d_in, std::size_t d_out, std::uint64_t seed,
                                bool trace_preserving = true);

MapClassification classify_map(const LocalMap &map, const ClassifyOptions &options = {});

} // namespace nosig
