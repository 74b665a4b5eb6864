#pragma once

// Single-clone fidelity of Bob's maps and its comparison with the optimal
// universal 1 -> 2 qubit cloner.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nosig/maps.hpp"

namespace nosig {

/// Fidelity of the optimal universal 1 -> 2 qubit cloner. Corresponds to the
/// lawful shrinking factor eta = 2/3 through F = (1 + eta)/2; this constant
/// comes from the cloning literature rather than being derived here.
inline constexpr double kOptimalCloneFidelity = 5.0 / 6.0;

struct FidelityReport {
    std::vector<std::pair<BlochVector, double>> fidelity_per_input;
    double average_fidelity = 0.0;
    double standard_error = 0.0;
    std::optional<double> analytic_prediction;
    bool exceeds_optimal_bound = false;
    /// Some fidelity fell outside [0, 1]: the map produced a non-positive output.
    bool out_of_range = false;
};

/// Tr[psi * marginal of clone `clone_index`].
double single_clone_fidelity(const LocalMap &map, const DensityMatrix &psi, std::size_t clone_index = 0);

/// Monte Carlo average over `samples` (>= 1000) uniform pure inputs.
FidelityReport average_fidelity(const LocalMap &map, int samples, std::uint64_t seed);

} // namespace nosig
