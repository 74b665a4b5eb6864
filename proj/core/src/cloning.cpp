#include "nosig/cloning.hpp"

#include <cmath>

#include "nosig/errors.hpp"
#include "nosig/random.hpp"

namespace nosig {

double single_clone_fidelity(const LocalMap &map, const DensityMatrix &psi, std::size_t clone_index) {
    if (!psi.is_pure()) {
        throw ContractError("single_clone_fidelity: input must be pure");
    }
    const CMatrix out = apply_to_density(map, psi);
    const std::size_t d = out.rows();
    std::size_t qubits = 0;
    while ((std::size_t{1} << qubits) < d) {
        ++qubits;
    }
    if ((std::size_t{1} << qubits) != d || qubits == 0) {
        throw StructuralError("single_clone_fidelity: output is not a qubit register");
    }
    const CMatrix marginal = qubit_marginal(out, qubits, clone_index);
    return trace_of_product(psi.mat(), marginal).real();
}

FidelityReport average_fidelity(const LocalMap &map, int samples, std::uint64_t seed) {
    if (samples < 1000) {
        throw ContractError("average_fidelity needs at least 1000 samples");
    }
    Rng rng(seed);
    std::vector<BlochVector> inputs;
    inputs.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        inputs.push_back(rng.unit_vector());
    }

    FidelityReport rep;
    rep.fidelity_per_input.reserve(inputs.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto &s : inputs) {
        const double f = single_clone_fidelity(map, bloch_to_density(s));
        rep.fidelity_per_input.emplace_back(s, f);
        sum += f;
        sum_sq += f * f;
        if (f < -1e-12 || f > 1.0 + 1e-12) {
            rep.out_of_range = true;
        }
    }
    const double n = static_cast<double>(samples);
    rep.average_fidelity = sum / n;
    const double var = std::max(sum_sq / n - rep.average_fidelity * rep.average_fidelity, 0.0);
    rep.standard_error = std::sqrt(var / (n - 1.0));

    if (const auto *affine = std::get_if<BlochAffineCloneMap>(&map)) {
        rep.analytic_prediction = 0.5 * (1.0 + affine->eta());
    } else if (const auto *branch = std::get_if<PureBranchMap>(&map)) {
        rep.analytic_prediction = branch->fidelity();
    }
    if (input_dim(map) == 2 && output_dim(map) == 4) {
        rep.exceeds_optimal_bound = rep.average_fidelity > kOptimalCloneFidelity + 1e-9;
    }
    return rep;
}

} // namespace nosig
