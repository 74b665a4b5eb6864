#include "nosig/signalling.hpp"

#include <algorithm>
#include <cmath>

#include "nosig/errors.hpp"
#include "nosig/matcore.hpp"
#include "nosig/random.hpp"

namespace nosig {

namespace {

constexpr double kProbClampTol = 1e-12;

BipartiteState effective_shared(const SignallingExperiment &exp) {
    return exp.alice_premap ? apply_alice_premap(*exp.alice_premap, exp.shared) : exp.shared;
}

} // namespace

std::string to_string(Verdict v) { return v == Verdict::Signals ? "SIGNALS" : "NO_SIGNAL"; }

void SignallingExperiment::validate() const {
    if (!basis_1.is_pure()) {
        throw DomainError("basis_1 is not a unit vector (norm " + std::to_string(basis_1.norm()) + ")");
    }
    if (!basis_2.is_pure()) {
        throw DomainError("basis_2 is not a unit vector (norm " + std::to_string(basis_2.norm()) + ")");
    }
    if (alice_premap && (alice_premap->d_in() != 2 || alice_premap->d_out() != 2)) {
        throw StructuralError("alice_premap must act on one qubit");
    }
    if (!decode_povm) {
        return;
    }
    if (decode_povm->empty()) {
        throw ContractError("decode POVM has no elements");
    }
    const std::size_t d = output_dim(bob_map);
    CMatrix total(d, d);
    for (std::size_t r = 0; r < decode_povm->size(); ++r) {
        const CMatrix &e = (*decode_povm)[r];
        if (e.rows() != d || e.cols() != d) {
            throw StructuralError("POVM element " + std::to_string(r) + " does not match Bob's output dimension " +
                                  std::to_string(d));
        }
        if (!is_hermitian(e, kPovmTol) || min_eigenvalue(e) < -kPovmTol) {
            throw ContractError("POVM element " + std::to_string(r) + " is not positive semidefinite");
        }
        total += e;
    }
    if (max_abs_diff(total, CMatrix::identity(d)) > kPovmTol) {
        throw ContractError("POVM elements do not sum to the identity");
    }
}

BipartiteState apply_alice_premap(const KrausMap &alice, const BipartiteState &shared) {
    CMatrix out(4, 4);
    for (const auto &k : alice.ops()) {
        const CMatrix lifted = tensor_product(k, pauli::I());
        out += lifted * shared.mat() * lifted.adjoint();
    }
    return BipartiteState(0.5 * (out + out.adjoint()));
}

CMatrix bob_average_state(const BipartiteState &shared, const BlochVector &n, const LocalMap &bob_map) {
    return apply_to_ensemble(bob_map, measure_alice(shared, n));
}

double no_signalling_distance(const SignallingExperiment &exp) {
    exp.validate();
    const BipartiteState shared = effective_shared(exp);
    const CMatrix diff =
        bob_average_state(shared, exp.basis_1, exp.bob_map) - bob_average_state(shared, exp.basis_2, exp.bob_map);
    return 0.5 * trace_norm(0.5 * (diff + diff.adjoint()));
}

ConditionalProbs conditional_probs(const SignallingExperiment &exp) {
    if (!exp.decode_povm) {
        throw ContractError("conditional_probs: experiment has no decode POVM");
    }
    exp.validate();
    const BipartiteState shared = effective_shared(exp);
    ConditionalProbs out;
    for (const BlochVector &n : {exp.basis_1, exp.basis_2}) {
        const CMatrix avg = bob_average_state(shared, n, exp.bob_map);
        std::vector<double> row;
        row.reserve(exp.decode_povm->size());
        for (const auto &e : *exp.decode_povm) {
            double p = trace_of_product(e, avg).real();
            if (p < -kProbClampTol) {
                out.negative_clamped = true;
            }
            row.push_back(std::clamp(p, 0.0, 1.0));
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

double helstrom_success(const SignallingExperiment &exp) { return 0.5 + 0.5 * no_signalling_distance(exp); }

double decode_mutual_info(const std::vector<std::vector<double>> &probs) {
    if (probs.empty()) {
        return 0.0;
    }
    const std::size_t outcomes = probs.front().size();
    const double prior = 1.0 / static_cast<double>(probs.size());
    std::vector<double> marginal(outcomes, 0.0);
    for (const auto &row : probs) {
        if (row.size() != outcomes) {
            throw StructuralError("decode_mutual_info: ragged probability table");
        }
        for (std::size_t r = 0; r < outcomes; ++r) {
            marginal[r] += prior * row[r];
        }
    }
    // I(M;R) = sum_m prior sum_r p(r|m) log2(p(r|m)/p(r)); each term vanishes
    // exactly when the rows agree.
    double info = 0.0;
    for (const auto &row : probs) {
        for (std::size_t r = 0; r < outcomes; ++r) {
            if (row[r] > 0.0 && marginal[r] > 0.0) {
                info += prior * row[r] * std::log2(row[r] / marginal[r]);
            }
        }
    }
    return std::max(info, 0.0);
}

BasisScan scan_bases(const BipartiteState &shared, const LocalMap &bob_map, int pairs, std::uint64_t seed) {
    if (pairs < 1) {
        throw ContractError("scan_bases needs at least one pair");
    }
    Rng rng(seed);
    std::vector<std::pair<BlochVector, BlochVector>> sample;
    sample.reserve(static_cast<std::size_t>(pairs));
    for (int k = 0; k < pairs; ++k) {
        const BlochVector a = rng.unit_vector();
        const BlochVector b = rng.unit_vector();
        sample.emplace_back(a, b);
    }
    BasisScan best{-1.0, {}, {}};
    for (const auto &[a, b] : sample) {
        const SignallingExperiment exp{shared, a, b, bob_map, std::nullopt, std::nullopt};
        const double d = no_signalling_distance(exp);
        if (d > best.max_distance) {
            best = {d, a, b};
        }
    }
    return best;
}

SignallingReport run_experiment(const SignallingExperiment &exp, double threshold) {
    SignallingReport rep;
    rep.distance = no_signalling_distance(exp);
    rep.helstrom_success = 0.5 + 0.5 * rep.distance;
    rep.verdict = rep.distance > threshold ? Verdict::Signals : Verdict::NoSignal;
    if (exp.decode_povm) {
        rep.conditional_probs = conditional_probs(exp);
        rep.mutual_info_bits = decode_mutual_info(rep.conditional_probs->rows);
        if (rep.conditional_probs->negative_clamped) {
            rep.warnings.emplace_back("negative outcome probability clamped: Bob's average state is not positive");
        }
    }
    return rep;
}

std::vector<CMatrix> parity_povm() {
    return {CMatrix::diagonal(std::vector<double>{0, 1, 1, 0}), CMatrix::diagonal(std::vector<double>{1, 0, 0, 1})};
}

} // namespace nosig
