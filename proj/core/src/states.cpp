#include "nosig/states.hpp"

#include <numbers>
#include <string>

#include "nosig/errors.hpp"

namespace nosig {

BlochVector BlochVector::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw DomainError("cannot normalize the zero Bloch vector");
    }
    return (1.0 / n) * *this;
}

DensityMatrix::DensityMatrix(CMatrix mat) : mat_(std::move(mat)) {
    const std::size_t d = mat_.rows();
    if (!mat_.is_square() || d == 0 || (d & (d - 1)) != 0) {
        throw ContractError("density matrix must be square with power-of-two dimension, got " +
                            std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()));
    }
    if (!mat_.all_finite()) {
        throw ContractError("density matrix has non-finite entries");
    }
    if (!is_hermitian(mat_, kStateTol)) {
        throw ContractError("density matrix is not Hermitian within 1e-10");
    }
    const cplx tr = mat_.trace();
    if (std::abs(tr - 1.0) > kStateTol) {
        throw ContractError("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
    }
    const double lo = min_eigenvalue(mat_);
    if (lo < -kStateTol) {
        throw ContractError("density matrix has negative eigenvalue " + std::to_string(lo));
    }
    while ((std::size_t{1} << num_qubits_) < d) {
        ++num_qubits_;
    }
}

double DensityMatrix::purity() const { return trace_of_product(mat_, mat_).real(); }

BipartiteState::BipartiteState(DensityMatrix rho) : rho_(std::move(rho)) {
    if (rho_.dim() != 4) {
        throw StructuralError("bipartite state must be 4x4, got dimension " + std::to_string(rho_.dim()));
    }
}

CMatrix BipartiteState::alice_marginal() const { return partial_trace(mat(), {2, 2}, 1); }
CMatrix BipartiteState::bob_marginal() const { return partial_trace(mat(), {2, 2}, 0); }

ConditionalEnsemble::ConditionalEnsemble(std::vector<Branch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) {
        throw ContractError("conditional ensemble needs at least one branch");
    }
    double total = 0.0;
    for (const auto &b : branches_) {
        if (b.probability < -kStateTol || b.probability > 1.0 + kStateTol) {
            throw ContractError("branch probability " + std::to_string(b.probability) + " outside [0,1]");
        }
        if (b.state.dim() != branches_.front().state.dim()) {
            throw StructuralError("branch states have different dimensions");
        }
        total += b.probability;
    }
    if (std::abs(total - 1.0) > kStateTol) {
        throw ContractError("branch probabilities sum to " + std::to_string(total));
    }
}

std::size_t ConditionalEnsemble::dim() const { return branches_.front().state.dim(); }

CMatrix ConditionalEnsemble::average() const {
    CMatrix acc(dim(), dim());
    for (const auto &b : branches_) {
        if (!b.absent) {
            acc += b.probability * b.state.mat();
        }
    }
    return acc;
}

CMatrix bloch_projector(const BlochVector &n) {
    CMatrix m = pauli::I();
    m += n.x * pauli::X();
    m += n.y * pauli::Y();
    m += n.z * pauli::Z();
    return 0.5 * m;
}

DensityMatrix bloch_to_density(const BlochVector &s) {
    if (s.norm() > 1.0 + kBlochTol) {
        throw DomainError("Bloch vector norm " + std::to_string(s.norm()) + " exceeds 1");
    }
    return DensityMatrix(bloch_projector(s));
}

BlochVector density_to_bloch(const CMatrix &rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw StructuralError("density_to_bloch needs a 2x2 operator");
    }
    // Tr(rho sigma_x) = 2 Re rho_01, Tr(rho sigma_y) = -2 Im rho_01 (for Hermitian rho).
    return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

DensityMatrix pure_state(std::span<const cplx> ket) {
    double norm2 = 0.0;
    for (const auto &a : ket) {
        norm2 += std::norm(a);
    }
    if (norm2 == 0.0) {
        throw DomainError("pure_state: zero ket");
    }
    CMatrix m = CMatrix::projector(ket);
    m *= 1.0 / norm2;
    return DensityMatrix(std::move(m));
}

BipartiteState singlet() { return partially_entangled(std::numbers::pi / 4.0); }

BipartiteState partially_entangled(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
        throw DomainError("partially_entangled: theta " + std::to_string(theta) + " outside [0, pi/2]");
    }
    const std::vector<cplx> ket{0.0, std::cos(theta), -std::sin(theta), 0.0};
    return BipartiteState(pure_state(ket));
}

ConditionalEnsemble measure_alice(const BipartiteState &rho, const BlochVector &n) {
    if (!n.is_pure()) {
        throw DomainError("measure_alice: measurement direction has norm " + std::to_string(n.norm()));
    }
    std::vector<Branch> branches;
    branches.reserve(2);
    for (const double sign : {1.0, -1.0}) {
        const CMatrix proj = tensor_product(bloch_projector(sign * n), pauli::I());
        const CMatrix bob = partial_trace(proj * rho.mat() * proj, {2, 2}, 0);
        const double p = bob.trace().real();
        if (p < kZeroBranchProb) {
            branches.push_back({std::max(p, 0.0), DensityMatrix(0.5 * pauli::I()), true});
            continue;
        }
        CMatrix cond = bob * (1.0 / p);
        // Remove rounding-level anti-Hermitian residue before validation.
        cond = 0.5 * (cond + cond.adjoint());
        branches.push_back({p, DensityMatrix(std::move(cond)), false});
    }
    return ConditionalEnsemble(std::move(branches));
}

} // namespace nosig
