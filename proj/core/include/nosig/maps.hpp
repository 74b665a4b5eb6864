#pragma once

/**
 * @file
 * Bob's local maps. Five representations share one application interface:
 *
 *  - KrausMap: completely positive and trace preserving by construction.
 *  - TransferMap: any Hermiticity-preserving linear map, acting on
 *    column-stacked density matrices. Need not be positive or trace
 *    preserving.
 *  - BlochAffineCloneMap: 1 -> 2 cloner that shrinks the input Bloch
 *    vector by eta in each clone and adds a t-weighted sum_j sigma_j (x) sigma_j
 *    correlation term. Linear in rho; non-positive parameter regions are
 *    representable.
 *  - BlochNonlinearCloneMap: the same output form with f(s_j) in place of
 *    eta * s_j. Defined on pure inputs only.
 *  - PureBranchMap: psi -> F psi^(x)N + (1-F) psi_perp^(x)N (mixture) or
 *    (F psi + (1-F) psi_perp)^(x)N (factorized). Defined on pure inputs only.
 *
 * Outputs are returned as raw Hermitian matrices so that non-positive
 * outputs can be inspected; wrap in DensityMatrix to validate.
 */

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "nosig/matcore.hpp"
#include "nosig/states.hpp"

namespace nosig {

class KrausMap {
  public:
    /// Throws ContractError unless sum_i K_i^dagger K_i = I within 1e-10.
    explicit KrausMap(std::vector<CMatrix> ops);

    static KrausMap identity(std::size_t dim);

    [[nodiscard]] const std::vector<CMatrix> &ops() const noexcept { return ops_; }
    [[nodiscard]] std::size_t d_in() const noexcept { return ops_.front().cols(); }
    [[nodiscard]] std::size_t d_out() const noexcept { return ops_.front().rows(); }

  private:
    std::vector<CMatrix> ops_;
};

class BlochAffineCloneMap;

class TransferMap {
  public:
    /// `super_mat` is d_out^2 x d_in^2 acting on column-stacked operators.
    /// Throws ContractError if the map is not Hermiticity-preserving.
    TransferMap(CMatrix super_mat, std::size_t d_in, std::size_t d_out);

    static TransferMap from_kraus(const KrausMap &k);
    static TransferMap from_bloch_affine(const BlochAffineCloneMap &m);
    /// Builds the map whose action on |i><j| is `fn(|i><j|)`.
    static TransferMap from_linear(const std::function<CMatrix(const CMatrix &)> &fn, std::size_t d_in,
                                   std::size_t d_out);
    /// Inverse of the Choi construction J = sum_ij L(|i><j|) (x) |i><j|.
    static TransferMap from_choi(const CMatrix &choi, std::size_t d_in, std::size_t d_out);

    [[nodiscard]] const CMatrix &super_mat() const noexcept { return super_; }
    [[nodiscard]] std::size_t d_in() const noexcept { return d_in_; }
    [[nodiscard]] std::size_t d_out() const noexcept { return d_out_; }
    [[nodiscard]] TransferMap scaled(double factor) const;

  private:
    CMatrix super_;
    std::size_t d_in_;
    std::size_t d_out_;
};

class BlochAffineCloneMap {
  public:
    BlochAffineCloneMap(double eta, double t);
    [[nodiscard]] double eta() const noexcept { return eta_; }
    [[nodiscard]] double t() const noexcept { return t_; }

  private:
    double eta_;
    double t_;
};

enum class ComponentFamily { Power, Square, Abs };

/// f applied to one Bloch component.
class ComponentFunction {
  public:
    static ComponentFunction power(int k);
    static ComponentFunction square() { return ComponentFunction(ComponentFamily::Square, 2); }
    static ComponentFunction abs() { return ComponentFunction(ComponentFamily::Abs, 1); }

    double operator()(double s) const;
    [[nodiscard]] ComponentFamily family() const noexcept { return family_; }
    [[nodiscard]] int exponent() const noexcept { return exponent_; }
    [[nodiscard]] bool is_odd() const noexcept { return family_ == ComponentFamily::Power && exponent_ % 2 == 1; }
    [[nodiscard]] std::string name() const;

    friend bool operator==(const ComponentFunction &, const ComponentFunction &) = default;

  private:
    ComponentFunction(ComponentFamily family, int exponent) : family_(family), exponent_(exponent) {}
    ComponentFamily family_;
    int exponent_;
};

class BlochNonlinearCloneMap {
  public:
    BlochNonlinearCloneMap(std::array<ComponentFunction, 3> f, double t);
    static BlochNonlinearCloneMap isotropic(ComponentFunction f, double t) { return {{f, f, f}, t}; }

    [[nodiscard]] const std::array<ComponentFunction, 3> &f() const noexcept { return f_; }
    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] bool is_isotropic() const { return f_[0] == f_[1] && f_[1] == f_[2]; }

  private:
    std::array<ComponentFunction, 3> f_;
    double t_;
};

enum class BranchVariant { Mixture, Factorized };

class PureBranchMap {
  public:
    /// n_clones in [2, 4] (the output must fit the 16x16 workspace);
    /// fidelity in [0, 1].
    PureBranchMap(int n_clones, double fidelity, BranchVariant variant);

    [[nodiscard]] int n_clones() const noexcept { return n_clones_; }
    [[nodiscard]] double fidelity() const noexcept { return fidelity_; }
    [[nodiscard]] BranchVariant variant() const noexcept { return variant_; }

  private:
    int n_clones_;
    double fidelity_;
    BranchVariant variant_;
};

using LocalMap = std::variant<KrausMap, TransferMap, BlochAffineCloneMap, BlochNonlinearCloneMap, PureBranchMap>;

std::size_t input_dim(const LocalMap &map);
std::size_t output_dim(const LocalMap &map);
/// Number of output qubits treated as clones (1 for non-clone maps).
std::size_t clone_count(const LocalMap &map);
/// True for the representations only defined on pure inputs.
bool is_pure_state_defined(const LocalMap &map);
/// True for Kraus, transfer-matrix and Bloch-affine maps.
bool has_linear_representation(const LocalMap &map);
std::string describe(const LocalMap &map);

/// Applies the map to a density matrix. Pure-state-defined maps throw
/// ContractError for mixed input; dimension mismatch throws StructuralError.
CMatrix apply_to_density(const LocalMap &map, const DensityMatrix &rho);

/// Linear extension applied to an arbitrary operator. Throws ContractError
/// for pure-state-defined maps.
CMatrix apply_linear(const LocalMap &map, const CMatrix &op);

/// sum_b p_b map(rho_b), skipping absent branches.
CMatrix apply_to_ensemble(const LocalMap &map, const ConditionalEnsemble &ens);

/// Pure qubit state with negated Bloch vector.
DensityMatrix orthogonal_pure(const DensityMatrix &psi);

/// Reduced state of clone `clone_index` of a two-clone (4x4) output.
CMatrix clone_marginal(const CMatrix &two_clone_output, std::size_t clone_index);
/// Reduced state of one qubit of an n-qubit output.
CMatrix qubit_marginal(const CMatrix &output, std::size_t n_qubits, std::size_t qubit_index);

/// Column-stacking vectorization: vec(rho)[i + j*d] = rho(i, j).
std::vector<cplx> vectorize(const CMatrix &rho);
CMatrix unvectorize(std::span<const cplx> v, std::size_t dim);

} // namespace nosig
