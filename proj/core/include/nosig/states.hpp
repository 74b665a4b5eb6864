#pragma once

/**
 * @file
 * Qubit and two-qubit states, Bloch-vector conversions, and Alice's
 * projective measurement that leaves Bob with a conditional ensemble.
 *
 * Alice is always tensor factor 0 and Bob is factor 1.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "nosig/matcore.hpp"

namespace nosig {

/// Tolerance on |s| - 1 when deciding a Bloch vector is pure or admissible.
inline constexpr double kBlochTol = 1e-10;
/// Density matrix validation tolerance (Hermiticity, trace, min eigenvalue).
inline constexpr double kStateTol = 1e-10;
/// Measurement branches below this probability are treated as absent.
inline constexpr double kZeroBranchProb = 1e-12;

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }
    [[nodiscard]] double operator[](std::size_t j) const { return j == 0 ? x : (j == 1 ? y : z); }
    [[nodiscard]] bool is_pure(double tol = kBlochTol) const { return std::abs(norm() - 1.0) <= tol; }
    [[nodiscard]] BlochVector normalized() const;
    [[nodiscard]] double dot(const BlochVector &o) const { return x * o.x + y * o.y + z * o.z; }

    friend BlochVector operator-(const BlochVector &s) { return {-s.x, -s.y, -s.z}; }
    friend BlochVector operator*(double a, const BlochVector &s) { return {a * s.x, a * s.y, a * s.z}; }
    friend BlochVector operator+(const BlochVector &a, const BlochVector &b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend bool operator==(const BlochVector &, const BlochVector &) = default;
};

inline constexpr BlochVector kAxisX{1.0, 0.0, 0.0};
inline constexpr BlochVector kAxisY{0.0, 1.0, 0.0};
inline constexpr BlochVector kAxisZ{0.0, 0.0, 1.0};

/// Validated density operator on one or more qubits.
class DensityMatrix {
  public:
    /// Throws ContractError unless `mat` is Hermitian, unit-trace and PSD
    /// within kStateTol, with a power-of-two dimension.
    explicit DensityMatrix(CMatrix mat);

    [[nodiscard]] const CMatrix &mat() const noexcept { return mat_; }
    [[nodiscard]] std::size_t dim() const noexcept { return mat_.rows(); }
    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    /// Tr(rho^2)
    [[nodiscard]] double purity() const;
    [[nodiscard]] bool is_pure(double tol = kStateTol) const { return std::abs(purity() - 1.0) <= tol; }

  private:
    CMatrix mat_;
    std::size_t num_qubits_ = 0;
};

/// Two-qubit shared state; Alice holds factor 0, Bob factor 1.
class BipartiteState {
  public:
    explicit BipartiteState(DensityMatrix rho);
    explicit BipartiteState(CMatrix mat) : BipartiteState(DensityMatrix(std::move(mat))) {}

    [[nodiscard]] const DensityMatrix &rho() const noexcept { return rho_; }
    [[nodiscard]] const CMatrix &mat() const noexcept { return rho_.mat(); }
    [[nodiscard]] CMatrix alice_marginal() const;
    [[nodiscard]] CMatrix bob_marginal() const;

  private:
    DensityMatrix rho_;
};

struct Branch {
    double probability = 0.0;
    /// Conditional state; a maximally mixed placeholder when `absent`.
    DensityMatrix state;
    /// Probability below kZeroBranchProb: carried but excluded from averages.
    bool absent = false;
};

/// Bob's post-measurement ensemble, one branch per outcome of Alice.
class ConditionalEnsemble {
  public:
    /// Throws ContractError unless the probabilities sum to one within 1e-10
    /// and all branch states share a dimension.
    explicit ConditionalEnsemble(std::vector<Branch> branches);

    [[nodiscard]] const std::vector<Branch> &branches() const noexcept { return branches_; }
    [[nodiscard]] std::size_t dim() const;
    /// sum_b p_b rho_b over present branches.
    [[nodiscard]] CMatrix average() const;

  private:
    std::vector<Branch> branches_;
};

/// (I + s.sigma)/2. Throws DomainError for |s| > 1 + 1e-10.
DensityMatrix bloch_to_density(const BlochVector &s);
/// s_j = Tr(rho sigma_j) for a single-qubit operator.
BlochVector density_to_bloch(const CMatrix &rho);
inline BlochVector density_to_bloch(const DensityMatrix &rho) { return density_to_bloch(rho.mat()); }

/// (|01> - |10>)/sqrt(2)
BipartiteState singlet();

/// cos(theta)|01> - sin(theta)|10>, theta in [0, pi/2]. theta = pi/4 is the
/// singlet; theta = 0 is the product |01>.
BipartiteState partially_entangled(double theta);

/// Pure state |psi><psi| from a (not necessarily normalized) ket.
DensityMatrix pure_state(std::span<const cplx> ket);

/// Alice measures her qubit along unit vector n. Branch 0 is outcome +n,
/// branch 1 is -n. Throws DomainError for non-unit n.
ConditionalEnsemble measure_alice(const BipartiteState &rho, const BlochVector &n);

/// (I + n.sigma)/2 without the density-matrix validation.
CMatrix bloch_projector(const BlochVector &n);

} // namespace nosig
