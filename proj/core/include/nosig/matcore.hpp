#pragma once

/**
 * @file
 * Dense complex matrices for systems of one to four qubits.
 *
 * Storage is row-major. Tensor factors are ordered left to right: in a
 * bipartite operator, subsystem index 0 is the leftmost factor (Alice) and
 * index 1 is Bob. Every module in the library follows this convention.
 */

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nosig {

using cplx = std::complex<double>;

/// Largest row or column count a tensor product may produce.
inline constexpr std::size_t kMaxDim = 16;

/// Entrywise tolerance for |m - m^dagger| in Hermiticity checks.
inline constexpr double kHermitianTol = 1e-10;

class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    /// Row-wise nested initializer, e.g. {{1, 0}, {0, -1}}.
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zeros(std::size_t rows, std::size_t cols);
    static CMatrix diagonal(std::span<const double> diag);
    /// |v><w|
    static CMatrix outer(std::span<const cplx> v, std::span<const cplx> w);
    static CMatrix projector(std::span<const cplx> v) { return outer(v, v); }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<const cplx> entries() const noexcept { return data_; }
    [[nodiscard]] std::span<cplx> entries() noexcept { return data_; }

    [[nodiscard]] CMatrix adjoint() const;
    [[nodiscard]] CMatrix transpose() const;
    [[nodiscard]] CMatrix conj() const;
    [[nodiscard]] cplx trace() const;
    [[nodiscard]] double frobenius_norm() const;
    /// Largest |a_ij|.
    [[nodiscard]] double max_abs() const;
    [[nodiscard]] bool all_finite() const;

    CMatrix &operator+=(const CMatrix &o);
    CMatrix &operator-=(const CMatrix &o);
    CMatrix &operator*=(cplx s);

    friend bool operator==(const CMatrix &, const CMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix &b);
CMatrix operator-(CMatrix a, const CMatrix &b);
CMatrix operator*(CMatrix a, cplx s);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(const CMatrix &a, const CMatrix &b);

/// Matrix-vector product.
std::vector<cplx> matvec(const CMatrix &m, std::span<const cplx> v);

/// max_ij |a_ij - b_ij|; throws StructuralError on shape mismatch.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

/// Tr(a b) without forming the product.
cplx trace_of_product(const CMatrix &a, const CMatrix &b);

bool is_hermitian(const CMatrix &m, double tol = kHermitianTol);

/// Kronecker product a (x) b; row index is (i_a, i_b) with i_b fastest.
/// Throws SizeError if either dimension of the result exceeds kMaxDim.
CMatrix tensor_product(const CMatrix &a, const CMatrix &b);
CMatrix tensor_power(const CMatrix &a, std::size_t n);

/// Traces out factor `traced_index` of a square operator on the tensor
/// product space with factor dimensions `subsystem_dims`.
CMatrix partial_trace(const CMatrix &m, std::span<const std::size_t> subsystem_dims,
                      std::size_t traced_index);
CMatrix partial_trace(const CMatrix &m, std::initializer_list<std::size_t> subsystem_dims,
                      std::size_t traced_index);

struct HermEig {
    std::vector<double> values; ///< descending
    CMatrix vectors;            ///< column k pairs with values[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws ContractError when m is not Hermitian within
/// kHermitianTol.
HermEig herm_eig(const CMatrix &m);

/// Eigenvalues only, descending.
std::vector<double> herm_eigenvalues(const CMatrix &m);

double min_eigenvalue(const CMatrix &m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const CMatrix &m);

/// f(m) = V f(diag) V^dagger for Hermitian m.
template <class Fn> CMatrix herm_function(const CMatrix &m, Fn &&fn) {
    const HermEig eig = herm_eig(m);
    const std::size_t n = m.rows();
    CMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = fn(eig.values[k]);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = eig.vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += vik * std::conj(eig.vectors(j, k));
            }
        }
    }
    return out;
}

namespace pauli {
const CMatrix &I();
const CMatrix &X();
const CMatrix &Y();
const CMatrix &Z();
/// {X, Y, Z}
const CMatrix &by_index(std::size_t j);
} // namespace pauli

} // namespace nosig
