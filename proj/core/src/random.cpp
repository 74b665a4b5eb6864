#include "nosig/random.hpp"

#include <cmath>

#include "nosig/errors.hpp"

namespace nosig {

BlochVector Rng::unit_vector() {
    for (;;) {
        const BlochVector g{normal(), normal(), normal()};
        const double n = g.norm();
        if (n > 1e-12) {
            return (1.0 / n) * g;
        }
    }
}

BlochVector Rng::ball_vector() { return std::cbrt(uniform()) * unit_vector(); }

CMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    CMatrix m(rows, cols);
    for (auto &z : m.entries()) {
        z = rng.complex_normal();
    }
    return m;
}

CMatrix random_hermitian(std::size_t dim, Rng &rng) {
    const CMatrix g = random_ginibre(dim, dim, rng);
    return 0.5 * (g + g.adjoint());
}

CMatrix random_isometry(std::size_t rows, std::size_t cols, Rng &rng) {
    if (cols > rows) {
        throw StructuralError("random_isometry: more columns than rows");
    }
    CMatrix m = random_ginibre(rows, cols, rng);
    for (std::size_t k = 0; k < cols; ++k) {
        // Two projection passes keep the columns orthonormal to rounding.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) {
                cplx overlap = 0.0;
                for (std::size_t i = 0; i < rows; ++i) {
                    overlap += std::conj(m(i, j)) * m(i, k);
                }
                for (std::size_t i = 0; i < rows; ++i) {
                    m(i, k) -= overlap * m(i, j);
                }
            }
        }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            norm2 += std::norm(m(i, k));
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < rows; ++i) {
            m(i, k) *= inv;
        }
    }
    return m;
}

DensityMatrix random_pure_state(std::size_t dim, Rng &rng) {
    std::vector<cplx> ket(dim);
    for (auto &a : ket) {
        a = rng.complex_normal();
    }
    return pure_state(ket);
}

DensityMatrix random_mixed_state(std::size_t dim, Rng &rng) {
    const CMatrix g = random_ginibre(dim, dim, rng);
    CMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

} // namespace nosig
