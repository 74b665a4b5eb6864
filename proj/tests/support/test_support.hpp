#pragma once

// Test-only oracles. Nothing here calls into the library's numerical
// kernels: eigenvalues come from Eigen, partial traces and Kronecker
// products from explicit index loops.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

#include "nosig/matcore.hpp"

namespace nosig::test {

inline Eigen::MatrixXcd to_eigen(const CMatrix &m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    return e;
}

inline CMatrix from_eigen(const Eigen::MatrixXcd &e) {
    CMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
        }
    }
    return m;
}

/// Eigenvalues of a Hermitian matrix via Eigen, descending.
inline std::vector<double> oracle_eigenvalues(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

inline double oracle_min_eigenvalue(const CMatrix &m) { return oracle_eigenvalues(m).back(); }

inline double oracle_trace_norm(const CMatrix &m) {
    double acc = 0.0;
    for (double v : oracle_eigenvalues(m)) {
        acc += std::abs(v);
    }
    return acc;
}

/// Direct four-index sum for a two-factor partial trace.
inline CMatrix oracle_partial_trace_2(const CMatrix &m, std::size_t da, std::size_t db, int traced) {
    const std::size_t keep = traced == 0 ? db : da;
    const std::size_t sum = traced == 0 ? da : db;
    CMatrix out(keep, keep);
    for (std::size_t i = 0; i < keep; ++i) {
        for (std::size_t j = 0; j < keep; ++j) {
            for (std::size_t k = 0; k < sum; ++k) {
                if (traced == 0) {
                    out(i, j) += m(k * db + i, k * db + j);
                } else {
                    out(i, j) += m(i * db + k, j * db + k);
                }
            }
        }
    }
    return out;
}

/// Kronecker product by explicit loops over all four indices.
inline CMatrix oracle_kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) {
            out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
        }
    }
    return out;
}

inline const std::complex<double> kI{0.0, 1.0};

} // namespace nosig::test
