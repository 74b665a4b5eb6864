#include "nosig/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nosig/errors.hpp"

namespace nosig {

namespace {

std::string shape(const CMatrix &m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const CMatrix &a, const CMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw StructuralError(std::string(what) + ": shape mismatch " + shape(a) + " vs " + shape(b));
    }
}

} // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw StructuralError("CMatrix: " + std::to_string(data_.size()) + " entries for shape " +
                              std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (!all_finite()) {
        throw DomainError("CMatrix: non-finite entry");
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw StructuralError("CMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

CMatrix CMatrix::zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

CMatrix CMatrix::diagonal(std::span<const double> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

CMatrix CMatrix::outer(std::span<const cplx> v, std::span<const cplx> w) {
    CMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            m(i, j) = v[i] * std::conj(w[j]);
        }
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            m(j, i) = std::conj((*this)(i, j));
        }
    }
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            m(j, i) = (*this)(i, j);
        }
    }
    return m;
}

CMatrix CMatrix::conj() const {
    CMatrix m = *this;
    for (auto &z : m.data_) {
        z = std::conj(z);
    }
    return m;
}

cplx CMatrix::trace() const {
    if (!is_square()) {
        throw StructuralError("trace of non-square " + shape(*this));
    }
    cplx acc = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        acc += (*this)(i, i);
    }
    return acc;
}

double CMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto &z : data_) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

double CMatrix::max_abs() const {
    double best = 0.0;
    for (const auto &z : data_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

bool CMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx &z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

CMatrix &CMatrix::operator+=(const CMatrix &o) {
    require_same_shape(*this, o, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += o.data_[k];
    }
    return *this;
}

CMatrix &CMatrix::operator-=(const CMatrix &o) {
    require_same_shape(*this, o, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= o.data_[k];
    }
    return *this;
}

CMatrix &CMatrix::operator*=(cplx s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix &b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix &b) { return a -= b; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows()) {
        throw StructuralError("matrix product: " + shape(a) + " * " + shape(b));
    }
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

std::vector<cplx> matvec(const CMatrix &m, std::span<const cplx> v) {
    if (m.cols() != v.size()) {
        throw StructuralError("matrix-vector product: " + shape(m) + " * " + std::to_string(v.size()));
    }
    std::vector<cplx> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[i] += m(i, j) * v[j];
        }
    }
    return out;
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        best = std::max(best, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return best;
}

cplx trace_of_product(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw StructuralError("trace_of_product: " + shape(a) + " * " + shape(b));
    }
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            acc += a(i, k) * b(k, i);
        }
    }
    return acc;
}

bool is_hermitian(const CMatrix &m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

CMatrix tensor_product(const CMatrix &a, const CMatrix &b) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > kMaxDim || cols > kMaxDim) {
        throw SizeError("tensor_product: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds the " + std::to_string(kMaxDim) + "x" + std::to_string(kMaxDim) +
                        " workspace");
    }
    CMatrix out(rows, cols);
    for (std::size_t ia = 0; ia < a.rows(); ++ia) {
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cplx s = a(ia, ja);
            for (std::size_t ib = 0; ib < b.rows(); ++ib) {
                for (std::size_t jb = 0; jb < b.cols(); ++jb) {
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
                }
            }
        }
    }
    return out;
}

CMatrix tensor_power(const CMatrix &a, std::size_t n) {
    if (n == 0) {
        return CMatrix::identity(1);
    }
    CMatrix out = a;
    for (std::size_t k = 1; k < n; ++k) {
        out = tensor_product(out, a);
    }
    return out;
}

CMatrix partial_trace(const CMatrix &m, std::span<const std::size_t> subsystem_dims,
                      std::size_t traced_index) {
    if (!m.is_square()) {
        throw StructuralError("partial_trace: non-square " + shape(m));
    }
    if (traced_index >= subsystem_dims.size()) {
        throw StructuralError("partial_trace: traced index " + std::to_string(traced_index) + " out of " +
                              std::to_string(subsystem_dims.size()) + " subsystems");
    }
    const std::size_t total = std::accumulate(subsystem_dims.begin(), subsystem_dims.end(), std::size_t{1},
                                              std::multiplies<>());
    if (total != m.rows() || std::find(subsystem_dims.begin(), subsystem_dims.end(), 0U) != subsystem_dims.end()) {
        throw StructuralError("partial_trace: subsystem dimensions multiply to " + std::to_string(total) +
                              ", matrix is " + shape(m));
    }
    const std::size_t left = std::accumulate(subsystem_dims.begin(), subsystem_dims.begin() + traced_index,
                                             std::size_t{1}, std::multiplies<>());
    const std::size_t mid = subsystem_dims[traced_index];
    const std::size_t right = total / (left * mid);
    const std::size_t out_dim = left * right;

    CMatrix out(out_dim, out_dim);
    for (std::size_t lr = 0; lr < left; ++lr) {
        for (std::size_t rr = 0; rr < right; ++rr) {
            for (std::size_t lc = 0; lc < left; ++lc) {
                for (std::size_t rc = 0; rc < right; ++rc) {
                    cplx acc = 0.0;
                    for (std::size_t k = 0; k < mid; ++k) {
                        acc += m((lr * mid + k) * right + rr, (lc * mid + k) * right + rc);
                    }
                    out(lr * right + rr, lc * right + rc) = acc;
                }
            }
        }
    }
    return out;
}

CMatrix partial_trace(const CMatrix &m, std::initializer_list<std::size_t> subsystem_dims,
                      std::size_t traced_index) {
    return partial_trace(m, std::span<const std::size_t>(subsystem_dims.begin(), subsystem_dims.size()),
                         traced_index);
}

HermEig herm_eig(const CMatrix &m) {
    if (!is_hermitian(m)) {
        throw ContractError("herm_eig: matrix is not Hermitian within 1e-10");
    }
    const std::size_t n = m.rows();
    CMatrix a = m;
    // Symmetrize so the rotations act on an exactly Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    CMatrix v = CMatrix::identity(n);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (std::sqrt(off) <= 1e-16 * scale) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= 1e-20 * scale) {
                    continue;
                }
                // Phase-rotate q so that a_pq becomes real, then apply a real
                // Jacobi rotation to the 2x2 block. The combined unitary on
                // columns (p, q) is U = diag(1, e^{-i phi}) R.
                const cplx phase = std::conj(a(p, q)) / r; // e^{-i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx upp = c;
                const cplx upq = s;
                const cplx uqp = -s * phase;
                const cplx uqq = c * phase;

                // a <- a U (columns p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                // a <- U^dagger a (rows p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
    HermEig out{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

std::vector<double> herm_eigenvalues(const CMatrix &m) { return herm_eig(m).values; }

double min_eigenvalue(const CMatrix &m) {
    const auto values = herm_eigenvalues(m);
    return values.empty() ? 0.0 : values.back();
}

double trace_norm(const CMatrix &m) {
    double acc = 0.0;
    for (double lambda : herm_eigenvalues(m)) {
        acc += std::abs(lambda);
    }
    return acc;
}

namespace pauli {

const CMatrix &I() {
    static const CMatrix m{{1, 0}, {0, 1}};
    return m;
}
const CMatrix &X() {
    static const CMatrix m{{0, 1}, {1, 0}};
    return m;
}
const CMatrix &Y() {
    static const CMatrix m{{0, cplx{0, -1}}, {cplx{0, 1}, 0}};
    return m;
}
const CMatrix &Z() {
    static const CMatrix m{{1, 0}, {0, -1}};
    return m;
}
const CMatrix &by_index(std::size_t j) {
    switch (j) {
    case 0:
        return X();
    case 1:
        return Y();
    case 2:
        return Z();
    default:
        throw StructuralError("pauli::by_index: index " + std::to_string(j) + " not in {0,1,2}");
    }
}

} // namespace pauli

} // namespace nosig
