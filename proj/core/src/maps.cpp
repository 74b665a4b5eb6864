#include "nosig/maps.hpp"

#include <cmath>
#include <sstream>

#include "nosig/errors.hpp"

namespace nosig {

namespace {

constexpr double kMapTol = 1e-10;

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

// Fixed two-qubit operators of the clone output form.
struct CloneBasis {
    CMatrix identity = CMatrix::identity(4);
    CMatrix correlation; // sum_j sigma_j (x) sigma_j
    std::array<CMatrix, 3> local; // sigma_j (x) I + I (x) sigma_j

    CloneBasis() : correlation(4, 4) {
        for (std::size_t j = 0; j < 3; ++j) {
            const CMatrix &s = pauli::by_index(j);
            correlation += tensor_product(s, s);
            local[j] = tensor_product(s, pauli::I()) + tensor_product(pauli::I(), s);
        }
    }
};

const CloneBasis &clone_basis() {
    static const CloneBasis basis;
    return basis;
}

// 1/4 [tr I(x)I + sum_j w_j (sigma_j(x)I + I(x)sigma_j) + tr * t * sum_j sigma_j(x)sigma_j]
CMatrix clone_output(cplx tr, const std::array<cplx, 3> &weights, double t) {
    const CloneBasis &b = clone_basis();
    CMatrix out = tr * b.identity;
    out += (tr * t) * b.correlation;
    for (std::size_t j = 0; j < 3; ++j) {
        out += weights[j] * b.local[j];
    }
    out *= 0.25;
    return out;
}

void require_input_dim(std::size_t expected, std::size_t got, const char *who) {
    if (expected != got) {
        throw StructuralError(std::string(who) + ": input dimension " + std::to_string(got) + ", map expects " +
                              std::to_string(expected));
    }
}

void require_pure_qubit(const DensityMatrix &rho, const char *who) {
    require_input_dim(2, rho.dim(), who);
    if (!rho.is_pure()) {
        throw ContractError(std::string(who) + ": map is defined on pure states only; input purity " +
                            std::to_string(rho.purity()));
    }
}

CMatrix apply_kraus(const KrausMap &k, const CMatrix &op) {
    require_input_dim(k.d_in(), op.rows(), "KrausMap");
    CMatrix out(k.d_out(), k.d_out());
    for (const auto &op_k : k.ops()) {
        out += op_k * op * op_k.adjoint();
    }
    return out;
}

CMatrix apply_transfer(const TransferMap &m, const CMatrix &op) {
    require_input_dim(m.d_in(), op.rows(), "TransferMap");
    const std::vector<cplx> v = vectorize(op);
    return unvectorize(matvec(m.super_mat(), v), m.d_out());
}

CMatrix apply_affine(const BlochAffineCloneMap &m, const CMatrix &op) {
    require_input_dim(2, op.rows(), "BlochAffineCloneMap");
    std::array<cplx, 3> w;
    for (std::size_t j = 0; j < 3; ++j) {
        w[j] = m.eta() * trace_of_product(pauli::by_index(j), op);
    }
    return clone_output(op.trace(), w, m.t());
}

CMatrix apply_nonlinear(const BlochNonlinearCloneMap &m, const DensityMatrix &rho) {
    require_pure_qubit(rho, "BlochNonlinearCloneMap");
    const BlochVector s = density_to_bloch(rho);
    std::array<cplx, 3> w;
    for (std::size_t j = 0; j < 3; ++j) {
        w[j] = m.f()[j](s[j]);
    }
    return clone_output(1.0, w, m.t());
}

CMatrix apply_pure_branch(const PureBranchMap &m, const DensityMatrix &rho) {
    require_pure_qubit(rho, "PureBranchMap");
    const DensityMatrix perp = orthogonal_pure(rho);
    const auto n = static_cast<std::size_t>(m.n_clones());
    const double f = m.fidelity();
    if (m.variant() == BranchVariant::Mixture) {
        return f * tensor_power(rho.mat(), n) + (1.0 - f) * tensor_power(perp.mat(), n);
    }
    return tensor_power(f * rho.mat() + (1.0 - f) * perp.mat(), n);
}

} // namespace

// ---------------------------------------------------------------------------

KrausMap::KrausMap(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw ContractError("KrausMap needs at least one operator");
    }
    const std::size_t rows = ops_.front().rows();
    const std::size_t cols = ops_.front().cols();
    CMatrix completeness(cols, cols);
    for (const auto &k : ops_) {
        if (k.rows() != rows || k.cols() != cols) {
            throw StructuralError("KrausMap operators have inconsistent shapes");
        }
        completeness += k.adjoint() * k;
    }
    const double dev = max_abs_diff(completeness, CMatrix::identity(cols));
    if (dev > kMapTol) {
        throw ContractError("KrausMap: sum K^dagger K deviates from identity by " + std::to_string(dev));
    }
}

KrausMap KrausMap::identity(std::size_t dim) { return KrausMap({CMatrix::identity(dim)}); }

TransferMap::TransferMap(CMatrix super_mat, std::size_t d_in, std::size_t d_out)
    : super_(std::move(super_mat)), d_in_(d_in), d_out_(d_out) {
    if (super_.rows() != d_out * d_out || super_.cols() != d_in * d_in) {
        throw StructuralError("TransferMap: super-operator is " + std::to_string(super_.rows()) + "x" +
                              std::to_string(super_.cols()) + ", expected " + std::to_string(d_out * d_out) +
                              "x" + std::to_string(d_in * d_in));
    }
    // Hermiticity preservation on the Hermitian basis E_ii, E_ij + E_ji, i(E_ij - E_ji).
    for (std::size_t i = 0; i < d_in; ++i) {
        for (std::size_t j = i; j < d_in; ++j) {
            for (int kind = 0; kind < (i == j ? 1 : 2); ++kind) {
                CMatrix h(d_in, d_in);
                if (i == j) {
                    h(i, i) = 1.0;
                } else if (kind == 0) {
                    h(i, j) = 1.0;
                    h(j, i) = 1.0;
                } else {
                    h(i, j) = cplx{0.0, 1.0};
                    h(j, i) = cplx{0.0, -1.0};
                }
                if (!is_hermitian(apply_transfer(*this, h), kMapTol)) {
                    throw ContractError("TransferMap is not Hermiticity-preserving");
                }
            }
        }
    }
}

TransferMap TransferMap::from_linear(const std::function<CMatrix(const CMatrix &)> &fn, std::size_t d_in,
                                     std::size_t d_out) {
    CMatrix super(d_out * d_out, d_in * d_in);
    for (std::size_t i = 0; i < d_in; ++i) {
        for (std::size_t j = 0; j < d_in; ++j) {
            CMatrix e(d_in, d_in);
            e(i, j) = 1.0;
            const std::vector<cplx> col = vectorize(fn(e));
            for (std::size_t r = 0; r < col.size(); ++r) {
                super(r, i + j * d_in) = col[r];
            }
        }
    }
    return TransferMap(std::move(super), d_in, d_out);
}

TransferMap TransferMap::from_kraus(const KrausMap &k) {
    // vec(K X K^dagger) = (conj(K) (x) K) vec(X) for column stacking.
    CMatrix super(k.d_out() * k.d_out(), k.d_in() * k.d_in());
    for (const auto &op : k.ops()) {
        const CMatrix kc = op.conj();
        for (std::size_t a = 0; a < kc.rows(); ++a) {
            for (std::size_t b = 0; b < kc.cols(); ++b) {
                for (std::size_t c = 0; c < op.rows(); ++c) {
                    for (std::size_t d = 0; d < op.cols(); ++d) {
                        super(a * op.rows() + c, b * op.cols() + d) += kc(a, b) * op(c, d);
                    }
                }
            }
        }
    }
    return TransferMap(std::move(super), k.d_in(), k.d_out());
}

TransferMap TransferMap::from_bloch_affine(const BlochAffineCloneMap &m) {
    return from_linear([&](const CMatrix &e) { return apply_affine(m, e); }, 2, 4);
}

TransferMap TransferMap::from_choi(const CMatrix &choi, std::size_t d_in, std::size_t d_out) {
    if (choi.rows() != d_in * d_out || !choi.is_square()) {
        throw StructuralError("from_choi: Choi matrix dimension does not match d_in * d_out");
    }
    // Block (i, j) of J, with output index outermost, is L(|i><j|).
    CMatrix super(d_out * d_out, d_in * d_in);
    for (std::size_t i = 0; i < d_in; ++i) {
        for (std::size_t j = 0; j < d_in; ++j) {
            for (std::size_t a = 0; a < d_out; ++a) {
                for (std::size_t b = 0; b < d_out; ++b) {
                    super(a + b * d_out, i + j * d_in) = choi(a * d_in + i, b * d_in + j);
                }
            }
        }
    }
    return TransferMap(std::move(super), d_in, d_out);
}

TransferMap TransferMap::scaled(double factor) const { return TransferMap(factor * super_, d_in_, d_out_); }

BlochAffineCloneMap::BlochAffineCloneMap(double eta, double t) : eta_(eta), t_(t) {
    if (!std::isfinite(eta) || !std::isfinite(t)) {
        throw DomainError("BlochAffineCloneMap: eta and t must be finite");
    }
}

ComponentFunction ComponentFunction::power(int k) {
    if (k < 1) {
        throw DomainError("power family needs exponent >= 1, got " + std::to_string(k));
    }
    return ComponentFunction(ComponentFamily::Power, k);
}

double ComponentFunction::operator()(double s) const {
    switch (family_) {
    case ComponentFamily::Power:
        return std::pow(s, exponent_);
    case ComponentFamily::Square:
        return s * s;
    case ComponentFamily::Abs:
        return std::abs(s);
    }
    return 0.0;
}

std::string ComponentFunction::name() const {
    switch (family_) {
    case ComponentFamily::Power:
        return "power(" + std::to_string(exponent_) + ")";
    case ComponentFamily::Square:
        return "square";
    case ComponentFamily::Abs:
        return "abs";
    }
    return "?";
}

BlochNonlinearCloneMap::BlochNonlinearCloneMap(std::array<ComponentFunction, 3> f, double t) : f_(f), t_(t) {
    if (!std::isfinite(t)) {
        throw DomainError("BlochNonlinearCloneMap: t must be finite");
    }
}

PureBranchMap::PureBranchMap(int n_clones, double fidelity, BranchVariant variant)
    : n_clones_(n_clones), fidelity_(fidelity), variant_(variant) {
    if (n_clones < 2 || n_clones > 4) {
        throw DomainError("PureBranchMap: n_clones must be in [2, 4], got " + std::to_string(n_clones));
    }
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw DomainError("PureBranchMap: fidelity must be in [0, 1], got " + std::to_string(fidelity));
    }
}

// ---------------------------------------------------------------------------

std::size_t input_dim(const LocalMap &map) {
    return std::visit(overloaded{[](const KrausMap &k) { return k.d_in(); },
                                 [](const TransferMap &m) { return m.d_in(); },
                                 [](const auto &) -> std::size_t { return 2; }},
                      map);
}

std::size_t output_dim(const LocalMap &map) {
    return std::visit(overloaded{[](const KrausMap &k) { return k.d_out(); },
                                 [](const TransferMap &m) { return m.d_out(); },
                                 [](const PureBranchMap &m) { return std::size_t{1} << m.n_clones(); },
                                 [](const auto &) -> std::size_t { return 4; }},
                      map);
}

std::size_t clone_count(const LocalMap &map) {
    return std::visit(overloaded{[](const PureBranchMap &m) { return static_cast<std::size_t>(m.n_clones()); },
                                 [](const BlochAffineCloneMap &) -> std::size_t { return 2; },
                                 [](const BlochNonlinearCloneMap &) -> std::size_t { return 2; },
                                 [](const auto &) -> std::size_t { return 1; }},
                      map);
}

bool is_pure_state_defined(const LocalMap &map) {
    return std::holds_alternative<BlochNonlinearCloneMap>(map) || std::holds_alternative<PureBranchMap>(map);
}

bool has_linear_representation(const LocalMap &map) { return !is_pure_state_defined(map); }

std::string describe(const LocalMap &map) {
    std::ostringstream os;
    os.precision(12);
    std::visit(overloaded{
                   [&](const KrausMap &k) {
                       os << "kraus(d_in=" << k.d_in() << ", d_out=" << k.d_out() << ", rank=" << k.ops().size()
                          << ")";
                   },
                   [&](const TransferMap &m) { os << "transfer(d_in=" << m.d_in() << ", d_out=" << m.d_out() << ")"; },
                   [&](const BlochAffineCloneMap &m) { os << "bloch_affine(eta=" << m.eta() << ", t=" << m.t() << ")"; },
                   [&](const BlochNonlinearCloneMap &m) {
                       os << "bloch_nonlinear(f=";
                       if (m.is_isotropic()) {
                           os << m.f()[0].name();
                       } else {
                           os << m.f()[0].name() << "," << m.f()[1].name() << "," << m.f()[2].name();
                       }
                       os << ", t=" << m.t() << ")";
                   },
                   [&](const PureBranchMap &m) {
                       os << "pure_branch(N=" << m.n_clones() << ", F=" << m.fidelity() << ", "
                          << (m.variant() == BranchVariant::Mixture ? "mixture" : "factorized") << ")";
                   }},
               map);
    return os.str();
}

CMatrix apply_linear(const LocalMap &map, const CMatrix &op) {
    return std::visit(overloaded{[&](const KrausMap &k) { return apply_kraus(k, op); },
                                 [&](const TransferMap &m) { return apply_transfer(m, op); },
                                 [&](const BlochAffineCloneMap &m) { return apply_affine(m, op); },
                                 [&](const auto &) -> CMatrix {
                                     throw ContractError("apply_linear: " + describe(map) +
                                                         " has no linear extension");
                                 }},
                      map);
}

CMatrix apply_to_density(const LocalMap &map, const DensityMatrix &rho) {
    return std::visit(overloaded{[&](const BlochNonlinearCloneMap &m) { return apply_nonlinear(m, rho); },
                                 [&](const PureBranchMap &m) { return apply_pure_branch(m, rho); },
                                 [&](const auto &) { return apply_linear(map, rho.mat()); }},
                      map);
}

CMatrix apply_to_ensemble(const LocalMap &map, const ConditionalEnsemble &ens) {
    const std::size_t d = output_dim(map);
    CMatrix acc(d, d);
    for (const auto &b : ens.branches()) {
        if (!b.absent) {
            acc += b.probability * apply_to_density(map, b.state);
        }
    }
    return acc;
}

DensityMatrix orthogonal_pure(const DensityMatrix &psi) {
    require_pure_qubit(psi, "orthogonal_pure");
    // Renormalize the Bloch vector so rounding cannot push it outside the ball.
    return bloch_to_density(-density_to_bloch(psi).normalized());
}

CMatrix clone_marginal(const CMatrix &two_clone_output, std::size_t clone_index) {
    if (two_clone_output.rows() != 4 || !two_clone_output.is_square()) {
        throw StructuralError("clone_marginal expects a 4x4 two-clone output");
    }
    if (clone_index > 1) {
        throw StructuralError("clone_marginal: clone index must be 0 or 1");
    }
    return partial_trace(two_clone_output, {2, 2}, 1 - clone_index);
}

CMatrix qubit_marginal(const CMatrix &output, std::size_t n_qubits, std::size_t qubit_index) {
    if (qubit_index >= n_qubits || output.rows() != (std::size_t{1} << n_qubits)) {
        throw StructuralError("qubit_marginal: index or dimension mismatch");
    }
    // Trace out the rightmost remaining factor until only qubit_index is left.
    CMatrix m = output;
    std::vector<std::size_t> dims(n_qubits, 2);
    std::size_t keep = qubit_index;
    while (dims.size() > 1) {
        const std::size_t drop = (dims.size() - 1 != keep) ? dims.size() - 1 : 0;
        m = partial_trace(m, dims, drop);
        dims.pop_back();
        if (drop < keep) {
            --keep;
        }
    }
    return m;
}

std::vector<cplx> vectorize(const CMatrix &rho) {
    std::vector<cplx> v(rho.rows() * rho.cols());
    for (std::size_t j = 0; j < rho.cols(); ++j) {
        for (std::size_t i = 0; i < rho.rows(); ++i) {
            v[i + j * rho.rows()] = rho(i, j);
        }
    }
    return v;
}

CMatrix unvectorize(std::span<const cplx> v, std::size_t dim) {
    if (v.size() != dim * dim) {
        throw StructuralError("unvectorize: length " + std::to_string(v.size()) + " is not " +
                              std::to_string(dim) + "^2");
    }
    CMatrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, j) = v[i + j * dim];
        }
    }
    return m;
}

} // namespace nosig
