#include "nosig/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nosig/errors.hpp"
#include "nosig/random.hpp"

namespace nosig {

namespace {

// Pure decomposition of a qubit state with Bloch vector r along direction u:
// r = w_a a + w_b b with a, b on the sphere.
struct PureDecomposition {
    double weight_a;
    BlochVector a;
    double weight_b;
    BlochVector b;
};

PureDecomposition decompose_along(const BlochVector &r, const BlochVector &u) {
    const double ru = r.dot(u);
    const double disc = std::sqrt(ru * ru - r.dot(r) + 1.0);
    const double alpha = -ru + disc; // a = r + alpha u
    const double beta = ru + disc;   // b = r - beta u
    return {beta / (alpha + beta), (r + alpha * u).normalized(), alpha / (alpha + beta),
            (r + (-beta) * u).normalized()};
}

CMatrix decomposition_output(const LocalMap &map, const PureDecomposition &d) {
    return d.weight_a * apply_to_density(map, bloch_to_density(d.a)) +
           d.weight_b * apply_to_density(map, bloch_to_density(d.b));
}

std::vector<DensityMatrix> sample_inputs(const LocalMap &map, int count, Rng &rng) {
    std::vector<DensityMatrix> inputs;
    inputs.reserve(static_cast<std::size_t>(count));
    const std::size_t d = input_dim(map);
    for (int k = 0; k < count; ++k) {
        if (is_pure_state_defined(map)) {
            inputs.push_back(bloch_to_density(rng.unit_vector()));
        } else {
            inputs.push_back(random_mixed_state(d, rng));
        }
    }
    return inputs;
}

} // namespace

ChoiMatrix::ChoiMatrix(CMatrix mat, std::size_t d_in, std::size_t d_out)
    : mat_(std::move(mat)), d_in_(d_in), d_out_(d_out) {
    if (mat_.rows() != d_in * d_out || !mat_.is_square()) {
        throw StructuralError("ChoiMatrix dimension does not match d_in * d_out");
    }
}

double ChoiMatrix::min_eigenvalue() const { return nosig::min_eigenvalue(mat_); }

CMatrix ChoiMatrix::output_trace() const { return partial_trace(mat_, {d_out_, d_in_}, 0); }

bool ChoiMatrix::is_trace_preserving(double tol) const {
    return max_abs_diff(output_trace(), CMatrix::identity(d_in_)) <= tol;
}

std::string to_string(MapRegion region) {
    switch (region) {
    case MapRegion::QM:
        return "QM";
    case MapRegion::LinearNonpositiveNoSignal:
        return "LINEAR_NONPOSITIVE_NOSIGNAL";
    case MapRegion::Nonlinear:
        return "NONLINEAR";
    case MapRegion::NotTracePreserving:
        return "NOT_TRACE_PRESERVING";
    }
    return "?";
}

LinearityResult test_linearity(const LocalMap &map, int trials, std::uint64_t seed) {
    trials = std::max(trials, 1);
    Rng rng(seed);
    double worst = 0.0;

    if (has_linear_representation(map)) {
        const std::size_t d = input_dim(map);
        std::vector<DensityMatrix> states;
        std::vector<double> weights;
        double total = 0.0;
        for (int k = 0; k < 3; ++k) {
            states.push_back(random_mixed_state(d, rng));
            weights.push_back(rng.uniform() + 0.1);
            total += weights.back();
        }
        CMatrix mixed(d, d);
        CMatrix branchwise(output_dim(map), output_dim(map));
        for (std::size_t k = 0; k < states.size(); ++k) {
            mixed += (weights[k] / total) * states[k].mat();
            branchwise += (weights[k] / total) * apply_to_density(map, states[k]);
        }
        worst = trace_norm(branchwise - apply_linear(map, mixed));
        return {worst <= kLinearityTol, worst};
    }

    for (int trial = 0; trial < trials; ++trial) {
        PureDecomposition first{};
        PureDecomposition second{};
        if (trial == 0) {
            first = {0.5, kAxisZ, 0.5, -kAxisZ};
            second = {0.5, kAxisX, 0.5, -kAxisX};
        } else {
            const BlochVector r = 0.95 * rng.ball_vector();
            first = decompose_along(r, rng.unit_vector());
            second = decompose_along(r, rng.unit_vector());
        }
        worst = std::max(worst, trace_norm(decomposition_output(map, first) - decomposition_output(map, second)));
    }
    return {worst <= kLinearityTol, worst};
}

TracePreservationResult test_trace_preservation(const LocalMap &map, int trials, std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (const auto &rho : sample_inputs(map, std::max(trials, 1), rng)) {
        worst = std::max(worst, std::abs(apply_to_density(map, rho).trace() - 1.0));
    }
    return {worst <= kTraceTol, worst};
}

PositivityResult test_positivity(const LocalMap &map, int samples, std::uint64_t seed) {
    if (samples < 100) {
        throw ContractError("test_positivity needs at least 100 samples");
    }
    Rng rng(seed);
    const std::size_t d = input_dim(map);
    struct Candidate {
        DensityMatrix rho;
        std::optional<BlochVector> bloch;
    };
    std::vector<Candidate> inputs;
    inputs.reserve(static_cast<std::size_t>(samples) + 6);
    if (d == 2) {
        for (const BlochVector &axis : {kAxisX, kAxisY, kAxisZ}) {
            inputs.push_back({bloch_to_density(axis), axis});
            inputs.push_back({bloch_to_density(-axis), -axis});
        }
        for (int k = 0; k < samples; ++k) {
            const BlochVector s = rng.unit_vector();
            inputs.push_back({bloch_to_density(s), s});
        }
    } else {
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<cplx> ket(d);
            ket[i] = 1.0;
            inputs.push_back({pure_state(ket), std::nullopt});
        }
        for (int k = 0; k < samples; ++k) {
            inputs.push_back({random_pure_state(d, rng), std::nullopt});
        }
    }

    PositivityResult result;
    result.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const auto &in : inputs) {
        const CMatrix out = apply_to_density(map, in.rho);
        const double lo = min_eigenvalue(0.5 * (out + out.adjoint()));
        if (lo < result.min_eigenvalue) {
            result.min_eigenvalue = lo;
            result.witness = in.bloch;
            result.witness_input = in.rho.mat();
        }
    }
    result.positive = result.min_eigenvalue >= -kPsdTol;
    return result;
}

ChoiMatrix choi_matrix(const LocalMap &map) {
    if (!has_linear_representation(map)) {
        throw ContractError("choi_matrix: " + describe(map) + " is not a linear representation");
    }
    const std::size_t d_in = input_dim(map);
    const std::size_t d_out = output_dim(map);
    CMatrix j(d_in * d_out, d_in * d_out);
    for (std::size_t a = 0; a < d_in; ++a) {
        for (std::size_t b = 0; b < d_in; ++b) {
            CMatrix e(d_in, d_in);
            e(a, b) = 1.0;
            j += tensor_product(apply_linear(map, e), e);
        }
    }
    return ChoiMatrix(std::move(j), d_in, d_out);
}

TransferMap linear_extension(const LocalMap &map) {
    if (input_dim(map) != 2) {
        throw ContractError("linear_extension needs a qubit-input map");
    }
    const auto out = [&](const BlochVector &s) { return apply_to_density(map, bloch_to_density(s)); };
    const CMatrix on_identity = out(kAxisZ) + out(-kAxisZ);
    const CMatrix on_x = out(kAxisX) - out(-kAxisX);
    const CMatrix on_y = out(kAxisY) - out(-kAxisY);
    const CMatrix on_z = out(kAxisZ) - out(-kAxisZ);
    const cplx i{0.0, 1.0};
    // |0><0| = (I + Z)/2, |1><1| = (I - Z)/2, |0><1| = (X + iY)/2, |1><0| = (X - iY)/2
    return TransferMap::from_linear(
        [&](const CMatrix &e) {
            if (e(0, 0) != cplx{}) {
                return 0.5 * (on_identity + on_z);
            }
            if (e(1, 1) != cplx{}) {
                return 0.5 * (on_identity - on_z);
            }
            if (e(0, 1) != cplx{}) {
                return 0.5 * (on_x + i * on_y);
            }
            return 0.5 * (on_x - i * on_y);
        },
        2, output_dim(map));
}

KrausMap random_channel(std::size_t d_in, std::size_t d_out, std::size_t kraus_rank, std::uint64_t seed) {
    if (kraus_rank < 1 || d_in < 1 || d_out < 1) {
        throw DomainError("random_channel: dimensions and Kraus rank must be >= 1");
    }
    if (d_out * kraus_rank < d_in) {
        throw DomainError("random_channel: d_out * kraus_rank must be >= d_in for an isometry");
    }
    Rng rng(seed);
    const CMatrix v = random_isometry(d_out * kraus_rank, d_in, rng);
    std::vector<CMatrix> ops;
    ops.reserve(kraus_rank);
    for (std::size_t k = 0; k < kraus_rank; ++k) {
        CMatrix op(d_out, d_in);
        for (std::size_t r = 0; r < d_out; ++r) {
            for (std::size_t c = 0; c < d_in; ++c) {
                op(r, c) = v(k * d_out + r, c);
            }
        }
        ops.push_back(std::move(op));
    }
    return KrausMap(std::move(ops));
}

TransferMap random_transfer_map(std::size_t d_in, std::size_t d_out, std::uint64_t seed, bool trace_preserving) {
    Rng rng(seed);
    CMatrix j = random_hermitian(d_in * d_out, rng);
    if (trace_preserving) {
        const CMatrix defect = CMatrix::identity(d_in) - partial_trace(j, {d_out, d_in}, 0);
        j += (1.0 / static_cast<double>(d_out)) * tensor_product(CMatrix::identity(d_out), defect);
    }
    return TransferMap::from_choi(j, d_in, d_out);
}

MapClassification classify_map(const LocalMap &map, const ClassifyOptions &options) {
    MapClassification c;
    const LinearityResult lin = test_linearity(map, options.linearity_trials, options.seed);
    c.is_linear = lin.linear;
    c.linearity_deviation = lin.max_deviation;

    const TracePreservationResult tp = test_trace_preservation(map, options.trace_trials, options.seed + 1);
    c.is_trace_preserving = tp.preserving;
    c.trace_deviation = tp.max_deviation;

    const PositivityResult pos = test_positivity(map, options.positivity_samples, options.seed + 2);
    c.is_positive = pos.positive;
    c.min_output_eigenvalue = pos.min_eigenvalue;
    c.positivity_witness = pos.witness;

    if (has_linear_representation(map)) {
        const double lo = choi_matrix(map).min_eigenvalue();
        c.min_choi_eigenvalue = lo;
        c.is_completely_positive = lo >= -kPsdTol;
    } else if (c.is_linear) {
        const double lo = choi_matrix(linear_extension(map)).min_eigenvalue();
        c.min_choi_eigenvalue = lo;
        c.is_completely_positive = lo >= -kPsdTol;
    }

    if (!c.is_trace_preserving) {
        c.region = MapRegion::NotTracePreserving;
    } else if (!c.is_linear) {
        c.region = MapRegion::Nonlinear;
    } else if (c.is_completely_positive.value_or(false)) {
        c.region = MapRegion::QM;
    } else {
        c.region = MapRegion::LinearNonpositiveNoSignal;
    }
    return c;
}

} // namespace nosig
