#include <catch_amalgamated.hpp>

#include <cmath>

#include "nosig/classify.hpp"
#include "nosig/errors.hpp"
#include "nosig/random.hpp"
#include "test_support.hpp"

using namespace nosig;
using Catch::Matchers::WithinAbs;

namespace {

// Smallest eigenvalue of the affine cloner's output over pure inputs.
// Triplet sector: (1 +- 2 eta + t)/4 and (1 + t)/4; singlet sector: (1 - 3t)/4.
double affine_min_output(double eta, double t) {
    return std::min({1.0 - 2.0 * std::abs(eta) + t, 1.0 + t, 1.0 - 3.0 * t}) / 4.0;
}

} // namespace

TEST_CASE("Choi matrix examples", "[classify]") {
    SECTION("identity channel is the unnormalized maximally entangled projector") {
        const ChoiMatrix j = choi_matrix(KrausMap::identity(2));
        const auto ev = test::oracle_eigenvalues(j.mat());
        CHECK_THAT(ev[0], WithinAbs(2.0, 1e-14));
        CHECK_THAT(ev[3], WithinAbs(0.0, 1e-14));
        CHECK(j.is_completely_positive());
        CHECK(j.is_trace_preserving());
    }
    SECTION("affine cloner at (2/3, 1/3) is completely positive") {
        const ChoiMatrix j = choi_matrix(BlochAffineCloneMap(2.0 / 3.0, 1.0 / 3.0));
        CHECK(j.min_eigenvalue() >= -1e-12);
        CHECK(j.is_completely_positive());
        CHECK(max_abs_diff(j.output_trace(), CMatrix::identity(2)) < 1e-14);
    }
    SECTION("affine cloner at (0.8, 1/3) and (0.7, 1/3) is not") {
        CHECK_THAT(choi_matrix(BlochAffineCloneMap(0.8, 1.0 / 3.0)).min_eigenvalue(),
                   WithinAbs(-0.06666666666666667, 1e-12));
        CHECK_THAT(choi_matrix(BlochAffineCloneMap(0.7, 1.0 / 3.0)).min_eigenvalue(),
                   WithinAbs(-0.016666666666666666, 1e-12));
    }
    SECTION("min eigenvalue agrees with the Eigen oracle") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const ChoiMatrix j = choi_matrix(random_transfer_map(2, 4, seed));
            REQUIRE_THAT(j.min_eigenvalue(), WithinAbs(test::oracle_min_eigenvalue(j.mat()), 1e-11));
        }
    }
    SECTION("pure-state-defined maps have no Choi matrix") {
        CHECK_THROWS_AS(choi_matrix(PureBranchMap(2, 1.0, BranchVariant::Mixture)), ContractError);
    }
}

TEST_CASE("Choi trace condition agrees with sampled trace preservation", "[classify][property]") {
    int disagreements = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const bool make_tp = seed % 2 == 0;
        const TransferMap t = random_transfer_map(2, seed % 3 == 0 ? 4 : 2, seed, make_tp);
        const bool by_choi = choi_matrix(t).is_trace_preserving();
        const bool by_samples = test_trace_preservation(t, 8, seed).preserving;
        disagreements += by_choi != by_samples ? 1 : 0;
        REQUIRE(by_choi == make_tp);
    }
    CHECK(disagreements == 0);
}

TEST_CASE("random channels are CP, TP and positive", "[classify][property]") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t d_out = seed % 2 == 0 ? 2 : 4;
        const KrausMap k = random_channel(2, d_out, 1 + seed % 4, seed);
        const ChoiMatrix j = choi_matrix(k);
        REQUIRE(j.min_eigenvalue() >= -1e-9);
        REQUIRE(max_abs_diff(j.output_trace(), CMatrix::identity(2)) < 1e-9);
        REQUIRE(test_positivity(k, 100, seed).positive);
    }
    CHECK_THROWS_AS(random_channel(4, 2, 1, 0), DomainError);
}

TEST_CASE("positivity of the affine cloner", "[classify]") {
    SECTION("sampled minimum matches the closed form") {
        for (const auto &[eta, t] : std::vector<std::pair<double, double>>{
                 {0.7, 1.0 / 3.0}, {2.0 / 3.0, 1.0 / 3.0}, {0.3, 0.6}, {-0.8, 0.1}, {0.0, 1.0}, {1.0, 0.0}}) {
            const PositivityResult r = test_positivity(BlochAffineCloneMap(eta, t), 10000);
            INFO("eta " << eta << " t " << t);
            CHECK_THAT(r.min_eigenvalue, WithinAbs(affine_min_output(eta, t), 1e-12));
        }
    }
    SECTION("witness is reported for a non-positive map") {
        const PositivityResult r = test_positivity(BlochAffineCloneMap(0.7, 1.0 / 3.0), 1000);
        CHECK_FALSE(r.positive);
        CHECK(r.min_eigenvalue < -1e-3);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->is_pure());
        CHECK(min_eigenvalue(apply_to_density(BlochAffineCloneMap(0.7, 1.0 / 3.0), bloch_to_density(*r.witness))) <
              -1e-3);
    }
    SECTION("too few samples is a contract error") {
        CHECK_THROWS_AS(test_positivity(KrausMap::identity(2), 99), ContractError);
    }
}

TEST_CASE("affine positivity grid follows the exact boundary", "[classify][property]") {
    // Positive iff eta <= (1 + t)/2 and t <= 1/3; cells within 1e-3 of either
    // boundary are skipped.
    int checked = 0;
    for (int i = 0; i < 20; ++i) {
        for (int k = 0; k < 20; ++k) {
            const double eta = i / 19.0;
            const double t = k / 19.0;
            if (std::abs(eta - (1 + t) / 2) <= 1e-3 || std::abs(t - 1.0 / 3.0) <= 1e-3) {
                continue;
            }
            const bool predicted = eta < (1 + t) / 2 && t < 1.0 / 3.0;
            INFO("eta " << eta << " t " << t);
            REQUIRE(test_positivity(BlochAffineCloneMap(eta, t), 200).positive == predicted);
            ++checked;
        }
    }
    CHECK(checked > 380);
}

TEST_CASE("linearity test", "[classify]") {
    SECTION("linear representations pass") {
        CHECK(test_linearity(random_channel(2, 4, 2, 3), 16).linear);
        CHECK(test_linearity(BlochAffineCloneMap(0.9, 0.5), 16).linear);
        CHECK(test_linearity(random_transfer_map(2, 2, 4), 16).linear);
    }
    SECTION("odd powers: antipodal decompositions agree, general ones do not") {
        const LocalMap cubic = BlochNonlinearCloneMap::isotropic(ComponentFunction::power(3), 0.0);
        CHECK(test_linearity(cubic, 1).max_deviation < 1e-14);
        const auto r = test_linearity(cubic, 64);
        CHECK_FALSE(r.linear);
        CHECK(r.max_deviation > 1e-3);
        CHECK(test_linearity(BlochNonlinearCloneMap::isotropic(ComponentFunction::power(1), 0.2), 64).linear);
    }
    SECTION("square map is not") {
        const auto r = test_linearity(BlochNonlinearCloneMap::isotropic(ComponentFunction::square(), 0.0), 64);
        CHECK_FALSE(r.linear);
        CHECK(r.max_deviation > 1e-3);
    }
    SECTION("pure-branch maps: I/2 decompositions differ at every F") {
        for (const double f : {0.0, 0.3, 0.5, 1.0}) {
            INFO("F = " << f);
            const auto mix = test_linearity(PureBranchMap(2, f, BranchVariant::Mixture), 1);
            CHECK_THAT(mix.max_deviation, WithinAbs(1.0, 1e-12));
        }
        CHECK_THAT(test_linearity(PureBranchMap(2, 0.3, BranchVariant::Factorized), 1).max_deviation,
                   WithinAbs(0.16, 1e-12));
        CHECK(test_linearity(PureBranchMap(2, 0.5, BranchVariant::Factorized), 1).max_deviation < 1e-14);
    }
}

TEST_CASE("linear_extension reproduces linear pure-state maps", "[classify]") {
    const LocalMap nl = BlochNonlinearCloneMap::isotropic(ComponentFunction::power(1), 0.25);
    const TransferMap ext = linear_extension(nl);
    const BlochAffineCloneMap affine(1.0, 0.25);
    CHECK(max_abs_diff(ext.super_mat(), TransferMap::from_bloch_affine(affine).super_mat()) < 1e-14);
    CHECK_THROWS_AS(linear_extension(KrausMap::identity(4)), ContractError);
}

TEST_CASE("classify_map regions", "[classify]") {
    SECTION("random channel is QM") {
        const auto c = classify_map(random_channel(2, 2, 2, 5));
        CHECK(c.region == MapRegion::QM);
        CHECK(c.is_completely_positive == true);
        CHECK(c.is_positive);
    }
    SECTION("lawful cloner is QM") {
        CHECK(classify_map(BlochAffineCloneMap(2.0 / 3.0, 1.0 / 3.0)).region == MapRegion::QM);
    }
    SECTION("over-eager cloner is linear, trace preserving and non-positive") {
        const auto c = classify_map(BlochAffineCloneMap(0.7, 1.0 / 3.0));
        CHECK(c.region == MapRegion::LinearNonpositiveNoSignal);
        CHECK(c.is_linear);
        CHECK(c.is_trace_preserving);
        CHECK_FALSE(c.is_positive);
        CHECK(c.positivity_witness.has_value());
        CHECK(c.is_completely_positive == false);
        CHECK_THAT(c.min_output_eigenvalue, WithinAbs(-0.016666666666666666, 1e-12));
    }
    SECTION("non-positive random transfer map") {
        const auto c = classify_map(random_transfer_map(2, 2, 31));
        CHECK(c.region == MapRegion::LinearNonpositiveNoSignal);
        CHECK(c.is_completely_positive == false);
    }
    SECTION("square map and pure-branch maps are nonlinear") {
        const auto sq = classify_map(BlochNonlinearCloneMap::isotropic(ComponentFunction::square(), 0.0));
        CHECK(sq.region == MapRegion::Nonlinear);
        CHECK_FALSE(sq.is_completely_positive.has_value());
        CHECK(classify_map(PureBranchMap(2, 1.0, BranchVariant::Mixture)).region == MapRegion::Nonlinear);
    }
    SECTION("linear pure-state map gets a CP verdict through its linear extension") {
        const auto c = classify_map(BlochNonlinearCloneMap::isotropic(ComponentFunction::power(1), 0.25));
        CHECK(c.is_linear);
        CHECK(c.region == MapRegion::LinearNonpositiveNoSignal);
        CHECK(c.is_completely_positive == false);
        CHECK(classify_map(BlochNonlinearCloneMap::isotropic(ComponentFunction::power(3), 0.0)).region ==
              MapRegion::Nonlinear);
    }
    SECTION("trace failure overrides everything else") {
        const auto c = classify_map(TransferMap::from_kraus(KrausMap::identity(2)).scaled(0.9));
        CHECK(c.region == MapRegion::NotTracePreserving);
        CHECK_THAT(c.trace_deviation, WithinAbs(0.1, 1e-12));
        CHECK(classify_map(random_transfer_map(2, 2, 8, false)).region == MapRegion::NotTracePreserving);
    }
    SECTION("region names") {
        CHECK(to_string(MapRegion::QM) == "QM");
        CHECK(to_string(MapRegion::LinearNonpositiveNoSignal) == "LINEAR_NONPOSITIVE_NOSIGNAL");
        CHECK(to_string(MapRegion::Nonlinear) == "NONLINEAR");
        CHECK(to_string(MapRegion::NotTracePreserving) == "NOT_TRACE_PRESERVING");
    }
    SECTION("same seed, same classification") {
        const LocalMap m = BlochNonlinearCloneMap::isotropic(ComponentFunction::abs(), 0.1);
        const auto a = classify_map(m);
        const auto b = classify_map(m);
        CHECK(a.linearity_deviation == b.linearity_deviation);
        CHECK(a.min_output_eigenvalue == b.min_output_eigenvalue);
    }
}
