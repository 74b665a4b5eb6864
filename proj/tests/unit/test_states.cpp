#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "nosig/errors.hpp"
#include "nosig/random.hpp"
#include "nosig/states.hpp"
#include "test_support.hpp"

using namespace nosig;
using Catch::Matchers::WithinAbs;

TEST_CASE("Bloch conversions", "[states]") {
    SECTION("z axis is |0><0|") {
        CHECK(max_abs_diff(bloch_to_density(kAxisZ).mat(), CMatrix{{1, 0}, {0, 0}}) < 1e-15);
    }
    SECTION("x axis is |+><+|") {
        CHECK(max_abs_diff(bloch_to_density(kAxisX).mat(), CMatrix{{0.5, 0.5}, {0.5, 0.5}}) < 1e-15);
    }
    SECTION("y axis has the expected off-diagonal phase") {
        const CMatrix expected{{0.5, -0.5 * test::kI}, {0.5 * test::kI, 0.5}};
        CHECK(max_abs_diff(bloch_to_density(kAxisY).mat(), expected) < 1e-15);
    }
    SECTION("origin is maximally mixed") {
        CHECK(max_abs_diff(bloch_to_density({}).mat(), 0.5 * CMatrix::identity(2)) < 1e-15);
    }
    SECTION("round trip over the ball") {
        Rng rng(41);
        for (int k = 0; k < 500; ++k) {
            const BlochVector s = rng.ball_vector();
            const BlochVector back = density_to_bloch(bloch_to_density(s));
            REQUIRE(std::abs(back.x - s.x) < 1e-14);
            REQUIRE(std::abs(back.y - s.y) < 1e-14);
            REQUIRE(std::abs(back.z - s.z) < 1e-14);
        }
    }
    SECTION("vectors outside the ball are rejected") {
        CHECK_THROWS_AS(bloch_to_density({1.0, 1.0, 0.0}), DomainError);
        CHECK_NOTHROW(bloch_to_density({0.0, 0.0, 1.0 + 1e-11}));
    }
    SECTION("density_to_bloch needs a qubit operator") {
        CHECK_THROWS_AS(density_to_bloch(CMatrix::identity(4)), StructuralError);
    }
}

TEST_CASE("DensityMatrix validation", "[states]") {
    CHECK_THROWS_AS(DensityMatrix(CMatrix{{0.5, 0.0}, {0.0, 0.4}}), ContractError);
    CHECK_THROWS_AS(DensityMatrix(CMatrix{{1.5, 0.0}, {0.0, -0.5}}), ContractError);
    CHECK_THROWS_AS(DensityMatrix(CMatrix{{0.5, 0.5}, {0.0, 0.5}}), ContractError);
    CHECK_THROWS_AS(DensityMatrix(CMatrix::identity(3) * (1.0 / 3.0)), ContractError);
    CHECK_NOTHROW(DensityMatrix(CMatrix::identity(8) * 0.125));

    const DensityMatrix mixed(0.5 * CMatrix::identity(2));
    CHECK_THAT(mixed.purity(), WithinAbs(0.5, 1e-15));
    CHECK_FALSE(mixed.is_pure());
    CHECK(bloch_to_density(kAxisX).is_pure());
}

TEST_CASE("singlet and partially entangled states", "[states]") {
    SECTION("singlet marginals") {
        const BipartiteState s = singlet();
        CHECK(s.rho().is_pure());
        CHECK(max_abs_diff(s.alice_marginal(), 0.5 * CMatrix::identity(2)) < 1e-15);
        CHECK(max_abs_diff(s.bob_marginal(), 0.5 * CMatrix::identity(2)) < 1e-15);
    }
    SECTION("theta = 0 is the product |01>") {
        const std::vector<cplx> ket{0, 1, 0, 0};
        CHECK(max_abs_diff(partially_entangled(0.0).mat(), CMatrix::projector(ket)) < 1e-15);
    }
    SECTION("theta range is enforced") {
        CHECK_THROWS_AS(partially_entangled(-0.1), DomainError);
        CHECK_THROWS_AS(partially_entangled(2.0), DomainError);
    }
    SECTION("Alice marginal is diag(cos^2, sin^2) for every theta") {
        for (int k = 0; k <= 20; ++k) {
            const double theta = std::numbers::pi / 2 * k / 20.0;
            const CMatrix rho_a = partially_entangled(theta).alice_marginal();
            const double c2 = std::cos(theta) * std::cos(theta);
            REQUIRE_THAT(rho_a(0, 0).real(), WithinAbs(c2, 1e-14));
            REQUIRE_THAT(rho_a(1, 1).real(), WithinAbs(1.0 - c2, 1e-14));
            REQUIRE(std::abs(rho_a(0, 1)) < 1e-15);
        }
    }
    SECTION("non-4x4 states are structural errors") {
        CHECK_THROWS_AS(BipartiteState(CMatrix::identity(2) * 0.5), StructuralError);
    }
}

TEST_CASE("measure_alice", "[states]") {
    SECTION("singlet along z: anti-correlated outcomes") {
        const ConditionalEnsemble ens = measure_alice(singlet(), kAxisZ);
        REQUIRE(ens.branches().size() == 2);
        CHECK_THAT(ens.branches()[0].probability, WithinAbs(0.5, 1e-15));
        CHECK_THAT(ens.branches()[1].probability, WithinAbs(0.5, 1e-15));
        CHECK(max_abs_diff(ens.branches()[0].state.mat(), CMatrix{{0, 0}, {0, 1}}) < 1e-14);
        CHECK(max_abs_diff(ens.branches()[1].state.mat(), CMatrix{{1, 0}, {0, 0}}) < 1e-14);
    }
    SECTION("singlet along any axis leaves Bob with -n and +n") {
        Rng rng(12);
        for (int k = 0; k < 100; ++k) {
            const BlochVector n = rng.unit_vector();
            const ConditionalEnsemble ens = measure_alice(singlet(), n);
            const BlochVector b0 = density_to_bloch(ens.branches()[0].state);
            const BlochVector b1 = density_to_bloch(ens.branches()[1].state);
            REQUIRE(std::abs(b0.dot(n) + 1.0) < 1e-12);
            REQUIRE(std::abs(b1.dot(n) - 1.0) < 1e-12);
        }
    }
    SECTION("product state: a zero-probability branch is marked absent") {
        const ConditionalEnsemble ens = measure_alice(partially_entangled(0.0), kAxisZ);
        CHECK_FALSE(ens.branches()[0].absent);
        CHECK(ens.branches()[1].absent);
        CHECK(ens.branches()[1].probability == 0.0);
        CHECK(max_abs_diff(ens.average(), CMatrix{{0, 0}, {0, 1}}) < 1e-15);
    }
    SECTION("partially entangled pi/6 along z") {
        const ConditionalEnsemble ens = measure_alice(partially_entangled(std::numbers::pi / 6), kAxisZ);
        CHECK_THAT(ens.branches()[0].probability, WithinAbs(0.75, 1e-14));
        CHECK_THAT(ens.branches()[1].probability, WithinAbs(0.25, 1e-14));
    }
    SECTION("non-unit directions are rejected") {
        CHECK_THROWS_AS(measure_alice(singlet(), {0.0, 0.0, 0.5}), DomainError);
    }
}

TEST_CASE("ensemble average equals Bob's marginal", "[states][property]") {
    Rng rng(77);
    for (int k = 0; k < 200; ++k) {
        const BipartiteState rho(random_mixed_state(4, rng));
        const BlochVector n = rng.unit_vector();
        const ConditionalEnsemble ens = measure_alice(rho, n);
        double total = 0.0;
        for (const Branch &b : ens.branches()) {
            total += b.probability;
        }
        REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
        REQUIRE(max_abs_diff(ens.average(), rho.bob_marginal()) < 1e-12);
        REQUIRE(max_abs_diff(rho.bob_marginal(), test::oracle_partial_trace_2(rho.mat(), 2, 2, 0)) < 1e-15);
    }
}

TEST_CASE("ConditionalEnsemble validation", "[states]") {
    const DensityMatrix up = bloch_to_density(kAxisZ);
    CHECK_THROWS_AS(ConditionalEnsemble({}), ContractError);
    CHECK_THROWS_AS(ConditionalEnsemble({{0.5, up, false}, {0.4, up, false}}), ContractError);
    CHECK_THROWS_AS(ConditionalEnsemble({{1.2, up, false}, {-0.2, up, false}}), ContractError);
    const DensityMatrix two(CMatrix::identity(4) * 0.25);
    CHECK_THROWS_AS(ConditionalEnsemble({{0.5, up, false}, {0.5, two, false}}), StructuralError);
}

TEST_CASE("pure_state normalizes its ket", "[states]") {
    const std::vector<cplx> ket{3.0, 4.0 * test::kI};
    const DensityMatrix psi = pure_state(ket);
    CHECK(psi.is_pure());
    CHECK_THAT(psi.mat()(0, 0).real(), WithinAbs(0.36, 1e-15));
    const std::vector<cplx> zero{0.0, 0.0};
    CHECK_THROWS_AS(pure_state(zero), DomainError);
}
