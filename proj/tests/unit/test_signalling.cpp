#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "nosig/classify.hpp"
#include "nosig/errors.hpp"
#include "nosig/random.hpp"
#include "nosig/signalling.hpp"
#include "test_support.hpp"

using namespace nosig;
using Catch::Matchers::WithinAbs;

namespace {

SignallingExperiment make(const BipartiteState &shared, BlochVector a, BlochVector b, LocalMap map,
                          std::optional<std::vector<CMatrix>> povm = std::nullopt) {
    return {shared, a, b, std::move(map), std::move(povm), std::nullopt};
}

// E_k = S^{-1/2} G_k G_k^dagger S^{-1/2} with S = sum_k G_k G_k^dagger.
std::vector<CMatrix> random_povm(std::size_t dim, std::size_t outcomes, Rng &rng) {
    std::vector<CMatrix> raw;
    CMatrix total(dim, dim);
    for (std::size_t k = 0; k < outcomes; ++k) {
        const CMatrix g = random_ginibre(dim, dim, rng);
        raw.push_back(g * g.adjoint());
        total += raw.back();
    }
    const CMatrix inv_sqrt = herm_function(total, [](double x) { return 1.0 / std::sqrt(x); });
    std::vector<CMatrix> out;
    for (const CMatrix &r : raw) {
        const CMatrix e = inv_sqrt * r * inv_sqrt;
        out.push_back(0.5 * (e + e.adjoint()));
    }
    return out;
}

std::vector<BipartiteState> theorem_states() {
    std::vector<BipartiteState> states{singlet(), partially_entangled(std::numbers::pi / 6),
                                       partially_entangled(std::numbers::pi / 3)};
    Rng rng(500);
    for (int k = 0; k < 10; ++k) {
        states.emplace_back(random_mixed_state(4, rng));
    }
    return states;
}

double max_distance_over_pairs(const LocalMap &map, const std::vector<BipartiteState> &states, int pairs, Rng &rng) {
    double worst = 0.0;
    for (const BipartiteState &rho : states) {
        for (int p = 0; p < pairs; ++p) {
            worst = std::max(worst, no_signalling_distance(make(rho, rng.unit_vector(), rng.unit_vector(), map)));
        }
    }
    return worst;
}

} // namespace

TEST_CASE("no-signalling holds for every linear trace-preserving map", "[signalling][property]") {
    const auto states = theorem_states();
    Rng rng(4242);
    SECTION("50 random channels") {
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const std::size_t d_out = seed % 2 == 0 ? 2 : 4;
            worst = std::max(worst, max_distance_over_pairs(random_channel(2, d_out, 1 + seed % 3, seed), states, 20, rng));
        }
        CHECK(worst < 1e-10);
    }
    SECTION("5x5 affine cloner grid, positive or not") {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            for (int k = 0; k < 5; ++k) {
                worst = std::max(worst, max_distance_over_pairs(BlochAffineCloneMap(i / 4.0, k / 4.0), states, 20, rng));
            }
        }
        CHECK(worst < 1e-10);
    }
    SECTION("20 trace-preserving transfer maps") {
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            worst = std::max(worst, max_distance_over_pairs(random_transfer_map(2, 2 + 2 * (seed % 2), seed), states, 20, rng));
        }
        CHECK(worst < 1e-10);
    }
    SECTION("a local operation on Alice's side changes nothing") {
        const KrausMap alice = random_channel(2, 2, 2, 77);
        const LocalMap bob = BlochAffineCloneMap(0.7, 1.0 / 3.0);
        for (int p = 0; p < 20; ++p) {
            SignallingExperiment exp = make(singlet(), rng.unit_vector(), rng.unit_vector(), bob);
            exp.alice_premap = alice;
            REQUIRE(no_signalling_distance(exp) < 1e-10);
        }
    }
}

TEST_CASE("unnormalized linear maps stay silent too", "[signalling]") {
    // The average is L(rho_B) whatever Alice does; only linearity matters.
    Rng rng(1);
    const double d = max_distance_over_pairs(random_transfer_map(2, 2, 3, false),
                                             {partially_entangled(std::numbers::pi / 6)}, 20, rng);
    CHECK(d < 1e-10);
}

TEST_CASE("Helstrom success", "[signalling]") {
    SECTION("equals 1/2 + distance/2") {
        const auto exp = make(singlet(), kAxisZ, kAxisX, PureBranchMap(2, 1.0, BranchVariant::Mixture));
        CHECK(helstrom_success(exp) == 0.5 + 0.5 * no_signalling_distance(exp));
        CHECK_THAT(helstrom_success(exp), WithinAbs(0.75, 1e-12));
    }
    SECTION("no projective decoder on the first clone beats it") {
        // 200-point grid of measurement directions on Bob's first output qubit.
        const std::vector<LocalMap> maps{
            PureBranchMap(2, 1.0, BranchVariant::Mixture),
            PureBranchMap(2, 0.3, BranchVariant::Factorized),
            BlochNonlinearCloneMap::isotropic(ComponentFunction::square(), 0.0),
        };
        for (const LocalMap &map : maps) {
            const BipartiteState shared = partially_entangled(std::numbers::pi / 6);
            const auto exp = make(shared, kAxisZ, kAxisX, map);
            const CMatrix diff =
                bob_average_state(shared, kAxisZ, map) - bob_average_state(shared, kAxisX, map);
            double best = 0.5;
            const int n = 200;
            for (int k = 0; k < n; ++k) {
                // Fibonacci lattice on the sphere.
                const double z = 1.0 - (2.0 * k + 1.0) / n;
                const double r = std::sqrt(1.0 - z * z);
                const double phi = k * std::numbers::pi * (3.0 - std::sqrt(5.0));
                const CMatrix p = tensor_product(bloch_projector({r * std::cos(phi), r * std::sin(phi), z}),
                                                 pauli::I());
                const double gain = 0.5 * std::abs(trace_of_product(p, diff).real());
                best = std::max(best, 0.5 + gain);
            }
            INFO(describe(map));
            CHECK(best <= helstrom_success(exp) + 1e-9);
        }
    }
}

TEST_CASE("conditional probabilities", "[signalling]") {
    SECTION("pure-branch table with the parity decoder") {
        for (const double f : {0.0, 0.3, 1.0}) {
            const auto exp =
                make(singlet(), kAxisZ, kAxisX, PureBranchMap(2, f, BranchVariant::Mixture), parity_povm());
            const ConditionalProbs p = conditional_probs(exp);
            INFO("F = " << f);
            CHECK_THAT(p.rows[0][0], WithinAbs(0.0, 1e-12));
            CHECK_THAT(p.rows[0][1], WithinAbs(1.0, 1e-12));
            CHECK_THAT(p.rows[1][0], WithinAbs(0.5, 1e-12));
            CHECK_THAT(p.rows[1][1], WithinAbs(0.5, 1e-12));
            CHECK_FALSE(p.negative_clamped);
        }
    }
    SECTION("rows are stochastic for random POVMs and positive maps") {
        Rng rng(88);
        for (int k = 0; k < 100; ++k) {
            const auto povm = random_povm(4, 2 + static_cast<std::size_t>(k % 3), rng);
            const auto exp = make(singlet(), rng.unit_vector(), rng.unit_vector(),
                                  PureBranchMap(2, rng.uniform(), BranchVariant::Factorized), povm);
            for (const auto &row : conditional_probs(exp).rows) {
                double total = 0.0;
                for (double p : row) {
                    REQUIRE(p >= 0.0);
                    total += p;
                }
                REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
            }
        }
    }
    SECTION("non-positive average state is clamped and flagged") {
        // Singlet projector picks out the (1 - 3t)/4 eigenvalue.
        const double h = 1.0 / std::numbers::sqrt2;
        const std::vector<cplx> psi_minus{0.0, h, -h, 0.0};
        const CMatrix ps = CMatrix::projector(psi_minus);
        const auto exp = make(singlet(), kAxisZ, kAxisX, BlochAffineCloneMap(0.5, 0.6),
                              std::vector<CMatrix>{ps, CMatrix::identity(4) - ps});
        CHECK(conditional_probs(exp).negative_clamped);
        const SignallingReport rep = run_experiment(exp);
        CHECK(rep.verdict == Verdict::NoSignal);
        REQUIRE(rep.warnings.size() == 1);
    }
    SECTION("needs a POVM") {
        CHECK_THROWS_AS(conditional_probs(make(singlet(), kAxisZ, kAxisX, KrausMap::identity(2))), ContractError);
    }
}

TEST_CASE("mutual information", "[signalling]") {
    SECTION("closed forms") {
        CHECK_THAT(decode_mutual_info({{1, 0}, {0, 1}}), WithinAbs(1.0, 1e-15));
        CHECK(decode_mutual_info({{0.5, 0.5}, {0.5, 0.5}}) == 0.0);
        // H(1/4) - 1/2 for the pure-branch table.
        CHECK_THAT(decode_mutual_info({{0, 1}, {0.5, 0.5}}), WithinAbs(0.31127812445913283, 1e-12));
        CHECK_THROWS_AS(decode_mutual_info({{1, 0}, {1}}), StructuralError);
    }
    SECTION("vanishes without a signal, for random POVMs") {
        Rng rng(314);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto povm = random_povm(4, 3, rng);
            const auto exp = make(partially_entangled(std::numbers::pi / 6), rng.unit_vector(), rng.unit_vector(),
                                  random_channel(2, 4, 2, seed), povm);
            const SignallingReport rep = run_experiment(exp);
            REQUIRE(rep.verdict == Verdict::NoSignal);
            REQUIRE(rep.mutual_info_bits < 1e-12);
        }
    }
}

TEST_CASE("nonlinear maps", "[signalling]") {
    const LocalMap odd = BlochNonlinearCloneMap::isotropic(ComponentFunction::power(3), 0.0);
    const LocalMap even = BlochNonlinearCloneMap::isotropic(ComponentFunction::square(), 0.0);
    SECTION("odd f is silent on the singlet") {
        CHECK(scan_bases(singlet(), odd, 100, 1).max_distance < 1e-10);
    }
    SECTION("odd f signals on a partially entangled state") {
        const auto exp = make(partially_entangled(std::numbers::pi / 6), kAxisZ, kAxisX, odd);
        CHECK_THAT(no_signalling_distance(exp), WithinAbs(0.1875, 1e-12));
    }
    SECTION("even f signals on the singlet") {
        CHECK_THAT(no_signalling_distance(make(singlet(), kAxisZ, kAxisX, even)),
                   WithinAbs(0.7071067811865475, 1e-12));
        CHECK_THAT(no_signalling_distance(make(partially_entangled(std::numbers::pi / 6), kAxisZ, kAxisX, even)),
                   WithinAbs(0.5303300858899105, 1e-12));
    }
}

TEST_CASE("pure-branch distances", "[signalling]") {
    for (const double f : {0.0, 0.3, 0.5, 1.0}) {
        CHECK_THAT(no_signalling_distance(make(singlet(), kAxisZ, kAxisX, PureBranchMap(2, f, BranchVariant::Mixture))),
                   WithinAbs(0.5, 1e-12));
    }
    const std::vector<std::pair<double, double>> factorized{{0.0, 0.5}, {0.3, 0.08}, {0.5, 0.0}, {1.0, 0.5}};
    for (const auto &[f, d] : factorized) {
        INFO("F = " << f);
        CHECK_THAT(
            no_signalling_distance(make(singlet(), kAxisZ, kAxisX, PureBranchMap(2, f, BranchVariant::Factorized))),
            WithinAbs(d, 1e-12));
    }
}

TEST_CASE("scan_bases", "[signalling]") {
    const LocalMap map = PureBranchMap(2, 1.0, BranchVariant::Mixture);
    const BasisScan a = scan_bases(singlet(), map, 50, 9);
    const BasisScan b = scan_bases(singlet(), map, 50, 9);
    CHECK(a.max_distance == b.max_distance);
    CHECK(a.argmax_1 == b.argmax_1);
    CHECK(a.max_distance > 0.1);
    CHECK_THAT(no_signalling_distance(make(singlet(), a.argmax_1, a.argmax_2, map)), WithinAbs(a.max_distance, 0.0));
    CHECK_THROWS_AS(scan_bases(singlet(), map, 0, 9), ContractError);
}

TEST_CASE("experiment validation", "[signalling]") {
    CHECK_THROWS_AS(no_signalling_distance(make(singlet(), {0, 0, 0}, kAxisX, KrausMap::identity(2))), DomainError);
    CHECK_THROWS_AS(no_signalling_distance(make(singlet(), kAxisZ, {0, 2, 0}, KrausMap::identity(2))), DomainError);
    const std::vector<CMatrix> not_complete{CMatrix{{1, 0}, {0, 0}}};
    CHECK_THROWS_AS(make(singlet(), kAxisZ, kAxisX, KrausMap::identity(2), not_complete).validate(), ContractError);
    const std::vector<CMatrix> negative{CMatrix{{2, 0}, {0, 0}}, CMatrix{{-1, 0}, {0, 1}}};
    CHECK_THROWS_AS(make(singlet(), kAxisZ, kAxisX, KrausMap::identity(2), negative).validate(), ContractError);
    CHECK_THROWS_AS(make(singlet(), kAxisZ, kAxisX, KrausMap::identity(2), parity_povm()).validate(), StructuralError);
    CHECK(to_string(Verdict::Signals) == "SIGNALS");
    CHECK(to_string(Verdict::NoSignal) == "NO_SIGNAL");
}
