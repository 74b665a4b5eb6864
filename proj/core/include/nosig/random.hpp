#pragma once

// Seeded generators for test inputs: sphere points, pure and mixed states,
// Haar-like isometries. All draws go through a single std::mt19937_64 so a
// seed reproduces the same sequence on a given standard library.

#include <cstdint>
#include <random>

#include "nosig/matcore.hpp"
#include "nosig/states.hpp"

namespace nosig {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    cplx complex_normal() { return {normal(), normal()}; }

    /// Uniform point on the unit sphere: a normalized Gaussian triple.
    BlochVector unit_vector();
    /// Uniform point in the unit ball.
    BlochVector ball_vector();

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Matrix of i.i.d. standard complex Gaussians.
CMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng &rng);
/// Random Hermitian matrix (G + G^dagger)/2.
CMatrix random_hermitian(std::size_t dim, Rng &rng);
/// Columns orthonormalized by modified Gram-Schmidt; rows >= cols.
CMatrix random_isometry(std::size_t rows, std::size_t cols, Rng &rng);
/// Haar-distributed pure state of dimension `dim`.
DensityMatrix random_pure_state(std::size_t dim, Rng &rng);
/// Full-rank mixed state G G^dagger / Tr(G G^dagger).
DensityMatrix random_mixed_state(std::size_t dim, Rng &rng);

} // namespace nosig
