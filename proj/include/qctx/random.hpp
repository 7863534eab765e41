#pragma once

// Seeded generators for states and posets, used by the invariant suite and
// the tests. Exact draws stay rational: unitaries are products of
// Householder reflections through integer vectors.

#include <cstddef>
#include <random>
#include <vector>

#include "qctx/poset.hpp"

namespace qctx {

using Rng = std::mt19937_64;

/// Exact: a random nonzero integer vector. Float: complex Gaussian.
template <Backend B>
std::vector<typename B::Scalar> random_vector(std::size_t dim, Rng& rng);

/// A product of dim reflections I - 2 v v^* / <v, v>.
template <Backend B>
Matrix<B> random_unitary(std::size_t dim, Rng& rng);

/// U D U^* with D a random probability diagonal, some weights possibly
/// zero, and U from random_unitary.
template <Backend B>
DensityMatrix<B> random_density(std::size_t dim, Rng& rng);

/// Diagonal weights drawn from a flat Dirichlet distribution (float) or
/// normalized random integers (exact).
template <Backend B>
std::vector<typename B::Real> random_weights(std::size_t n, Rng& rng);

/// A random partition of the atoms of v.
template <Backend B>
Context<B> random_coarsening(const Context<B>& v, Rng& rng);

/// Up to max_generators contexts built from a common random basis: the
/// basis itself, bases rotated inside a random coordinate subset, and
/// random coarsenings of these, closed under meets. Generators are dropped
/// until the closed poset has at most max_size contexts.
template <Backend B>
ContextPoset<B> random_poset(std::size_t dim, Rng& rng, std::size_t max_generators = 4, std::size_t max_size = 10);

}  // namespace qctx
