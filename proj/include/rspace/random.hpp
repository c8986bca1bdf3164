#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include <cstdint>
#include <random>

#include "rspace/lie.hpp"

namespace rspace {

/// Independent stream for one trial: the result depends only on (seed, trial),
/// never on the order trials are run in.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

template <class Rng>
RVec random_normal_vector(Index n, Rng& rng) {
  std::normal_distribution<double> nd;
  RVec v(n);
  for (Index i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

template <class Rng>
RVec random_unit_vector(Index n, Rng& rng) {
  RVec v = random_normal_vector(n, rng);
  return v / v.norm();
}

template <class Rng>
double random_uniform(double lo, double hi, Rng& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Gaussian combination of the algebra's orthonormal real basis, scaled so
/// its Frobenius norm has expectation about `scale`.
template <class Rng>
FMatrix random_algebra_element(const AlgebraBasis& g, Rng& rng, double scale = 1.0) {
  const RVec c = random_normal_vector(g.dim(), rng) * (scale / std::sqrt(static_cast<double>(g.dim())));
  return g.combine(c);
}

/// exp of a random algebra element: an element of the identity component of
/// the group.
template <class Rng>
FMatrix random_group_element(const AlgebraBasis& g, Rng& rng, double scale = 1.0) {
  const FMatrix x = random_algebra_element(g, rng, scale);
  const CMat e = x.realization().exp();
  return FMatrix::from_realization(g.field(), e);
}

}  // namespace rspace
