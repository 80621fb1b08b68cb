#pragma once

#include <cstdint>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "emodel/algebra.hpp"

namespace emodel {

/// Seeded sampling of algebra/group elements; every randomized suite records
/// the seed it was created with.
struct Rng {
  std::mt19937_64 gen;
  uint64_t seed;

  explicit Rng(uint64_t s) : gen(s), seed(s) {}

  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(gen);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
  cplx cnormal() { return {normal(), normal()}; }
};

/// Random traceless complex matrix (an element of sl(N,C)).
inline Mat random_traceless(Rng& rng, int N, double scale = 1.0) {
  Mat x(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) x(i, j) = scale * rng.cnormal();
  x -= (x.trace() / cplx(N)) * Mat::Identity(N, N);
  return x;
}

/// Random anti-Hermitian traceless matrix (an element of su(N)).
inline Mat random_su(Rng& rng, int N, double scale = 1.0) {
  const Mat x = random_traceless(rng, N, scale);
  return 0.5 * (x - Mat(x.adjoint()));
}

inline TStarElem random_tstar(Rng& rng, int N, double scale = 1.0) {
  return {random_su(rng, N, scale), random_su(rng, N, scale)};
}

/// Random special unitary matrix via the exponential of a random su element.
inline Mat random_unitary(Rng& rng, int N, double scale = 1.0) {
  return Mat(random_su(rng, N, scale)).exp();
}

/// Random SL(N,C) point near the identity.
inline Mat random_sl(Rng& rng, int N, double scale = 0.5) {
  return Mat(random_traceless(rng, N, scale)).exp();
}

}  // namespace emodel
