#pragma once

#include <random>

#include "fdpb/fdpb.hpp"

namespace testutil {

inline double diff(const fdpb::Matrix& x, const fdpb::Matrix& y) {
  return fdpb::max_abs(x - y);
}

inline double diff(const fdpb::Vector& x, const fdpb::Vector& y) {
  return fdpb::max_abs(x - y);
}

inline fdpb::Matrix random_matrix(fdpb::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  fdpb::Matrix m(n, n);
  for (fdpb::Index i = 0; i < n; ++i)
    for (fdpb::Index j = 0; j < n; ++j) m(i, j) = fdpb::Complex(dist(rng), dist(rng));
  return m;
}

inline fdpb::Matrix random_hermitian_pd(fdpb::Index n, std::uint64_t seed) {
  const fdpb::Matrix g = random_matrix(n, seed);
  return g.adjoint() * g + 0.5 * fdpb::Matrix::Identity(n, n);
}

inline fdpb::Vector make_vector(std::initializer_list<double> entries) {
  fdpb::Vector v(fdpb::Index(entries.size()));
  fdpb::Index i = 0;
  for (double e : entries) v(i++) = e;
  return v;
}

}  // namespace testutil
