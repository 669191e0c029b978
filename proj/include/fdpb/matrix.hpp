#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdpb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Combined absolute/relative tolerance. A residual r passes at scale s when
/// r <= abs_eps + rel_eps * s.
struct Tolerance {
  double abs_eps = 1e-10;
  double rel_eps = 1e-10;

  double bound(double scale = 1.0) const { return abs_eps + rel_eps * scale; }
  bool within(double residual, double scale = 1.0) const {
    return residual <= bound(scale);
  }
};

/// Maximum absolute entry; the norm behind every "equals within tolerance"
/// check in the library.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

namespace detail {

inline void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream err;
    err << who << ": expected a nonempty square matrix, got " << m.rows()
        << "x" << m.cols();
    throw std::invalid_argument(err.str());
  }
}

inline void require_same_dim(const Matrix& x, const Matrix& y, const char* who) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    std::ostringstream err;
    err << who << ": dimension mismatch, " << x.rows() << "x" << x.cols()
        << " vs " << y.rows() << "x" << y.cols();
    throw std::invalid_argument(err.str());
  }
}

}  // namespace detail

inline Matrix commutator(const Matrix& x, const Matrix& y) {
  detail::require_same_dim(x, y, "commutator");
  detail::require_square(x, "commutator");
  return x * y - y * x;
}

inline Matrix anticommutator(const Matrix& x, const Matrix& y) {
  detail::require_same_dim(x, y, "anticommutator");
  detail::require_square(x, "anticommutator");
  return x * y + y * x;
}

/// Orthonormal basis of the numerical kernel: right singular vectors whose
/// singular values fall below abs_eps + rel_eps * sigma_max. Empty when M is
/// numerically full-rank.
inline std::vector<Vector> null_space(const Matrix& m, const Tolerance& tol = {}) {
  detail::require_square(m, "null_space");
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff = tol.bound(sigma.size() > 0 ? sigma(0) : 0.0);
  std::vector<Vector> kernel;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= cutoff) kernel.push_back(svd.matrixV().col(i));
  }
  return kernel;
}

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // orthonormal columns, same order
};

inline HermitianEigen eig_hermitian(const Matrix& m, const Tolerance& tol = {}) {
  detail::require_square(m, "eig_hermitian");
  Index wr = 0, wc = 0;
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff(&wr, &wc);
  if (dev > tol.bound(max_abs(m))) {
    std::ostringstream err;
    err << "eig_hermitian: input not Hermitian, max deviation " << dev
        << " at entry (" << wr << "," << wc << ")";
    throw std::invalid_argument(err.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

struct GeneralEigen {
  Vector values;   // sorted by (real, imag)
  Matrix vectors;  // unit-norm right eigenvectors, columns matching values
};

inline GeneralEigen eig_general(const Matrix& m) {
  detail::require_square(m, "eig_general");
  Eigen::ComplexEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_general: eigensolver failed to converge");
  }
  const Index n = m.rows();
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  const auto& vals = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Index lhs, Index rhs) {
    if (vals(lhs).real() != vals(rhs).real())
      return vals(lhs).real() < vals(rhs).real();
    return vals(lhs).imag() < vals(rhs).imag();
  });
  GeneralEigen out;
  out.values = Vector(n);
  out.vectors = Matrix(n, n);
  for (Index i = 0; i < n; ++i) {
    out.values(i) = vals(order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Unique Hermitian positive-definite square root, via eigendecomposition.
inline Matrix sqrt_pd(const Matrix& m, const Tolerance& tol = {}) {
  const HermitianEigen eig = eig_hermitian(m, tol);
  for (Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) <= tol.abs_eps) {
      std::ostringstream err;
      err << "sqrt_pd: input not positive definite, eigenvalue " << eig.values(i)
          << " at index " << i;
      throw std::invalid_argument(err.str());
    }
  }
  return eig.vectors * eig.values.cwiseSqrt().asDiagonal() *
         eig.vectors.adjoint();
}

inline Matrix inverse(const Matrix& m, const Tolerance& tol = {}) {
  detail::require_square(m, "inverse");
  Eigen::JacobiSVD<Matrix> svd(m);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smin <= tol.abs_eps) {
    std::ostringstream err;
    err << "inverse: matrix numerically singular, smallest singular value "
        << smin;
    throw std::invalid_argument(err.str());
  }
  return m.partialPivLu().inverse();
}

/// sigma_max / sigma_min; infinity for a numerically singular matrix.
inline double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sigma = svd.singularValues();
  const double smin = sigma(sigma.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sigma(0) / smin;
}

}  // namespace fdpb
