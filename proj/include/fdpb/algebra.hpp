#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fdpb/matrix.hpp"
#include "fdpb/report.hpp"

namespace fdpb {

/// Hermitian truncated-oscillator pair: [c, c†] = 1 - n*K with K*c = 0.
struct HermitianRep {
  Index n = 0;
  Matrix c;
  Matrix big_k;
};

/// Deformed triple: [a, b] = 1 - n*k with k*a = b*k = 0 and k an orthogonal
/// projector of unit trace. Construction is unrestricted; validity is checked
/// separately by validate_rep.
struct Representation {
  Index n = 0;
  Matrix a;
  Matrix b;
  Matrix k;
};

struct DerivedOperators {
  Matrix q;      // (a + b)/sqrt(2)
  Matrix p;      // (a - b)/(sqrt(2) i)
  Matrix h;      // (p^2 + q^2)/2
  Matrix h_adj;  // h†
  Matrix mhat;   // a*b
  Matrix nhat;   // b*a
};

/// Truncated ladder matrices: c|m> = sqrt(m)|m-1> on the standard basis,
/// K the projector onto the last coordinate.
inline HermitianRep buchdahl_rep(Index n) {
  if (n < 2) {
    std::ostringstream err;
    err << "buchdahl_rep: dimension must be >= 2, got " << n;
    throw std::invalid_argument(err.str());
  }
  HermitianRep rep;
  rep.n = n;
  rep.c = Matrix::Zero(n, n);
  for (Index m = 1; m < n; ++m) rep.c(m - 1, m) = std::sqrt(double(m));
  rep.big_k = Matrix::Zero(n, n);
  rep.big_k(n - 1, n - 1) = 1.0;
  return rep;
}

inline Representation as_representation(const HermitianRep& base) {
  return {base.n, base.c, base.c.adjoint(), base.big_k};
}

inline ValidationReport validate_rep(const Representation& rep,
                                     const Tolerance& tol = {}) {
  detail::require_same_dim(rep.a, rep.b, "validate_rep");
  detail::require_same_dim(rep.a, rep.k, "validate_rep");
  detail::require_square(rep.a, "validate_rep");
  if (rep.n != rep.a.rows()) {
    throw std::invalid_argument("validate_rep: stored n disagrees with matrix dimension");
  }
  const Index n = rep.n;
  const Matrix unit = Matrix::Identity(n, n);
  const double prod = std::max(1.0, max_abs(rep.a) * max_abs(rep.b));
  const double lin = std::max({1.0, max_abs(rep.a), max_abs(rep.b)});

  ValidationReport report;
  report.add("[a,b] - (1 - n k)",
             max_abs(commutator(rep.a, rep.b) - (unit - double(n) * rep.k)),
             tol.bound(prod));
  report.add("k a", max_abs(Matrix(rep.k * rep.a)), tol.bound(lin));
  report.add("b k", max_abs(Matrix(rep.b * rep.k)), tol.bound(lin));
  report.add("k - k^2", max_abs(Matrix(rep.k - rep.k * rep.k)), tol.bound(1.0));
  report.add("k - k†", max_abs(Matrix(rep.k - rep.k.adjoint())), tol.bound(1.0));
  report.add("trace(k) - 1", std::abs(rep.k.trace() - 1.0), tol.bound(double(n)));
  return report;
}

/// Conjugates the Buchdahl pair by S = diag(s0, s). The projector block is
/// fixed by s, so k comes out equal to big_k up to roundoff.
inline Representation similarity_deform(const HermitianRep& base, const Matrix& s0,
                                        Complex s, const Tolerance& tol = {}) {
  const Index n = base.n;
  if (s0.rows() != n - 1 || s0.cols() != n - 1) {
    std::ostringstream err;
    err << "similarity_deform: s0 must be " << (n - 1) << "x" << (n - 1)
        << ", got " << s0.rows() << "x" << s0.cols();
    throw std::invalid_argument(err.str());
  }
  if (std::abs(s) == 0.0) {
    throw std::invalid_argument("similarity_deform: s must be nonzero");
  }
  const double cond = condition_number(s0);
  if (!(cond <= 1e6)) {
    std::ostringstream err;
    err << "similarity_deform: s0 condition number " << cond
        << " exceeds the 1e6 guard";
    throw std::invalid_argument(err.str());
  }

  Matrix big_s = Matrix::Zero(n, n);
  big_s.topLeftCorner(n - 1, n - 1) = s0;
  big_s(n - 1, n - 1) = s;
  const Matrix big_s_inv = inverse(big_s, tol);

  Representation rep;
  rep.n = n;
  rep.a = big_s * base.c * big_s_inv;
  rep.b = big_s * base.c.adjoint() * big_s_inv;
  rep.k = big_s * base.big_k * big_s_inv;

  const ValidationReport report = validate_rep(rep, tol);
  if (!report.passed()) {
    std::ostringstream err;
    err << "similarity_deform: deformed triple violates invariants, first failure '"
        << report.first_failure()->name << "' residual "
        << report.first_failure()->residual;
    throw std::runtime_error(err.str());
  }
  return rep;
}

inline DerivedOperators derived_ops(const Representation& rep) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  DerivedOperators ops;
  ops.q = (rep.a + rep.b) * inv_sqrt2;
  ops.p = (rep.a - rep.b) * Complex(0.0, -inv_sqrt2);
  ops.h = 0.5 * (ops.p * ops.p + ops.q * ops.q);
  ops.h_adj = ops.h.adjoint();
  ops.mhat = rep.a * rep.b;
  ops.nhat = rep.b * rep.a;
  return ops;
}

/// Residuals for the operator identities tying a, b, k, h, M̂, N̂ together.
inline ValidationReport check_identities(const Representation& rep,
                                         const Tolerance& tol = {}) {
  const Index n = rep.n;
  const Matrix unit = Matrix::Identity(n, n);
  const DerivedOperators ops = derived_ops(rep);
  const Matrix one_minus_nk = unit - double(n) * rep.k;
  const double amax = max_abs(rep.a);
  const double bmax = max_abs(rep.b);
  const double hmax = max_abs(ops.h);
  const double quad = std::max(1.0, amax * bmax);

  ValidationReport report;
  report.add("[q,p] - i(1 - n k)",
             max_abs(commutator(ops.q, ops.p) - Complex(0, 1) * one_minus_nk),
             tol.bound(quad));
  report.add("[a,h] - (a - n/2 a k)",
             max_abs(commutator(rep.a, ops.h) -
                     (rep.a - 0.5 * double(n) * rep.a * rep.k)),
             tol.bound(std::max(1.0, amax * hmax)));
  report.add("[b,h] + (b - n/2 k b)",
             max_abs(commutator(rep.b, ops.h) +
                     (rep.b - 0.5 * double(n) * rep.k * rep.b)),
             tol.bound(std::max(1.0, bmax * hmax)));
  report.add("h - (b a + (1 - n k)/2)",
             max_abs(ops.h - (ops.nhat + 0.5 * one_minus_nk)), tol.bound(quad));
  report.add("h - (a b - (1 - n k)/2)",
             max_abs(ops.h - (ops.mhat - 0.5 * one_minus_nk)), tol.bound(quad));
  report.add("{a,b} - 2h", max_abs(anticommutator(rep.a, rep.b) - 2.0 * ops.h),
             tol.bound(quad));
  report.add("[k,h]", max_abs(commutator(rep.k, ops.h)),
             tol.bound(std::max(1.0, hmax)));
  report.add("k h + (1 - n)/2 k",
             max_abs(Matrix(rep.k * ops.h + 0.5 * (1.0 - double(n)) * rep.k)),
             tol.bound(std::max(1.0, hmax)));
  report.add("[N̂,h]", max_abs(commutator(ops.nhat, ops.h)),
             tol.bound(std::max(1.0, quad * hmax)));
  report.add("[M̂,h]", max_abs(commutator(ops.mhat, ops.h)),
             tol.bound(std::max(1.0, quad * hmax)));
  report.add("[N̂,k]", max_abs(commutator(ops.nhat, rep.k)), tol.bound(quad));
  report.add("[M̂,k]", max_abs(commutator(ops.mhat, rep.k)), tol.bound(quad));
  return report;
}

namespace detail {

// 53-bit mantissa draw in [-1, 1); keeps generated artifacts byte-stable
// across standard library implementations.
inline double uniform_pm1(std::mt19937_64& rng) {
  const double u = double(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

inline Complex uniform_complex(std::mt19937_64& rng) {
  const double re = uniform_pm1(rng);
  const double im = uniform_pm1(rng);
  return {re, im};
}

}  // namespace detail

struct DeformationSample {
  Matrix s0;
  Complex s = 1.0;
};

/// Seeded draw of (s0, s) with entries uniform in [-1,1]^2, rejection-resampled
/// until the full block matrix diag(s0, s) has condition number below the cap.
inline DeformationSample sample_deformation(Index n, std::uint64_t seed,
                                            double condition_cap = 100.0) {
  if (n < 2) throw std::invalid_argument("sample_deformation: n must be >= 2");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    DeformationSample sample;
    sample.s0 = Matrix(n - 1, n - 1);
    for (Index i = 0; i < n - 1; ++i)
      for (Index j = 0; j < n - 1; ++j)
        sample.s0(i, j) = detail::uniform_complex(rng);
    sample.s = detail::uniform_complex(rng);
    Matrix big_s = Matrix::Zero(n, n);
    big_s.topLeftCorner(n - 1, n - 1) = sample.s0;
    big_s(n - 1, n - 1) = sample.s;
    if (condition_number(big_s) < condition_cap) return sample;
  }
  throw std::runtime_error("sample_deformation: rejection sampling did not converge");
}

inline Representation random_deformation(Index n, std::uint64_t seed,
                                         double condition_cap = 100.0,
                                         const Tolerance& tol = {}) {
  const DeformationSample sample = sample_deformation(n, seed, condition_cap);
  return similarity_deform(buchdahl_rep(n), sample.s0, sample.s, tol);
}

}  // namespace fdpb
