#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fdpb/algebra.hpp"
#include "fdpb/matrix.hpp"

namespace fdpb {

/// Eigenvalue pattern of h on the chain: {1/2, 3/2, ..., n-3/2} plus the
/// k' = 1 value (n-1)/2, sorted ascending with multiplicity.
inline std::vector<double> chain_spectrum_pattern(Index n) {
  std::vector<double> pattern;
  pattern.reserve(std::size_t(n));
  for (Index m = 0; m + 1 < n; ++m) pattern.push_back(double(m) + 0.5);
  pattern.push_back(0.5 * double(n - 1));
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

/// The explicit 4x4 one-parameter family: deformed ladder pair in closed form,
/// with k the projector onto the last coordinate. Singular at alpha = -1.
inline Representation n4_alpha(double alpha) {
  const double d = 1.0 + alpha * alpha * alpha;
  if (std::abs(d) < 1e-8) {
    std::ostringstream err;
    err << "n4_alpha: singular family parameter, |1 + alpha^3| = " << std::abs(d);
    throw std::invalid_argument(err.str());
  }
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  const double a2 = alpha * alpha;
  const double a3 = alpha * a2;

  Matrix a(4, 4);
  a << (1 - r2) * a2, 1 + r2 * a3, (r2 - 1) * alpha, 0,  //
      -r2 * alpha, r2 * a2, r2, r3 * alpha * d,          //
      a3, alpha, -a2, r3 * d,                            //
      0, 0, 0, 0;
  a /= d;

  Matrix b(4, 4);
  b << alpha, -a2, a3, 0,                      //
      1 + r2 * a3, (r2 - 1) * alpha, (1 - r2) * a2, 0,  //
      r2 * a2, r2, -r2 * alpha, 0,             //
      -r3 * alpha, r3 * a2, r3, 0;
  b /= d;

  Matrix k = Matrix::Zero(4, 4);
  k(3, 3) = 1.0;
  return {4, a, b, k};
}

/// Truncated Swanson Hamiltonian over a deformed base, built both as
/// omega*(B A + (1-nk)/2) and directly from position/momentum; the two routes
/// must agree.
struct SwansonModel {
  double theta = 0.0;
  double omega = 1.0;  // 1/cos(2 theta)
  Matrix a_theta;
  Matrix b_theta;
  Matrix h_theta;
  Representation base;
};

inline SwansonModel swanson(const Representation& rep, double theta,
                            const Tolerance& tol = {}) {
  constexpr double quarter_pi = 0.78539816339744830961;
  if (!(std::abs(theta) > 1e-12) || !(std::abs(theta) < quarter_pi)) {
    std::ostringstream err;
    err << "swanson: theta must lie in (-pi/4, pi/4) away from 0, got " << theta;
    throw std::invalid_argument(err.str());
  }
  const Index n = rep.n;
  const DerivedOperators ops = derived_ops(rep);
  const Matrix& x = ops.q;
  const Matrix& p = ops.p;
  const Complex eip = std::polar(1.0, theta);
  const Complex eim = std::polar(1.0, -theta);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  SwansonModel model;
  model.theta = theta;
  model.omega = 1.0 / std::cos(2.0 * theta);
  model.base = rep;
  model.a_theta = inv_sqrt2 * (eip * x + Complex(0, 1) * eim * p);
  model.b_theta = inv_sqrt2 * (eip * x - Complex(0, 1) * eim * p);

  const Matrix one_minus_nk = Matrix::Identity(n, n) - double(n) * rep.k;
  model.h_theta =
      model.omega * (model.b_theta * model.a_theta + 0.5 * one_minus_nk);
  const Matrix direct = 0.5 * (p * p + x * x) -
                        Complex(0, 0.5) * std::tan(2.0 * theta) * (p * p - x * x);

  const double scale =
      std::max(1.0, max_abs(model.a_theta) * max_abs(model.b_theta));
  const double route_res = max_abs(Matrix(model.h_theta - direct));
  if (route_res > tol.bound(std::max(scale, max_abs(direct)))) {
    std::ostringstream err;
    err << "swanson: construction routes disagree, residual " << route_res;
    throw std::runtime_error(err.str());
  }
  const double comm_res = max_abs(
      commutator(model.a_theta, model.b_theta) - one_minus_nk);
  if (comm_res > tol.bound(scale)) {
    std::ostringstream err;
    err << "swanson: [A,B] - (1 - n k) residual " << comm_res;
    throw std::runtime_error(err.str());
  }
  return model;
}

/// Spectral audit of the truncated Swanson model. The omega-scaled chain
/// pattern is treated as a hypothesis to test, not ground truth: the ladder
/// premises k A = B k = 0 fail for theta != 0.
struct SpectrumReport {
  double theta = 0.0;
  double omega = 1.0;
  std::vector<Complex> computed;
  std::vector<double> hypothesis_scaled;
  std::vector<double> hypothesis_unscaled;
  bool match_scaled = false;
  bool match_unscaled = false;
  double max_imag = 0.0;
  double intertwiner_residual = 0.0;
};

namespace detail {

inline bool multiset_matches(const std::vector<Complex>& computed,
                             const std::vector<double>& hypothesis,
                             double bound) {
  // both already ascending by (re, im) / value
  for (std::size_t i = 0; i < computed.size(); ++i) {
    if (std::abs(computed[i] - hypothesis[i]) > bound) return false;
  }
  return true;
}

}  // namespace detail

inline SpectrumReport swanson_spectrum_report(const SwansonModel& model,
                                              const Tolerance& tol = {}) {
  const Index n = model.base.n;
  const GeneralEigen eig = eig_general(model.h_theta);
  const double cond = condition_number(eig.vectors);
  if (!(cond < 1e10)) {
    std::ostringstream err;
    err << "swanson_spectrum_report: exceptional point, eigenvector matrix "
           "condition number "
        << cond;
    throw std::runtime_error(err.str());
  }

  SpectrumReport report;
  report.theta = model.theta;
  report.omega = model.omega;
  report.computed.assign(eig.values.data(), eig.values.data() + n);
  report.hypothesis_unscaled = chain_spectrum_pattern(n);
  report.hypothesis_scaled = report.hypothesis_unscaled;
  for (double& v : report.hypothesis_scaled) v *= model.omega;

  double vmax = 0.0;
  for (const Complex& v : report.computed) {
    report.max_imag = std::max(report.max_imag, std::abs(v.imag()));
    vmax = std::max(vmax, std::abs(v));
  }
  const double match_bound = tol.bound(std::max(1.0, vmax));
  report.match_scaled =
      detail::multiset_matches(report.computed, report.hypothesis_scaled, match_bound);
  report.match_unscaled = detail::multiset_matches(
      report.computed, report.hypothesis_unscaled, match_bound);

  // Eigenvector-built metric: biorthonormal partner family is V^{-dagger},
  // so S_phi = V V† and the intertwining defect isolates Im(spectrum).
  const Matrix s_phi = eig.vectors * eig.vectors.adjoint();
  report.intertwiner_residual = max_abs(
      Matrix(model.h_theta * s_phi - s_phi * model.h_theta.adjoint()));
  return report;
}

/// Truncated shifted oscillator H = beta/2 (p^2 + x^2) + i sqrt(2) p.
/// Spectrum is reported, never asserted real.
struct ShiftedOscillator {
  Matrix h_beta;
  std::vector<Complex> spectrum;
  double max_imag = 0.0;
};

inline ShiftedOscillator shifted_oscillator(const Representation& rep, double beta) {
  if (!(beta > 0.0)) {
    std::ostringstream err;
    err << "shifted_oscillator: beta must be positive, got " << beta;
    throw std::invalid_argument(err.str());
  }
  const DerivedOperators ops = derived_ops(rep);
  ShiftedOscillator out;
  out.h_beta = beta * ops.h + Complex(0, std::sqrt(2.0)) * ops.p;
  const GeneralEigen eig = eig_general(out.h_beta);
  out.spectrum.assign(eig.values.data(), eig.values.data() + rep.n);
  for (const Complex& v : out.spectrum)
    out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
  return out;
}

}  // namespace fdpb
