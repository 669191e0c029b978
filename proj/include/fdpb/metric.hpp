#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fdpb/algebra.hpp"
#include "fdpb/chain.hpp"
#include "fdpb/matrix.hpp"
#include "fdpb/report.hpp"

namespace fdpb {

/// S_phi = sum |phi><phi| and its inverse S_psi = sum |psi><psi|, plus the
/// unique Hermitian positive square root of S_psi and its inverse.
struct MetricPair {
  Matrix s_phi;
  Matrix s_psi;
  Matrix s_psi_sqrt;
  Matrix s_psi_sqrt_inv;
};

/// Hermitized triple obeying the undeformed rule [c, c†] = 1 - n*K, together
/// with the orthonormal basis e_i = S_psi^{1/2} phi_i and H0 = c†c + (1-nK)/2.
struct HermitianSystem {
  Index n = 0;
  Matrix c;
  Matrix big_k;
  Matrix h0;
  std::vector<Label> labels;
  std::vector<Vector> e_basis;
};

inline MetricPair build_metrics(const BiorthogonalSystem& sys,
                                const Tolerance& tol = {}) {
  const Index n = sys.n;
  MetricPair mp;
  mp.s_phi = Matrix::Zero(n, n);
  mp.s_psi = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    mp.s_phi += sys.phis[std::size_t(i)] * sys.phis[std::size_t(i)].adjoint();
    mp.s_psi += sys.psis[std::size_t(i)] * sys.psis[std::size_t(i)].adjoint();
  }
  try {
    mp.s_psi_sqrt = sqrt_pd(mp.s_psi, tol);
  } catch (const std::invalid_argument& e) {
    std::ostringstream err;
    err << "build_metrics: S_psi not positive definite (" << e.what()
        << "); biorthonormalization broke upstream";
    throw std::runtime_error(err.str());
  }
  mp.s_psi_sqrt_inv = inverse(mp.s_psi_sqrt, tol);

  const double scale = std::max(1.0, max_abs(mp.s_phi) * max_abs(mp.s_psi));
  const double inv_res =
      max_abs(Matrix(mp.s_phi * mp.s_psi - Matrix::Identity(n, n)));
  if (inv_res > tol.bound(scale)) {
    std::ostringstream err;
    err << "build_metrics: S_phi S_psi - 1 residual " << inv_res;
    throw std::runtime_error(err.str());
  }
  const double sqrt_res =
      max_abs(Matrix(mp.s_psi_sqrt * mp.s_psi_sqrt - mp.s_psi));
  if (sqrt_res > tol.bound(std::max(1.0, max_abs(mp.s_psi)))) {
    std::ostringstream err;
    err << "build_metrics: square-root recomposition residual " << sqrt_res;
    throw std::runtime_error(err.str());
  }
  return mp;
}

/// Residuals for the mapping, intertwining, and commutation properties of the
/// metric pair.
inline ValidationReport verify_metrics(const Representation& rep,
                                       const BiorthogonalSystem& sys,
                                       const MetricPair& mp,
                                       const Tolerance& tol = {}) {
  const Index n = rep.n;
  const DerivedOperators ops = derived_ops(rep);
  const double sphi_max = max_abs(mp.s_phi);
  const double spsi_max = max_abs(mp.s_psi);
  ValidationReport report;

  for (Index i = 0; i < n; ++i) {
    const auto ui = std::size_t(i);
    const Label& lab = sys.labels[ui];
    report.add("S_phi psi - phi " + lab.str(),
               max_abs(Vector(mp.s_phi * sys.psis[ui] - sys.phis[ui])),
               tol.bound(std::max(1.0, sphi_max * sys.psis[ui].norm())));
    report.add("S_psi phi - psi " + lab.str(),
               max_abs(Vector(mp.s_psi * sys.phis[ui] - sys.psis[ui])),
               tol.bound(std::max(1.0, spsi_max * sys.phis[ui].norm())));
  }
  report.add("S_psi b - a† S_psi",
             max_abs(Matrix(mp.s_psi * rep.b - rep.a.adjoint() * mp.s_psi)),
             tol.bound(std::max(1.0, spsi_max * max_abs(rep.b))));
  report.add("[k, S_psi]", max_abs(commutator(rep.k, mp.s_psi)),
             tol.bound(std::max(1.0, spsi_max)));
  report.add("h S_phi - S_phi h†",
             max_abs(Matrix(ops.h * mp.s_phi - mp.s_phi * ops.h_adj)),
             tol.bound(std::max(1.0, sphi_max * max_abs(ops.h))));
  return report;
}

/// Conjugation by S_psi^{1/2}: carries (a, b, k) to a Hermitian triple
/// (c, c†, K) on the orthonormal basis e_i = S_psi^{1/2} phi_i.
inline HermitianSystem hermitize(const Representation& rep,
                                 const BiorthogonalSystem& sys,
                                 const MetricPair& mp, const Tolerance& tol = {}) {
  const Index n = rep.n;
  const Matrix& root = mp.s_psi_sqrt;
  const Matrix& root_inv = mp.s_psi_sqrt_inv;

  HermitianSystem out;
  out.n = n;
  out.c = root * rep.a * root_inv;
  out.big_k = root * rep.k * root_inv;
  out.labels = sys.labels;
  out.e_basis.reserve(std::size_t(n));
  for (Index i = 0; i < n; ++i) out.e_basis.push_back(root * sys.phis[std::size_t(i)]);

  const Matrix c_dag_from_b = root * rep.b * root_inv;
  const double cmax = std::max(1.0, max_abs(out.c));
  const double conv_res = max_abs(Matrix(out.c.adjoint() - c_dag_from_b));
  if (conv_res > tol.bound(cmax)) {
    std::ostringstream err;
    err << "hermitize: c† != S_psi^{1/2} b S_psi^{-1/2} (residual " << conv_res
        << "); mu = nu convention violated upstream";
    throw std::runtime_error(err.str());
  }

  const Matrix unit = Matrix::Identity(n, n);
  const double comm_res = max_abs(
      commutator(out.c, Matrix(out.c.adjoint())) - (unit - double(n) * out.big_k));
  if (comm_res > tol.bound(cmax * cmax)) {
    std::ostringstream err;
    err << "hermitize: [c,c†] - (1 - n K) residual " << comm_res;
    throw std::runtime_error(err.str());
  }
  const double k_herm = max_abs(Matrix(out.big_k - out.big_k.adjoint()));
  const double k_proj = max_abs(Matrix(out.big_k - out.big_k * out.big_k));
  const double kc = max_abs(Matrix(out.big_k * out.c));
  if (k_herm > tol.bound(1.0) || k_proj > tol.bound(1.0) ||
      kc > tol.bound(cmax)) {
    std::ostringstream err;
    err << "hermitize: K fails projector/annihilation checks (K-K† " << k_herm
        << ", K-K² " << k_proj << ", Kc " << kc << ")";
    throw std::runtime_error(err.str());
  }

  double gram_worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Complex g =
          out.e_basis[std::size_t(i)].dot(out.e_basis[std::size_t(j)]);
      gram_worst = std::max(gram_worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  if (gram_worst > tol.bound(std::max(1.0, max_abs(mp.s_psi)))) {
    std::ostringstream err;
    err << "hermitize: e-basis Gram residual " << gram_worst;
    throw std::runtime_error(err.str());
  }

  out.h0 = out.c.adjoint() * out.c + 0.5 * (unit - double(n) * out.big_k);
  for (Index i = 0; i < n; ++i) {
    const auto ui = std::size_t(i);
    const double hp = sys.labels[ui].hprime();
    const double res =
        max_abs(Vector(out.h0 * out.e_basis[ui] - hp * out.e_basis[ui]));
    if (res > tol.bound(std::max(1.0, max_abs(out.h0)))) {
      std::ostringstream err;
      err << "hermitize: H0 e != h' e at " << sys.labels[ui].str()
          << ", residual " << res;
      throw std::runtime_error(err.str());
    }
  }
  return out;
}

}  // namespace fdpb
