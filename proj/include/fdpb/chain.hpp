#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdpb/algebra.hpp"
#include "fdpb/matrix.hpp"
#include "fdpb/report.hpp"

namespace fdpb {

/// Chain label (h', k'); h' is a half-integer stored as its numerator over 2.
struct Label {
  int h2 = 0;
  int kprime = 0;

  double hprime() const { return 0.5 * h2; }
  std::string str() const {
    std::ostringstream out;
    out << "(" << h2 << "/2," << kprime << ")";
    return out.str();
  }
};

/// Ladder-built eigenvector chains of h and h†, ordered top-down:
/// labels[0] = ((n-1)/2, 1), then (n-3/2, 0) down to (1/2, 0). Step i runs
/// from chain position i to i+1 with coefficients nus[i] = mus[i] = sqrt(m),
/// m = n-1-i the number-operator eigenvalue of the source vector.
struct BiorthogonalSystem {
  Index n = 0;
  std::vector<Label> labels;
  std::vector<Vector> phis;
  std::vector<Vector> psis;
  std::vector<double> nus;
  std::vector<double> mus;

  /// Number-operator (b a) eigenvalue at chain position i.
  double nhat_eigenvalue(std::size_t i) const { return double(n) - 1.0 - double(i); }
};

namespace detail {

// Rotate so the first component that is not numerically negligible comes out
// real positive; magnitude unchanged.
inline Vector phase_fix(const Vector& v) {
  const double scale = max_abs(v);
  if (scale == 0.0) return v;
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-6 * scale) {
      return v * (std::conj(v(i)) / std::abs(v(i)));
    }
  }
  return v;
}

inline Vector seed_kernel_vector(const Matrix& op, const Matrix& k,
                                 const Tolerance& tol, const char* who) {
  const std::vector<Vector> kernel = null_space(op, tol);
  if (kernel.size() != 1) {
    std::ostringstream err;
    err << who << ": degenerate representation, kernel dimension "
        << kernel.size() << " (expected 1)";
    throw std::runtime_error(err.str());
  }
  const Vector seed = phase_fix(kernel.front());
  const double kres = max_abs(Vector(k * seed - seed));
  if (kres > tol.bound(std::max(1.0, max_abs(k)))) {
    std::ostringstream err;
    err << who << ": seed is not a k' = 1 eigenvector, residual " << kres;
    throw std::runtime_error(err.str());
  }
  return seed;
}

}  // namespace detail

/// Unit vector spanning ker(b): the chain top annihilated by b, with k' = 1.
inline Vector seed_phi(const Representation& rep, const Tolerance& tol = {}) {
  return detail::seed_kernel_vector(rep.b, rep.k, tol, "seed_phi");
}

/// Unit vector spanning ker(a†): the adjoint-chain top, with k' = 1.
inline Vector seed_psi(const Representation& rep, const Tolerance& tol = {}) {
  return detail::seed_kernel_vector(rep.a.adjoint(), rep.k, tol, "seed_psi");
}

/// Builds both chains downward from the k' = 1 tops. The top pairing is
/// normalized to <psi, phi> = 1 and propagates down each step exactly
/// (telescoping through b a), so the result is biorthonormal.
inline BiorthogonalSystem build_system(const Representation& rep,
                                       const Tolerance& tol = {}) {
  const Index n = rep.n;
  BiorthogonalSystem sys;
  sys.n = n;

  const Vector phi_top = seed_phi(rep, tol);
  const Vector psi_raw = seed_psi(rep, tol);
  const Complex pairing = psi_raw.dot(phi_top);
  if (std::abs(pairing) <= tol.bound(1.0)) {
    throw std::runtime_error(
        "build_system: non-diagonalizable pairing, <psi_top, phi_top> ~ 0");
  }

  sys.labels.push_back({int(n) - 1, 1});
  sys.phis.push_back(phi_top);
  sys.psis.push_back(psi_raw / std::conj(pairing));

  const Matrix b_adj = rep.b.adjoint();
  for (Index m = n - 1; m >= 1; --m) {
    const Vector& phi_cur = sys.phis.back();
    const Vector& psi_cur = sys.psis.back();
    const Vector a_phi = rep.a * phi_cur;
    if (max_abs(a_phi) <= tol.bound(max_abs(rep.a) * phi_cur.norm())) {
      std::ostringstream err;
      err << "build_system: broken chain, a annihilates position "
          << sys.phis.size() - 1 << " before the chain is complete";
      throw std::runtime_error(err.str());
    }
    const double step = std::sqrt(double(m));
    sys.phis.push_back(a_phi / step);
    sys.psis.push_back(b_adj * psi_cur / step);
    sys.nus.push_back(step);
    sys.mus.push_back(step);
    sys.labels.push_back({2 * int(m) - 1, 0});
  }

  const double tail_phi = max_abs(Vector(rep.a * sys.phis.back()));
  if (tail_phi > tol.bound(max_abs(rep.a) * sys.phis.back().norm())) {
    std::ostringstream err;
    err << "build_system: chain does not terminate, ||a phi_(1/2,0)|| = " << tail_phi;
    throw std::runtime_error(err.str());
  }
  const double tail_psi = max_abs(Vector(b_adj * sys.psis.back()));
  if (tail_psi > tol.bound(max_abs(rep.b) * sys.psis.back().norm())) {
    std::ostringstream err;
    err << "build_system: adjoint chain does not terminate, ||b† psi_(1/2,0)|| = "
        << tail_psi;
    throw std::runtime_error(err.str());
  }

  // Standing assumption behind the ladder argument: k b does not annihilate
  // the vector one step below the top.
  const double kb_res = max_abs(Vector(rep.k * (rep.b * sys.phis[1])));
  if (kb_res <= tol.bound(max_abs(rep.b) * sys.phis[1].norm())) {
    throw std::runtime_error(
        "build_system: k b phi_(n-3/2,0) vanishes; ladder assumption violated");
  }

  double worst = 0.0;
  double phi_norm = 0.0, psi_norm = 0.0;
  for (Index i = 0; i < n; ++i) {
    phi_norm = std::max(phi_norm, sys.phis[std::size_t(i)].norm());
    psi_norm = std::max(psi_norm, sys.psis[std::size_t(i)].norm());
    for (Index j = 0; j < n; ++j) {
      const Complex g = sys.psis[std::size_t(i)].dot(sys.phis[std::size_t(j)]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  const double scale = std::max(1.0, phi_norm * psi_norm);
  if (worst > tol.bound(scale)) {
    std::ostringstream err;
    err << "build_system: biorthonormality residual " << worst
        << " exceeds tolerance";
    throw std::runtime_error(err.str());
  }
  return sys;
}

/// Residuals for every eigen-equation, ladder relation, and completeness
/// identity the chains are supposed to satisfy.
inline ValidationReport verify_system(const Representation& rep,
                                      const BiorthogonalSystem& sys,
                                      const Tolerance& tol = {}) {
  const Index n = rep.n;
  if (sys.n != n || Index(sys.phis.size()) != n || Index(sys.psis.size()) != n) {
    throw std::invalid_argument("verify_system: system does not match representation");
  }
  const DerivedOperators ops = derived_ops(rep);
  const double hmax = max_abs(ops.h);
  ValidationReport report;

  for (Index i = 0; i < n; ++i) {
    const auto ui = std::size_t(i);
    const Label& lab = sys.labels[ui];
    const Vector& phi = sys.phis[ui];
    const Vector& psi = sys.psis[ui];
    const double hp = lab.hprime();
    const double kp = double(lab.kprime);
    const double m = sys.nhat_eigenvalue(ui);
    const double mhat_val = lab.kprime == 1 ? 0.0 : m + 1.0;
    const double phi_scale = std::max(1.0, hmax * phi.norm());
    const double psi_scale = std::max(1.0, hmax * psi.norm());

    report.add("h phi - h' phi " + lab.str(),
               max_abs(Vector(ops.h * phi - hp * phi)), tol.bound(phi_scale));
    report.add("k phi - k' phi " + lab.str(),
               max_abs(Vector(rep.k * phi - kp * phi)),
               tol.bound(std::max(1.0, phi.norm())));
    report.add("h† psi - h' psi " + lab.str(),
               max_abs(Vector(ops.h_adj * psi - hp * psi)), tol.bound(psi_scale));
    report.add("k psi - k' psi " + lab.str(),
               max_abs(Vector(rep.k * psi - kp * psi)),
               tol.bound(std::max(1.0, psi.norm())));
    report.add("N̂ phi - m phi " + lab.str(),
               max_abs(Vector(ops.nhat * phi - m * phi)), tol.bound(phi_scale));
    report.add("M̂ phi - m' phi " + lab.str(),
               max_abs(Vector(ops.mhat * phi - mhat_val * phi)),
               tol.bound(phi_scale));
  }

  for (std::size_t i = 0; i + 1 < std::size_t(n); ++i) {
    const double m = sys.nhat_eigenvalue(i);
    const double up = m / sys.nus[i];
    const double scale =
        std::max(1.0, max_abs(rep.b) * sys.phis[i + 1].norm());
    report.add("b phi_next - (m/nu) phi " + sys.labels[i].str(),
               max_abs(Vector(rep.b * sys.phis[i + 1] - up * sys.phis[i])),
               tol.bound(scale));
    report.add("a† psi_next - (m/mu) psi " + sys.labels[i].str(),
               max_abs(Vector(rep.a.adjoint() * sys.psis[i + 1] -
                              (m / sys.mus[i]) * sys.psis[i])),
               tol.bound(std::max(1.0, max_abs(rep.a) * sys.psis[i + 1].norm())));
    report.add("step pairing " + sys.labels[i + 1].str(),
               std::abs(sys.psis[i + 1].dot(sys.phis[i + 1]) -
                        sys.psis[i].dot(sys.phis[i])),
               tol.bound(std::max(1.0, sys.phis[i].norm() * sys.psis[i].norm())));
  }

  double gram_worst = 0.0;
  double phi_norm = 0.0, psi_norm = 0.0;
  Matrix completeness = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    phi_norm = std::max(phi_norm, sys.phis[std::size_t(i)].norm());
    psi_norm = std::max(psi_norm, sys.psis[std::size_t(i)].norm());
    completeness +=
        sys.phis[std::size_t(i)] * sys.psis[std::size_t(i)].adjoint();
    for (Index j = 0; j < n; ++j) {
      const Complex g = sys.psis[std::size_t(i)].dot(sys.phis[std::size_t(j)]);
      gram_worst = std::max(gram_worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  const double gram_scale = std::max(1.0, phi_norm * psi_norm);
  report.add("max |<psi_i, phi_j> - delta_ij|", gram_worst, tol.bound(gram_scale));
  report.add("sum |phi><psi| - 1",
             max_abs(Matrix(completeness - Matrix::Identity(n, n))),
             tol.bound(gram_scale));
  return report;
}

struct ReconstructedOperators {
  Matrix a;
  Matrix b;
};

/// Rank-one reassembly of the ladder pair from the biorthonormal chains:
/// a = sum nu |phi_target><psi_source|, b = sum (m/nu) |phi_source><psi_target|.
inline ReconstructedOperators reconstruct_operators(const BiorthogonalSystem& sys) {
  const Index n = sys.n;
  ReconstructedOperators out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (std::size_t i = 0; i + 1 < std::size_t(n); ++i) {
    const double m = sys.nhat_eigenvalue(i);
    out.a += sys.nus[i] * sys.phis[i + 1] * sys.psis[i].adjoint();
    out.b += (m / sys.nus[i]) * sys.phis[i] * sys.psis[i + 1].adjoint();
  }
  return out;
}

}  // namespace fdpb
