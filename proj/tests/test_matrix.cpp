#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace fdpb;
using testutil::diff;

TEST_CASE("commutator basics", "[matrix]") {
  SECTION("identity commutes with everything") {
    const Matrix y = testutil::random_matrix(3, 7);
    REQUIRE(max_abs(commutator(Matrix::Identity(3, 3), y)) == 0.0);
  }
  SECTION("2x2 raising/lowering pair") {
    Matrix x(2, 2);
    x << 0, 1, 0, 0;
    Matrix expected(2, 2);
    expected << 1, 0, 0, -1;
    REQUIRE(diff(commutator(x, x.adjoint()), expected) == 0.0);
  }
  SECTION("truncated pair gives 1 - 4K") {
    const auto base = buchdahl_rep(4);
    Matrix expected = Matrix::Identity(4, 4);
    expected(3, 3) = -3.0;
    REQUIRE(diff(commutator(base.c, Matrix(base.c.adjoint())), expected) < 1e-15);
  }
  SECTION("antisymmetry is an exact sign flip") {
    const Matrix x = testutil::random_matrix(5, 11);
    const Matrix y = testutil::random_matrix(5, 12);
    REQUIRE(diff(commutator(x, y), Matrix(-commutator(y, x))) == 0.0);
  }
  SECTION("dimension mismatch") {
    REQUIRE_THROWS_AS(commutator(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                      std::invalid_argument);
  }
}

TEST_CASE("null_space", "[matrix]") {
  SECTION("kernel of the zero map is everything") {
    const auto kernel = null_space(Matrix::Zero(2, 2));
    REQUIRE(kernel.size() == 2);
    REQUIRE(std::abs(kernel[0].dot(kernel[1])) < 1e-12);
    REQUIRE(std::abs(kernel[0].norm() - 1.0) < 1e-12);
    REQUIRE(std::abs(kernel[1].norm() - 1.0) < 1e-12);
  }
  SECTION("invertible matrix has empty kernel") {
    REQUIRE(null_space(Matrix::Identity(3, 3)).empty());
  }
  SECTION("kernel of the deformed raising operator") {
    const auto rep = n4_alpha(0.5);
    const auto kernel = null_space(rep.b);
    REQUIRE(kernel.size() == 1);
    Vector e3 = Vector::Zero(4);
    e3(3) = 1.0;
    // proportional to (0,0,0,1)
    REQUIRE(std::abs(std::abs(kernel[0].dot(e3)) - 1.0) < 1e-12);
  }
  SECTION("orthonormal kernel with bounded residual on rank-deficient input") {
    Tolerance tol;
    for (std::uint64_t seed : {21u, 22u, 23u, 24u, 25u}) {
      const Index n = 5;
      Matrix g = testutil::random_matrix(n, seed);
      Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::VectorXd sigma = svd.singularValues();
      sigma(n - 1) = 0.0;
      sigma(n - 2) = 0.0;
      const Matrix m = svd.matrixU() * sigma.asDiagonal() * svd.matrixV().adjoint();
      const auto kernel = null_space(m, tol);
      REQUIRE(kernel.size() == 2);
      const double cutoff = 10.0 * tol.bound(sigma(0));
      for (std::size_t i = 0; i < kernel.size(); ++i) {
        CAPTURE(seed, i);
        REQUIRE(max_abs(m * kernel[i]) <= cutoff);
        for (std::size_t j = 0; j < i; ++j) {
          REQUIRE(std::abs(kernel[i].dot(kernel[j])) < 1e-12);
        }
        REQUIRE(std::abs(kernel[i].norm() - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("eig_hermitian", "[matrix]") {
  SECTION("diagonal input sorted ascending") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    const auto eig = eig_hermitian(m);
    REQUIRE(eig.values(0) == Catch::Approx(1.0));
    REQUIRE(eig.values(1) == Catch::Approx(2.0));
    REQUIRE(eig.values(2) == Catch::Approx(3.0));
    // permuted standard basis
    REQUIRE(std::abs(std::abs(eig.vectors(1, 0)) - 1.0) < 1e-12);
    REQUIRE(std::abs(std::abs(eig.vectors(2, 1)) - 1.0) < 1e-12);
    REQUIRE(std::abs(std::abs(eig.vectors(0, 2)) - 1.0) < 1e-12);
  }
  SECTION("pauli-x") {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    const auto eig = eig_hermitian(m);
    REQUIRE(eig.values(0) == Catch::Approx(-1.0));
    REQUIRE(eig.values(1) == Catch::Approx(1.0));
  }
  SECTION("metric operator of the 4x4 family is positive") {
    const auto rep = n4_alpha(0.5);
    const auto sys = build_system(rep);
    const auto mp = build_metrics(sys);
    const auto eig = eig_hermitian(mp.s_phi);
    for (Index i = 0; i < 4; ++i) REQUIRE(eig.values(i) > 0.0);
  }
  SECTION("rejects non-Hermitian input, naming the entry") {
    Matrix m(2, 2);
    m << 0, 1, 0, 0;
    REQUIRE_THROWS_WITH(eig_hermitian(m),
                        Catch::Matchers::ContainsSubstring("not Hermitian"));
  }
  SECTION("residuals and orthonormality on random Hermitian input") {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
      const Matrix m = testutil::random_hermitian_pd(6, seed);
      const auto eig = eig_hermitian(m);
      CAPTURE(seed);
      REQUIRE(max_abs(m * eig.vectors -
                      eig.vectors * eig.values.asDiagonal().toDenseMatrix()
                                        .cast<Complex>()) < 1e-12);
      REQUIRE(max_abs(eig.vectors.adjoint() * eig.vectors -
                      Matrix::Identity(6, 6)) < 1e-12);
    }
  }
}

TEST_CASE("eig_general", "[matrix]") {
  SECTION("diagonal spectrum") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 1.5;
    const auto eig = eig_general(m);
    REQUIRE(std::abs(eig.values(0) - Complex(0.5, 0)) < 1e-14);
    REQUIRE(std::abs(eig.values(1) - Complex(1.5, 0)) < 1e-14);
  }
  SECTION("non-Hermitian oscillator spectrum is real") {
    const auto rep = n4_alpha(0.5);
    const auto eig = eig_general(derived_ops(rep).h);
    const double expected[] = {0.5, 1.5, 1.5, 2.5};
    for (Index i = 0; i < 4; ++i) {
      REQUIRE(std::abs(eig.values(i).real() - expected[i]) < 1e-10);
      REQUIRE(std::abs(eig.values(i).imag()) < 1e-10);
    }
  }
  SECTION("nilpotent matrix") {
    Matrix m(2, 2);
    m << 0, 1, 0, 0;
    const auto eig = eig_general(m);
    REQUIRE(std::abs(eig.values(0)) < 1e-14);
    REQUIRE(std::abs(eig.values(1)) < 1e-14);
  }
  SECTION("Hermitian input gives real values") {
    for (std::uint64_t seed : {41u, 42u, 43u}) {
      const auto eig = eig_general(testutil::random_hermitian_pd(7, seed));
      CAPTURE(seed);
      REQUIRE(max_abs(eig.values.imag()) <= 1e-10);
    }
  }
}

TEST_CASE("sqrt_pd", "[matrix]") {
  SECTION("identity") {
    REQUIRE(diff(sqrt_pd(Matrix::Identity(4, 4)), Matrix::Identity(4, 4)) < 1e-14);
  }
  SECTION("diagonal") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 4.0;
    m(1, 1) = 9.0;
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 2.0;
    expected(1, 1) = 3.0;
    REQUIRE(diff(sqrt_pd(m), expected) < 1e-14);
  }
  SECTION("recomposes the 4x4 family metric") {
    const auto rep = n4_alpha(0.5);
    const auto sys = build_system(rep);
    const auto mp = build_metrics(sys);
    const Matrix root = sqrt_pd(mp.s_psi);
    REQUIRE(max_abs(root * root - mp.s_psi) < 1e-12);
  }
  SECTION("rejects indefinite input, naming the eigenvalue") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    REQUIRE_THROWS_WITH(sqrt_pd(m),
                        Catch::Matchers::ContainsSubstring("-1"));
  }
  SECTION("Hermitian root squaring back on random PD input") {
    for (std::uint64_t seed : {51u, 52u, 53u, 54u}) {
      const Matrix m = testutil::random_hermitian_pd(6, seed);
      const Matrix root = sqrt_pd(m);
      CAPTURE(seed);
      REQUIRE(max_abs(root - root.adjoint()) < 1e-12);
      REQUIRE(max_abs(root * root - m) < 1e-10 * max_abs(m));
    }
  }
}

TEST_CASE("inverse", "[matrix]") {
  SECTION("diagonal") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 4.0;
    const Matrix inv = inverse(m);
    REQUIRE(std::abs(inv(0, 0) - Complex(0.5, 0)) < 1e-15);
    REQUIRE(std::abs(inv(1, 1) - Complex(0.25, 0)) < 1e-15);
  }
  SECTION("identity") {
    REQUIRE(diff(inverse(Matrix::Identity(5, 5)), Matrix::Identity(5, 5)) < 1e-15);
  }
  SECTION("metric pair are mutual inverses") {
    const auto rep = n4_alpha(0.5);
    const auto sys = build_system(rep);
    const auto mp = build_metrics(sys);
    REQUIRE(diff(inverse(mp.s_phi), mp.s_psi) < 1e-10);
  }
  SECTION("singular input reports the smallest singular value") {
    REQUIRE_THROWS_WITH(inverse(Matrix::Zero(3, 3)),
                        Catch::Matchers::ContainsSubstring("singular"));
  }
  SECTION("two-sided inverse on random input") {
    const Matrix m = testutil::random_matrix(6, 61) + 3.0 * Matrix::Identity(6, 6);
    const Matrix inv = inverse(m);
    REQUIRE(max_abs(m * inv - Matrix::Identity(6, 6)) < 1e-12);
    REQUIRE(max_abs(inv * m - Matrix::Identity(6, 6)) < 1e-12);
  }
}
