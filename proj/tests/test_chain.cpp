#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace fdpb;
using testutil::diff;
using testutil::make_vector;

TEST_CASE("seed vectors", "[chain]") {
  SECTION("4x4 family tops sit on the last coordinate") {
    for (double alpha : {-0.5, 0.0, 0.5, 2.0}) {
      CAPTURE(alpha);
      const auto rep = n4_alpha(alpha);
      REQUIRE(diff(seed_phi(rep), make_vector({0, 0, 0, 1})) < 1e-12);
      REQUIRE(diff(seed_psi(rep), make_vector({0, 0, 0, 1})) < 1e-12);
    }
  }
  SECTION("n = 2 Hermitian base") {
    const auto rep = as_representation(buchdahl_rep(2));
    REQUIRE(diff(seed_phi(rep), make_vector({0, 1})) < 1e-14);
  }
  SECTION("Hermitian base of any size seeds on the top state") {
    const auto rep = as_representation(buchdahl_rep(6));
    Vector top = Vector::Zero(6);
    top(5) = 1.0;
    REQUIRE(diff(seed_psi(rep), top) < 1e-14);
  }
  SECTION("seeded deformation: unique kernel vector annihilated by b") {
    const auto rep = random_deformation(5, 4242);
    const Vector phi = seed_phi(rep);
    REQUIRE(max_abs(rep.b * phi) < 1e-10);
    REQUIRE(std::abs(phi.norm() - 1.0) < 1e-12);
    const Vector psi = seed_psi(rep);
    REQUIRE(max_abs(rep.a.adjoint() * psi) < 1e-10);
  }
  SECTION("degenerate kernel is rejected") {
    Representation rep = as_representation(buchdahl_rep(3));
    rep.b = Matrix::Zero(3, 3);
    REQUIRE_THROWS_WITH(seed_phi(rep),
                        Catch::Matchers::ContainsSubstring("degenerate"));
  }
}

TEST_CASE("build_system on the 4x4 family", "[chain]") {
  const auto rep = n4_alpha(0.5);
  const auto sys = build_system(rep);

  SECTION("labels run top-down") {
    REQUIRE(sys.labels[0].h2 == 3);
    REQUIRE(sys.labels[0].kprime == 1);
    REQUIRE(sys.labels[1].h2 == 5);
    REQUIRE(sys.labels[2].h2 == 3);
    REQUIRE(sys.labels[3].h2 == 1);
    for (int i = 1; i < 4; ++i) REQUIRE(sys.labels[std::size_t(i)].kprime == 0);
  }
  SECTION("phi chain matches the displayed family") {
    REQUIRE(diff(sys.phis[0], make_vector({0, 0, 0, 1})) < 1e-12);
    REQUIRE(diff(sys.phis[1], make_vector({0, 0.5, 1, 0})) < 1e-12);
    REQUIRE(diff(sys.phis[2], make_vector({0.5, 1, 0, 0})) < 1e-12);
    REQUIRE(diff(sys.phis[3], make_vector({1, 0, 0.5, 0})) < 1e-12);
  }
  SECTION("psi chain matches the displayed family") {
    const double s = 8.0 / 9.0;  // 1/(1 + alpha^3)
    REQUIRE(diff(sys.psis[0], make_vector({0, 0, 0, 1})) < 1e-12);
    REQUIRE(diff(sys.psis[1], Vector(s * make_vector({-0.5, 0.25, 1, 0}))) < 1e-12);
    REQUIRE(diff(sys.psis[2], Vector(s * make_vector({0.25, 1, -0.5, 0}))) < 1e-12);
    REQUIRE(diff(sys.psis[3], Vector(s * make_vector({1, -0.5, 0.25, 0}))) < 1e-12);
  }
  SECTION("ladder coefficients are sqrt(3), sqrt(2), 1") {
    REQUIRE(sys.nus[0] == Catch::Approx(std::sqrt(3.0)));
    REQUIRE(sys.nus[1] == Catch::Approx(std::sqrt(2.0)));
    REQUIRE(sys.nus[2] == Catch::Approx(1.0));
    REQUIRE(sys.mus == sys.nus);
  }
}

TEST_CASE("build_system on the Hermitian base", "[chain]") {
  const Index n = 5;
  const auto rep = as_representation(buchdahl_rep(n));
  const auto sys = build_system(rep);
  SECTION("chains collapse to the reversed standard basis") {
    for (Index i = 0; i < n; ++i) {
      Vector e = Vector::Zero(n);
      e(n - 1 - i) = 1.0;
      CAPTURE(i);
      REQUIRE(diff(sys.phis[std::size_t(i)], e) < 1e-13);
      REQUIRE(diff(sys.psis[std::size_t(i)], e) < 1e-13);
    }
  }
  SECTION("coefficients are sqrt(m)") {
    for (std::size_t i = 0; i + 1 < std::size_t(n); ++i) {
      REQUIRE(sys.nus[i] == Catch::Approx(std::sqrt(double(n) - 1.0 - double(i))));
    }
  }
}

TEST_CASE("build_system pairing telescopes", "[chain]") {
  const auto rep = random_deformation(6, 777);
  const auto sys = build_system(rep);
  for (std::size_t i = 0; i + 1 < sys.phis.size(); ++i) {
    CAPTURE(i);
    REQUIRE(std::abs(sys.psis[i + 1].dot(sys.phis[i + 1]) -
                     sys.psis[i].dot(sys.phis[i])) < 1e-10);
  }
  REQUIRE(std::abs(sys.psis[0].dot(sys.phis[0]) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("verify_system", "[chain]") {
  SECTION("4x4 family residuals") {
    const auto rep = n4_alpha(0.5);
    const auto sys = build_system(rep);
    const auto report = verify_system(rep, sys);
    REQUIRE(report.passed());
    REQUIRE(report.max_residual() < 1e-10);
  }
  SECTION("number-operator ladder on the Hermitian base, n = 5") {
    const auto rep = as_representation(buchdahl_rep(5));
    const auto sys = build_system(rep);
    const auto ops = derived_ops(rep);
    const double mhat_expected[] = {0, 4, 3, 2, 1};
    for (std::size_t i = 0; i < 5; ++i) {
      CAPTURE(i);
      REQUIRE(max_abs(ops.mhat * sys.phis[i] - mhat_expected[i] * sys.phis[i]) <
              1e-12);
    }
  }
  SECTION("N-hat eigenvalues descend from n-1 to 0, seeded n = 7") {
    const auto rep = random_deformation(7, 31337);
    const auto sys = build_system(rep);
    const auto ops = derived_ops(rep);
    for (std::size_t i = 0; i < 7; ++i) {
      const double m = 6.0 - double(i);
      CAPTURE(i);
      REQUIRE(max_abs(ops.nhat * sys.phis[i] - m * sys.phis[i]) < 1e-9);
    }
    REQUIRE(verify_system(rep, sys).passed());
  }
  SECTION("chain h' labels agree with the dense eigensolver") {
    for (Index n : {3, 6}) {
      const auto rep = random_deformation(n, 345 + std::uint64_t(n));
      const auto sys = build_system(rep);
      std::vector<double> chain_values;
      for (const auto& lab : sys.labels) chain_values.push_back(lab.hprime());
      std::sort(chain_values.begin(), chain_values.end());
      const auto eig = eig_general(derived_ops(rep).h);
      CAPTURE(n);
      for (Index i = 0; i < n; ++i) {
        REQUIRE(std::abs(eig.values(i) -
                         Complex(chain_values[std::size_t(i)], 0)) < 1e-8);
      }
    }
  }
}

TEST_CASE("reconstruct_operators", "[chain]") {
  SECTION("n = 2 Hermitian base") {
    const auto rep = as_representation(buchdahl_rep(2));
    const auto rec = reconstruct_operators(build_system(rep));
    Matrix c(2, 2);
    c << 0, 1, 0, 0;
    REQUIRE(diff(rec.a, c) < 1e-14);
    REQUIRE(diff(rec.b, Matrix(c.adjoint())) < 1e-14);
  }
  SECTION("4x4 family") {
    const auto rep = n4_alpha(0.5);
    const auto rec = reconstruct_operators(build_system(rep));
    REQUIRE(diff(rec.a, rep.a) < 1e-10);
    REQUIRE(diff(rec.b, rep.b) < 1e-10);
  }
  SECTION("seeded deformation n = 5, plus adjoint ladder action") {
    const auto rep = random_deformation(5, 5150);
    const auto sys = build_system(rep);
    const auto rec = reconstruct_operators(sys);
    REQUIRE(diff(rec.b, rep.b) < 1e-9);
    REQUIRE(diff(rec.a, rep.a) < 1e-9);
    // adjoints act as the raising/lowering pair on the psi chain
    for (std::size_t i = 0; i + 1 < sys.psis.size(); ++i) {
      const double m = sys.nhat_eigenvalue(i);
      CAPTURE(i);
      REQUIRE(max_abs(rec.a.adjoint() * sys.psis[i + 1] - sys.nus[i] * sys.psis[i]) <
              1e-9);
      REQUIRE(max_abs(rec.b.adjoint() * sys.psis[i] -
                      (m / sys.mus[i]) * sys.psis[i + 1]) < 1e-9);
    }
  }
}

TEST_CASE("chain structural errors", "[chain]") {
  SECTION("chain length is exactly n") {
    for (Index n = 2; n <= 8; ++n) {
      const auto sys = build_system(random_deformation(n, 9000 + std::uint64_t(n)));
      CAPTURE(n);
      REQUIRE(Index(sys.phis.size()) == n);
      REQUIRE(Index(sys.psis.size()) == n);
      REQUIRE(Index(sys.nus.size()) == n - 1);
    }
  }
  SECTION("resolution of identity") {
    const auto sys = build_system(random_deformation(6, 606));
    Matrix completeness = Matrix::Zero(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      completeness += sys.phis[i] * sys.psis[i].adjoint();
    REQUIRE(max_abs(completeness - Matrix::Identity(6, 6)) < 1e-9);
  }
  SECTION("biorthonormality across seeds") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
      const auto sys = build_system(random_deformation(7, seed));
      double worst = 0.0;
      for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j)
          worst = std::max(worst, std::abs(sys.psis[i].dot(sys.phis[j]) -
                                           (i == j ? 1.0 : 0.0)));
      CAPTURE(seed);
      REQUIRE(worst < 1e-9);
    }
  }
}
