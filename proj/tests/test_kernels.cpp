#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <rbfock/hermite.hpp>
#include <rbfock/kernels.hpp>

using namespace rbfock;
using namespace rbfock::kernels;
using numerics::Rng;
using numerics::scaled_residual;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("holomorphic-side kernel closed forms", "[fock]") {
  REQUIRE(fock_kernel(2.0, cplx(0.0), cplx(3.0, -1.0)) == cplx(1.0));

  const cplx v = fock_kernel(2.0, cplx(1.0), cplx(0.0, 1.0));  // exp(-2i)
  REQUIRE_THAT(v.real(), WithinAbs(-0.4161468, 1e-6));
  REQUIRE_THAT(v.imag(), WithinAbs(-0.9092974, 1e-6));

  const cplx d = fock_kernel(1.0, cplx(1.0, 1.0), cplx(1.0, 1.0));
  REQUIRE_THAT(d.real(), WithinAbs(7.3890561, 1e-6));

  REQUIRE_THROWS_AS(fock_kernel(0.0, cplx(1.0), cplx(1.0)), ParameterError);
}

TEST_CASE("normalized state has unit norm", "[fock]") {
  REQUIRE(normalized_fock_state(2.0, cplx(0.0), cplx(0.7, 2.0)) == cplx(1.0));
  REQUIRE_THAT(normalized_fock_state(2.0, cplx(1.0), cplx(1.0)).real(),
               WithinAbs(2.7182818, 1e-6));

  const double alpha = 2.0;
  const cplx w(0.7, 0.3);
  const auto rule = numerics::gauss_hermite_2d(48, alpha);
  const cplx sq = numerics::integrate_c(
      [&](cplx z) { return cplx(std::norm(normalized_fock_state(alpha, w, z))); }, rule);
  REQUIRE_THAT((alpha / pi) * sq.real(), WithinAbs(1.0, 1e-8));
}

TEST_CASE("RBF kernel closed forms", "[rbf]") {
  REQUIRE_THAT(rbf_kernel(1.0, cplx(0.0), cplx(1.0)).real(), WithinAbs(0.3678794, 1e-6));
  REQUIRE_THAT(rbf_kernel(1.0, cplx(0.0, 1.0), cplx(0.0)).real(), WithinAbs(2.7182818, 1e-6));

  const cplx v = rbf_kernel(1.0, cplx(1.0), cplx(0.0, 1.0));
  const cplx expected = std::exp(cplx(0.0, -2.0));  // -(1+i)^2 = -2i
  REQUIRE_THAT(std::abs(v - expected), WithinAbs(0.0, 1e-14));
}

TEST_CASE("kernels are Hermitian under argument swap", "[property]") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const cplx z = rng.disc(2.0), w = rng.disc(2.0);
    REQUIRE(scaled_residual(rbf_kernel(1.0, z, w), std::conj(rbf_kernel(1.0, w, z))) < 1e-14);
    REQUIRE(scaled_residual(fock_kernel(2.0, z, w), std::conj(fock_kernel(2.0, w, z))) < 1e-14);
  }
}

TEST_CASE("kernel factorization holds both ways", "[factorization]") {
  REQUIRE(factorization_residual(1.0, cplx(1.0), cplx(0.0, 1.0)) < 1e-14);
  REQUIRE(factorization_residual(0.5, cplx(0.0), cplx(0.0)) == 0.0);

  Rng rng(17);
  double worst = 0.0;
  for (double gamma : {0.5, 1.0, 2.0})
    for (int i = 0; i < 1000; ++i)
      worst = std::max(worst, factorization_residual(gamma, rng.disc(2.0), rng.disc(2.0)));
  REQUIRE(worst < 1e-12);
}

TEST_CASE("transform kernel at scale alpha", "[sbkernel]") {
  REQUIRE(sb_kernel(2.0, cplx(0.0), 0.0, Convention::PaperFormI) == cplx(1.0));
  REQUIRE_THAT(sb_kernel(2.0, cplx(0.0), 0.0, Convention::BargmannNormalized).real(),
               WithinAbs(0.8932438, 1e-6));  // (2/pi)^{1/4}

  SECTION("generating function over the Hermite basis") {
    const double alpha = 2.0;
    const cplx z(0.4, 0.2);
    const double x = 0.7;
    cplx sum = 0.0;
    cplx un = 1.0;  // sqrt(alpha^n/n!) z^n, built incrementally
    for (int n = 0; n <= 40; ++n) {
      sum += un * hermite::hermite_fn(n, alpha, x);
      un *= z * std::sqrt(alpha / (n + 1));
    }
    REQUIRE_THAT(std::abs(sum - sb_kernel(alpha, z, x, Convention::BargmannNormalized)),
                 WithinAbs(0.0, 1e-9));
  }
}

TEST_CASE("width-form transform kernel", "[sbkernel]") {
  for (double x : {-1.0, 0.0, 0.6, 2.0})
    REQUIRE_THAT(rbf_sb_kernel(1.0, cplx(0.0), x, Convention::PaperFormI).real(),
                 WithinRel(std::exp(-x * x), 1e-13));

  // At z = x/sqrt(2) the exponent vanishes, leaving only the prefactor.
  REQUIRE_THAT(rbf_sb_kernel(1.0, cplx(0.9 / std::sqrt(2.0)), 0.9, Convention::PaperFormI).real(),
               WithinRel(1.0, 1e-13));
  REQUIRE_THAT(
      rbf_sb_kernel(1.0, cplx(0.9 / std::sqrt(2.0)), 0.9, Convention::BargmannNormalized).real(),
      WithinRel(std::pow(2.0 / pi, 0.25), 1e-13));

  SECTION("width form equals the weighted scale form") {
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
      const double gamma = 1.0;
      const cplx z = rng.disc(1.5);
      const double x = rng.uniform(-2.0, 2.0);
      const cplx lhs = rbf_sb_kernel(gamma, z, x, Convention::PaperFormI);
      const cplx rhs = std::exp(-z * z / (gamma * gamma)) *
                       sb_kernel(2.0 / (gamma * gamma), z, x, Convention::PaperFormI);
      REQUIRE(scaled_residual(lhs, rhs) < 1e-13);
    }
  }
}

TEST_CASE("Mercer partial sums converge to the kernel", "[mercer]") {
  REQUIRE(mercer_partial(1.0, cplx(0.0), cplx(0.0), 1) == cplx(1.0));

  const cplx z(0.5, 0.0), w(0.3, 0.1);
  REQUIRE_THAT(std::abs(mercer_partial(1.0, z, w, 30) - rbf_kernel(1.0, z, w)),
               WithinAbs(0.0, 1e-10));

  SECTION("truncation error decreases monotonically") {
    const cplx za(0.8, 0.0), wa(0.6, 0.3);
    double prev = 1e100;
    for (int N : {2, 4, 8, 16, 32}) {
      const double err = std::abs(mercer_partial(1.0, za, wa, N) - rbf_kernel(1.0, za, wa));
      REQUIRE(err <= prev);
      prev = err;
    }
  }

  SECTION("forty terms reach 1e-8 on the feasible boxes") {
    Rng rng(31);
    auto sweep = [&](double gamma, double box) {
      double worst = 0.0;
      for (int i = 0; i < 50; ++i) {
        const cplx z = rng.disc(box), w = rng.disc(box);
        worst = std::max(worst,
                         scaled_residual(mercer_partial(gamma, z, w, 40), rbf_kernel(gamma, z, w)));
      }
      return worst;
    };
    REQUIRE(sweep(1.0, 1.5) < 1e-8);
    REQUIRE(sweep(2.0, 1.5) < 1e-8);
    REQUIRE(sweep(0.5, 0.9) < 1e-8);
  }
}

TEST_CASE("Gram matrices and their smallest eigenvalue", "[gram]") {
  SECTION("singleton") {
    const GramResult g = gram(1.0, {cplx(0.0)});
    REQUIRE(g.matrix(0, 0) == cplx(1.0));
    REQUIRE_THAT(g.min_eigenvalue, WithinAbs(1.0, 1e-14));
  }
  SECTION("two real points have analytic eigenvalues") {
    const GramResult g = gram(1.0, {cplx(0.0), cplx(1.0)});
    REQUIRE_THAT(g.matrix(0, 1).real(), WithinRel(std::exp(-1.0), 1e-13));
    REQUIRE_THAT(g.min_eigenvalue, WithinRel(1.0 - std::exp(-1.0), 1e-12));
  }
  SECTION("20 uniform real points are PSD to roundoff") {
    Rng rng(41);
    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i) pts.emplace_back(rng.uniform(-2.0, 2.0), 0.0);
    for (double gamma : {0.5, 1.0, 2.0}) REQUIRE(gram(gamma, pts).min_eigenvalue >= -1e-10);
  }
  SECTION("duplicate points report rank deficiency, no error") {
    const GramResult g = gram(1.0, {cplx(0.3), cplx(0.3), cplx(1.0)});
    REQUIRE(g.min_eigenvalue >= -1e-10);
    REQUIRE(g.min_eigenvalue <= 1e-10);
  }
  SECTION("Mercer-truncated entries approach the closed form") {
    const GramResult exact = gram(1.0, {cplx(0.1), cplx(0.5, 0.2)});
    const GramResult approx = gram(1.0, {cplx(0.1), cplx(0.5, 0.2)}, 40);
    REQUIRE(std::abs(exact.matrix(0, 1) - approx.matrix(0, 1)) < 1e-10);
  }
  SECTION("bad inputs") {
    REQUIRE_THROWS_AS(gram(1.0, {}), ParameterError);
    REQUIRE_THROWS_AS(gram(1.0, {cplx(std::nan(""), 0.0)}), ParameterError);
  }
}
