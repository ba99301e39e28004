#include "rbfock/operators.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using rbfock::cplx;
using rbfock::pi;
using namespace rbfock;

namespace {

spaces::HoloFun basis_fun(spaces::Basis basis, int n, double gamma, int len) {
  spaces::HoloFun f;
  f.gamma = gamma;
  f.basis = basis;
  f.coeffs.assign(static_cast<std::size_t>(len), cplx(0.0));
  f.coeffs[static_cast<std::size_t>(n)] = 1.0;
  return f;
}

spaces::HoloFun random_fun(spaces::Basis basis, double gamma, int len, numerics::Rng& rng) {
  spaces::HoloFun f;
  f.gamma = gamma;
  f.basis = basis;
  f.coeffs.resize(static_cast<std::size_t>(len));
  for (auto& c : f.coeffs) c = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return f;
}

double l2_dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double acc = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const cplx av = i < a.size() ? a[i] : cplx(0.0);
    const cplx bv = i < b.size() ? b[i] : cplx(0.0);
    acc += std::norm(av - bv);
  }
  return std::sqrt(acc);
}

double l2_norm(const std::vector<cplx>& a) {
  double acc = 0.0;
  for (const cplx& v : a) acc += std::norm(v);
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("displaced vacuum is the coherent state") {
  const auto ctx = transforms::make_context(1.0);
  const cplx a(0.6, -0.4);
  const auto vac = basis_fun(spaces::Basis::FockOnb, 0, 1.0, 1);
  const auto out = operators::weyl_fock(vac, a, ctx);
  CHECK(out.fun.basis == spaces::Basis::FockOnb);
  CHECK_FALSE(out.truncation_warning);
  // c_n = exp(-alpha |a|^2 / 2) sqrt(alpha^n / n!) conj(a)^n
  const double pref = std::exp(-0.5 * ctx.alpha * std::norm(a));
  cplx mono = 1.0;
  for (int n = 0; n < ctx.N; ++n) {
    CHECK_THAT(std::abs(out.fun.coeffs[static_cast<std::size_t>(n)] - pref * mono),
               WithinAbs(0.0, 1e-9));
    mono *= std::conj(a) * std::sqrt(ctx.alpha / double(n + 1));
  }
}

TEST_CASE("displacement at a = 1 gives the frozen vacuum coefficients") {
  const auto ctx = transforms::make_context(1.0);
  const auto out = operators::weyl_fock(basis_fun(spaces::Basis::FockOnb, 0, 1.0, 1), cplx(1.0), ctx);
  CHECK_THAT(out.fun.coeffs[0].real(), WithinAbs(0.36787944117144233, 1e-9));  // e^{-1}
  CHECK_THAT(out.fun.coeffs[1].real(), WithinAbs(0.52026009502288889, 1e-9));  // sqrt2 e^{-1}
  CHECK_THAT(out.fun.coeffs[0].imag(), WithinAbs(0.0, 1e-10));
}

TEST_CASE("displacement preserves the norm within the truncation") {
  numerics::Rng rng(900);
  for (double gamma : {0.5, 1.0, 2.0}) {
    const auto ctx = transforms::make_context(gamma);
    const auto f = random_fun(spaces::Basis::RbfOnb, gamma, 10, rng);
    // Displacements scaled to the width keep the displaced occupation
    // (2/gamma^2)|a|^2 of order one, well inside the truncation.
    for (int rep = 0; rep < 3; ++rep) {
      const cplx a = rng.disc(0.5 * gamma);
      const auto out = operators::weyl_rbf(f, a, ctx);
      CHECK_THAT(l2_norm(out.fun.coeffs), WithinRel(l2_norm(f.coeffs), 1e-7));
      CHECK(out.tail < 1e-6);
      CHECK_FALSE(out.truncation_warning);
    }
  }
  const auto ctx = transforms::make_context(1.0);
  const auto g = random_fun(spaces::Basis::FockOnb, 1.0, 10, rng);
  const auto out = operators::weyl_fock(g, cplx(0.5, 0.5), ctx);
  CHECK_THAT(l2_norm(out.fun.coeffs), WithinRel(l2_norm(g.coeffs), 1e-7));
}

TEST_CASE("zero displacement is the identity") {
  numerics::Rng rng(899);
  const auto ctx = transforms::make_context(1.0);
  const auto f = random_fun(spaces::Basis::RbfOnb, 1.0, 8, rng);
  const auto out = operators::weyl_rbf(f, cplx(0.0), ctx);
  CHECK(l2_dist(out.fun.coeffs, f.coeffs) < 1e-9);
  const auto g = random_fun(spaces::Basis::FockOnb, 1.0, 8, rng);
  CHECK(l2_dist(operators::weyl_fock(g, cplx(0.0), ctx).fun.coeffs, g.coeffs) < 1e-9);
}

TEST_CASE("vacuum displacement evaluates to exp(2z - 1) at alpha = 2") {
  numerics::Rng rng(898);
  const std::vector<cplx> vac{cplx(1.0)};
  for (int rep = 0; rep < 20; ++rep) {
    const cplx z = rng.disc(1.5);
    const cplx got = operators::weyl_fock_pointwise(2.0, cplx(1.0), vac, z);
    const cplx want = std::exp(2.0 * z - 1.0);
    CHECK(numerics::scaled_residual(got, want) < 1e-9);
  }
}

TEST_CASE("imaginary unit displacement of e_0 matches the substituted formula") {
  numerics::Rng rng(897);
  const auto e0 = basis_fun(spaces::Basis::RbfOnb, 0, 1.0, 1);
  const cplx a(0.0, 1.0);
  // a^2 - |a|^2 = -2 and 2(conj(a) - a) = -4i at gamma = 1.
  for (int rep = 0; rep < 20; ++rep) {
    const cplx z = rng.disc(1.5);
    const cplx got = operators::weyl_rbf_pointwise(e0, a, z);
    const cplx want = std::exp(cplx(-2.0) - cplx(0.0, 4.0) * z) * spaces::eval(e0, z - a);
    CHECK(numerics::scaled_residual(got, want) < 1e-12);
  }
}

TEST_CASE("oversized displacement raises the truncation flag") {
  const auto ctx = transforms::make_context(1.0, kernels::Convention::BargmannNormalized, 8);
  const auto vac = basis_fun(spaces::Basis::FockOnb, 0, 1.0, 1);
  const auto out = operators::weyl_fock(vac, cplx(3.0, 0.0), ctx);
  CHECK(out.tail > operators::truncation_warn_threshold);
  CHECK(out.truncation_warning);
}

TEST_CASE("explicit width-form displacement matches the conjugated route pointwise") {
  numerics::Rng rng(901);
  for (double gamma : {0.5, 1.0, 2.0}) {
    const auto f = random_fun(spaces::Basis::RbfOnb, gamma, 8, rng);
    const double g2 = gamma * gamma;
    const double alpha = 2.0 / g2;
    for (int rep = 0; rep < 200 / 3 + 1; ++rep) {
      const cplx a = rng.disc(1.0);
      const cplx z = rng.disc(2.0);
      const cplx via_explicit = operators::weyl_rbf_pointwise(f, a, z);
      const cplx via_diagram =
          std::exp(-z * z / g2) * operators::weyl_fock_pointwise(alpha, a, f.coeffs, z);
      CHECK(numerics::scaled_residual(via_explicit, via_diagram) < 1e-9);
    }
  }
}

TEST_CASE("projected displacement routes coincide in coefficient space") {
  numerics::Rng rng(902);
  for (double gamma : {0.5, 1.0, 2.0}) {
    const auto ctx = transforms::make_context(gamma);
    const auto f = random_fun(spaces::Basis::RbfOnb, gamma, 8, rng);
    const cplx a = rng.disc(0.8);
    const auto ex = operators::weyl_rbf(f, a, ctx, operators::WeylRoute::Explicit);
    const auto di = operators::weyl_rbf(f, a, ctx, operators::WeylRoute::Diagram);
    CHECK(l2_dist(ex.fun.coeffs, di.fun.coeffs) < 1e-9);
  }
}

TEST_CASE("composition law holds with the stated phase") {
  const double gamma = 1.0;
  const auto ctx = transforms::make_context(gamma);
  numerics::Rng rng(903);
  for (int n = 0; n <= 6; n += 3) {
    const auto f = basis_fun(spaces::Basis::RbfOnb, n, gamma, n + 1);
    const cplx a = rng.disc(0.5);
    const cplx b = rng.disc(0.5);
    const auto ab = operators::weyl_rbf(operators::weyl_rbf(f, b, ctx).fun, a, ctx);
    const auto direct = operators::weyl_rbf(f, a + b, ctx);
    const cplx phase = operators::weyl_semigroup_phase(gamma, a, b);
    std::vector<cplx> scaled = direct.fun.coeffs;
    for (cplx& c : scaled) c *= phase;
    CHECK(l2_dist(ab.fun.coeffs, scaled) < 1e-7);
  }
}

TEST_CASE("semigroup phase closed forms") {
  const cplx p = operators::weyl_semigroup_phase(1.0, cplx(0.5, 0.0), cplx(0.0, 0.5));
  // Im(a conj(b)) = -1/4, so the phase is exp(i/2).
  CHECK_THAT(p.real(), WithinAbs(0.87758256189037276, 1e-12));
  CHECK_THAT(p.imag(), WithinAbs(0.47942553860420301, 1e-12));
  const cplx q = operators::weyl_semigroup_phase(1.0, cplx(0.3, 0.1), cplx(0.6, 0.2));
  CHECK_THAT(q.real(), WithinAbs(1.0, 1e-15));  // collinear displacements commute
  CHECK_THAT(q.imag(), WithinAbs(0.0, 1e-15));

  // Im(1 * conj(i)) = -1, so the phase is e^{2i}.
  const cplx r = operators::weyl_semigroup_phase(1.0, cplx(1.0, 0.0), cplx(0.0, 1.0));
  CHECK_THAT(r.real(), WithinAbs(-0.41614683654714239, 1e-7));
  CHECK_THAT(r.imag(), WithinAbs(0.90929742682568170, 1e-7));
  const cplx swapped = operators::weyl_semigroup_phase(1.0, cplx(0.0, 1.0), cplx(1.0, 0.0));
  CHECK(swapped == std::conj(r));
  CHECK(operators::weyl_semigroup_phase(0.7, cplx(0.4), cplx(-1.1)) == cplx(1.0));
}

TEST_CASE("real displacement reduces to translation exactly") {
  numerics::Rng rng(904);
  const auto f = random_fun(spaces::Basis::RbfOnb, 1.0, 9, rng);
  for (int rep = 0; rep < 25; ++rep) {
    const double a = rng.uniform(-1.5, 1.5);
    const cplx z = rng.disc(2.0);
    const cplx got = operators::weyl_rbf_pointwise(f, cplx(a, 0.0), z);
    const cplx want = spaces::eval(f, z - a);
    CHECK(got == want);  // the prefactor is an exact 1 for real a
  }
}

TEST_CASE("translation rejects complex displacements") {
  const auto ctx = transforms::make_context(1.0);
  const auto f = basis_fun(spaces::Basis::RbfOnb, 0, 1.0, 1);
  CHECK_THROWS_AS(operators::translate_rbf(f, cplx(0.5, 0.1), ctx), ParameterError);
  const auto ok = operators::translate_rbf(f, cplx(0.5, 0.0), ctx);
  CHECK(ok.fun.coeffs.size() == static_cast<std::size_t>(ctx.N));
}

TEST_CASE("translation agrees with shifting the signal before the transform") {
  // Conjugating a real-line shift by the transform gives the displacement
  // operator at a reduced argument: shifting the signal by sqrt(2) a matches
  // the holomorphic displacement by a (the kernel couples z and x through
  // sqrt(2 alpha) z x, so real-line distances contract by sqrt 2).
  for (double gamma : {1.0, 2.0}) {
    const auto ctx = transforms::make_context(gamma);
    const double a = 0.5;
    const auto direct = operators::translate_rbf(basis_fun(spaces::Basis::RbfOnb, 0, gamma, 1),
                                                 cplx(a, 0.0), ctx);
    const double shift = std::sqrt(2.0) * a;
    auto shifted = [&](double x) { return cplx(hermite::hermite_fn(0, ctx.alpha, x - shift), 0.0); };
    const auto sig = hermite::hermite_expand(shifted, ctx.alpha, ctx.N, ctx.rule_r);
    const auto via_l2 = transforms::rbf_bargmann(sig, ctx, transforms::ForwardRoute::Coefficient);
    CHECK(l2_dist(direct.fun.coeffs, via_l2.coeffs) < 1e-7);
  }
}

TEST_CASE("width mismatch between function and context is rejected") {
  const auto ctx = transforms::make_context(1.0);
  const auto f = basis_fun(spaces::Basis::RbfOnb, 0, 2.0, 1);
  CHECK_THROWS_AS(operators::weyl_rbf(f, cplx(0.1, 0.0), ctx), ContextError);
}

TEST_CASE("position matrix entries and symmetry") {
  const Eigen::MatrixXd X = operators::position_rbf_matrix(6, 1.0);
  CHECK_THAT(X(0, 1), WithinAbs(0.5, 1e-14));
  CHECK_THAT(X(1, 0), WithinAbs(0.5, 1e-14));
  CHECK_THAT(X(2, 1), WithinAbs(0.70710678118654752, 1e-14));
  CHECK_THAT(X(0, 0), WithinAbs(0.0, 0.0));
  CHECK_THAT(X(0, 2), WithinAbs(0.0, 0.0));
  CHECK_THAT((X - X.transpose()).cwiseAbs().maxCoeff(), WithinAbs(0.0, 1e-14));
  const Eigen::MatrixXd X2 = operators::position_rbf_matrix(4, 2.0);
  CHECK_THAT(X2(1, 0), WithinAbs(1.0, 1e-14));  // gamma sqrt(n+1)/2
}

TEST_CASE("derivative matrix entries") {
  const Eigen::MatrixXd D = operators::deriv_matrix_rbf(4, 1.0);
  CHECK_THAT(D(0, 1), WithinAbs(1.4142135623730951, 1e-14));
  CHECK_THAT(D(1, 0), WithinAbs(-1.4142135623730951, 1e-14));
  CHECK_THAT(D(1, 2), WithinAbs(2.0, 1e-14));
  const Eigen::MatrixXd D2 = operators::deriv_matrix_rbf(4, 2.0);
  CHECK_THAT(D2(0, 1), WithinAbs(0.70710678118654752, 1e-14));
}

TEST_CASE("position matrix agrees with the real-line operator") {
  for (double gamma : {0.5, 1.0, 2.0}) {
    const double alpha = 2.0 / (gamma * gamma);
    const int N = 16;
    const Eigen::MatrixXd A = operators::position_rbf_matrix(N, gamma);
    SECTION("transported three-term matrix at gamma = " + std::to_string(gamma)) {
      const Eigen::MatrixXd H = hermite::position_matrix(N, alpha);
      CHECK((A - H).cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("quadrature matrix at gamma = " + std::to_string(gamma)) {
      const auto rule = numerics::gauss_hermite(64, alpha);
      const Eigen::MatrixXd Q = operators::position_quadrature_matrix(N, alpha, rule);
      CHECK((A - Q).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("derivative matrix identity") {
  for (double gamma : {0.5, 1.0, 2.0})
    CHECK(operators::derivative_identity_residual(16, gamma) < 1e-9);
}

TEST_CASE("ladder maps shift coefficients with square-root weights") {
  const auto e3 = basis_fun(spaces::Basis::RbfOnb, 3, 1.0, 4);
  const auto low = operators::lower_rbf(e3);
  REQUIRE(low.coeffs.size() == 3);
  CHECK_THAT(std::abs(low.coeffs[2] - std::sqrt(3.0)), WithinAbs(0.0, 0.0));
  CHECK(std::abs(low.coeffs[0]) == 0.0);

  const auto e2 = basis_fun(spaces::Basis::RbfOnb, 2, 1.0, 3);
  const auto high = operators::raise_rbf(e2);
  REQUIRE(high.fun.coeffs.size() == 4);
  CHECK_THAT(std::abs(high.fun.coeffs[3] - std::sqrt(3.0)), WithinAbs(0.0, 0.0));
  CHECK_FALSE(high.truncation_warning);
}

TEST_CASE("raising against a cap flags dropped mass") {
  spaces::HoloFun f;
  f.gamma = 1.0;
  f.basis = spaces::Basis::RbfOnb;
  f.coeffs.assign(6, cplx(1.0));
  const auto capped = operators::raise_rbf(f, 6);
  CHECK(capped.fun.coeffs.size() == 6);
  CHECK(capped.tail > operators::truncation_warn_threshold);
  CHECK(capped.truncation_warning);

  f.coeffs.back() = 0.0;  // nothing at the top, nothing to drop
  const auto safe = operators::raise_rbf(f, 6);
  CHECK(safe.tail == 0.0);
  CHECK_FALSE(safe.truncation_warning);
}

TEST_CASE("ladder commutator acts as minus one") {
  numerics::Rng rng(905);
  for (double gamma : {0.5, 1.0, 2.0}) {
    const auto f = random_fun(spaces::Basis::RbfOnb, gamma, 12, rng);
    CHECK(operators::ladder_commutator_residual(f) < 1e-14);
  }
}

TEST_CASE("raise after lower counts the level") {
  for (int n : {1, 2, 5, 9}) {
    const auto en = basis_fun(spaces::Basis::RbfOnb, n, 1.0, n + 1);
    const auto counted = operators::raise_rbf(operators::lower_rbf(en)).fun;
    REQUIRE(counted.coeffs.size() >= static_cast<std::size_t>(n + 1));
    CHECK_THAT(std::abs(counted.coeffs[static_cast<std::size_t>(n)] - double(n)),
               WithinAbs(0.0, 1e-14));
  }
}
