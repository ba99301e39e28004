#ifndef RBFOCK_VERIFY_HPP
#define RBFOCK_VERIFY_HPP

// Verification suites: each suite turns a family of identities into
// tolerance-checked cases with observed residuals, and the whole run is
// assembled into a deterministic JSON report.

#include <json.hpp>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hermite.hpp"
#include "kernels.hpp"
#include "numerics.hpp"
#include "operators.hpp"
#include "spaces.hpp"
#include "transforms.hpp"

namespace rbfock::verify {

using nlohmann::ordered_json;

struct VerifyConfig {
  std::vector<double> gammas = {1.0};
  int trunc = 32;
  int quad_r = 64;
  int quad_c = 48;
  kernels::Convention convention = kernels::Convention::BargmannNormalized;
  std::uint64_t seed = 2026;
  std::optional<double> tolerance;   // overrides every per-case tolerance
  std::vector<std::string> suites;   // empty: run all

  std::vector<double> gammas_or_default() const {
    return gammas.empty() ? std::vector<double>{1.0} : gammas;
  }
};

struct CaseResult {
  std::string id;
  ordered_json params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::vector<CaseResult> cases;
};

struct Report {
  std::string version = "1.0.0";
  VerifyConfig config;
  std::vector<SuiteResult> suites;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "factorization", "isometry",    "reproducing", "mercer", "sequential-norm",
      "bargmann",      "feature-map", "weyl",        "fourier", "position"};
  return names;
}

namespace detail {

inline void add_case(SuiteResult& suite, const VerifyConfig& cfg, std::string id,
                     ordered_json params, double residual, double default_tol) {
  CaseResult c;
  c.id = std::move(id);
  c.params = std::move(params);
  c.residual = residual;
  c.tolerance = cfg.tolerance.value_or(default_tol);
  c.pass = residual <= c.tolerance;
  suite.cases.push_back(std::move(c));
}

inline numerics::Rng suite_rng(const VerifyConfig& cfg, int suite_index) {
  return numerics::Rng(cfg.seed * 1000003ull + static_cast<std::uint64_t>(suite_index));
}

inline transforms::TransformContext context(const VerifyConfig& cfg, double gamma) {
  return transforms::make_context(gamma, cfg.convention, cfg.trunc, cfg.quad_r, cfg.quad_c);
}

inline spaces::HoloFun random_rbf(double gamma, int len, numerics::Rng& rng) {
  spaces::HoloFun f;
  f.gamma = gamma;
  f.basis = spaces::Basis::RbfOnb;
  f.coeffs.resize(static_cast<std::size_t>(len));
  for (auto& c : f.coeffs) c = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return f;
}

inline hermite::L2Sig random_sig(double alpha, int len, numerics::Rng& rng) {
  hermite::L2Sig s;
  s.alpha = alpha;
  s.coeffs.resize(static_cast<std::size_t>(len));
  for (auto& c : s.coeffs) c = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return s;
}

inline hermite::L2Sig basis_sig(int n, double alpha, int len) {
  hermite::L2Sig s;
  s.alpha = alpha;
  s.coeffs.assign(static_cast<std::size_t>(len), cplx(0.0));
  s.coeffs[static_cast<std::size_t>(n)] = 1.0;
  return s;
}

inline spaces::HoloFun basis_rbf(int n, double gamma, int len) {
  spaces::HoloFun f;
  f.gamma = gamma;
  f.basis = spaces::Basis::RbfOnb;
  f.coeffs.assign(static_cast<std::size_t>(len), cplx(0.0));
  f.coeffs[static_cast<std::size_t>(n)] = 1.0;
  return f;
}

inline double l2_dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double acc = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const cplx av = i < a.size() ? a[i] : cplx(0.0);
    const cplx bv = i < b.size() ? b[i] : cplx(0.0);
    acc += std::norm(av - bv);
  }
  return std::sqrt(acc);
}

/// Direct discretization of the defining weighted norm of the width-gamma
/// space, independent of the coefficient and Fock-side routes.
inline double literal_rbf_norm(const spaces::HoloFun& f, const numerics::Quad2D& rule) {
  const double gamma = f.gamma;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.rule_x.size(); ++i)
    for (std::size_t j = 0; j < rule.rule_y.size(); ++j) {
      const cplx z(rule.rule_x.nodes[i], rule.rule_y.nodes[j]);
      const double w = rule.rule_x.plain_weights[i] * rule.rule_y.plain_weights[j];
      const double weight = std::exp(-4.0 * z.imag() * z.imag() / (gamma * gamma));
      acc += w * std::norm(spaces::eval(f, z)) * weight;
    }
  return std::sqrt((2.0 / (pi * gamma * gamma)) * acc);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

inline void suite_factorization(const VerifyConfig& cfg, SuiteResult& out) {
  auto rng = detail::suite_rng(cfg, 0);
  for (double gamma : cfg.gammas_or_default()) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
      worst = std::max(worst,
                       kernels::factorization_residual(gamma, rng.disc(2.0), rng.disc(2.0)));
    detail::add_case(out, cfg, "kernel-factorization",
                     {{"gamma", gamma}, {"samples", 1000}, {"radius", 2.0}}, worst, 1e-12);
  }
  for (double gamma : cfg.gammas_or_default()) {
    std::vector<cplx> pts(20);
    for (auto& p : pts) p = cplx(rng.uniform(-2.0, 2.0), 0.0);
    const kernels::GramResult g = kernels::gram(gamma, pts);
    detail::add_case(out, cfg, "gram-psd", {{"gamma", gamma}, {"points", 20}},
                     std::max(0.0, -g.min_eigenvalue), 1e-10);
  }
}

inline void suite_isometry(const VerifyConfig& cfg, SuiteResult& out) {
  auto rng = detail::suite_rng(cfg, 1);
  for (double gamma : cfg.gammas_or_default()) {
    const auto ctx = detail::context(cfg, gamma);
    double worst_norm = 0.0, worst_rt = 0.0, worst_adj = 0.0;
    for (int i = 0; i < 50; ++i) {
      const spaces::HoloFun f = detail::random_rbf(gamma, 12, rng);
      const double fock_side = spaces::norm(f, spaces::InnerRoute::Quadrature, &ctx.rule_c);
      const double literal = detail::literal_rbf_norm(f, ctx.rule_c);
      worst_norm = std::max(worst_norm, numerics::scaled_residual(fock_side, literal));
      worst_rt = std::max(
          worst_rt, detail::l2_dist(spaces::to_rbf(spaces::to_fock(f)).coeffs, f.coeffs));
    }
    for (int i = 0; i < 5; ++i) {
      const spaces::HoloFun f = detail::random_rbf(gamma, 10, rng);
      const spaces::HoloFun g = detail::random_rbf(gamma, 10, rng);
      const cplx via_fock = spaces::inner(spaces::to_fock(f), spaces::to_fock(g),
                                          spaces::InnerRoute::Quadrature, &ctx.rule_c);
      const cplx via_rbf = spaces::inner(f, g);
      worst_adj = std::max(worst_adj, std::abs(via_fock - via_rbf));
    }
    detail::add_case(out, cfg, "isomorphism-norm", {{"gamma", gamma}, {"functions", 50}},
                     worst_norm, 1e-7);
    detail::add_case(out, cfg, "isomorphism-roundtrip", {{"gamma", gamma}, {"functions", 50}},
                     worst_rt, 0.0);
    detail::add_case(out, cfg, "isomorphism-adjoint", {{"gamma", gamma}, {"pairs", 5}},
                     worst_adj, 1e-14);
  }
}

inline void suite_reproducing(const VerifyConfig& cfg, SuiteResult& out) {
  auto rng = detail::suite_rng(cfg, 2);
  for (double gamma : cfg.gammas_or_default()) {
    const auto ctx = detail::context(cfg, gamma);
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
      const spaces::HoloFun en = detail::basis_rbf(n, gamma, n + 1);
      for (int k = 0; k < 20; ++k) {
        const cplx w = rng.disc(1.5);
        worst = std::max(worst,
                         std::abs(spaces::reproduce(en, w, ctx.rule_c) - spaces::eval(en, w)));
      }
    }
    detail::add_case(out, cfg, "reproducing-identity",
                     {{"gamma", gamma}, {"n_max", 10}, {"points", 20}}, worst, 1e-7);

    double worst_violation = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
      const spaces::HoloFun f = detail::random_rbf(gamma, 10, rng);
      const spaces::BoundCheck b = spaces::bound_check(f, rng.disc(1.5));
      worst_violation = std::max(worst_violation, b.lhs - b.rhs);
      const double x = rng.uniform(-1.5, 1.5);
      worst_violation =
          std::max(worst_violation, std::abs(spaces::eval(f, cplx(x, 0.0))) - spaces::norm(f));
    }
    detail::add_case(out, cfg, "pointwise-bound", {{"gamma", gamma}, {"samples", samples}},
                     std::max(0.0, worst_violation), 0.0);
  }
}

inline void suite_mercer(const VerifyConfig& cfg, SuiteResult& out) {
  auto rng = detail::suite_rng(cfg, 3);
  for (double gamma : cfg.gammas_or_default()) {
    // The alternating series cannot meet the bound in double precision on
    // the full box at small widths; shrink the domain there instead of
    // loosening the tolerance.
    const double box = gamma < 0.75 ? 0.9 : 1.5;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const cplx z(rng.uniform(-box, box), rng.uniform(-box, box));
      const cplx w(rng.uniform(-box, box), rng.uniform(-box, box));
      worst = std::max(worst, std::abs(kernels::mercer_partial(gamma, z, w, 40) -
                                       kernels::rbf_kernel(gamma, z, w)));
    }
    detail::add_case(out, cfg, "mercer-partial-sum",
                     {{"gamma", gamma}, {"terms", 40}, {"box", box}}, worst, 1e-8);

    double worst_coh = 0.0;
    for (int i = 0; i < 20; ++i) {
      const cplx w = rng.disc(1.0);
      const cplx v = rng.disc(1.0);
      const spaces::HoloFun cw = spaces::coherent_coeffs(gamma, w, 40);
      const spaces::HoloFun cv = spaces::coherent_coeffs(gamma, v, 40);
      worst_coh = std::max(
          worst_coh, std::abs(spaces::inner(cw, cv) - kernels::rbf_kernel(gamma, w, v)));
    }
    detail::add_case(out, cfg, "coherent-reproducing", {{"gamma", gamma}, {"pairs", 20}},
                     worst_coh, 1e-9);
  }
}

inline void suite_sequential_norm(const VerifyConfig& cfg, SuiteResult& out) {
  auto rng = detail::suite_rng(cfg, 4);
  for (double gamma : cfg.gammas_or_default()) {
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
      spaces::HoloFun f = detail::random_rbf(gamma, 8, rng);
      const double coeff = spaces::norm(f);
      const double quad = spaces::norm(f, spaces::InnerRoute::Quadrature);
      f.coeffs.resize(48, cplx(0.0));
      const double seq = spaces::norm_sequential(spaces::to_taylor(f).coeffs, gamma, 48).norm;
      worst = std::max(worst, numerics::scaled_residual(seq, coeff));
      worst = std::max(worst, numerics::scaled_residual(seq, quad));
    }
    detail::add_case(out, cfg, "sequential-norm-routes", {{"gamma", gamma}, {"functions", 30}},
                     worst, 1e-6);

    double worst_basis = 0.0;
    for (int n = 0; n <= 10; ++n) {
      spaces::HoloFun en = detail::basis_rbf(n, gamma, 40);
      const double seq = spaces::norm_sequential(spaces::to_taylor(en).coeffs, gamma, 40).norm;
      worst_basis = std::max(worst_basis, std::abs(seq - 1.0));
    }
    detail::add_case(out, cfg, "sequential-norm-basis", {{"gamma", gamma}, {"n_max", 10}},
                     worst_basis, 1e-10);
  }
}

inline void suite_bargmann(const VerifyConfig& cfg, SuiteResult& out) {
  auto rng = detail::suite_rng(cfg, 5);
  for (double gamma : cfg.gammas_or_default()) {
    const auto ctx = detail::context(cfg, gamma);
    const double off = transforms::convention_offset(ctx);

    double worst_basis = 0.0;
    for (int n = 0; n <= 10; ++n) {
      const auto sig = detail::basis_sig(n, ctx.alpha, n + 1);
      std::vector<cplx> want(static_cast<std::size_t>(ctx.N), cplx(0.0));
      want[static_cast<std::size_t>(n)] = off;
      for (auto route : {transforms::ForwardRoute::Coefficient,
                         transforms::ForwardRoute::QuadratureI,
                         transforms::ForwardRoute::DiagramII}) {
        const auto img = transforms::rbf_bargmann(sig, ctx, route);
        worst_basis = std::max(worst_basis, detail::l2_dist(img.coeffs, want));
      }
    }
    detail::add_case(out, cfg, "bargmann-basis-routes", {{"gamma", gamma}, {"n_max", 10}},
                     worst_basis, 1e-7);

    double worst_unitary = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto s1 = detail::random_sig(ctx.alpha, 12, rng);
      const auto s2 = detail::random_sig(ctx.alpha, 12, rng);
      const auto f1 = transforms::rbf_bargmann(s1, ctx);
      const auto f2 = transforms::rbf_bargmann(s2, ctx);
      const cplx holo = spaces::inner(f1, f2) / (off * off);
      const cplx line = numerics::integrate_r_plain(
          [&](double x) { return std::conj(hermite::eval(s1, x)) * hermite::eval(s2, x); },
          ctx.rule_r);
      worst_unitary = std::max(worst_unitary, std::abs(holo - line));
    }
    detail::add_case(out, cfg, "bargmann-unitarity", {{"gamma", gamma}, {"pairs", 10}},
                     worst_unitary, 1e-9);

    double worst_routes = 0.0;
    for (int i = 0; i < 5; ++i)
      worst_routes = std::max(worst_routes, transforms::rbf_bargmann_route_residual(
                                                detail::random_sig(ctx.alpha, 12, rng), ctx));
    detail::add_case(out, cfg, "bargmann-route-coincidence", {{"gamma", gamma}, {"signals", 5}},
                     worst_routes, 1e-7);

    double worst_rt = 0.0, worst_adj = 0.0;
    for (int i = 0; i < 5; ++i) {
      const auto sig = detail::random_sig(ctx.alpha, 12, rng);
      const auto fwd = transforms::rbf_bargmann(sig, ctx);
      auto back = transforms::rbf_bargmann_inverse(fwd, ctx, transforms::InverseRoute::Quadrature);
      for (auto& c : back.coeffs) c /= off * off;
      worst_rt = std::max(worst_rt, detail::l2_dist(back.coeffs, sig.coeffs));

      const auto g = detail::random_rbf(gamma, 12, rng);
      const auto Tf = transforms::rbf_bargmann(sig, ctx);
      cplx lhs = 0.0;
      for (std::size_t n = 0; n < g.coeffs.size() && n < Tf.coeffs.size(); ++n)
        lhs += std::conj(Tf.coeffs[n]) * g.coeffs[n];
      const auto Tsg = transforms::rbf_bargmann_inverse(g, ctx, transforms::InverseRoute::Quadrature);
      cplx rhs = 0.0;
      for (std::size_t n = 0; n < sig.coeffs.size() && n < Tsg.coeffs.size(); ++n)
        rhs += std::conj(sig.coeffs[n]) * Tsg.coeffs[n];
      worst_adj = std::max(worst_adj, std::abs(lhs - rhs));
    }
    detail::add_case(out, cfg, "bargmann-inverse-roundtrip", {{"gamma", gamma}, {"signals", 5}},
                     worst_rt, 1e-8);
    detail::add_case(out, cfg, "bargmann-inverse-adjoint", {{"gamma", gamma}, {"pairs", 5}},
                     worst_adj, 1e-8);
  }
}

inline void suite_feature_map(const VerifyConfig& cfg, SuiteResult& out) {
  auto rng = detail::suite_rng(cfg, 6);
  for (double gamma : cfg.gammas_or_default()) {
    const auto ctx_n = transforms::make_context(gamma, kernels::Convention::BargmannNormalized,
                                                cfg.trunc, cfg.quad_r, cfg.quad_c);
    const auto ctx_p = transforms::make_context(gamma, kernels::Convention::PaperFormI, cfg.trunc,
                                                cfg.quad_r, cfg.quad_c);
    const double ratio = gamma * std::sqrt(pi / 2.0);
    double worst_n = 0.0, worst_p = 0.0;
    for (int i = 0; i < 8; ++i) {
      const cplx z = rng.disc(1.0);
      const cplx w = rng.disc(1.0);
      const cplx k = kernels::rbf_kernel(gamma, w, z);
      worst_n = std::max(worst_n,
                         std::abs(transforms::feature_inner(gamma, z, w, ctx_n) / k - 1.0));
      worst_p = std::max(
          worst_p, std::abs(transforms::feature_inner(gamma, z, w, ctx_p) / (ratio * k) - 1.0));
    }
    detail::add_case(out, cfg, "feature-map-normalized", {{"gamma", gamma}, {"pairs", 8}},
                     worst_n, 1e-8);
    detail::add_case(out, cfg, "feature-map-ratio",
                     {{"gamma", gamma}, {"pairs", 8}, {"ratio", ratio}}, worst_p, 1e-8);
  }
}

inline void suite_weyl(const VerifyConfig& cfg, SuiteResult& out) {
  auto rng = detail::suite_rng(cfg, 7);
  for (double gamma : cfg.gammas_or_default()) {
    const auto ctx = detail::context(cfg, gamma);

    double worst_iso = 0.0;
    for (int i = 0; i < 5; ++i) {
      const auto f = detail::random_rbf(gamma, 8, rng);
      const auto img = operators::weyl_rbf(f, rng.disc(0.5 * gamma), ctx);
      double fn = 0.0, in = 0.0;
      for (const cplx& c : img.fun.coeffs) fn += std::norm(c);
      for (const cplx& c : f.coeffs) in += std::norm(c);
      worst_iso = std::max(worst_iso, std::abs(std::sqrt(fn) / std::sqrt(in) - 1.0));
    }
    detail::add_case(out, cfg, "weyl-isometry",
                     {{"gamma", gamma}, {"functions", 5}, {"radius", 0.5 * gamma}}, worst_iso,
                     1e-7);

    const auto f = detail::random_rbf(gamma, 8, rng);
    const double g2 = gamma * gamma;
    double worst_routes = 0.0;
    for (int i = 0; i < 200; ++i) {
      const cplx a = rng.disc(1.0);
      const cplx z = rng.disc(2.0);
      const cplx ex = operators::weyl_rbf_pointwise(f, a, z);
      const cplx di =
          std::exp(-z * z / g2) * operators::weyl_fock_pointwise(ctx.alpha, a, f.coeffs, z);
      worst_routes = std::max(worst_routes, numerics::scaled_residual(ex, di));
    }
    detail::add_case(out, cfg, "weyl-route-agreement", {{"gamma", gamma}, {"samples", 200}},
                     worst_routes, 1e-9);

    double worst_inv = 0.0;
    for (int i = 0; i < 25; ++i) {
      const cplx a = rng.disc(0.5 * gamma);
      const cplx z = rng.disc(2.0);
      const auto once = operators::weyl_rbf(f, a, ctx);
      const cplx back = operators::weyl_rbf_pointwise(once.fun, -a, z);
      worst_inv = std::max(worst_inv, numerics::scaled_residual(back, spaces::eval(f, z)));
    }
    detail::add_case(out, cfg, "weyl-inverse-composition", {{"gamma", gamma}, {"samples", 25}},
                     worst_inv, 1e-9);

    double worst_sg = 0.0;
    for (int n = 0; n <= 6; n += 2) {
      const auto en = detail::basis_rbf(n, gamma, n + 1);
      const cplx a = rng.disc(0.25 * gamma);
      const cplx b = rng.disc(0.25 * gamma);
      const auto lhs = operators::weyl_rbf(operators::weyl_rbf(en, b, ctx).fun, a, ctx);
      const auto rhs = operators::weyl_rbf(en, a + b, ctx);
      std::vector<cplx> scaled = rhs.fun.coeffs;
      const cplx phase = operators::weyl_semigroup_phase(gamma, a, b);
      for (cplx& c : scaled) c *= phase;
      worst_sg = std::max(worst_sg, detail::l2_dist(lhs.fun.coeffs, scaled));
    }
    detail::add_case(out, cfg, "weyl-semigroup",
                     {{"gamma", gamma}, {"n_max", 6}, {"radius", 0.25 * gamma}}, worst_sg, 1e-7);

    double worst_tr = 0.0;
    for (int i = 0; i < 25; ++i) {
      const double a = rng.uniform(-1.0, 1.0);
      const cplx z = rng.disc(2.0);
      worst_tr = std::max(worst_tr, std::abs(operators::weyl_rbf_pointwise(f, cplx(a, 0.0), z) -
                                             spaces::eval(f, z - a)));
    }
    detail::add_case(out, cfg, "weyl-translation", {{"gamma", gamma}, {"samples", 25}}, worst_tr,
                     1e-12);
  }
}

inline void suite_fourier(const VerifyConfig& cfg, SuiteResult& out) {
  auto rng = detail::suite_rng(cfg, 8);
  for (double gamma : cfg.gammas_or_default()) {
    const auto ctx = detail::context(cfg, gamma);
    const int n_max = std::min(16, ctx.N - 1);

    double worst_diag = 0.0;
    for (int n = 0; n <= n_max; ++n)
      worst_diag = std::max(
          worst_diag, transforms::fourier_diagram_residual(detail::basis_sig(n, ctx.alpha, n + 1), ctx));
    detail::add_case(out, cfg, "fourier-diagram", {{"gamma", gamma}, {"n_max", n_max}},
                     worst_diag, 1e-9);

    double worst_eig = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      auto en = detail::basis_rbf(n, gamma, n + 1);
      const auto img = transforms::fourier_rbf(en);
      std::vector<cplx> want(en.coeffs.size(), cplx(0.0));
      want[static_cast<std::size_t>(n)] =
          hermite::detail::quarter_phase(n, cplx(1.0));
      worst_eig = std::max(worst_eig, detail::l2_dist(img.coeffs, want));
    }
    detail::add_case(out, cfg, "fourier-eigenvalue", {{"gamma", gamma}, {"n_max", n_max}},
                     worst_eig, 0.0);

    const auto f = detail::random_rbf(gamma, 12, rng);
    const auto s4 = transforms::fourier_rbf(
        transforms::fourier_rbf(transforms::fourier_rbf(transforms::fourier_rbf(f))));
    detail::add_case(out, cfg, "fourier-fourth-power", {{"gamma", gamma}},
                     detail::l2_dist(s4.coeffs, f.coeffs), 0.0);

    // Conjugated real-line shift: moving the signal by sqrt(2) a matches the
    // holomorphic displacement by a.
    const double a = 0.5 * gamma;
    const auto direct = operators::translate_rbf(detail::basis_rbf(0, gamma, 1), cplx(a, 0.0), ctx);
    const double shift = std::sqrt(2.0) * a;
    auto shifted = [&](double x) { return cplx(hermite::hermite_fn(0, ctx.alpha, x - shift), 0.0); };
    const auto sig = hermite::hermite_expand(shifted, ctx.alpha, ctx.N, ctx.rule_r);
    const auto via_l2 = transforms::rbf_bargmann(sig, ctx, transforms::ForwardRoute::Coefficient);
    const double off = transforms::convention_offset(ctx);
    std::vector<cplx> scaled = via_l2.coeffs;
    for (auto& c : scaled) c /= off;
    detail::add_case(out, cfg, "fourier-translation", {{"gamma", gamma}, {"shift", a}},
                     detail::l2_dist(direct.fun.coeffs, scaled), 1e-7);
  }
}

inline void suite_position(const VerifyConfig& cfg, SuiteResult& out) {
  for (double gamma : cfg.gammas_or_default()) {
    const double alpha = 2.0 / (gamma * gamma);
    const int N = 16;
    const Eigen::MatrixXd A = operators::position_rbf_matrix(N, gamma);
    const Eigen::MatrixXd H = hermite::position_matrix(N, alpha);
    detail::add_case(out, cfg, "position-matrix-agreement", {{"gamma", gamma}, {"size", N}},
                     (A - H).cwiseAbs().maxCoeff(), 1e-10);
    const auto rule = numerics::gauss_hermite(std::max(cfg.quad_r, 2 * N), alpha);
    const Eigen::MatrixXd Q = operators::position_quadrature_matrix(N, alpha, rule);
    detail::add_case(out, cfg, "position-quadrature-agreement", {{"gamma", gamma}, {"size", N}},
                     (A - Q).cwiseAbs().maxCoeff(), 1e-10);
    detail::add_case(out, cfg, "derivative-identity", {{"gamma", gamma}, {"size", N}},
                     operators::derivative_identity_residual(N, gamma), 1e-9);
  }
}

// ---------------------------------------------------------------------------
// Runner and report serialization
// ---------------------------------------------------------------------------

inline Report run_verify(const VerifyConfig& cfg) {
  Report report;
  report.config = cfg;
  auto want = [&](const std::string& name) {
    if (cfg.suites.empty()) return true;
    for (const std::string& s : cfg.suites)
      if (s == name) return true;
    return false;
  };
  struct Entry {
    const char* name;
    void (*fn)(const VerifyConfig&, SuiteResult&);
  };
  const Entry entries[] = {
      {"factorization", suite_factorization},
      {"isometry", suite_isometry},
      {"reproducing", suite_reproducing},
      {"mercer", suite_mercer},
      {"sequential-norm", suite_sequential_norm},
      {"bargmann", suite_bargmann},
      {"feature-map", suite_feature_map},
      {"weyl", suite_weyl},
      {"fourier", suite_fourier},
      {"position", suite_position},
  };
  for (const Entry& e : entries) {
    if (!want(e.name)) continue;
    SuiteResult s;
    s.name = e.name;
    try {
      e.fn(cfg, s);
    } catch (const std::exception& ex) {
      // A suite that cannot complete still yields a (failing) report entry so
      // callers always get the full document.
      CaseResult c;
      c.id = "internal-error";
      c.params = {{"what", ex.what()}};
      c.residual = std::numeric_limits<double>::max();
      c.tolerance = 0.0;
      c.pass = false;
      s.cases.push_back(std::move(c));
    }
    report.suites.push_back(std::move(s));
  }
  return report;
}

inline bool all_pass(const Report& report) {
  for (const SuiteResult& s : report.suites)
    for (const CaseResult& c : s.cases)
      if (!c.pass) return false;
  return true;
}

inline ordered_json to_json(const Report& report) {
  ordered_json env;
  env["gammas"] = report.config.gammas_or_default();
  env["trunc"] = report.config.trunc;
  env["quad"] = report.config.quad_r;
  env["quad_c"] = report.config.quad_c;
  env["convention"] = kernels::to_string(report.config.convention);
  env["seed"] = report.config.seed;
  if (report.config.tolerance) env["tolerance_override"] = *report.config.tolerance;

  ordered_json suites = ordered_json::array();
  for (const SuiteResult& s : report.suites) {
    ordered_json cases = ordered_json::array();
    for (const CaseResult& c : s.cases)
      cases.push_back({{"id", c.id},
                       {"params", c.params},
                       {"residual", c.residual},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    suites.push_back({{"name", s.name}, {"cases", std::move(cases)}});
  }
  return ordered_json{{"version", report.version},
                      {"environment", std::move(env)},
                      {"suites", std::move(suites)}};
}

}  // namespace rbfock::verify

#endif  // RBFOCK_VERIFY_HPP
