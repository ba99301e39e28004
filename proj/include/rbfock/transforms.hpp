#ifndef RBFOCK_TRANSFORMS_HPP
#define RBFOCK_TRANSFORMS_HPP

// Transforms between L^2(R) and the two holomorphic spaces: the classical
// scale-alpha transform, the width-gamma variant in its explicit and
// composed forms, the inverse/adjoint, the feature map pairing, and the
// Fourier transform conjugated to the RBF side.

#include <vector>

#include "hermite.hpp"
#include "kernels.hpp"
#include "numerics.hpp"
#include "spaces.hpp"

namespace rbfock::transforms {

using hermite::L2Sig;
using kernels::Convention;
using spaces::Basis;
using spaces::HoloFun;

/// Shared configuration: width, convention, truncation, quadrature rules.
/// Both rules carry the weight scale alpha = 2/gamma^2 (real-line products
/// of two half-Gaussians, and the holomorphic-side plane weight).
struct TransformContext {
  double gamma = 1.0;
  double alpha = 2.0;
  Convention convention = Convention::BargmannNormalized;
  int N = 32;
  numerics::Quad1D rule_r;
  numerics::Quad2D rule_c;
};

inline TransformContext make_context(double gamma,
                                     Convention conv = Convention::BargmannNormalized,
                                     int N = 32, int order_r = 64, int order_c = 48) {
  if (!(gamma > 0.0)) throw ParameterError("make_context: width must be > 0");
  if (N < 1) throw ParameterError("make_context: truncation must be >= 1");
  TransformContext ctx;
  ctx.gamma = gamma;
  ctx.alpha = 2.0 / (gamma * gamma);
  ctx.convention = conv;
  ctx.N = N;
  ctx.rule_r = numerics::gauss_hermite(order_r, ctx.alpha);
  ctx.rule_c = numerics::gauss_hermite_2d(order_c, ctx.alpha);
  return ctx;
}

/// Global constant the bare-kernel convention introduces relative to the
/// normalized (unitary) one: (alpha/pi)^{-1/4} = (pi gamma^2 / 2)^{1/4}.
inline double convention_offset(const TransformContext& ctx) {
  return ctx.convention == Convention::BargmannNormalized
             ? 1.0
             : std::pow(ctx.alpha / pi, -0.25);
}

namespace detail {

inline cplx sample(const L2Sig& sig, double x) {
  return sig.sampler ? sig.sampler(x) : hermite::eval(sig, x);
}

}  // namespace detail

/// Projection of a pointwise holomorphic-side function onto u_0..u_{N-1}:
/// c_n = (alpha/pi) ∫ conj(u_n(z)) g(z) e^{-alpha |z|^2} dA(z).
template <typename G>
std::vector<cplx> project_fock(G&& g, int N, const TransformContext& ctx) {
  std::vector<cplx> c(static_cast<std::size_t>(N), cplx(0.0));
  const auto& rx = ctx.rule_c.rule_x;
  const auto& ry = ctx.rule_c.rule_y;
  for (std::size_t i = 0; i < rx.size(); ++i)
    for (std::size_t j = 0; j < ry.size(); ++j) {
      const cplx z(rx.nodes[i], ry.nodes[j]);
      const cplx gv = g(z);
      if (!std::isfinite(gv.real()) || !std::isfinite(gv.imag()))
        throw EvaluationError("project_fock: non-finite integrand", z);
      const cplx wg = rx.weights[i] * ry.weights[j] * gv;
      cplx cu = 1.0;  // conj(u_n(z)), iterated
      for (int n = 0; n < N; ++n) {
        c[static_cast<std::size_t>(n)] += cu * wg;
        cu *= std::conj(z) * std::sqrt(ctx.alpha / double(n + 1));
      }
    }
  for (cplx& v : c) v *= ctx.alpha / pi;
  return c;
}

// ---------------------------------------------------------------------------
// Classical transform onto the scale-alpha space
// ---------------------------------------------------------------------------

/// Kernel-integral evaluation at one point z.
inline cplx bargmann_pointwise(const L2Sig& sig, cplx z, const TransformContext& ctx) {
  return numerics::integrate_r_plain(
      [&](double x) {
        return kernels::sb_kernel(ctx.alpha, z, x, ctx.convention) * detail::sample(sig, x);
      },
      ctx.rule_r);
}

/// Coefficient route: the basis functions map to the normalized monomials,
/// so the action on coefficients is the identity, times the constant offset
/// the bare-kernel convention introduces (surfaced, never silent).
inline HoloFun bargmann(const L2Sig& sig, const TransformContext& ctx) {
  HoloFun out;
  out.gamma = ctx.gamma;
  out.basis = Basis::FockOnb;
  out.coeffs = sig.coeffs;
  const double off = convention_offset(ctx);
  if (off != 1.0)
    for (cplx& c : out.coeffs) c *= off;
  return out;
}

/// Quadrature route: kernel integral at every plane node, projected back.
inline HoloFun bargmann_quad(const L2Sig& sig, const TransformContext& ctx) {
  HoloFun out;
  out.gamma = ctx.gamma;
  out.basis = Basis::FockOnb;
  out.coeffs = project_fock([&](cplx z) { return bargmann_pointwise(sig, z, ctx); }, ctx.N, ctx);
  return out;
}

// ---------------------------------------------------------------------------
// Width-gamma transform onto the RBF space
// ---------------------------------------------------------------------------

enum class ForwardRoute { Coefficient, QuadratureI, DiagramII };

/// Kernel-integral evaluation with the explicit width-form kernel.
inline cplx rbf_bargmann_pointwise(const L2Sig& sig, cplx z, const TransformContext& ctx) {
  return numerics::integrate_r_plain(
      [&](double x) {
        return kernels::rbf_sb_kernel(ctx.gamma, z, x, ctx.convention) * detail::sample(sig, x);
      },
      ctx.rule_r);
}

/// The three routes of the width-gamma transform:
///  - Coefficient: basis-to-basis identity (times the convention offset);
///  - QuadratureI: explicit width-form kernel integral, projected;
///  - DiagramII: classical transform followed by the isomorphism inverse.
inline HoloFun rbf_bargmann(const L2Sig& sig, const TransformContext& ctx,
                            ForwardRoute route = ForwardRoute::Coefficient) {
  HoloFun out;
  out.gamma = ctx.gamma;
  out.basis = Basis::RbfOnb;
  switch (route) {
    case ForwardRoute::Coefficient: {
      out.coeffs = sig.coeffs;
      out.coeffs.resize(static_cast<std::size_t>(ctx.N), cplx(0.0));
      const double off = convention_offset(ctx);
      if (off != 1.0)
        for (cplx& c : out.coeffs) c *= off;
      return out;
    }
    case ForwardRoute::QuadratureI: {
      // Project M h against the normalized monomials, evaluating the
      // multiplication by exp(z^2/gamma^2) pointwise.
      const double g2 = ctx.gamma * ctx.gamma;
      out.coeffs = project_fock(
          [&](cplx z) { return std::exp(z * z / g2) * rbf_bargmann_pointwise(sig, z, ctx); },
          ctx.N, ctx);
      return out;
    }
    case ForwardRoute::DiagramII: {
      out.coeffs = project_fock([&](cplx z) { return bargmann_pointwise(sig, z, ctx); }, ctx.N, ctx);
      return out;  // coefficients in the image basis are identical by the diagram
    }
  }
  return out;
}

/// Largest pairwise coefficient distance among the three routes.
inline double rbf_bargmann_route_residual(const L2Sig& sig, const TransformContext& ctx) {
  const HoloFun a = rbf_bargmann(sig, ctx, ForwardRoute::Coefficient);
  const HoloFun b = rbf_bargmann(sig, ctx, ForwardRoute::QuadratureI);
  const HoloFun c = rbf_bargmann(sig, ctx, ForwardRoute::DiagramII);
  auto dist = [](const HoloFun& x, const HoloFun& y) {
    double acc = 0.0;
    const std::size_t n = std::max(x.coeffs.size(), y.coeffs.size());
    for (std::size_t i = 0; i < n; ++i) {
      const cplx xv = i < x.coeffs.size() ? x.coeffs[i] : cplx(0.0);
      const cplx yv = i < y.coeffs.size() ? y.coeffs[i] : cplx(0.0);
      acc += std::norm(xv - yv);
    }
    return std::sqrt(acc);
  };
  return std::max({dist(a, b), dist(a, c), dist(b, c)});
}

/// Coefficient-route result, validated against the other two routes;
/// disagreement beyond tol raises a consistency error with the residual.
inline HoloFun rbf_bargmann_checked(const L2Sig& sig, const TransformContext& ctx,
                                    double tol = 1e-7) {
  const double r = rbf_bargmann_route_residual(sig, ctx);
  if (!(r <= tol))
    throw ConsistencyError("rbf_bargmann: transform routes disagree", r);
  return rbf_bargmann(sig, ctx, ForwardRoute::Coefficient);
}

// ---------------------------------------------------------------------------
// Inverse / adjoint
// ---------------------------------------------------------------------------

enum class InverseRoute { Coefficient, Quadrature };

/// Adjoint integral at one real point x (equals the inverse in the unitary
/// normalized convention): (alpha/pi) ∫ conj(A(z,x)) (M f)(z) e^{-a|z|^2} dA.
inline cplx rbf_bargmann_inverse_pointwise(const HoloFun& f, double x,
                                           const TransformContext& ctx) {
  const cplx v = numerics::integrate_c(
      [&](cplx z) {
        // conj(A(z,x)) = A(conj z, x): the kernel has real coefficients.
        return kernels::sb_kernel(ctx.alpha, std::conj(z), x, ctx.convention) *
               spaces::eval_fock_side(f, z);
      },
      ctx.rule_c);
  return (ctx.alpha / pi) * v;
}

inline L2Sig rbf_bargmann_inverse(const HoloFun& f, const TransformContext& ctx,
                                  InverseRoute route = InverseRoute::Coefficient) {
  L2Sig out;
  out.alpha = ctx.alpha;
  if (route == InverseRoute::Coefficient) {
    out.coeffs = spaces::to_rbf(f).coeffs;
    const double off = convention_offset(ctx);
    if (off != 1.0)
      for (cplx& c : out.coeffs) c /= off;
    return out;
  }
  auto pointwise = [f, ctx](double x) { return rbf_bargmann_inverse_pointwise(f, x, ctx); };
  out = hermite::hermite_expand(pointwise, ctx.alpha, ctx.N, ctx.rule_r);
  return out;
}

// ---------------------------------------------------------------------------
// Feature map
// ---------------------------------------------------------------------------

/// L^2 pairing of two feature-map images Phi(z) = A(z, .):
/// equals the kernel K(w, z) under the normalized convention and
/// gamma sqrt(pi/2) times it under the bare one.
inline cplx feature_inner(double gamma, cplx z, cplx w, const TransformContext& ctx) {
  return numerics::integrate_r_plain(
      [&](double x) {
        return kernels::rbf_sb_kernel(gamma, std::conj(z), x, ctx.convention) *
               kernels::rbf_sb_kernel(gamma, w, x, ctx.convention);
      },
      ctx.rule_r);
}

inline double feature_norm(double gamma, cplx z, const TransformContext& ctx) {
  return std::sqrt(std::max(0.0, feature_inner(gamma, z, z, ctx).real()));
}

// ---------------------------------------------------------------------------
// Fourier transform conjugated to the RBF side
// ---------------------------------------------------------------------------

/// Coefficient action: diagonal quarter phases (-i)^n, exact to the bit.
inline HoloFun fourier_rbf(const HoloFun& f) {
  HoloFun out = spaces::to_rbf(f);
  for (std::size_t n = 0; n < out.coeffs.size(); ++n)
    out.coeffs[n] = hermite::detail::quarter_phase(static_cast<int>(n), out.coeffs[n]);
  return out;
}

/// Composition form S f(z) = exp(-2 z^2/gamma^2) f(-iz).
inline cplx fourier_rbf_pointwise(const HoloFun& f, cplx z) {
  const double g2 = f.gamma * f.gamma;
  return std::exp(-2.0 * z * z / g2) * spaces::eval(f, cplx(z.imag(), -z.real()));
}

/// Distance between the two realizations of the conjugated Fourier
/// transform: the Hermite-eigenvalue diagonal transported by the transform,
/// and the composition formula projected back onto the basis.
inline double fourier_diagram_residual(const L2Sig& sig, const TransformContext& ctx) {
  const HoloFun diag = rbf_bargmann(hermite::fourier_l2(sig), ctx, ForwardRoute::Coefficient);

  HoloFun f = rbf_bargmann(sig, ctx, ForwardRoute::Coefficient);
  const double g2 = ctx.gamma * ctx.gamma;
  // Holomorphic-side image of the composition form:
  // exp(z^2/g^2) (S f)(z) = exp(-z^2/g^2) f(-iz), evaluated literally.
  const std::vector<cplx> proj = project_fock(
      [&](cplx z) {
        return std::exp(-z * z / g2) * spaces::eval(f, cplx(z.imag(), -z.real()));
      },
      ctx.N, ctx);

  double acc = 0.0;
  for (std::size_t n = 0; n < proj.size(); ++n) {
    const cplx dv = n < diag.coeffs.size() ? diag.coeffs[n] : cplx(0.0);
    acc += std::norm(proj[n] - dv);
  }
  return std::sqrt(acc);
}

}  // namespace rbfock::transforms

#endif  // RBFOCK_TRANSFORMS_HPP
