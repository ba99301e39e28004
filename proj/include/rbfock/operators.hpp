#ifndef RBFOCK_OPERATORS_HPP
#define RBFOCK_OPERATORS_HPP

// Operators on the holomorphic spaces: Weyl displacement in both
// realizations, real translation, the position operator and its matrix
// identities, and the ladder maps.

#include <Eigen/Dense>
#include <vector>

#include "hermite.hpp"
#include "numerics.hpp"
#include "spaces.hpp"
#include "transforms.hpp"

namespace rbfock::operators {

using spaces::Basis;
using spaces::HoloFun;
using transforms::TransformContext;

/// Result of an operator that must project back onto a finite basis:
/// the image, the relative mass lost to truncation, and a warning flag
/// once that loss is no longer negligible.
struct OpResult {
  HoloFun fun;
  double tail = 0.0;
  bool truncation_warning = false;
};

inline constexpr double truncation_warn_threshold = 1e-4;

namespace detail {

inline void check_width(const HoloFun& f, const TransformContext& ctx) {
  if (std::abs(f.gamma - ctx.gamma) > 1e-12)
    throw ContextError("operators: function width does not match the context");
}

inline double sq_norm(const std::vector<cplx>& c) {
  double acc = 0.0;
  for (const cplx& v : c) acc += std::norm(v);
  return acc;
}

inline OpResult finish(HoloFun fun, double input_sq) {
  OpResult r;
  r.fun = std::move(fun);
  if (input_sq > 0.0)
    r.tail = std::max(0.0, input_sq - sq_norm(r.fun.coeffs)) / input_sq;
  r.truncation_warning = r.tail > truncation_warn_threshold;
  return r;
}

/// Polynomial part of a scale-alpha expansion, evaluated by the iterated
/// basis recursion.
inline cplx eval_fock_poly(double alpha, const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0, basis = 1.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    acc += c[n] * basis;
    basis *= z * std::sqrt(alpha / double(n + 1));
  }
  return acc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Weyl displacement
// ---------------------------------------------------------------------------

/// Displacement on the scale-alpha space:
/// (W_a g)(z) = g(z - a) exp(alpha (z conj(a) - |a|^2 / 2)).
inline cplx weyl_fock_pointwise(double alpha, cplx a, const std::vector<cplx>& fock_coeffs,
                                cplx z) {
  return detail::eval_fock_poly(alpha, fock_coeffs, z - a) *
         std::exp(alpha * (z * std::conj(a) - 0.5 * std::norm(a)));
}

inline OpResult weyl_fock(const HoloFun& f, cplx a, const TransformContext& ctx) {
  detail::check_width(f, ctx);
  const std::vector<cplx> c = spaces::to_fock(f).coeffs;
  HoloFun out;
  out.gamma = ctx.gamma;
  out.basis = Basis::FockOnb;
  out.coeffs = transforms::project_fock(
      [&](cplx z) { return weyl_fock_pointwise(ctx.alpha, a, c, z); }, ctx.N, ctx);
  return detail::finish(std::move(out), detail::sq_norm(c));
}

/// Displacement on the width-gamma space, in closed form:
/// (W_a f)(z) = exp((a^2 - |a|^2)/g^2 + 2 z (conj(a) - a)/g^2) f(z - a).
/// For real a every exponent vanishes identically and the prefactor is an
/// exact 1, so the operator reduces to translation bit for bit.
inline cplx weyl_rbf_pointwise(const HoloFun& f, cplx a, cplx z) {
  const double g2 = f.gamma * f.gamma;
  const cplx expo = (a * a - cplx(std::norm(a))) / g2 + 2.0 * z * (std::conj(a) - a) / g2;
  return std::exp(expo) * spaces::eval(f, z - a);
}

enum class WeylRoute { Explicit, Diagram };

inline OpResult weyl_rbf(const HoloFun& f, cplx a, const TransformContext& ctx,
                         WeylRoute route = WeylRoute::Explicit) {
  detail::check_width(f, ctx);
  const HoloFun fr = spaces::to_rbf(f);
  HoloFun out;
  out.gamma = ctx.gamma;
  out.basis = Basis::RbfOnb;
  const double g2 = ctx.gamma * ctx.gamma;
  if (route == WeylRoute::Explicit) {
    out.coeffs = transforms::project_fock(
        [&](cplx z) { return std::exp(z * z / g2) * weyl_rbf_pointwise(fr, a, z); }, ctx.N, ctx);
  } else {
    out.coeffs = transforms::project_fock(
        [&](cplx z) { return weyl_fock_pointwise(ctx.alpha, a, fr.coeffs, z); }, ctx.N, ctx);
  }
  return detail::finish(std::move(out), detail::sq_norm(fr.coeffs));
}

/// Phase in the composition law W_a W_b = phase * W_{a+b}.
inline cplx weyl_semigroup_phase(double gamma, cplx a, cplx b) {
  const double alpha = 2.0 / (gamma * gamma);
  return std::exp(cplx(0.0, -alpha * std::imag(a * std::conj(b))));
}

/// Translation by a real displacement; complex input is rejected rather
/// than silently projected onto its real part.
inline OpResult translate_rbf(const HoloFun& f, cplx a, const TransformContext& ctx) {
  if (a.imag() != 0.0)
    throw ParameterError("translate_rbf: displacement must be real");
  return weyl_rbf(f, a, ctx, WeylRoute::Explicit);
}

// ---------------------------------------------------------------------------
// Position operator and matrix identities
// ---------------------------------------------------------------------------

/// Multiplication by z in the width-gamma basis: one lower diagonal,
/// Z(n+1, n) = gamma sqrt((n+1)/2).
inline Eigen::MatrixXd mult_matrix_rbf(int N, double gamma) {
  if (N < 1) throw ParameterError("mult_matrix_rbf: size must be >= 1");
  if (!(gamma > 0.0)) throw ParameterError("mult_matrix_rbf: width must be > 0");
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n + 1 < N; ++n) Z(n + 1, n) = gamma * std::sqrt(0.5 * double(n + 1));
  return Z;
}

/// d/dz in the width-gamma basis (the Gaussian factor contributes the
/// lower diagonal): D(n-1, n) = sqrt(2n)/gamma, D(n+1, n) = -sqrt(2(n+1))/gamma.
inline Eigen::MatrixXd deriv_matrix_rbf(int N, double gamma) {
  if (N < 1) throw ParameterError("deriv_matrix_rbf: size must be >= 1");
  if (!(gamma > 0.0)) throw ParameterError("deriv_matrix_rbf: width must be > 0");
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
  for (int n = 1; n < N; ++n) D(n - 1, n) = std::sqrt(2.0 * double(n)) / gamma;
  for (int n = 0; n + 1 < N; ++n) D(n + 1, n) = -std::sqrt(2.0 * double(n + 1)) / gamma;
  return D;
}

/// Position operator transported to the width-gamma basis, assembled from
/// the differentiation and multiplication matrices:
/// A = (gamma^2 / (2 sqrt 2)) D + sqrt(2) Z.
inline Eigen::MatrixXd position_rbf_matrix(int N, double gamma) {
  const double g2 = gamma * gamma;
  return (g2 / (2.0 * std::sqrt(2.0))) * deriv_matrix_rbf(N, gamma) +
         std::sqrt(2.0) * mult_matrix_rbf(N, gamma);
}

/// Independent quadrature route: entries <psi_m, x psi_n> over the real line.
inline Eigen::MatrixXd position_quadrature_matrix(int N, double alpha,
                                                  const numerics::Quad1D& rule) {
  if (N < 1) throw ParameterError("position_quadrature_matrix: size must be >= 1");
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const std::vector<double> row = hermite::hermite_fn_all(N - 1, alpha, x);
    const double wx = rule.plain_weights[i] * x;
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) Q(m, n) += wx * row[static_cast<std::size_t>(m)] * row[static_cast<std::size_t>(n)];
  }
  return Q;
}

/// Largest entry of D - ((2 sqrt 2)/gamma^2) A + (4/gamma^2) Z, the
/// defining relation between the three band matrices.
inline double derivative_identity_residual(int N, double gamma) {
  const double g2 = gamma * gamma;
  const Eigen::MatrixXd R = deriv_matrix_rbf(N, gamma) -
                            (2.0 * std::sqrt(2.0) / g2) * position_rbf_matrix(N, gamma) +
                            (4.0 / g2) * mult_matrix_rbf(N, gamma);
  return R.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Ladder maps
// ---------------------------------------------------------------------------

/// Lowering map: e_{n+1} -> sqrt(n+1) e_n; coefficients shift down.
inline HoloFun lower_rbf(const HoloFun& f) {
  HoloFun out = spaces::to_rbf(f);
  const std::size_t n = out.coeffs.size();
  if (n == 0) return out;
  for (std::size_t k = 0; k + 1 < n; ++k)
    out.coeffs[k] = std::sqrt(double(k + 1)) * out.coeffs[k + 1];
  out.coeffs.pop_back();
  return out;
}

/// Raising map: e_n -> sqrt(n+1) e_{n+1}; coefficients shift up. With a
/// positive cap the result is truncated there and flagged if the dropped
/// top carries mass.
inline OpResult raise_rbf(const HoloFun& f, int cap = 0) {
  HoloFun out = spaces::to_rbf(f);
  out.coeffs.insert(out.coeffs.begin(), cplx(0.0));
  for (std::size_t k = 1; k < out.coeffs.size(); ++k)
    out.coeffs[k] = std::sqrt(double(k)) * out.coeffs[k];
  OpResult r;
  if (cap > 0 && out.coeffs.size() > static_cast<std::size_t>(cap)) {
    double dropped = 0.0;
    for (std::size_t k = static_cast<std::size_t>(cap); k < out.coeffs.size(); ++k)
      dropped += std::norm(out.coeffs[k]);
    out.coeffs.resize(static_cast<std::size_t>(cap));
    const double total = dropped + detail::sq_norm(out.coeffs);
    r.tail = total > 0.0 ? dropped / total : 0.0;
    r.truncation_warning = r.tail > truncation_warn_threshold;
  }
  r.fun = std::move(out);
  return r;
}

/// Relative size of (raise o lower - lower o raise) f + f; the commutator
/// acts as -1 on coefficients.
inline double ladder_commutator_residual(const HoloFun& f) {
  const HoloFun fr = spaces::to_rbf(f);
  const HoloFun rl = raise_rbf(lower_rbf(fr)).fun;
  const HoloFun lr = lower_rbf(raise_rbf(fr).fun);
  double acc = 0.0;
  for (std::size_t n = 0; n < fr.coeffs.size(); ++n) {
    const cplx rlv = n < rl.coeffs.size() ? rl.coeffs[n] : cplx(0.0);
    const cplx lrv = n < lr.coeffs.size() ? lr.coeffs[n] : cplx(0.0);
    acc += std::norm(rlv - lrv + fr.coeffs[n]);
  }
  const double base = detail::sq_norm(fr.coeffs);
  return base > 0.0 ? std::sqrt(acc / base) : std::sqrt(acc);
}

}  // namespace rbfock::operators

#endif  // RBFOCK_OPERATORS_HPP
