#ifndef RBFOCK_SPACES_HPP
#define RBFOCK_SPACES_HPP

// Elements of the width-gamma RBF space and the scale-alpha holomorphic
// space as finite coefficient vectors in one of three bases, the
// multiplication isomorphism between the spaces, inner products and norms by
// independent routes, the reproducing integral, coherent states, and the
// pointwise growth bound.

#include <utility>
#include <vector>

#include "kernels.hpp"
#include "numerics.hpp"

namespace rbfock::spaces {

/// taylor: plain monomial coefficients of the entire function itself.
/// fock_onb: coefficients w.r.t. u_n(z) = sqrt(alpha^n/n!) z^n.
/// rbf_onb: coefficients w.r.t. e_n(z) = sqrt(2^n/(gamma^{2n} n!)) z^n e^{-z^2/gamma^2}.
enum class Basis { Taylor, FockOnb, RbfOnb };

inline const char* to_string(Basis b) {
  switch (b) {
    case Basis::Taylor: return "taylor";
    case Basis::FockOnb: return "fock-onb";
    default: return "rbf-onb";
  }
}

struct HoloFun {
  double gamma = 1.0;
  Basis basis = Basis::RbfOnb;
  std::vector<cplx> coeffs;
};

inline double alpha_of(const HoloFun& f) { return 2.0 / (f.gamma * f.gamma); }

namespace detail {

/// Cauchy product of a coefficient vector with the series of
/// exp(sigma z^2 / gamma^2), truncated at the input length. This is exactly
/// the b_k convolution of the sequential norm characterization.
inline std::vector<cplx> exp_cauchy(const std::vector<cplx>& a, double gamma, double sigma) {
  const std::size_t n = a.size();
  std::vector<cplx> out(n, cplx(0.0));
  std::vector<double> e(n / 2 + 1);
  e[0] = 1.0;
  for (std::size_t j = 1; j < e.size(); ++j)
    e[j] = e[j - 1] * sigma / (gamma * gamma * double(j));
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; 2 * j <= k; ++j) acc += e[j] * a[k - 2 * j];
    out[k] = acc;
  }
  return out;
}

inline void check_same_width(const HoloFun& f, const HoloFun& g) {
  if (std::abs(f.gamma - g.gamma) > 1e-12 * f.gamma)
    throw ContextError("holomorphic elements carry different widths");
}

}  // namespace detail

/// Isomorphism onto the holomorphic side: multiplication by exp(z^2/gamma^2).
/// On orthonormal coefficients it is the identity vector map (e_n -> u_n);
/// Taylor input is first convolved with the exponential series.
inline HoloFun to_fock(const HoloFun& f) {
  HoloFun out;
  out.gamma = f.gamma;
  out.basis = Basis::FockOnb;
  switch (f.basis) {
    case Basis::FockOnb:
    case Basis::RbfOnb:
      out.coeffs = f.coeffs;
      return out;
    case Basis::Taylor: {
      const std::vector<cplx> b = detail::exp_cauchy(f.coeffs, f.gamma, +1.0);
      out.coeffs.resize(b.size());
      for (std::size_t k = 0; k < b.size(); ++k)
        out.coeffs[k] =
            b[k] * std::exp(-numerics::log_basis_coeff(static_cast<int>(k), f.gamma));
      return out;
    }
  }
  return out;
}

/// Inverse (and adjoint) of to_fock; identity on orthonormal coefficients.
inline HoloFun to_rbf(const HoloFun& g) {
  HoloFun out;
  out.gamma = g.gamma;
  out.basis = Basis::RbfOnb;
  if (g.basis == Basis::Taylor) {
    out.coeffs = to_fock(g).coeffs;
    return out;
  }
  out.coeffs = g.coeffs;
  return out;
}

/// Monomial coefficients of the function itself (for rbf-onb input this
/// multiplies the polynomial part by the series of exp(-z^2/gamma^2)).
inline HoloFun to_taylor(const HoloFun& f) {
  HoloFun out;
  out.gamma = f.gamma;
  out.basis = Basis::Taylor;
  if (f.basis == Basis::Taylor) {
    out.coeffs = f.coeffs;
    return out;
  }
  std::vector<cplx> mono(f.coeffs.size());
  for (std::size_t k = 0; k < mono.size(); ++k)
    mono[k] = f.coeffs[k] * std::exp(numerics::log_basis_coeff(static_cast<int>(k), f.gamma));
  if (f.basis == Basis::FockOnb) {
    out.coeffs = std::move(mono);
    return out;
  }
  out.coeffs = detail::exp_cauchy(mono, f.gamma, -1.0);
  return out;
}

/// Pointwise value of the represented function.
inline cplx eval(const HoloFun& f, cplx z) {
  const double alpha = alpha_of(f);
  switch (f.basis) {
    case Basis::Taylor: {
      cplx acc = 0.0;
      for (std::size_t k = f.coeffs.size(); k-- > 0;) acc = acc * z + f.coeffs[k];
      return acc;
    }
    case Basis::FockOnb:
    case Basis::RbfOnb: {
      cplx acc = 0.0;
      cplx basis_val = 1.0;  // u_n(z) and the rbf polynomial part share the recursion
      for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
        acc += f.coeffs[n] * basis_val;
        basis_val *= z * std::sqrt(alpha / double(n + 1));
      }
      if (f.basis == Basis::RbfOnb) acc *= std::exp(-z * z / (f.gamma * f.gamma));
      return acc;
    }
  }
  return 0.0;
}

/// Pointwise value of the holomorphic-side representative exp(z^2/g^2) f(z).
/// For rbf-onb coefficients the Gaussian factors cancel algebraically, so
/// only the polynomial part is evaluated; for Taylor input the cancellation
/// is left to floating point on purpose (it is an independent route).
inline cplx eval_fock_side(const HoloFun& f, cplx z) {
  switch (f.basis) {
    case Basis::FockOnb:
      return eval(f, z);
    case Basis::Taylor:
      return std::exp(z * z / (f.gamma * f.gamma)) * eval(f, z);
    case Basis::RbfOnb: {
      HoloFun poly = f;
      poly.basis = Basis::FockOnb;
      return eval(poly, z);
    }
  }
  return 0.0;
}

enum class InnerRoute { Coefficient, Quadrature };

/// Inner product, conjugate-linear in the first argument. The quadrature
/// route discretizes the defining weighted integral after moving it to the
/// holomorphic side, where the weight is exactly exp(-alpha |z|^2).
inline cplx inner(const HoloFun& f, const HoloFun& g,
                  InnerRoute route = InnerRoute::Coefficient,
                  const numerics::Quad2D* rule = nullptr) {
  detail::check_same_width(f, g);
  if (route == InnerRoute::Coefficient) {
    const HoloFun a = to_fock(f), b = to_fock(g);
    cplx acc = 0.0;
    const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(a.coeffs[i]) * b.coeffs[i];
    return acc;
  }
  const double alpha = alpha_of(f);
  numerics::Quad2D local;
  if (rule == nullptr) {
    local = numerics::gauss_hermite_2d(48, alpha);
    rule = &local;
  } else if (std::abs(rule->rule_x.scale - alpha) > 1e-12 * alpha) {
    throw ParameterError("inner: quadrature rule scale must equal alpha");
  }
  const cplx v = numerics::integrate_c(
      [&](cplx z) { return std::conj(eval_fock_side(f, z)) * eval_fock_side(g, z); }, *rule);
  return (alpha / pi) * v;
}

inline double norm(const HoloFun& f, InnerRoute route = InnerRoute::Coefficient,
                   const numerics::Quad2D* rule = nullptr) {
  return std::sqrt(std::max(0.0, inner(f, f, route, rule).real()));
}

/// Norm by the sequential characterization: from Taylor coefficients a_k,
///   b_k = sum_j a_{k-2j} / (gamma^{2j} j!),   norm^2 = sum_k (k! gamma^{2k}/2^k) |b_k|^2,
/// accumulated through k < Kmax in log-scaled form. The membership verdict is
/// truncation-relative: the last five terms must carry less than tail_tol of
/// the accumulated mass.
struct SeqNormResult {
  double norm = 0.0;
  double tail = 0.0;   // mass fraction of the last five terms
  bool in_space = false;
};

inline SeqNormResult norm_sequential(const std::vector<cplx>& taylor, double gamma, int Kmax,
                                     double tail_tol = 1e-8) {
  if (!(gamma > 0.0)) throw ParameterError("norm_sequential: width must be > 0");
  if (Kmax < 1) throw ParameterError("norm_sequential: need at least one term");
  std::vector<cplx> a = taylor;
  a.resize(static_cast<std::size_t>(Kmax), cplx(0.0));
  const std::vector<cplx> b = detail::exp_cauchy(a, gamma, +1.0);

  std::vector<double> terms(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double mag = std::abs(b[k]);
    terms[k] = mag == 0.0
                   ? 0.0
                   : std::pow(mag * std::exp(-numerics::log_basis_coeff(static_cast<int>(k), gamma)), 2);
  }
  double total = 0.0;
  for (double t : terms) total += t;
  double tail = 0.0;
  for (std::size_t k = b.size() >= 5 ? b.size() - 5 : 0; k < b.size(); ++k) tail += terms[k];

  SeqNormResult out;
  out.norm = std::sqrt(total);
  out.tail = total == 0.0 ? 0.0 : tail / total;
  out.in_space = std::isfinite(total) && (total == 0.0 || tail <= tail_tol * total);
  return out;
}

/// Reproducing integral: pairs f against the kernel section at w through the
/// holomorphic side; contract: equals eval(f, w) up to quadrature error.
inline cplx reproduce(const HoloFun& f, cplx w, const numerics::Quad2D& rule) {
  const double alpha = alpha_of(f);
  if (std::abs(rule.rule_x.scale - alpha) > 1e-12 * alpha)
    throw ParameterError("reproduce: quadrature rule scale must equal alpha");
  const cplx outer = std::exp(-w * w / (f.gamma * f.gamma));
  const cplx v = numerics::integrate_c(
      [&](cplx z) { return eval_fock_side(f, z) * kernels::fock_kernel(alpha, w, z); }, rule);
  return (alpha / pi) * outer * v;
}

/// Coefficients of the kernel section K(., w) in the orthonormal basis:
/// coeffs[n] = e_n(conj(w)).
inline HoloFun coherent_coeffs(double gamma, cplx w, int N) {
  if (!(gamma > 0.0)) throw ParameterError("coherent_coeffs: width must be > 0");
  if (N < 1) throw ParameterError("coherent_coeffs: need at least one coefficient");
  HoloFun out;
  out.gamma = gamma;
  out.basis = Basis::RbfOnb;
  out.coeffs.resize(static_cast<std::size_t>(N));
  const double alpha = 2.0 / (gamma * gamma);
  const cplx wb = std::conj(w);
  cplx t = std::exp(-wb * wb / (gamma * gamma));
  for (int n = 0; n < N; ++n) {
    out.coeffs[static_cast<std::size_t>(n)] = t;
    t *= wb * std::sqrt(alpha / double(n + 1));
  }
  return out;
}

/// Pointwise growth bound |f(x+iy)| <= exp(2 y^2/gamma^2) ||f||; returns
/// both sides. On the real line the bound degenerates to |f(x)| <= ||f||.
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline BoundCheck bound_check(const HoloFun& f, cplx z) {
  BoundCheck out;
  out.lhs = std::abs(eval(f, z));
  const double y = z.imag();
  out.rhs = std::exp(2.0 * y * y / (f.gamma * f.gamma)) * norm(f);
  return out;
}

}  // namespace rbfock::spaces

#endif  // RBFOCK_SPACES_HPP
