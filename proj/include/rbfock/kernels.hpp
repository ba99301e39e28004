#ifndef RBFOCK_KERNELS_HPP
#define RBFOCK_KERNELS_HPP

// Closed-form kernels of the two spaces (width-gamma RBF space on the plane
// and its scale-alpha holomorphic counterpart, alpha = 2/gamma^2), the
// kernel factorization identity, Mercer partial sums, and Gram matrices.

#include <algorithm>
#include <numeric>
#include <vector>

#include "numerics.hpp"

namespace rbfock::kernels {

/// Prefactor convention for the real-variable transform kernels: the
/// normalized form carries (alpha/pi)^{1/4} and makes the transform unitary;
/// the bare form omits it and surfaces the classical Gaussian-integral
/// constant gamma sqrt(pi/2) in feature inner products.
enum class Convention { BargmannNormalized, PaperFormI };

inline const char* to_string(Convention c) {
  return c == Convention::BargmannNormalized ? "bargmann" : "paper";
}

/// Width gamma with its bound scale alpha = 2/gamma^2.
struct KernelParams {
  double gamma;
  double alpha;
  Convention convention;

  explicit KernelParams(double g, Convention c = Convention::BargmannNormalized)
      : gamma(g), alpha(2.0 / (g * g)), convention(c) {
    if (!(g > 0.0)) throw ParameterError("KernelParams: width must be > 0");
  }
};

namespace detail {
inline void check_gamma(double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("kernel: width must be > 0");
}
inline void check_alpha(double alpha) {
  if (!(alpha > 0.0)) throw ParameterError("kernel: scale must be > 0");
}
}  // namespace detail

/// exp(alpha z conj(w)): reproducing kernel of the scale-alpha space.
inline cplx fock_kernel(double alpha, cplx z, cplx w) {
  detail::check_alpha(alpha);
  return std::exp(alpha * z * std::conj(w));
}

/// exp(alpha (z conj(w) - |w|^2 / 2)): the kernel at w normalized to unit norm.
inline cplx normalized_fock_state(double alpha, cplx w, cplx z) {
  detail::check_alpha(alpha);
  return std::exp(alpha * (z * std::conj(w) - 0.5 * std::norm(w)));
}

/// exp(-(z - conj(w))^2 / gamma^2): complexified Gaussian RBF kernel; on the
/// real line this is the standard exp(-(x-x')^2/gamma^2).
inline cplx rbf_kernel(double gamma, cplx z, cplx w) {
  detail::check_gamma(gamma);
  const cplx d = z - std::conj(w);
  return std::exp(-d * d / (gamma * gamma));
}

/// Residual of the two-way factorization between the kernels,
///   K_gamma(z,w) = exp(-(z^2 + conj(w)^2)/gamma^2) * exp(alpha z conj(w)),
/// and its inverse reading; measured by the scaled residual, which is the
/// absolute error for O(1) values and relative where the kernels blow up.
inline double factorization_residual(double gamma, cplx z, cplx w) {
  detail::check_gamma(gamma);
  const double alpha = 2.0 / (gamma * gamma);
  const cplx zz_ww = z * z + std::conj(w) * std::conj(w);
  const cplx k = rbf_kernel(gamma, z, w);
  const cplx f = fock_kernel(alpha, z, w);
  const double forward = numerics::scaled_residual(k, std::exp(-zz_ww / (gamma * gamma)) * f);
  const double reverse = numerics::scaled_residual(f, std::exp(0.5 * alpha * zz_ww) * k);
  return std::max(forward, reverse);
}

/// Real-variable transform kernel at scale alpha:
///   exp(-(alpha/2)(z^2 + x^2) + sqrt(2) alpha z x), optionally normalized.
inline cplx sb_kernel(double alpha, cplx z, double x,
                      Convention conv = Convention::BargmannNormalized) {
  detail::check_alpha(alpha);
  const double pref = conv == Convention::BargmannNormalized ? std::pow(alpha / pi, 0.25) : 1.0;
  return pref * std::exp(-0.5 * alpha * (z * z + x * x) + std::sqrt(2.0) * alpha * z * x);
}

/// Width-form of the same kernel: exp(-(x - sqrt(2) z)^2 / gamma^2),
/// optionally normalized by (2/(pi gamma^2))^{1/4}.
inline cplx rbf_sb_kernel(double gamma, cplx z, double x,
                          Convention conv = Convention::BargmannNormalized) {
  detail::check_gamma(gamma);
  const double pref =
      conv == Convention::BargmannNormalized ? std::pow(2.0 / (pi * gamma * gamma), 0.25) : 1.0;
  const cplx d = x - std::sqrt(2.0) * z;
  return pref * std::exp(-d * d / (gamma * gamma));
}

/// Partial Mercer sum  sum_{n<N} e_n(z) e_n(conj(w))  of the RBF kernel over
/// its orthonormal basis; terms are generated by a stable ratio recurrence
/// and accumulated largest-first to limit cancellation.
inline cplx mercer_partial(double gamma, cplx z, cplx w, int N) {
  detail::check_gamma(gamma);
  if (N < 1) throw ParameterError("mercer_partial: need at least one term");
  const cplx X = 2.0 * z * std::conj(w) / (gamma * gamma);
  std::vector<cplx> terms(static_cast<std::size_t>(N));
  terms[0] = 1.0;
  for (int n = 1; n < N; ++n) terms[static_cast<std::size_t>(n)] = terms[static_cast<std::size_t>(n) - 1] * X / double(n);

  std::vector<int> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(terms[static_cast<std::size_t>(a)]) > std::abs(terms[static_cast<std::size_t>(b)]);
  });
  cplx series = 0.0;
  for (int idx : order) series += terms[static_cast<std::size_t>(idx)];

  const cplx zz_ww = z * z + std::conj(w) * std::conj(w);
  return std::exp(-zz_ww / (gamma * gamma)) * series;
}

/// Kernel Gram matrix over a point set with its smallest eigenvalue; with a
/// positive truncation the entries come from the Mercer partial sum instead
/// of the closed form.
struct GramResult {
  Eigen::MatrixXcd matrix;
  double min_eigenvalue = 0.0;
};

inline GramResult gram(double gamma, const std::vector<cplx>& points, int trunc = 0) {
  detail::check_gamma(gamma);
  if (points.empty()) throw ParameterError("gram: point set must be nonempty");
  for (const cplx& p : points)
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      throw ParameterError("gram: points must be finite");

  const int n = static_cast<int>(points.size());
  GramResult out;
  out.matrix.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const cplx v = trunc > 0 ? mercer_partial(gamma, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)], trunc)
                               : rbf_kernel(gamma, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      out.matrix(i, j) = v;
      out.matrix(j, i) = std::conj(v);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.matrix, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues()(0);
  return out;
}

}  // namespace rbfock::kernels

#endif  // RBFOCK_KERNELS_HPP
