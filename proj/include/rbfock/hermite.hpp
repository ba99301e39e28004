#ifndef RBFOCK_HERMITE_HPP
#define RBFOCK_HERMITE_HPP

// Normalized weighted Hermite functions psi_n(x) for a scale alpha > 0,
//   psi_n(x) = (alpha/pi)^{1/4} (2^n n!)^{-1/2} H_n(sqrt(alpha) x) e^{-alpha x^2/2},
// expansions of L^2(R) signals in that basis, the position-operator matrix,
// and the Fourier transform acting diagonally on coefficients.

#include <functional>
#include <vector>

#include "numerics.hpp"

namespace rbfock::hermite {

using numerics::Quad1D;

/// An element of L^2(R) as coefficients in the alpha-weighted Hermite basis,
/// optionally backed by a pointwise sampler.
struct L2Sig {
  double alpha = 2.0;
  std::vector<cplx> coeffs;
  std::function<cplx(double)> sampler;  // empty when only coefficients exist
};

/// Values psi_0(x) .. psi_nmax(x) by the stable normalized recurrence;
/// never touches raw Hermite polynomials, so no overflow at any order.
inline std::vector<double> hermite_fn_all(int nmax, double alpha, double x) {
  if (nmax < 0) throw ParameterError("hermite_fn_all: index must be >= 0");
  if (!(alpha > 0.0)) throw ParameterError("hermite_fn_all: scale must be > 0");
  std::vector<double> row;
  numerics::detail::hermite_row(nmax, std::sqrt(alpha) * x, row);
  const double pref = std::pow(alpha, 0.25);
  for (double& v : row) v *= pref;
  return row;
}

inline double hermite_fn(int n, double alpha, double x) {
  return hermite_fn_all(n, alpha, x)[static_cast<std::size_t>(n)];
}

/// Project a pointwise function onto psi_0..psi_{N-1}. The rule must carry
/// the weight e^{-alpha x^2}, which is exactly the Gaussian in the product
/// of the integrand's two e^{-alpha x^2 / 2} factors.
template <typename F>
L2Sig hermite_expand(F&& f, double alpha, int N, const Quad1D& rule) {
  if (N < 1) throw ParameterError("hermite_expand: truncation must be >= 1");
  if (!(alpha > 0.0)) throw ParameterError("hermite_expand: scale must be > 0");
  if (std::abs(rule.scale - alpha) > 1e-12 * alpha)
    throw ParameterError("hermite_expand: rule scale must equal alpha");

  L2Sig sig;
  sig.alpha = alpha;
  sig.coeffs.assign(static_cast<std::size_t>(N), cplx(0.0));
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const cplx fx = f(x);
    if (!std::isfinite(fx.real()) || !std::isfinite(fx.imag()))
      throw EvaluationError("hermite_expand: non-finite sample", x);
    const std::vector<double> psi = hermite_fn_all(N - 1, alpha, x);
    const cplx wf = rule.plain_weights[i] * fx;
    for (int n = 0; n < N; ++n) sig.coeffs[static_cast<std::size_t>(n)] += psi[static_cast<std::size_t>(n)] * wf;
  }
  sig.sampler = std::function<cplx(double)>(std::forward<F>(f));
  return sig;
}

/// l2 mass of the last k coefficients relative to the whole vector;
/// the standard truncation diagnostic attached to expansions.
inline double tail_mass(const std::vector<cplx>& c, int k = 4) {
  double tail = 0.0, total = 0.0;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::norm(c[i]);
    total += m;
    if (i + static_cast<std::size_t>(k) >= n) tail += m;
  }
  return total == 0.0 ? 0.0 : std::sqrt(tail / total);
}

/// Matrix of the position operator f(x) -> x f(x) in psi_0..psi_{N-1}:
/// symmetric tridiagonal with off-diagonal sqrt((n+1)/(2 alpha)).
inline Eigen::MatrixXd position_matrix(int N, double alpha) {
  if (N < 1) throw ParameterError("position_matrix: size must be >= 1");
  if (!(alpha > 0.0)) throw ParameterError("position_matrix: scale must be > 0");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n + 1 < N; ++n) {
    const double v = std::sqrt((n + 1) / (2.0 * alpha));
    m(n, n + 1) = v;
    m(n + 1, n) = v;
  }
  return m;
}

namespace detail {
/// Multiply by (-i)^n using exact component swaps, so applying the map four
/// times is the bitwise identity and norms are preserved exactly.
inline cplx quarter_phase(int n, cplx c) {
  switch (n & 3) {
    case 0: return c;
    case 1: return cplx(c.imag(), -c.real());   // -i * c
    case 2: return cplx(-c.real(), -c.imag());  // -1 * c
    default: return cplx(-c.imag(), c.real());  //  i * c
  }
}
}  // namespace detail

/// Fourier transform on L^2(R): the basis functions are eigenfunctions with
/// eigenvalue (-i)^n, so the coefficient action is diagonal.
inline L2Sig fourier_l2(const L2Sig& sig) {
  L2Sig out;
  out.alpha = sig.alpha;
  out.coeffs.resize(sig.coeffs.size());
  for (std::size_t n = 0; n < sig.coeffs.size(); ++n)
    out.coeffs[n] = detail::quarter_phase(static_cast<int>(n), sig.coeffs[n]);
  return out;
}

/// Coefficient-side evaluation sum_n c_n psi_n(x).
inline cplx eval(const L2Sig& sig, double x) {
  if (sig.coeffs.empty()) return 0.0;
  const std::vector<double> psi =
      hermite_fn_all(static_cast<int>(sig.coeffs.size()) - 1, sig.alpha, x);
  cplx acc = 0.0;
  for (std::size_t n = 0; n < sig.coeffs.size(); ++n) acc += sig.coeffs[n] * psi[n];
  return acc;
}

/// l2 inner product, conjugate-linear in the first argument.
inline cplx inner(const L2Sig& a, const L2Sig& b) {
  if (std::abs(a.alpha - b.alpha) > 1e-12 * a.alpha)
    throw ContextError("inner: signals carry different scales");
  cplx acc = 0.0;
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(a.coeffs[i]) * b.coeffs[i];
  return acc;
}

inline double norm(const L2Sig& sig) {
  double acc = 0.0;
  for (const cplx& c : sig.coeffs) acc += std::norm(c);
  return std::sqrt(acc);
}

}  // namespace rbfock::hermite

#endif  // RBFOCK_HERMITE_HPP
