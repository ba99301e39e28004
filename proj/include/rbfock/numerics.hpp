#ifndef RBFOCK_NUMERICS_HPP
#define RBFOCK_NUMERICS_HPP

// Gaussian-weight quadrature on the line and the plane, log-scaled basis
// coefficients, and the small shared vocabulary (complex alias, errors,
// deterministic RNG) used by every other header.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rbfock {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

/// Argument outside its mathematical domain (n < 1, gamma <= 0, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An integrand produced a non-finite sample; remembers where.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, cplx node)
      : std::runtime_error(format(what, node)), node_(node) {}
  cplx node() const noexcept { return node_; }

 private:
  static std::string format(const std::string& what, cplx node) {
    std::ostringstream os;
    os << what << " at node (" << node.real() << ", " << node.imag() << ")";
    return os.str();
  }
  cplx node_;
};

/// Values from incompatible contexts were combined (e.g. different widths).
struct ContextError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Two routes that must agree disagreed beyond tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  ConsistencyError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

namespace numerics {

// |a-b| / max(1, |a|, |b|): coincides with the absolute error for O(1)
// quantities and switches to relative error where values grow exponentially.
inline double scaled_residual(cplx a, cplx b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------------------------------------------------------------------------
// Quadrature rules
// ---------------------------------------------------------------------------

/// Gauss-Hermite rule against the weight exp(-scale * t^2).
///
/// `weights` absorb the Gaussian factor:   sum w_i f(x_i)  ~ ∫ f(t) e^{-s t²} dt.
/// `plain_weights` do not:                 sum pw_i g(x_i) ~ ∫ g(t) dt
/// for integrands g that themselves decay at least like e^{-s t²} times a
/// polynomial (pw_i = w_i e^{+s x_i²}, assembled overflow-free).
struct Quad1D {
  double scale = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> plain_weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Tensor rule over z = x + iy for the radial weight exp(-scale |z|^2).
struct Quad2D {
  Quad1D rule_x;
  Quad1D rule_y;
};

namespace detail {

// Orthonormal Hermite functions for unit scale,
//   h_0(x) = pi^{-1/4} e^{-x^2/2},
//   h_{k+1}(x) = x sqrt(2/(k+1)) h_k(x) - sqrt(k/(k+1)) h_{k-1}(x);
// bounded on all of R, so Christoffel sums over them never overflow.
inline void hermite_row(int n, double x, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(n) + 1);
  double hm = 0.0;
  double h = 0.75112554446494248286 * std::exp(-0.5 * x * x);  // pi^{-1/4} e^{-x²/2}
  out[0] = h;
  for (int k = 0; k < n; ++k) {
    double hp = x * std::sqrt(2.0 / (k + 1)) * h - std::sqrt(double(k) / (k + 1)) * hm;
    hm = h;
    h = hp;
    out[static_cast<std::size_t>(k) + 1] = h;
  }
}

// One Newton step toward the nearest root of h_n, using
// h_n'(x) = sqrt(2n) h_{n-1}(x) - x h_n(x).
inline double newton_step(int n, double x, std::vector<double>& scratch) {
  hermite_row(n, x, scratch);
  const double hn = scratch[static_cast<std::size_t>(n)];
  const double hnm1 = scratch[static_cast<std::size_t>(n) - 1];
  const double deriv = std::sqrt(2.0 * n) * hnm1 - x * hn;
  if (deriv == 0.0) return x;
  return x - hn / deriv;
}

}  // namespace detail

/// n-point Gauss-Hermite rule for the weight exp(-s t^2): Golub-Welsch
/// eigenvalues of the Jacobi matrix, polished by Newton iteration on the
/// normalized-function recurrence, weights via Christoffel sums.
inline Quad1D gauss_hermite(int n, double s) {
  if (n < 1) throw ParameterError("gauss_hermite: order must be >= 1");
  if (!(s > 0.0)) throw ParameterError("gauss_hermite: weight scale must be > 0");

  Quad1D rule;
  rule.scale = s;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  rule.plain_weights.resize(static_cast<std::size_t>(n));

  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.plain_weights[0] = std::sqrt(pi / s);  // exact: 1 / h_0(0)^2 scaled
    rule.weights[0] = rule.plain_weights[0];
    return rule;
  }

  // Jacobi matrix for the physicists' Hermite weight e^{-t^2}:
  // zero diagonal, off-diagonal beta_k = sqrt(k/2).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = std::sqrt(k / 2.0);
    jacobi(k - 1, k) = beta;
    jacobi(k, k - 1) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi, Eigen::EigenvaluesOnly);

  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);

  std::vector<double> scratch;
  for (auto& xi : x)
    for (int it = 0; it < 3; ++it) xi = detail::newton_step(n, xi, scratch);

  // Enforce the exact symmetry x_i = -x_{n-1-i} (middle node exactly 0).
  for (int i = 0; i < n / 2; ++i) {
    const double a = 0.5 * (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(n - 1 - i)]);
    x[static_cast<std::size_t>(i)] = a;
    x[static_cast<std::size_t>(n - 1 - i)] = -a;
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0.0;

  const double rs = std::sqrt(s);
  for (int i = 0; i <= (n - 1) / 2; ++i) {
    detail::hermite_row(n - 1, x[static_cast<std::size_t>(i)], scratch);
    double chr = 0.0;
    for (int k = 0; k < n; ++k) chr += scratch[static_cast<std::size_t>(k)] * scratch[static_cast<std::size_t>(k)];
    const double pw = 1.0 / chr;  // ∫ g dt weight at unit scale
    const double w = pw * std::exp(-x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]);
    const int j = n - 1 - i;
    rule.plain_weights[static_cast<std::size_t>(i)] = pw / rs;
    rule.plain_weights[static_cast<std::size_t>(j)] = pw / rs;
    rule.weights[static_cast<std::size_t>(i)] = w / rs;
    rule.weights[static_cast<std::size_t>(j)] = w / rs;
  }
  for (int i = 0; i < n; ++i) rule.nodes[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] / rs;
  return rule;
}

/// Tensor rule with the same per-axis order and shared radial scale.
inline Quad2D gauss_hermite_2d(int n, double s) {
  Quad2D rule;
  rule.rule_x = gauss_hermite(n, s);
  rule.rule_y = rule.rule_x;
  return rule;
}

/// sum_i w_i f(x_i)  ~  ∫ f(t) e^{-s t^2} dt.
template <typename F>
cplx integrate_r(F&& f, const Quad1D& rule) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const cplx v = f(rule.nodes[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw EvaluationError("integrate_r: non-finite integrand", rule.nodes[i]);
    acc += rule.weights[i] * v;
  }
  return acc;
}

/// sum_i pw_i g(x_i)  ~  ∫ g(t) dt for Gaussian-decaying g.
template <typename F>
cplx integrate_r_plain(F&& g, const Quad1D& rule) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const cplx v = g(rule.nodes[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw EvaluationError("integrate_r_plain: non-finite integrand", rule.nodes[i]);
    acc += rule.plain_weights[i] * v;
  }
  return acc;
}

/// sum_ij wx_i wy_j f(x_i + i y_j)  ~  ∫_C f(z) e^{-s |z|^2} dA(z).
template <typename F>
cplx integrate_c(F&& f, const Quad2D& rule) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.rule_x.size(); ++i) {
    const double wx = rule.rule_x.weights[i];
    cplx inner = 0.0;
    for (std::size_t j = 0; j < rule.rule_y.size(); ++j) {
      const cplx z(rule.rule_x.nodes[i], rule.rule_y.nodes[j]);
      const cplx v = f(z);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvaluationError("integrate_c: non-finite integrand", z);
      inner += rule.rule_y.weights[j] * v;
    }
    acc += wx * inner;
  }
  return acc;
}

/// Plane integral with the Gaussian carried by the integrand itself:
/// sum_ij pwx_i pwy_j g(x_i + i y_j) ~ ∫_C g(z) dA(z).
template <typename F>
cplx integrate_c_plain(F&& g, const Quad2D& rule) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.rule_x.size(); ++i) {
    const double wx = rule.rule_x.plain_weights[i];
    cplx inner = 0.0;
    for (std::size_t j = 0; j < rule.rule_y.size(); ++j) {
      const cplx z(rule.rule_x.nodes[i], rule.rule_y.nodes[j]);
      const cplx v = g(z);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvaluationError("integrate_c_plain: non-finite integrand", z);
      inner += rule.rule_y.plain_weights[j] * v;
    }
    acc += wx * inner;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Log-scaled basis coefficients
// ---------------------------------------------------------------------------

/// log sqrt(2^n / (gamma^{2n} n!)), the log of the n-th orthonormal-basis
/// coefficient of the width-gamma space; exponentiation is deferred to
/// combined expressions so factorial growth never overflows.
inline double log_basis_coeff(int n, double gamma) {
  if (n < 0) throw ParameterError("log_basis_coeff: index must be >= 0");
  if (!(gamma > 0.0)) throw ParameterError("log_basis_coeff: width must be > 0");
  return 0.5 * (n * std::log(2.0) - 2.0 * n * std::log(gamma) - std::lgamma(double(n) + 1.0));
}

// ---------------------------------------------------------------------------
// Deterministic RNG (fixed bit-to-double mapping, reproducible across runs)
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Uniform in [0, 1): top 53 bits of splitmix64 output.
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform on the closed disc of radius r.
  cplx disc(double r) {
    const double rad = r * std::sqrt(uniform());
    const double th = 2.0 * pi * uniform();
    return cplx(rad * std::cos(th), rad * std::sin(th));
  }

 private:
  // splitmix64: tiny, seedable, stable across platforms.
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

}  // namespace numerics
}  // namespace rbfock

#endif  // RBFOCK_NUMERICS_HPP
