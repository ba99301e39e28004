// Command-line front end for the rbfock library.
//
//   rbfock verify     run the identity suites and emit a JSON (or CSV) report
//   rbfock kernel     evaluate kernels / Gram matrices over a points file
//   rbfock transform  apply the forward, inverse, or Fourier transform to a signal
//   rbfock basis      tabulate a basis function on the quadrature grid
//   rbfock mercer     emit a truncation-vs-error convergence sweep
//
// All data output is plot-ready CSV ('.' decimal, ',' separator, '#'-prefixed
// diagnostics); verify emits a JSON report with stable key order so identical
// configurations produce byte-identical documents.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rbfock/csvio.hpp"
#include "rbfock/hermite.hpp"
#include "rbfock/kernels.hpp"
#include "rbfock/numerics.hpp"
#include "rbfock/spaces.hpp"
#include "rbfock/transforms.hpp"
#include "rbfock/verify.hpp"

using nlohmann::ordered_json;
using rbfock::cplx;
namespace csvio = rbfock::csvio;
namespace kernels = rbfock::kernels;
namespace hermite = rbfock::hermite;

namespace {

std::string fmt(double v) { return csvio::detail::fmt(v); }

struct Options {
  std::vector<double> gammas;
  int trunc = 32;
  int quad = 64;
  int quad_c = 48;
  std::string convention = "bargmann";
  std::uint64_t seed = 2026;
  double tolerance = 0.0;
  std::string format;  // resolved per subcommand
  std::string out;

  // verify
  std::vector<std::string> suites;
  std::string config_path;

  // kernel
  std::string kind;
  std::string points_path;
  bool gram_mode = false;

  // transform
  std::string direction;
  std::string signal_path;

  // basis
  std::string family = "hermite";
  int index = 0;

  // mercer
  double box = 0.0;
};

// Option handles needed to honor "flags beat config file" for verify.
struct VerifyFlags {
  CLI::Option* gamma = nullptr;
  CLI::Option* trunc = nullptr;
  CLI::Option* quad = nullptr;
  CLI::Option* quad_c = nullptr;
  CLI::Option* convention = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* tolerance = nullptr;
  CLI::Option* suite = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* out = nullptr;
};

VerifyFlags add_common(CLI::App* sub, Options& o) {
  VerifyFlags f;
  f.gamma = sub->add_option("--gamma", o.gammas, "kernel width (repeatable; default 1)");
  f.trunc = sub->add_option("--trunc", o.trunc, "basis truncation")->check(CLI::PositiveNumber);
  f.quad = sub->add_option("--quad", o.quad, "real-line quadrature order")
               ->check(CLI::PositiveNumber);
  f.quad_c = sub->add_option("--quad-c", o.quad_c, "complex-plane quadrature order per axis")
                 ->check(CLI::PositiveNumber);
  f.convention = sub->add_option("--convention", o.convention, "kernel normalization")
                     ->check(CLI::IsMember({"bargmann", "paper"}));
  f.seed = sub->add_option("--seed", o.seed, "random seed");
  f.tolerance = sub->add_option("--tolerance", o.tolerance, "override every case tolerance");
  f.format = sub->add_option("--format", o.format, "output format")
                 ->check(CLI::IsMember({"json", "csv"}));
  f.out = sub->add_option("--out", o.out, "output file (default stdout)");
  return f;
}

kernels::Convention convention_of(const Options& o) {
  return o.convention == "paper" ? rbfock::kernels::Convention::PaperFormI
                                 : rbfock::kernels::Convention::BargmannNormalized;
}

double single_gamma(const Options& o) {
  if (o.gammas.empty()) return 1.0;
  if (o.gammas.size() > 1)
    throw std::runtime_error("this subcommand takes a single --gamma");
  return o.gammas.front();
}

std::string resolved_format(const Options& o, const char* fallback) {
  return o.format.empty() ? fallback : o.format;
}

void require_csv(const Options& o) {
  if (resolved_format(o, "csv") != "csv")
    throw std::runtime_error("json output is only available for the verify subcommand");
}

// Writes either to --out or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) {
      os_ = &std::cout;
    } else {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& os() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

std::ifstream open_input(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot open ") + what + " '" + path + "'");
  return in;
}

// --- verify ---------------------------------------------------------------

std::vector<double> as_double_list(const ordered_json& v, const std::string& key) {
  std::vector<double> out;
  if (v.is_array())
    for (const auto& e : v) out.push_back(e.get<double>());
  else if (v.is_number())
    out.push_back(v.get<double>());
  else
    throw std::runtime_error("config key '" + key + "' must be a number or array");
  return out;
}

std::vector<std::string> as_string_list(const ordered_json& v, const std::string& key) {
  std::vector<std::string> out;
  if (v.is_array())
    for (const auto& e : v) out.push_back(e.get<std::string>());
  else if (v.is_string())
    out.push_back(v.get<std::string>());
  else
    throw std::runtime_error("config key '" + key + "' must be a string or array");
  return out;
}

int run_verify_cmd(Options& o, const VerifyFlags& flags) {
  bool have_tolerance = flags.tolerance->count() > 0;

  if (!o.config_path.empty()) {
    std::ifstream in = open_input(o.config_path, "config file");
    ordered_json j;
    try {
      j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error(std::string("config file: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
    for (const auto& [key, val] : j.items()) {
      if (key == "gamma") {
        if (!flags.gamma->count()) o.gammas = as_double_list(val, key);
      } else if (key == "trunc") {
        if (!flags.trunc->count()) o.trunc = val.get<int>();
      } else if (key == "quad") {
        if (!flags.quad->count()) o.quad = val.get<int>();
      } else if (key == "quad_c") {
        if (!flags.quad_c->count()) o.quad_c = val.get<int>();
      } else if (key == "convention") {
        if (!flags.convention->count()) o.convention = val.get<std::string>();
      } else if (key == "seed") {
        if (!flags.seed->count()) o.seed = val.get<std::uint64_t>();
      } else if (key == "tolerance") {
        if (!flags.tolerance->count()) {
          o.tolerance = val.get<double>();
          have_tolerance = true;
        }
      } else if (key == "suite") {
        if (!flags.suite->count()) o.suites = as_string_list(val, key);
      } else if (key == "format") {
        if (!flags.format->count()) o.format = val.get<std::string>();
      } else if (key == "out") {
        if (!flags.out->count()) o.out = val.get<std::string>();
      } else {
        throw std::runtime_error("unknown config key '" + key + "'");
      }
    }
    if (o.convention != "bargmann" && o.convention != "paper")
      throw std::runtime_error("convention must be 'bargmann' or 'paper'");
  }

  for (const std::string& s : o.suites) {
    const auto& names = rbfock::verify::suite_names();
    bool known = false;
    for (const std::string& n : names) known = known || n == s;
    if (!known) throw std::runtime_error("unknown suite '" + s + "'");
  }

  rbfock::verify::VerifyConfig cfg;
  cfg.gammas = o.gammas;
  cfg.trunc = o.trunc;
  cfg.quad_r = o.quad;
  cfg.quad_c = o.quad_c;
  cfg.convention = convention_of(o);
  cfg.seed = o.seed;
  if (have_tolerance) cfg.tolerance = o.tolerance;
  cfg.suites = o.suites;

  const auto report = rbfock::verify::run_verify(cfg);
  const bool ok = rbfock::verify::all_pass(report);

  const std::string format = resolved_format(o, "json");
  Output out(o.out);
  if (format == "json") {
    out.os() << rbfock::verify::to_json(report).dump(2) << "\n";
  } else {
    out.os() << "suite,id,residual,tolerance,pass\n";
    for (const auto& s : report.suites)
      for (const auto& c : s.cases)
        out.os() << s.name << ',' << c.id << ',' << fmt(c.residual) << ',' << fmt(c.tolerance)
                 << ',' << (c.pass ? 1 : 0) << "\n";
  }
  return ok ? 0 : 1;
}

// --- kernel ---------------------------------------------------------------

int run_kernel_cmd(Options& o) {
  require_csv(o);
  const double gamma = single_gamma(o);
  const double alpha = 2.0 / (gamma * gamma);
  const auto conv = convention_of(o);
  std::ifstream in = open_input(o.points_path, "points file");
  Output out(o.out);

  if (o.gram_mode) {
    int trunc = 0;
    if (o.kind == "mercer")
      trunc = o.trunc;
    else if (o.kind != "rbf")
      throw std::runtime_error("--gram supports kinds 'rbf' and 'mercer'");
    const auto rows = csvio::read_rows(in, "re,im");
    std::vector<cplx> pts;
    pts.reserve(rows.size());
    for (const auto& r : rows) pts.emplace_back(r[0], r[1]);
    const auto g = rbfock::kernels::gram(gamma, pts, trunc);
    out.os() << "# min_eigenvalue=" << fmt(g.min_eigenvalue) << "\n";
    out.os() << "i,j,re,im\n";
    for (int i = 0; i < g.matrix.rows(); ++i)
      for (int j = 0; j < g.matrix.cols(); ++j)
        out.os() << i << ',' << j << ',' << fmt(g.matrix(i, j).real()) << ','
                 << fmt(g.matrix(i, j).imag()) << "\n";
    return 0;
  }

  if (o.kind == "rbf" || o.kind == "fock" || o.kind == "mercer") {
    const auto rows = csvio::read_rows(in, "z_re,z_im,w_re,w_im");
    out.os() << "z_re,z_im,w_re,w_im,re,im\n";
    for (const auto& r : rows) {
      const cplx z(r[0], r[1]), w(r[2], r[3]);
      cplx v;
      if (o.kind == "rbf")
        v = rbfock::kernels::rbf_kernel(gamma, z, w);
      else if (o.kind == "fock")
        v = rbfock::kernels::fock_kernel(alpha, z, w);
      else
        v = rbfock::kernels::mercer_partial(gamma, z, w, o.trunc);
      out.os() << fmt(r[0]) << ',' << fmt(r[1]) << ',' << fmt(r[2]) << ',' << fmt(r[3]) << ','
               << fmt(v.real()) << ',' << fmt(v.imag()) << "\n";
    }
    return 0;
  }

  // sb / rbf-sb take a point in the plane and a point on the line.
  const auto rows = csvio::read_rows(in, "z_re,z_im,x");
  out.os() << "z_re,z_im,x,re,im\n";
  for (const auto& r : rows) {
    const cplx z(r[0], r[1]);
    const cplx v = o.kind == "sb" ? rbfock::kernels::sb_kernel(alpha, z, r[2], conv)
                                  : rbfock::kernels::rbf_sb_kernel(gamma, z, r[2], conv);
    out.os() << fmt(r[0]) << ',' << fmt(r[1]) << ',' << fmt(r[2]) << ',' << fmt(v.real()) << ','
             << fmt(v.imag()) << "\n";
  }
  return 0;
}

// --- transform ------------------------------------------------------------

hermite::L2Sig expand_from_samples(const csvio::Signal& sig,
                                   const rbfock::transforms::TransformContext& ctx) {
  const auto& rule = ctx.rule_r;
  if (sig.values.size() != rule.size())
    throw std::runtime_error("expected " + std::to_string(rule.size()) +
                             " samples on the order-" + std::to_string(rule.size()) +
                             " quadrature grid, got " + std::to_string(sig.values.size()));
  for (std::size_t i = 0; i < rule.size(); ++i)
    if (std::abs(sig.x[i] - rule.nodes[i]) > 1e-9 * std::max(1.0, std::abs(rule.nodes[i])))
      throw std::runtime_error("sample abscissae do not match the quadrature grid (row " +
                               std::to_string(i + 1) + "); generate them with the basis "
                               "subcommand at the same --gamma/--quad");

  hermite::L2Sig s;
  s.alpha = ctx.alpha;
  s.coeffs.assign(static_cast<std::size_t>(ctx.N), cplx(0.0));
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto row = rbfock::hermite::hermite_fn_all(ctx.N - 1, ctx.alpha, rule.nodes[i]);
    for (int n = 0; n < ctx.N; ++n)
      s.coeffs[static_cast<std::size_t>(n)] +=
          rule.plain_weights[i] * sig.values[i] * row[static_cast<std::size_t>(n)];
  }
  return s;
}

int run_transform_cmd(Options& o) {
  require_csv(o);
  const double gamma = single_gamma(o);
  const auto ctx =
      rbfock::transforms::make_context(gamma, convention_of(o), o.trunc, o.quad, o.quad_c);
  std::ifstream in = open_input(o.signal_path, "signal file");
  const csvio::Signal sig = csvio::read_signal(in);
  Output out(o.out);

  const std::string meta =
      "gamma=" + fmt(gamma) + " trunc=" + std::to_string(o.trunc) + " convention=" + o.convention;

  if (o.direction == "forward") {
    hermite::L2Sig s;
    if (sig.kind == csvio::SignalKind::Samples) {
      s = expand_from_samples(sig, ctx);
    } else {
      s.alpha = ctx.alpha;
      s.coeffs = sig.values;
    }
    const auto f = rbfock::transforms::rbf_bargmann(s, ctx);
    csvio::Signal res;
    res.kind = csvio::SignalKind::Coeffs;
    res.values = f.coeffs;
    csvio::write_signal(out.os(), res,
                        {"direction=forward " + meta,
                         "tail_fraction=" + fmt(rbfock::hermite::tail_mass(f.coeffs))});
    return 0;
  }

  if (sig.kind != csvio::SignalKind::Coeffs)
    throw std::runtime_error("direction '" + o.direction +
                             "' expects coefficient input (header n,re,im)");
  rbfock::spaces::HoloFun f;
  f.gamma = gamma;
  f.basis = rbfock::spaces::Basis::RbfOnb;
  f.coeffs = sig.values;

  if (o.direction == "inverse") {
    const auto s =
        rbfock::transforms::rbf_bargmann_inverse(f, ctx, rbfock::transforms::InverseRoute::Quadrature);
    csvio::Signal res;
    res.kind = csvio::SignalKind::Samples;
    for (std::size_t i = 0; i < ctx.rule_r.size(); ++i) {
      res.x.push_back(ctx.rule_r.nodes[i]);
      res.values.push_back(rbfock::hermite::eval(s, ctx.rule_r.nodes[i]));
    }
    csvio::write_signal(out.os(), res, {"direction=inverse " + meta});
    return 0;
  }

  // fourier: diagonal action on the orthonormal coefficients.
  const auto img = rbfock::transforms::fourier_rbf(f);
  csvio::Signal res;
  res.kind = csvio::SignalKind::Coeffs;
  res.values = img.coeffs;
  csvio::write_signal(out.os(), res,
                      {"direction=fourier " + meta,
                       "tail_fraction=" + fmt(rbfock::hermite::tail_mass(img.coeffs))});
  return 0;
}

// --- basis ----------------------------------------------------------------

int run_basis_cmd(Options& o) {
  require_csv(o);
  const double gamma = single_gamma(o);
  const auto ctx =
      rbfock::transforms::make_context(gamma, convention_of(o), o.trunc, o.quad, o.quad_c);
  if (o.index < 0) throw std::runtime_error("--index must be >= 0");

  rbfock::spaces::HoloFun f;
  f.gamma = gamma;
  f.basis = o.family == "fock" ? rbfock::spaces::Basis::FockOnb : rbfock::spaces::Basis::RbfOnb;
  f.coeffs.assign(static_cast<std::size_t>(o.index) + 1, cplx(0.0));
  f.coeffs.back() = 1.0;

  csvio::Signal res;
  res.kind = csvio::SignalKind::Samples;
  for (std::size_t i = 0; i < ctx.rule_r.size(); ++i) {
    const double x = ctx.rule_r.nodes[i];
    cplx v;
    if (o.family == "hermite")
      v = rbfock::hermite::hermite_fn(o.index, ctx.alpha, x);
    else
      v = rbfock::spaces::eval(f, cplx(x, 0.0));
    res.x.push_back(x);
    res.values.push_back(v);
  }
  Output out(o.out);
  csvio::write_signal(out.os(), res,
                      {"family=" + o.family + " index=" + std::to_string(o.index) +
                       " gamma=" + fmt(gamma) + " quad=" + std::to_string(o.quad)});
  return 0;
}

// --- mercer ---------------------------------------------------------------

int run_mercer_cmd(Options& o) {
  require_csv(o);
  Output out(o.out);
  rbfock::numerics::Rng rng(o.seed);
  out.os() << "gamma,terms,max_error\n";
  const std::vector<double> gammas = o.gammas.empty() ? std::vector<double>{1.0} : o.gammas;
  for (const double gamma : gammas) {
    const double box = o.box > 0.0 ? o.box : (gamma < 0.75 ? 0.9 : 1.5);
    std::vector<std::pair<cplx, cplx>> pairs(50);
    for (auto& p : pairs)
      p = {cplx(rng.uniform(-box, box), rng.uniform(-box, box)),
           cplx(rng.uniform(-box, box), rng.uniform(-box, box))};
    for (int n = 1; n <= o.trunc; ++n) {
      double worst = 0.0;
      for (const auto& [z, w] : pairs)
        worst = std::max(worst, std::abs(rbfock::kernels::mercer_partial(gamma, z, w, n) -
                                         rbfock::kernels::rbf_kernel(gamma, z, w)));
      out.os() << fmt(gamma) << ',' << n << ',' << fmt(worst) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holomorphic calculus for the Gaussian kernel: verification suites, "
               "kernel evaluation, transforms, and basis tabulation"};
  app.require_subcommand(1);
  Options o;

  CLI::App* verify = app.add_subcommand("verify", "run the identity suites, emit a report");
  VerifyFlags vflags = add_common(verify, o);
  vflags.suite = verify->add_option("--suite", o.suites, "restrict to named suites (repeatable)");
  verify->add_option("--config", o.config_path, "JSON config file (flags take precedence)");

  CLI::App* kernel = app.add_subcommand("kernel", "evaluate a kernel over a points file");
  add_common(kernel, o);
  kernel->add_option("--kind", o.kind, "kernel family")
      ->required()
      ->check(CLI::IsMember({"rbf", "fock", "sb", "rbf-sb", "mercer"}));
  kernel->add_option("--points", o.points_path, "input CSV of evaluation points")->required();
  kernel->add_flag("--gram", o.gram_mode,
                   "Gram-matrix mode: read 're,im' points, emit the matrix and its smallest "
                   "eigenvalue");

  CLI::App* transform = app.add_subcommand("transform", "apply a transform to a signal file");
  add_common(transform, o);
  transform->add_option("--direction", o.direction, "which transform to apply")
      ->required()
      ->check(CLI::IsMember({"forward", "inverse", "fourier"}));
  transform->add_option("--signal", o.signal_path, "input CSV ('x,re,im' samples or 'n,re,im' "
                        "coefficients)")
      ->required();

  CLI::App* basis = app.add_subcommand("basis", "tabulate a basis function on the grid");
  add_common(basis, o);
  basis->add_option("--family", o.family, "basis family")
      ->check(CLI::IsMember({"hermite", "rbf", "fock"}));
  basis->add_option("--index", o.index, "basis index n");

  CLI::App* mercer = app.add_subcommand("mercer", "kernel-vs-partial-sum convergence sweep");
  add_common(mercer, o);
  mercer->add_option("--box", o.box, "half-width of the sampling square (default width-based)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify_cmd(o, vflags);
    if (kernel->parsed()) return run_kernel_cmd(o);
    if (transform->parsed()) return run_transform_cmd(o);
    if (basis->parsed()) return run_basis_cmd(o);
    return run_mercer_cmd(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
