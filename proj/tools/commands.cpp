#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "experiments.hpp"
#include "nft/io.hpp"
#include "nft/parallel.hpp"

namespace nft::cli {

namespace {

using json = nlohmann::ordered_json;

struct ScatterFlags {
  std::string kernel = "trapezoid";
  bool fb = true;
  std::string split = "fixed";
  double c = 0.5;
  long split_index = -1;
  long split_offset = 0;
  std::string b_formula = "lower";
};

struct RegionFlags {
  std::string region = "-2:2:0.05:2.5";
  std::string seed_grid = "8:8";
  double newton_tol = 1e-12;
  int max_iter = 50;
  double dedupe = 1e-6;
};

std::vector<double> split_numbers(const std::string& text, char sep, std::size_t expected,
                                  const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidInput(std::string("cannot parse ") + what + " '" + text + "'");
    out.push_back(x);
  }
  if (expected != 0 && out.size() != expected)
    throw InvalidInput(std::string("cannot parse ") + what + " '" + text + "'");
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (double x : split_numbers(text, ',', 0, "N list")) {
    if (!(x >= 2.0) || x != std::floor(x)) throw InvalidInput("N list entries must be integers >= 2");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

cplx parse_complex(const std::string& text) {
  const auto v = split_numbers(text, ':', 2, "complex value re:im");
  return {v[0], v[1]};
}

std::vector<double> parse_lambda_grid(const std::string& text) {
  const auto v = split_numbers(text, ':', 3, "lambda grid min:max:count");
  if (!(v[2] >= 1.0) || v[2] != std::floor(v[2]) || !(v[0] <= v[1]))
    throw InvalidInput("lambda grid needs min <= max and an integer count >= 1");
  const auto count = static_cast<std::size_t>(v[2]);
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k)
    grid[k] = count == 1 ? v[0] : v[0] + (v[1] - v[0]) * static_cast<double>(k) / static_cast<double>(count - 1);
  return grid;
}

KernelKind kernel_of(const ScatterFlags& f) { return parse_kernel(f.kernel); }

EigenOptions eigen_options(const ScatterFlags& f) {
  EigenOptions o;
  o.forward_backward = f.fb;
  o.fb.split = parse_split_policy(f.split);
  o.fb.c = f.c;
  if (!(f.c > 0.0 && f.c < 1.0)) throw InvalidInput("--c must lie in (0, 1)");
  if (f.split_index >= 0) o.fb.split_index = static_cast<std::size_t>(f.split_index);
  o.fb.split_offset = f.split_offset;
  o.fb.eigen_formula = parse_eigen_formula(f.b_formula);
  return o;
}

SearchRegion search_region(const RegionFlags& f) {
  const auto r = split_numbers(f.region, ':', 4, "region re0:re1:im0:im1");
  const auto g = split_numbers(f.seed_grid, ':', 2, "seed grid n_re:n_im");
  if (!(g[0] >= 1.0 && g[1] >= 1.0)) throw InvalidInput("seed grid needs positive counts");
  SearchRegion region;
  region.re_min = r[0];
  region.re_max = r[1];
  region.im_min = r[2];
  region.im_max = r[3];
  region.n_re = static_cast<std::size_t>(g[0]);
  region.n_im = static_cast<std::size_t>(g[1]);
  region.newton_tol = f.newton_tol;
  region.max_iter = f.max_iter;
  region.dedupe_radius = f.dedupe;
  region.validate();
  return region;
}

json scatter_metadata(const ScatterFlags& f, const EigenOptions& o) {
  json m;
  m["kernel"] = std::string(to_string(parse_kernel(f.kernel)));
  m["forward_backward"] = f.fb;
  if (f.fb) {
    m["split"] = f.split;
    m["c"] = f.c;
    if (o.fb.split_index) m["split_index"] = *o.fb.split_index;
    m["split_offset"] = f.split_offset;
    m["b_formula"] = f.b_formula;
  }
  return m;
}

json region_metadata(const SearchRegion& r) {
  return json{{"re", {r.re_min, r.re_max}},
              {"im", {r.im_min, r.im_max}},
              {"seed_grid", {r.n_re, r.n_im}},
              {"newton_tol", r.newton_tol},
              {"max_iter", r.max_iter},
              {"dedupe_radius", r.dedupe_radius}};
}

void with_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& fn) {
  if (path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot write '" + path + "'");
  fn(file);
}

std::string fmt(double x) { return format_double(x); }

std::string fmt_lambda(cplx z) {
  if (z.real() == 0.0) return fmt(z.imag()) + "j";
  return fmt(z.real()) + (z.imag() < 0.0 ? "-" : "+") + fmt(std::abs(z.imag())) + "j";
}

// ---------------------------------------------------------------------------

struct NftArgs {
  std::string in, out = "-";
  std::string lambda_grid;
  std::vector<std::string> at;
  bool count_check = false;
  bool richardson = false;
};

int cmd_nft(const NftArgs& a, const ScatterFlags& sf, const RegionFlags& rf, std::ostream& out,
            std::ostream& err) {
  const PulseFile file = read_pulse_csv(std::filesystem::path(a.in));
  const SampledPulse& pulse = file.pulse;
  const KernelKind kind = kernel_of(sf);
  EigenOptions opts = eigen_options(sf);
  opts.richardson = a.richardson;
  const SearchRegion region = search_region(rf);
  if (a.richardson && !a.at.empty()) throw InvalidInput("--richardson applies to the eigenvalue search, not --at");

  std::vector<cplx> lambdas;
  std::optional<DiscreteSpectrum> refined;
  if (!a.at.empty()) {
    for (const auto& s : a.at) lambdas.push_back(parse_complex(s));
  } else if (a.richardson) {
    refined = discrete_spectrum(pulse, region, kind, opts);
    lambdas = refined->eigenvalues();
  } else {
    lambdas = find_eigenvalues(pulse, region, kind, opts);
  }
  const auto data = scatter_at_eigenvalues(pulse, lambdas, kind, opts);

  // The file holds q(t) = pulse(t - t_shift).
  const auto shift = [&](cplx lam) { return std::exp(-2.0 * kJ * lam * file.t_shift); };
  std::vector<DiscretePoint> pts;
  json a_values = json::array();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (std::abs(data[i].a_prime) < 1e-8)
      throw NumericalError("near-degenerate eigenvalue; Q_d ill-conditioned");
    const cplx f = shift(lambdas[i]);
    if (refined)
      pts.push_back({lambdas[i], (*refined)[i].qd * f, *(*refined)[i].b * f});
    else
      pts.push_back({lambdas[i], data[i].b / data[i].a_prime * f, data[i].b * f});
    a_values.push_back(json{{"re", data[i].a.real()}, {"im", data[i].a.imag()}});
  }
  NonlinearSpectrum spec{DiscreteSpectrum(std::move(pts)), std::nullopt};

  if (!a.lambda_grid.empty()) {
    const auto grid = parse_lambda_grid(a.lambda_grid);
    std::vector<cplx> qc;
    if (opts.forward_backward) {
      const ContinuousSpectrum cs = fb_continuous_spectrum(pulse, grid, kind, opts.fb);
      qc.assign(cs.qc().begin(), cs.qc().end());
    } else {
      qc = detail::parallel_map(grid.size(), [&](std::size_t k) -> cplx {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        try {
          const ScatteringData d = forward_scatter(pulse, grid[k], kind);
          return std::abs(d.a) > 1e-14 ? d.b / d.a : cplx{nan, nan};
        } catch (const NumericalError&) {
          return {nan, nan};
        }
      });
    }
    for (std::size_t k = 0; k < grid.size(); ++k) qc[k] *= shift(grid[k]);
    spec.continuous = ContinuousSpectrum(grid, std::move(qc));
  }

  json meta = scatter_metadata(sf, opts);
  meta["N"] = pulse.n_steps();
  meta["T0"] = pulse.t0_half_width();
  meta["t_shift"] = file.t_shift;
  if (a.at.empty()) meta["region"] = region_metadata(region);
  if (a.richardson) meta["richardson"] = true;
  meta["a"] = std::move(a_values);

  if (a.count_check) {
    const auto count = count_eigenvalues(pulse, region, kind);
    if (!count)
      err << "warning: argument-principle count failed (a vanishes on the region boundary)\n";
    else if (*count != static_cast<int>(lambdas.size()))
      err << "warning: argument principle counts " << *count << " eigenvalues, Newton found "
          << lambdas.size() << '\n';
    if (count) meta["argument_principle_count"] = *count;
  }

  with_output(a.out, out, [&](std::ostream& os) { write_spectrum_json(os, spec, meta); });
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct InftArgs {
  std::string in, out = "-";
  double t0 = 0.0;
  long n = 0;
  double centre = 0.0;
  double fit_edge = 0.0;
  std::string algorithm = "ratio";
  double tail_threshold = 1e-6;
};

int cmd_inft(const InftArgs& a, std::ostream& out, std::ostream& err) {
  const NonlinearSpectrum spec = read_spectrum_json(std::filesystem::path(a.in));
  if (spec.continuous) err << "note: continuous spectrum ignored; synthesis uses the discrete part only\n";

  SynthesisGrid grid = default_synthesis_grid(spec.discrete);
  if (a.n > 0) grid.n_steps = static_cast<std::size_t>(a.n);
  if (a.fit_edge > 0.0) grid = fit_synthesis_grid(spec.discrete, grid.n_steps, a.fit_edge);
  if (a.t0 > 0.0) grid.t0_half_width = a.t0;
  if (a.centre != 0.0) grid.centre = a.centre;

  SynthesisOptions opts;
  if (a.algorithm == "vector")
    opts.algorithm = DarbouxAlgorithm::VectorUpdate;
  else if (a.algorithm != "ratio")
    throw InvalidInput("unknown synthesis algorithm '" + a.algorithm + "'");
  opts.tail_threshold = a.tail_threshold;

  const Synthesis syn = synthesize(spec.discrete, grid, opts);
  if (syn.tail_warning)
    err << "warning: pulse tail |q(+-T0)| / max|q| = " << syn.tail_ratio << " exceeds "
        << a.tail_threshold << "; widen the window (--T0)\n";
  with_output(a.out, out, [&](std::ostream& os) { write_pulse_csv(os, syn.pulse, syn.t_shift); });
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct RoundTripArgs {
  std::string in;
  long random = 0;
  std::uint64_t seed = 0;
  long n = 4096;
  double t0 = 0.0;
  double edge_level = 1e-4;
  double lambda_tol = 1e-4;
  double qd_tol = 0.01;
  bool richardson = true;
};

int cmd_roundtrip(const RoundTripArgs& a, const ScatterFlags& sf, const RegionFlags& rf,
                  std::ostream& out) {
  DiscreteSpectrum spectrum;
  if (!a.in.empty()) {
    spectrum = read_spectrum_json(std::filesystem::path(a.in)).discrete;
  } else if (a.random > 0) {
    std::mt19937_64 rng(a.seed);
    experiments::RandomSpectrumConfig cfg;
    cfg.min_count = cfg.max_count = static_cast<std::size_t>(a.random);
    spectrum = experiments::random_spectrum(rng, cfg);
  } else {
    throw InvalidInput("roundtrip needs --in or --random");
  }
  if (a.n < 2) throw InvalidInput("--N must be at least 2");

  experiments::RoundTripConfig cfg;
  cfg.n_steps = static_cast<std::size_t>(a.n);
  if (a.t0 > 0.0) cfg.grid = SynthesisGrid{a.t0, cfg.n_steps, 0.0};
  cfg.edge_level = a.edge_level;
  cfg.kind = kernel_of(sf);
  cfg.eigen = eigen_options(sf);
  cfg.eigen.richardson = a.richardson;
  cfg.region = search_region(rf);

  const auto rep = experiments::round_trip(spectrum, cfg);
  out << "window: T0=" << fmt(rep.grid.t0_half_width) << " centre=" << fmt(rep.grid.centre)
      << " N=" << rep.grid.n_steps << " tail=" << fmt(rep.tail_ratio) << '\n';
  if (!rep.count_ok()) {
    out << "eigenvalue count mismatch: prescribed " << rep.prescribed.size() << ", detected "
        << rep.detected.size() << '\n';
    for (const auto& p : rep.prescribed) out << "  prescribed " << fmt_lambda(p.lambda) << '\n';
    for (const auto& p : rep.detected) out << "  detected   " << fmt_lambda(p.lambda) << '\n';
    return kExitWrongCount;
  }
  bool ok = true;
  for (const auto& m : rep.matches) {
    const bool pass = m.lambda_error <= a.lambda_tol && m.qd_rel_error <= a.qd_tol;
    ok = ok && pass;
    out << (pass ? "PASS" : "FAIL") << " lambda=" << fmt_lambda(m.prescribed.lambda)
        << " detected=" << fmt_lambda(m.detected.lambda) << " |dlambda|=" << fmt(m.lambda_error)
        << " qd=" << fmt_lambda(m.prescribed.qd) << " detected_qd=" << fmt_lambda(m.detected.qd)
        << " rel_err=" << fmt(m.qd_rel_error) << '\n';
  }
  out << (ok ? "roundtrip passed" : "roundtrip failed") << " (" << rep.matches.size()
      << " eigenvalues, lambda_tol=" << fmt(a.lambda_tol) << ", qd_tol=" << fmt(a.qd_tol) << ")\n";
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------

struct ConvergenceArgs {
  std::string demo = "table1";
  std::string ns;
  std::vector<std::string> kernels;
  bool reference_fb = false;
  double T = 1.0;
  double t0 = 15.0;
  std::string lambda = "0:0.3";
  std::string out = "-";
};

int cmd_convergence(const ConvergenceArgs& a, const ScatterFlags& sf, std::ostream& out) {
  std::vector<KernelKind> kinds;
  for (const auto& k : a.kernels) kinds.push_back(parse_kernel(k));
  if (kinds.empty())
    kinds = {KernelKind::Trapezoid, KernelKind::Euler, KernelKind::CrankNicolson,
             KernelKind::AblowitzLadik};

  std::ostringstream csv;
  csv << "N,kernel,quantity,value,error\n";
  const auto row = [&](std::size_t N, const std::string& kernel, const std::string& quantity,
                       double value, double error) {
    csv << N << ',' << kernel << ',' << quantity << ',' << fmt(value) << ',' << fmt(error) << '\n';
  };

  if (a.demo == "table1") {
    const auto ns = parse_sizes(a.ns.empty() ? "32,64,1024" : a.ns);
    const FbOptions fb = a.reference_fb ? experiments::reference_table_fb_options()
                                        : eigen_options(sf).fb;
    const auto ref = experiments::two_soliton_reference();
    for (const auto& r : experiments::kernel_comparison(ns, kinds, fb)) {
      const std::string label = std::string(to_string(r.kind)) + (r.forward_backward ? "+fb" : "");
      cplx exact_qd{};
      for (const auto& p : ref.points())
        if (p.lambda == r.lambda) exact_qd = p.qd;
      row(r.n_steps, label, "a@" + fmt_lambda(r.lambda), r.a.real(), std::abs(r.a));
      row(r.n_steps, label, "qd@" + fmt_lambda(r.lambda), r.qd.real(), std::abs(r.qd - exact_qd));
    }
  } else if (a.demo == "soliton") {
    const auto ns = parse_sizes(a.ns.empty() ? "128,256,512,1024,2048,4096" : a.ns);
    const cplx lam = parse_complex(a.lambda);
    const cplx eig{0.0, 0.5};
    const cplx exact = (lam - eig) / (lam - std::conj(eig));
    for (std::size_t N : ns)
      for (KernelKind k : kinds) {
        const double e = experiments::soliton_a_error(k, lam, a.t0, N);
        row(N, std::string(to_string(k)), "a@" + fmt_lambda(lam), exact.real(), e);
      }
  } else if (a.demo == "scalar-t" || a.demo == "scalar-sech" || a.demo == "scalar-zero") {
    const auto ns = parse_sizes(a.ns.empty() ? "4,8,16,32,64,128,256,512,1024" : a.ns);
    std::function<double(double)> f;
    std::optional<double> integral;
    if (a.demo == "scalar-t") {
      f = [](double t) { return t; };
      integral = 0.5 * a.T * a.T;
    } else if (a.demo == "scalar-sech") {
      f = [](double t) { return 1.0 / std::cosh(t); };
      integral = 2.0 * std::atan(std::tanh(0.5 * a.T));
    } else {
      f = [](double) { return 0.0; };
      integral = 0.0;
    }
    for (std::size_t N : ns) {
      const auto r = scalar_trapezoid_demo(f, a.T, N, integral);
      row(N, "trapezoid", "x_T", r.x_trapezoid, r.trapezoid);
      row(N, "euler", "x_T", r.x_euler, r.euler);
      row(N, "cn", "x_T", r.x_crank_nicolson, r.crank_nicolson);
    }
  } else {
    throw InvalidInput("unknown convergence demo '" + a.demo + "'");
  }
  with_output(a.out, out, [&](std::ostream& os) { os << csv.str(); });
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvolveArgs {
  std::string in, out = "-";
  double z = 0.0;
};

int cmd_evolve(const EvolveArgs& a, std::ostream& out) {
  const NonlinearSpectrum spec = read_spectrum_json(std::filesystem::path(a.in));
  const NonlinearSpectrum evolved = evolve_spectrum(spec, a.z);
  with_output(a.out, out, [&](std::ostream& os) {
    write_spectrum_json(os, evolved, json{{"z", a.z}});
  });
  return kExitOk;
}

void add_scatter_flags(CLI::App* app, ScatterFlags& f) {
  app->add_option("--kernel", f.kernel, "trapezoid | euler | cn | al")->capture_default_str();
  app->add_flag("--fb,!--no-fb", f.fb, "forward-backward splitting (default on)");
  app->add_option("--split", f.split, "split policy: fixed | argmin")->capture_default_str();
  app->add_option("--c", f.c, "split fraction for the fixed policy")->capture_default_str();
  app->add_option("--split-index", f.split_index, "explicit split index m (0 < m < N)");
  app->add_option("--split-offset", f.split_offset, "shift added to the policy's split index");
  app->add_option("--b-formula", f.b_formula, "b at eigenvalues: lower (w2/v2) | upper (w1/v1)")
      ->capture_default_str();
}

void add_region_flags(CLI::App* app, RegionFlags& f) {
  app->add_option("--region", f.region, "eigenvalue search box re0:re1:im0:im1")->capture_default_str();
  app->add_option("--seed-grid", f.seed_grid, "Newton seeds n_re:n_im")->capture_default_str();
  app->add_option("--newton-tol", f.newton_tol, "accept roots with |a| <= tol * N")->capture_default_str();
  app->add_option("--max-iter", f.max_iter, "Newton iterations per seed")->capture_default_str();
  app->add_option("--dedupe", f.dedupe, "radius for merging roots")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlinear Fourier transform toolkit (focusing NLS)", "nft-toolkit"};
  app.require_subcommand(1, 1);

  ScatterFlags sf;
  RegionFlags rf;

  NftArgs nft_args;
  auto* nft_cmd = app.add_subcommand("nft", "pulse CSV -> spectrum JSON");
  nft_cmd->add_option("--in", nft_args.in, "pulse CSV")->required();
  nft_cmd->add_option("--out", nft_args.out, "spectrum JSON ('-' for stdout)");
  nft_cmd->add_option("--lambda-grid", nft_args.lambda_grid, "continuous spectrum grid min:max:count");
  nft_cmd->add_option("--at", nft_args.at, "evaluate at re:im instead of searching (repeatable)");
  nft_cmd->add_flag("--count-check", nft_args.count_check, "cross-check the root count by the argument principle");
  nft_cmd->add_flag("--richardson", nft_args.richardson,
                    "extrapolate eigenvalues and Q_d from the N and N/2 grids (trapezoid, even N)");
  add_scatter_flags(nft_cmd, sf);
  add_region_flags(nft_cmd, rf);

  InftArgs inft_args;
  auto* inft_cmd = app.add_subcommand("inft", "spectrum JSON -> pulse CSV");
  inft_cmd->add_option("--in", inft_args.in, "spectrum JSON")->required();
  inft_cmd->add_option("--out", inft_args.out, "pulse CSV ('-' for stdout)");
  inft_cmd->add_option("--T0", inft_args.t0, "window half-width");
  inft_cmd->add_option("--N", inft_args.n, "number of steps (N + 1 samples)");
  inft_cmd->add_option("--centre", inft_args.centre, "window centre");
  inft_cmd->add_option("--fit-window", inft_args.fit_edge, "fit the window to |q| >= level * max|q|");
  inft_cmd->add_option("--algorithm", inft_args.algorithm, "ratio | vector")->capture_default_str();
  inft_cmd->add_option("--tail-threshold", inft_args.tail_threshold, "relative tail warning level")
      ->capture_default_str();

  RoundTripArgs rt_args;
  auto* rt_cmd = app.add_subcommand("roundtrip", "synthesize, re-detect and compare");
  rt_cmd->add_option("--in", rt_args.in, "spectrum JSON");
  rt_cmd->add_option("--random", rt_args.random, "random spectrum with K eigenvalues");
  rt_cmd->add_option("--seed", rt_args.seed, "random seed")->capture_default_str();
  rt_cmd->add_option("--N", rt_args.n, "synthesis steps")->capture_default_str();
  rt_cmd->add_option("--T0", rt_args.t0, "fixed window half-width (default: fitted window)");
  rt_cmd->add_option("--edge-level", rt_args.edge_level, "fitted window edge |q| / max|q|")
      ->capture_default_str();
  rt_cmd->add_option("--lambda-tol", rt_args.lambda_tol, "eigenvalue tolerance")->capture_default_str();
  rt_cmd->add_option("--qd-tol", rt_args.qd_tol, "relative Q_d tolerance")->capture_default_str();
  rt_cmd->add_flag("--richardson,!--no-richardson", rt_args.richardson,
                   "extrapolated detection from the N and N/2 grids (default on)");
  add_scatter_flags(rt_cmd, sf);
  add_region_flags(rt_cmd, rf);

  ConvergenceArgs conv_args;
  auto* conv_cmd = app.add_subcommand("convergence", "error-vs-N tables as CSV");
  conv_cmd->add_option("--demo", conv_args.demo, "table1 | soliton | scalar-t | scalar-sech | scalar-zero")
      ->capture_default_str();
  conv_cmd->add_option("--Ns", conv_args.ns, "comma-separated N values");
  conv_cmd->add_option("--kernels", conv_args.kernels, "kernels to run (default: all)");
  conv_cmd->add_flag("--reference-fb", conv_args.reference_fb,
                     "upper b formula with split N/2 - 1 (reproduces the reference two-soliton FB values)");
  conv_cmd->add_option("--T", conv_args.T, "scalar demo interval [0, T]")->capture_default_str();
  conv_cmd->add_option("--T0", conv_args.t0, "soliton demo half-width")->capture_default_str();
  conv_cmd->add_option("--lambda", conv_args.lambda, "soliton demo lambda re:im")->capture_default_str();
  conv_cmd->add_option("--out", conv_args.out, "CSV ('-' for stdout)");
  add_scatter_flags(conv_cmd, sf);

  EvolveArgs ev_args;
  auto* ev_cmd = app.add_subcommand("evolve", "propagate a spectrum over distance z");
  ev_cmd->add_option("--in", ev_args.in, "spectrum JSON")->required();
  ev_cmd->add_option("--z", ev_args.z, "distance (negative propagates backward)")->required();
  ev_cmd->add_option("--out", ev_args.out, "spectrum JSON ('-' for stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*nft_cmd) return cmd_nft(nft_args, sf, rf, out, err);
    if (*inft_cmd) return cmd_inft(inft_args, out, err);
    if (*rt_cmd) return cmd_roundtrip(rt_args, sf, rf, out);
    if (*conv_cmd) return cmd_convergence(conv_args, sf, out);
    if (*ev_cmd) return cmd_evolve(ev_args, out);
  } catch (const DuplicateEigenvalue& e) {
    err << "error: " << e.what() << '\n';
    return kExitDuplicate;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitBadInput;
}

}  // namespace nft::cli
