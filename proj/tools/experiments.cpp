#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nft::experiments {

DiscreteSpectrum two_soliton_reference() {
  return DiscreteSpectrum({{{0.0, 0.5}, 3.0, std::nullopt}, {{0.0, 1.0}, -6.0, std::nullopt}});
}

DiscreteSpectrum random_spectrum(std::mt19937_64& rng, const RandomSpectrumConfig& cfg) {
  if (cfg.min_count > cfg.max_count) throw InvalidInput("random spectrum: min_count > max_count");
  std::uniform_int_distribution<std::size_t> count(cfg.min_count, cfg.max_count);
  std::uniform_real_distribution<double> re(cfg.re_min, cfg.re_max), im(cfg.im_min, cfg.im_max),
      mag(cfg.qd_abs_min, cfg.qd_abs_max), phase(0.0, 2.0 * std::numbers::pi);

  const std::size_t K = count(rng);
  std::vector<DiscretePoint> pts;
  for (int attempts = 0; pts.size() < K; ++attempts) {
    if (attempts > 10000) throw InvalidInput("random spectrum: separation constraint unsatisfiable");
    const cplx lam{re(rng), im(rng)};
    // Separate statements: argument evaluation order is unspecified.
    const double r = mag(rng);
    const cplx qd = std::polar(r, phase(rng));
    const bool clash = std::any_of(pts.begin(), pts.end(), [&](const DiscretePoint& p) {
      return std::abs(p.lambda - lam) < cfg.min_separation;
    });
    if (!clash) pts.push_back({lam, qd, std::nullopt});
  }
  return DiscreteSpectrum(std::move(pts));
}

double RoundTripReport::max_lambda_error() const noexcept {
  double e = 0.0;
  for (const auto& m : matches) e = std::max(e, m.lambda_error);
  return e;
}

double RoundTripReport::max_qd_rel_error() const noexcept {
  double e = 0.0;
  for (const auto& m : matches) e = std::max(e, m.qd_rel_error);
  return e;
}

RoundTripReport round_trip(const DiscreteSpectrum& spectrum, const RoundTripConfig& config) {
  RoundTripReport rep;
  rep.grid = config.grid ? *config.grid
                         : fit_synthesis_grid(spectrum, config.n_steps, config.edge_level);
  const Synthesis syn = synthesize(spectrum, rep.grid);
  rep.tail_ratio = syn.tail_ratio;
  rep.prescribed.assign(spectrum.points().begin(), spectrum.points().end());

  // Count first: refinement only makes sense once every root is accounted for.
  EigenOptions plain = config.eigen;
  plain.richardson = false;
  DiscreteSpectrum found = discrete_spectrum(syn.pulse, config.region, config.kind, plain);
  if (config.eigen.richardson && found.size() == spectrum.size())
    found = richardson_refine(syn.pulse, found, config.kind, config.eigen, config.region.max_iter);
  for (const auto& p : found.points()) {
    // The detected pulse is q(t + t_shift); refer b and Q_d back to q.
    const cplx f = std::exp(-2.0 * kJ * p.lambda * syn.t_shift);
    rep.detected.push_back({p.lambda, p.qd * f, p.b ? std::optional<cplx>(*p.b * f) : std::nullopt});
  }
  if (!rep.count_ok()) return rep;

  std::vector<bool> used(rep.detected.size(), false);
  for (const auto& p : rep.prescribed) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rep.detected.size(); ++j) {
      const double d = std::abs(rep.detected[j].lambda - p.lambda);
      if (!used[j] && d < best_d) {
        best = j;
        best_d = d;
      }
    }
    used[best] = true;
    const auto& det = rep.detected[best];
    rep.matches.push_back({p, det, best_d, std::abs(det.qd - p.qd) / std::abs(p.qd)});
  }
  return rep;
}

std::vector<KernelComparisonRow> kernel_comparison(std::span<const std::size_t> n_steps,
                                                   std::span<const KernelKind> kinds,
                                                   const FbOptions& fb) {
  const DiscreteSpectrum ref = two_soliton_reference();
  const auto lambdas = ref.eigenvalues();
  std::vector<KernelComparisonRow> rows;
  for (std::size_t N : n_steps) {
    const SampledPulse pulse = synthesize(ref, {kReferenceHalfWidth, N}).pulse;
    for (KernelKind kind : kinds) {
      for (bool use_fb : {false, true}) {
        EigenOptions opts;
        opts.forward_backward = use_fb;
        opts.fb = fb;
        std::vector<ScatteringData> data;
        try {
          data = scatter_at_eigenvalues(pulse, lambdas, kind, opts);
        } catch (const NumericalError&) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          data.assign(lambdas.size(), ScatteringData{{nan, nan}, {nan, nan}, {nan, nan}, {}});
        }
        for (std::size_t i = 0; i < lambdas.size(); ++i)
          rows.push_back({N, kind, use_fb, lambdas[i], data[i].a, data[i].b / data[i].a_prime});
      }
    }
  }
  return rows;
}

FbOptions reference_table_fb_options() {
  FbOptions fb;
  fb.eigen_formula = EigenBFormula::Upper;
  fb.split_offset = -1;
  return fb;
}

double soliton_a_error(KernelKind kind, cplx lambda, double t0_half_width, std::size_t n_steps) {
  std::vector<cplx> q(n_steps + 1);
  const double h = 2.0 * t0_half_width / static_cast<double>(n_steps);
  for (std::size_t n = 0; n <= n_steps; ++n)
    q[n] = 1.0 / std::cosh(-t0_half_width + static_cast<double>(n) * h);
  const SampledPulse pulse(t0_half_width, std::move(q));
  const cplx eig{0.0, 0.5};
  const cplx exact = (lambda - eig) / (lambda - std::conj(eig));
  return std::abs(forward_scatter(pulse, lambda, kind).a - exact);
}

}  // namespace nft::experiments
