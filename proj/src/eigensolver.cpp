#include "nft/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nft/parallel.hpp"

namespace nft {

namespace {

constexpr int kMaxSweeps = 4;

struct AValue {
  cplx a;
  cplx a_prime;
};

AValue eval_a(const SampledPulse& pulse, cplx lambda, KernelKind kind, const EigenOptions& opts) {
  if (opts.forward_backward) {
    const SplitScatter s = split_scatter(pulse, lambda, kind, split_index(pulse, lambda, opts.fb));
    return {s.a(), s.a_prime()};
  }
  const ScatteringData d = forward_scatter(pulse, lambda, kind);
  return {d.a, d.a_prime};
}

bool inside(const SearchRegion& r, cplx z) {
  return z.real() >= r.re_min && z.real() <= r.re_max && z.imag() >= r.im_min &&
         z.imag() <= r.im_max;
}

// Newton on d(lam) = a(lam) prod_k (lam - r_k*) / (lam - r_k). The factors
// remove known zeros together with the matching pole a soliton places at
// r_k*, so seeds stop falling into basins that were already explored.
// Accepted roots are polished on a itself until the step stalls.
std::optional<cplx> newton(const SampledPulse& pulse, cplx seed, const SearchRegion& region,
                           KernelKind kind, const EigenOptions& opts,
                           std::span<const cplx> deflate) {
  const double accept = region.newton_tol * static_cast<double>(pulse.n_steps());
  // Iterates may wander a little outside the region before settling.
  const double re_pad = 0.5 * (region.re_max - region.re_min);
  const double im_pad = 0.5 * (region.im_max - region.im_min);
  const auto escaped = [&](cplx z) {
    return !std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
           z.real() < region.re_min - re_pad || z.real() > region.re_max + re_pad ||
           z.imag() < -im_pad || z.imag() > region.im_max + im_pad;
  };
  cplx lam = seed;
  try {
    bool converged = false;
    int it = 0;
    for (; it < region.max_iter; ++it) {
      const AValue v = eval_a(pulse, lam, kind, opts);
      if (std::abs(v.a) <= accept) {
        converged = true;
        break;
      }
      cplx log_deriv = v.a_prime / v.a;
      for (cplx r : deflate) log_deriv += 1.0 / (lam - std::conj(r)) - 1.0 / (lam - r);
      if (log_deriv == cplx{}) return std::nullopt;
      lam -= 1.0 / log_deriv;
      if (escaped(lam)) return std::nullopt;
    }
    if (!converged) return std::nullopt;
    for (int polish = 0; polish < 5 && it < region.max_iter; ++polish, ++it) {
      const AValue v = eval_a(pulse, lam, kind, opts);
      if (v.a == cplx{} || v.a_prime == cplx{}) break;
      const cplx step = v.a / v.a_prime;
      lam -= step;
      if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(lam))) break;
    }
    if (escaped(lam) || std::abs(eval_a(pulse, lam, kind, opts).a) > accept) return std::nullopt;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
  if (!inside(region, lam)) return std::nullopt;
  return lam;
}

}  // namespace

void SearchRegion::validate() const {
  if (!(re_min < re_max)) throw InvalidInput("search region needs re_min < re_max");
  if (!(im_min > 0.0 && im_min < im_max))
    throw InvalidInput("search region needs 0 < im_min < im_max");
  if (n_re < 1 || n_im < 1) throw InvalidInput("search region needs at least one seed per axis");
  if (!(newton_tol > 0.0) || max_iter < 1 || !(dedupe_radius >= 0.0))
    throw InvalidInput("invalid Newton settings");
}

std::vector<cplx> find_eigenvalues(const SampledPulse& pulse, const SearchRegion& region,
                                   KernelKind kind, const EigenOptions& options) {
  region.validate();
  if (pulse.max_abs() == 0.0) return {};

  // Seeds at cell centres of an n_re x n_im grid.
  std::vector<cplx> seeds;
  for (std::size_t i = 0; i < region.n_im; ++i)
    for (std::size_t k = 0; k < region.n_re; ++k) {
      const double fr = (static_cast<double>(k) + 0.5) / static_cast<double>(region.n_re);
      const double fi = (static_cast<double>(i) + 0.5) / static_cast<double>(region.n_im);
      seeds.emplace_back(region.re_min + fr * (region.re_max - region.re_min),
                         region.im_min + fi * (region.im_max - region.im_min));
    }

  // The first sweep is plain Newton; later sweeps deflate everything found
  // so far and stop once a sweep adds nothing.
  std::vector<cplx> found;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const std::vector<cplx> known = found;
    const auto roots = detail::parallel_map(seeds.size(), [&](std::size_t k) {
      return newton(pulse, seeds[k], region, kind, options, known);
    });
    const std::size_t before = found.size();
    for (const auto& r : roots) {
      if (!r) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](cplx z) {
        return std::abs(z - *r) <= region.dedupe_radius;
      });
      if (!dup) found.push_back(*r);
    }
    if (found.size() == before) break;
  }
  std::sort(found.begin(), found.end(), [](cplx x, cplx y) {
    if (x.imag() != y.imag()) return x.imag() < y.imag();
    return x.real() < y.real();
  });
  return found;
}

std::vector<ScatteringData> scatter_at_eigenvalues(const SampledPulse& pulse,
                                                   std::span<const cplx> lambdas, KernelKind kind,
                                                   const EigenOptions& options) {
  return detail::parallel_map(lambdas.size(), [&](std::size_t i) {
    if (!options.forward_backward) return forward_scatter(pulse, lambdas[i], kind);
    FbOptions fb = options.fb;
    fb.b_mode = BMode::Eigenvalue;
    return fb_scatter(pulse, lambdas[i], kind, fb);
  });
}

DiscreteSpectrum spectral_amplitudes(const SampledPulse& pulse, std::span<const cplx> lambdas,
                                     KernelKind kind, const EigenOptions& options) {
  const auto data = scatter_at_eigenvalues(pulse, lambdas, kind, options);
  std::vector<DiscretePoint> pts;
  pts.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (std::abs(data[i].a_prime) < 1e-8)
      throw NumericalError("near-degenerate eigenvalue; Q_d ill-conditioned");
    pts.push_back({lambdas[i], data[i].b / data[i].a_prime, data[i].b});
  }
  return DiscreteSpectrum(std::move(pts));
}

DiscreteSpectrum richardson_refine(const SampledPulse& pulse, const DiscreteSpectrum& found,
                                   KernelKind kind, const EigenOptions& options, int max_iter) {
  if (kind != KernelKind::Trapezoid)
    throw InvalidInput("Richardson refinement needs the trapezoid kernel");
  if (pulse.n_steps() % 2 != 0 || pulse.n_steps() < 4)
    throw InvalidInput("Richardson refinement needs an even number of steps (at least 4)");
  if (found.empty()) return found;

  std::vector<cplx> half;
  half.reserve(pulse.n_steps() / 2 + 1);
  for (std::size_t n = 0; n < pulse.n_samples(); n += 2) half.push_back(pulse[n]);
  const SampledPulse coarse(pulse.t0_half_width(), std::move(half));

  // Each root moves by O(h^2) between the grids, so a few plain Newton
  // steps from the fine root are enough.
  const auto fine_roots = found.eigenvalues();
  const auto coarse_roots = detail::parallel_map(fine_roots.size(), [&](std::size_t i) {
    cplx lam = fine_roots[i];
    for (int it = 0; it < max_iter; ++it) {
      const AValue v = eval_a(coarse, lam, kind, options);
      if (v.a_prime == cplx{}) break;
      const cplx step = v.a / v.a_prime;
      lam -= step;
      if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(lam))) break;
    }
    return lam;
  });
  const DiscreteSpectrum rough = spectral_amplitudes(coarse, coarse_roots, kind, options);

  const auto extrapolate = [](cplx f, cplx c) { return (4.0 * f - c) / 3.0; };
  std::vector<DiscretePoint> pts;
  pts.reserve(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    const DiscretePoint& f = found[i];
    const DiscretePoint& c = rough[i];
    std::optional<cplx> b;
    if (f.b && c.b) b = extrapolate(*f.b, *c.b);
    pts.push_back({extrapolate(f.lambda, c.lambda), extrapolate(f.qd, c.qd), b});
  }
  return DiscreteSpectrum(std::move(pts));
}

DiscreteSpectrum discrete_spectrum(const SampledPulse& pulse, const SearchRegion& region,
                                   KernelKind kind, const EigenOptions& options) {
  if (options.richardson && (kind != KernelKind::Trapezoid || pulse.n_steps() % 2 != 0 ||
                             pulse.n_steps() < 4))
    throw InvalidInput("Richardson refinement needs the trapezoid kernel and an even N >= 4");
  const auto lambdas = find_eigenvalues(pulse, region, kind, options);
  const DiscreteSpectrum found = spectral_amplitudes(pulse, lambdas, kind, options);
  if (!options.richardson) return found;
  return richardson_refine(pulse, found, kind, options, region.max_iter);
}

std::optional<int> count_eigenvalues(const SampledPulse& pulse, const SearchRegion& region,
                                     KernelKind kind) {
  region.validate();
  const cplx corners[] = {{region.re_min, region.im_min},
                          {region.re_max, region.im_min},
                          {region.re_max, region.im_max},
                          {region.re_min, region.im_max}};
  constexpr int kSamplesPerSide = 256;
  constexpr int kMaxDepth = 12;
  const EigenOptions opts;
  const auto a_at = [&](cplx lam) { return eval_a(pulse, lam, kind, opts).a; };

  // Sum of wrapped phase increments; segments with large increments are bisected.
  bool degenerate = false;
  const auto increment = [&](auto&& self, cplx z0, cplx z1, cplx a0, cplx a1, int depth) -> double {
    if (std::abs(a0) < 1e-14 || std::abs(a1) < 1e-14) {
      degenerate = true;
      return 0.0;
    }
    const double d = std::arg(a1 / a0);
    if (std::abs(d) < 0.5 || depth >= kMaxDepth) return d;
    const cplx zm = 0.5 * (z0 + z1);
    const cplx am = a_at(zm);
    return self(self, z0, zm, a0, am, depth + 1) + self(self, zm, z1, am, a1, depth + 1);
  };

  double total = 0.0;
  try {
    for (int side = 0; side < 4; ++side) {
      const cplx za = corners[side], zb = corners[(side + 1) % 4];
      const auto values = detail::parallel_map(kSamplesPerSide + 1, [&](std::size_t k) {
        return a_at(za + (zb - za) * (static_cast<double>(k) / kSamplesPerSide));
      });
      for (int k = 0; k < kSamplesPerSide; ++k) {
        const cplx z0 = za + (zb - za) * (static_cast<double>(k) / kSamplesPerSide);
        const cplx z1 = za + (zb - za) * (static_cast<double>(k + 1) / kSamplesPerSide);
        total += increment(increment, z0, z1, values[k], values[k + 1], 0);
      }
    }
  } catch (const NumericalError&) {
    return std::nullopt;
  }
  if (degenerate) return std::nullopt;
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace nft
