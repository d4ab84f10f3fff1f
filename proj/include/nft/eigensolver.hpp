// Zeros of a(lambda) in the upper half-plane and their spectral amplitudes.
#pragma once

#include <optional>
#include <vector>

#include "nft/forward_backward.hpp"

namespace nft {

struct SearchRegion {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = 0.05;
  double im_max = 2.5;
  std::size_t n_re = 8;  ///< Newton seeds along Re
  std::size_t n_im = 8;  ///< Newton seeds along Im
  double newton_tol = 1e-12;  ///< accept when |a| <= newton_tol * N
  int max_iter = 50;
  double dedupe_radius = 1e-6;

  void validate() const;
};

struct EigenOptions {
  /// Scatter with the forward-backward split (otherwise a single forward pass).
  bool forward_backward = true;
  FbOptions fb;
  /// discrete_spectrum only: repeat the solve on every other sample (step 2h)
  /// and extrapolate lambda, Q_d and b to h -> 0 assuming an error series in
  /// h^2. Trapezoid kernel with an even number of steps.
  bool richardson = false;
};

/// Converged Newton roots of a_N(lambda) inside the region, deduplicated and
/// sorted by ascending Im (then Re). Diverging seeds are dropped silently.
std::vector<cplx> find_eigenvalues(const SampledPulse& pulse, const SearchRegion& region,
                                   KernelKind kind, const EigenOptions& options = {});

/// Full scattering data at each given lambda, with b from the eigenvalue
/// formula when forward-backward is enabled.
std::vector<ScatteringData> scatter_at_eigenvalues(const SampledPulse& pulse,
                                                   std::span<const cplx> lambdas, KernelKind kind,
                                                   const EigenOptions& options = {});

/// (lambda_i, Q_d = b / a', b) at given eigenvalues. Throws NumericalError
/// when |a'(lambda_i)| < 1e-8.
DiscreteSpectrum spectral_amplitudes(const SampledPulse& pulse, std::span<const cplx> lambdas,
                                     KernelKind kind, const EigenOptions& options = {});

/// Extrapolates a spectrum found on `pulse` (step h) against the same roots
/// re-solved on every other sample (step 2h): x = (4 x_h - x_2h) / 3 for
/// lambda, Q_d and b. Trapezoid kernel, even N >= 4.
DiscreteSpectrum richardson_refine(const SampledPulse& pulse, const DiscreteSpectrum& found,
                                   KernelKind kind, const EigenOptions& options = {},
                                   int max_iter = 50);

/// find_eigenvalues followed by spectral_amplitudes (and richardson_refine
/// when requested).
DiscreteSpectrum discrete_spectrum(const SampledPulse& pulse, const SearchRegion& region,
                                   KernelKind kind, const EigenOptions& options = {});

/// Number of zeros of a_N enclosed by the region boundary, from the winding
/// of arg a_N. Empty when a_N vanishes (numerically) on the boundary.
std::optional<int> count_eigenvalues(const SampledPulse& pulse, const SearchRegion& region,
                                     KernelKind kind);

}  // namespace nft
