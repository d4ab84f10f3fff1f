// Reproducible experiments built from the library: round trips, the
// two-soliton kernel comparison and convergence sweeps.
#pragma once

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "nft/darboux.hpp"
#include "nft/eigensolver.hpp"

namespace nft::experiments {

/// Two-soliton reference: lam = {0.5j, 1j}, Q_d = {3, -6}.
DiscreteSpectrum two_soliton_reference();
inline constexpr double kReferenceHalfWidth = 5.0;

struct RandomSpectrumConfig {
  std::size_t min_count = 1;
  std::size_t max_count = 4;
  double re_min = -0.5, re_max = 0.5;
  double im_min = 0.15, im_max = 1.2;
  double qd_abs_min = 0.3, qd_abs_max = 5.0;
  /// Rejection radius between drawn eigenvalues.
  double min_separation = 0.1;
};

/// Eigenvalues uniform in the box, |Q_d| uniform in its range, arg Q_d uniform.
DiscreteSpectrum random_spectrum(std::mt19937_64& rng, const RandomSpectrumConfig& config = {});

inline EigenOptions extrapolated_eigen_options() {
  EigenOptions o;
  o.richardson = true;
  return o;
}

struct RoundTripConfig {
  /// Explicit window; when empty the window is fitted to the pulse.
  std::optional<SynthesisGrid> grid;
  std::size_t n_steps = 4096;
  double edge_level = 1e-4;
  KernelKind kind = KernelKind::Trapezoid;
  // Extrapolated detection: the plain trapezoid error at N = 4096 reaches
  // 1e-4 in lambda for narrow solitons in wide windows.
  EigenOptions eigen = extrapolated_eigen_options();
  SearchRegion region;
};

struct EigenMatch {
  DiscretePoint prescribed;
  DiscretePoint detected;
  double lambda_error = 0.0;
  double qd_rel_error = 0.0;
};

struct RoundTripReport {
  SynthesisGrid grid;
  double tail_ratio = 0.0;
  std::vector<DiscretePoint> prescribed;
  std::vector<DiscretePoint> detected;  ///< Q_d referred back to the synthesis time origin
  std::vector<EigenMatch> matches;      ///< filled only when the counts agree

  bool count_ok() const noexcept { return prescribed.size() == detected.size(); }
  double max_lambda_error() const noexcept;
  double max_qd_rel_error() const noexcept;
};

/// synthesize -> discrete_spectrum -> nearest-neighbour matching.
RoundTripReport round_trip(const DiscreteSpectrum& spectrum, const RoundTripConfig& config = {});

struct KernelComparisonRow {
  std::size_t n_steps = 0;
  KernelKind kind = KernelKind::Trapezoid;
  bool forward_backward = false;
  cplx lambda;
  cplx a;
  cplx qd;
};

/// Scatters the two-soliton reference (window [-5, 5], N steps) at its exact
/// eigenvalues with every requested kernel, with and without the split.
std::vector<KernelComparisonRow> kernel_comparison(std::span<const std::size_t> n_steps,
                                                   std::span<const KernelKind> kinds,
                                                   const FbOptions& fb);

/// Configuration that reproduces the reference forward-backward values:
/// upper-component b formula, split one sample left of the centre.
FbOptions reference_table_fb_options();

/// |a_N - a_exact| for the unit sech soliton (lam_1 = 0.5j) at lam.
double soliton_a_error(KernelKind kind, cplx lambda, double t0_half_width, std::size_t n_steps);

}  // namespace nft::experiments
