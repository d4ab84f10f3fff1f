// Multi-soliton synthesis by repeated Darboux transforms, seeded with q = 0.
//
// Norming factors are chosen (A_i = 1, B_i below) so that the final pulse
// carries exactly the prescribed discrete amplitudes Q_d(lam_i):
//
//   B_i = -Q_d(lam_i) / (lam_i - lam_i*) * prod_{k != i} (lam_i - lam_k) / (lam_i - lam_k*)
//
// The default algorithm tracks rho_k = -v_{k,2} / v_{k,1} instead of the
// eigenvectors themselves. rho_k(t) ~ e^{2j lam_k t} spans hundreds of
// decades on wide windows, so the ratios are stored as complex logarithms.
#pragma once

#include <vector>

#include "nft/spectra.hpp"

namespace nft {

/// Window [centre - T0, centre + T0] sampled at N + 1 points.
struct SynthesisGrid {
  double t0_half_width = 5.0;
  std::size_t n_steps = 2048;
  double centre = 0.0;
};

/// T0 = max(5, 10 / min_i 2 Im(lam_i)), N = 2048, centred at 0.
SynthesisGrid default_synthesis_grid(const DiscreteSpectrum& spectrum);

/// Tightest window holding every sample with |q| >= edge_level * max|q|,
/// found from a probe synthesis on a wide grid. Keeping the window tight
/// keeps the step, and with it the O(h^2) scattering error, small at fixed N.
SynthesisGrid fit_synthesis_grid(const DiscreteSpectrum& spectrum, std::size_t n_steps,
                                 double edge_level = 1e-4);

/// B_i (with A_i = 1) for eigenvalue i of the spectrum.
/// Throws DuplicateEigenvalue for coincident eigenvalues and InvalidInput for Q_d = 0.
cplx norming_factor(std::size_t i, const DiscreteSpectrum& spectrum);

/// State after absorbing `stage` eigenvalues of a fixed, ordered spectrum.
class DarbouxState {
 public:
  /// Stage 0: q = 0 and rho_k^{(0)}(t) = -B_k e^{2j lam_k t}.
  DarbouxState(const DiscreteSpectrum& ordered, const SynthesisGrid& grid);

  std::size_t stage() const noexcept { return stage_; }
  const SampledPulse& pulse() const noexcept { return pulse_; }
  /// log rho_k(t_n) for the eigenvalues k = stage+1 .. K (front = next to absorb).
  const std::vector<std::vector<cplx>>& log_ratios() const noexcept { return log_ratios_; }
  cplx ratio(std::size_t j, std::size_t n) const { return std::exp(log_ratios_.at(j).at(n)); }

 private:
  friend DarbouxState darboux_step(const DarbouxState&, const DiscreteSpectrum&);
  DarbouxState(std::size_t stage, SampledPulse pulse, std::vector<std::vector<cplx>> log_ratios)
      : stage_(stage), pulse_(std::move(pulse)), log_ratios_(std::move(log_ratios)) {}

  std::size_t stage_ = 0;
  SampledPulse pulse_;
  std::vector<std::vector<cplx>> log_ratios_;
};

/// Absorbs eigenvalue number state.stage() + 1 of `ordered` (the same
/// spectrum, in the same order, the state was created from).
/// Throws NumericalError naming the time index if a ratio update's
/// denominator vanishes.
DarbouxState darboux_step(const DarbouxState& state, const DiscreteSpectrum& ordered);

enum class DarbouxAlgorithm {
  RatioUpdate,   ///< rho-recursion (default)
  VectorUpdate,  ///< explicit eigenvector recursion, kept for cross-checking
};

enum class EigenvalueOrder {
  AscendingImag,  ///< sort by Im(lam), then Re(lam)
  AsGiven,
};

struct SynthesisOptions {
  DarbouxAlgorithm algorithm = DarbouxAlgorithm::RatioUpdate;
  EigenvalueOrder order = EigenvalueOrder::AscendingImag;
  double tail_threshold = 1e-6;  ///< relative to max |q|
};

struct Synthesis {
  /// Samples on [-T0, T0]; the synthesized signal is q(t) = pulse(t - t_shift).
  SampledPulse pulse;
  double t_shift = 0.0;
  /// max(|q(-T0)|, |q(T0)|) / max |q|, 0 for the zero pulse.
  double tail_ratio = 0.0;
  bool tail_warning = false;
};

Synthesis synthesize(const DiscreteSpectrum& spectrum, const SynthesisGrid& grid,
                     const SynthesisOptions& options = {});

/// Spectrum of the signal obtained by adding (lam0, qd0) with one Darboux
/// transform: existing Q_d and Q_c pick up (lam - lam0*) / (lam - lam0),
/// stored b values are unchanged, and (lam0, qd0) is appended.
/// Throws DuplicateEigenvalue if lam0 is already an eigenvalue.
NonlinearSpectrum add_eigenvalue_spectral_update(const NonlinearSpectrum& spectrum, cplx lambda0,
                                                 cplx qd0);

}  // namespace nft
