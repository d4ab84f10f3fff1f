// Forward-backward scattering.
//
// The full product (a_N, b_N)^T = R L (1, 0)^T is split at index m:
//   L = G_m ... G_1 G_0^{1/2}            (forward pass from -T0)
//   R = G_N^{-1/2} G_N ... G_{m+1}       (backward pass from +T0, via R^{-1})
// For non-trapezoid kernels the half steps are absent. The forward pass
// carries w = L (1,0) = (L11, L21), the backward pass v = R^{-1} (0,1) =
// (-R12, R11), and
//
//   a = w1 v2 - v1 w2,
//   b(lam_i) = w2 / v2  at an eigenvalue (the a R21/R11 term is dropped),
//   b(lam) = a v1* / v2 + w2 / v2  on the real axis.
#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "nft/kernels.hpp"

namespace nft {

enum class SplitPolicy {
  Fixed,   ///< m = round(c N)
  Argmin,  ///< m = argmin_n |q_n| exp(2 eta |t_n|), ties toward the centre
};

enum class BMode {
  Auto,        ///< RealAxis for real lambda, Eigenvalue when |a| is small, else General
  RealAxis,    ///< conjugate-symmetry formula; lambda must be real
  Eigenvalue,  ///< a(lambda) treated as zero
  General,     ///< a R21/R11 + L21/R11 with R21 from the backward pass
};

/// Which component of w = b v is used for b at an eigenvalue.
enum class EigenBFormula {
  Lower,  ///< b = w2 / v2 = L21 / R11
  Upper,  ///< b = w1 / v1 = -L11 / R12
};

struct FbOptions {
  SplitPolicy split = SplitPolicy::Fixed;
  double c = 0.5;
  /// Explicit split index; overrides `split`, `c` and `split_offset` when set.
  std::optional<std::size_t> split_index;
  /// Added to the policy's index before clamping to [1, N-1].
  long split_offset = 0;
  BMode b_mode = BMode::Auto;
  EigenBFormula eigen_formula = EigenBFormula::Lower;
  /// |a_N| below this switches Auto mode to the eigenvalue formula off the real axis.
  double eigen_threshold = 1e-3;
};

SplitPolicy parse_split_policy(std::string_view name);
std::string_view to_string(SplitPolicy policy) noexcept;
EigenBFormula parse_eigen_formula(std::string_view name);
std::string_view to_string(EigenBFormula formula) noexcept;

/// Split index in [1, N-1]. `eta` is Im(lambda) (0 for real lambda); only
/// the Argmin policy uses it.
std::size_t split_index(const SampledPulse& pulse, double eta, SplitPolicy policy, double c = 0.5);
std::size_t split_index(const SampledPulse& pulse, cplx lambda, const FbOptions& options);

struct SplitScatter {
  std::size_t m = 0;
  Vec2 w;        ///< (L11, L21)
  Vec2 w_prime;
  Vec2 v;        ///< (-R12, R11)
  Vec2 v_prime;
  Vec2 u;        ///< R^{-1} (1, 0) = (R22, -R21)
  Vec2 u_prime;

  cplx a() const noexcept { return w.x0 * v.x1 - v.x0 * w.x1; }
  cplx a_prime() const noexcept {
    return w_prime.x0 * v.x1 + w.x0 * v_prime.x1 - v_prime.x0 * w.x1 - v.x0 * w_prime.x1;
  }
};

/// Runs both recursions and joins them at index m (0 < m < N).
SplitScatter split_scatter(const SampledPulse& pulse, cplx lambda, KernelKind kind, std::size_t m);

/// Stabilised (a, b, a', b') at one lambda. Throws NumericalError when the
/// denominator of the selected b formula vanishes at the split.
ScatteringData fb_scatter(const SampledPulse& pulse, cplx lambda, KernelKind kind,
                          const FbOptions& options = {});

/// Q_c = b / a on a real grid. Points where a vanishes are stored as NaN.
ContinuousSpectrum fb_continuous_spectrum(const SampledPulse& pulse,
                                          std::span<const double> lambda_grid, KernelKind kind,
                                          const FbOptions& options = {});

}  // namespace nft
