#include "nft/forward_backward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nft/parallel.hpp"

namespace nft {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_exponent(const SampledPulse& pulse, cplx lambda) {
  if (std::abs(lambda.imag()) * pulse.t0_half_width() > kMaxExponent) {
    std::ostringstream os;
    os << "e^{2|Im(lambda)| T0} is not representable for lambda = " << lambda
       << ", T0 = " << pulse.t0_half_width();
    throw NumericalError(os.str());
  }
}

// Quotient guarded against a vanishing denominator at the split.
cplx split_ratio(cplx num, cplx den, const Vec2& den_vec, std::size_t m) {
  const double scale = std::abs(den_vec.x0) + std::abs(den_vec.x1);
  if (!(std::abs(den) > 1e-14 * scale)) {
    std::ostringstream os;
    os << "split lies at scattering singularity (m = " << m << "); retry with different split";
    throw NumericalError(os.str());
  }
  return num / den;
}

}  // namespace

SplitPolicy parse_split_policy(std::string_view name) {
  if (name == "fixed") return SplitPolicy::Fixed;
  if (name == "argmin") return SplitPolicy::Argmin;
  throw InvalidInput("unknown split policy '" + std::string(name) + "'");
}

std::string_view to_string(SplitPolicy policy) noexcept {
  return policy == SplitPolicy::Fixed ? "fixed" : "argmin";
}

EigenBFormula parse_eigen_formula(std::string_view name) {
  if (name == "lower") return EigenBFormula::Lower;
  if (name == "upper") return EigenBFormula::Upper;
  throw InvalidInput("unknown eigenvalue b formula '" + std::string(name) + "'");
}

std::string_view to_string(EigenBFormula formula) noexcept {
  return formula == EigenBFormula::Lower ? "lower" : "upper";
}

std::size_t split_index(const SampledPulse& pulse, double eta, SplitPolicy policy, double c) {
  const std::size_t N = pulse.n_steps();
  if (N < 2) throw InvalidInput("forward-backward needs at least three samples");
  const auto clamp = [N](long m) {
    return static_cast<std::size_t>(std::clamp<long>(m, 1, static_cast<long>(N) - 1));
  };

  if (policy == SplitPolicy::Fixed) {
    if (!(c > 0.0 && c < 1.0)) throw InvalidInput("split fraction c must lie in (0, 1)");
    return clamp(std::lround(c * static_cast<double>(N)));
  }

  if (eta < 0.0) throw InvalidInput("split heuristic needs eta >= 0");
  // log(|q_n| e^{2 eta |t_n|}); zero samples give -inf and win outright.
  const double centre = 0.5 * static_cast<double>(N);
  std::size_t best = N / 2;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < N; ++n) {
    const double mag = std::abs(pulse[n]);
    const double val = mag == 0.0 ? -std::numeric_limits<double>::infinity()
                                  : std::log(mag) + 2.0 * eta * std::abs(pulse.time(n));
    const double tol = 1e-12 * std::max(1.0, std::abs(val));
    const bool tied = val == best_val || (std::isfinite(val) && std::abs(val - best_val) <= tol);
    if (tied) {
      if (std::abs(static_cast<double>(n) - centre) < std::abs(static_cast<double>(best) - centre))
        best = n;
    } else if (val < best_val) {
      best = n;
      best_val = val;
    }
  }
  return best;
}

std::size_t split_index(const SampledPulse& pulse, cplx lambda, const FbOptions& options) {
  if (options.split_index) {
    const std::size_t m = *options.split_index;
    if (m < 1 || m + 1 > pulse.n_steps())
      throw InvalidInput("explicit split index must satisfy 0 < m < N");
    return m;
  }
  const long m = static_cast<long>(split_index(pulse, std::max(0.0, lambda.imag()), options.split,
                                              options.c)) +
                 options.split_offset;
  return static_cast<std::size_t>(std::clamp<long>(m, 1, static_cast<long>(pulse.n_steps()) - 1));
}

SplitScatter split_scatter(const SampledPulse& pulse, cplx lambda, KernelKind kind, std::size_t m) {
  const std::size_t N = pulse.n_steps();
  if (m < 1 || m >= N) throw InvalidInput("split index must satisfy 0 < m < N");
  check_exponent(pulse, lambda);

  const double h = pulse.step();
  const bool trapezoid = kind == KernelKind::Trapezoid;
  SplitScatter s;
  s.m = m;

  // Forward: w_0 = G_0^{1/2} (1, 0), w_n = G_n w_{n-1} for n = 1..m.
  s.w = {1.0, 0.0};
  s.w_prime = {0.0, 0.0};
  if (trapezoid) {
    const double t = pulse.time(0);
    s.w_prime = step_matrix_dlambda(kind, pulse[0], t, lambda, 0.5 * h) * s.w;
    s.w = step_matrix(kind, pulse[0], t, lambda, 0.5 * h) * s.w;
  }
  for (std::size_t n = 1; n <= m; ++n) {
    const double t = pulse.time(n);
    const TransferMatrix g = step_matrix(kind, pulse[n], t, lambda, h);
    const TransferMatrix dg = step_matrix_dlambda(kind, pulse[n], t, lambda, h);
    s.w_prime = g * s.w_prime + dg * s.w;
    s.w = g * s.w;
  }

  // Backward: v_N = G_N^{1/2} (0, 1), v_{n-1} = G_n^{-1} v_n for n = N..m+1.
  // u follows the same recursion from (1, 0) and yields the first column of R^{-1}.
  s.v = {0.0, 1.0};
  s.u = {1.0, 0.0};
  s.v_prime = s.u_prime = {0.0, 0.0};
  if (trapezoid) {
    const double t = pulse.time(N);
    const TransferMatrix g = step_matrix(kind, pulse[N], t, lambda, 0.5 * h);
    const TransferMatrix dg = step_matrix_dlambda(kind, pulse[N], t, lambda, 0.5 * h);
    s.v_prime = dg * s.v;
    s.u_prime = dg * s.u;
    s.v = g * s.v;
    s.u = g * s.u;
  }
  for (std::size_t n = N; n > m; --n) {
    const double t = pulse.time(n);
    const TransferMatrix gi = inverse_step_matrix(kind, pulse[n], t, lambda, h);
    const TransferMatrix dgi = inverse_step_matrix_dlambda(kind, pulse[n], t, lambda, h);
    s.v_prime = gi * s.v_prime + dgi * s.v;
    s.u_prime = gi * s.u_prime + dgi * s.u;
    s.v = gi * s.v;
    s.u = gi * s.u;
  }
  if (!has_unit_determinant(kind)) {
    // R^{-1} = adj(R) / det R; rescale so that v = (-R12, R11) and u = (R22, -R21)
    // hold exactly. det R does not depend on lambda.
    double det_r = 1.0;
    for (std::size_t n = m + 1; n <= N; ++n) det_r *= 1.0 + h * h * std::norm(pulse[n]);
    for (Vec2* x : {&s.v, &s.u, &s.v_prime, &s.u_prime}) *x = {x->x0 * det_r, x->x1 * det_r};
  }
  return s;
}

ScatteringData fb_scatter(const SampledPulse& pulse, cplx lambda, KernelKind kind,
                          const FbOptions& options) {
  const std::size_t m = split_index(pulse, lambda, options);
  const SplitScatter s = split_scatter(pulse, lambda, kind, m);

  ScatteringData out;
  out.a = s.a();
  out.a_prime = s.a_prime();

  const bool real_axis = lambda.imag() == 0.0;
  BMode mode = options.b_mode;
  if (mode == BMode::Auto) {
    if (real_axis)
      mode = BMode::RealAxis;
    else
      mode = std::abs(out.a) < options.eigen_threshold ? BMode::Eigenvalue : BMode::General;
  }
  if (mode == BMode::RealAxis && !real_axis)
    throw InvalidInput("real-axis b formula requested for non-real lambda");

  const cplx R11 = s.v.x1, R12 = -s.v.x0, R21 = -s.u.x1, R22 = s.u.x0;
  const cplx dR11 = s.v_prime.x1, dR21 = -s.u_prime.x1, dR22 = s.u_prime.x0;
  const cplx L11 = s.w.x0, L21 = s.w.x1;

  switch (mode) {
    case BMode::Eigenvalue:
      if (options.eigen_formula == EigenBFormula::Lower) {
        out.b = split_ratio(L21, R11, s.v, m);
        out.b_prime = (s.w_prime.x1 * R11 - L21 * dR11) / (R11 * R11);
      } else {
        out.b = split_ratio(s.w.x0, s.v.x0, s.v, m);
        out.b_prime = (s.w_prime.x0 * s.v.x0 - s.w.x0 * s.v_prime.x0) / (s.v.x0 * s.v.x0);
      }
      break;
    case BMode::RealAxis:
      out.b = split_ratio(-out.a * std::conj(R12) + L21, R11, s.v, m);
      break;
    case BMode::General:
    case BMode::Auto:
      out.b = split_ratio(out.a * R21 + L21, R11, s.v, m);
      break;
  }
  if (mode != BMode::Eigenvalue) {
    // b = R21 L11 + R22 L21 for the full product.
    out.b_prime = dR21 * L11 + R21 * s.w_prime.x0 + dR22 * L21 + R22 * s.w_prime.x1;
  }
  if (!finite(out.a) || !finite(out.b) || !finite(out.a_prime))
    throw NumericalError("forward-backward scattering produced non-finite values");
  return out;
}

ContinuousSpectrum fb_continuous_spectrum(const SampledPulse& pulse,
                                          std::span<const double> lambda_grid, KernelKind kind,
                                          const FbOptions& options) {
  FbOptions opts = options;
  opts.b_mode = BMode::RealAxis;
  const auto qc = detail::parallel_map(lambda_grid.size(), [&](std::size_t i) -> cplx {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
      const ScatteringData d = fb_scatter(pulse, cplx{lambda_grid[i], 0.0}, kind, opts);
      if (!(std::abs(d.a) > 1e-14)) return {nan, nan};
      return d.b / d.a;
    } catch (const NumericalError&) {
      return {nan, nan};
    }
  });
  return ContinuousSpectrum(std::vector<double>(lambda_grid.begin(), lambda_grid.end()), qc);
}

}  // namespace nft
