// Domain types shared by every stage of the transform: sampled pulses,
// scattering data, discrete/continuous spectra and 2x2 transfer matrices.
//
// Conventions
//   * Focusing Zakharov-Shabat system, dv/dt = [[-j lam, q], [-q*, j lam]] v.
//   * A pulse lives on N+1 uniformly spaced samples t_n = -T0 + n h,
//     n = 0..N, h = 2 T0 / N (both endpoints included).
//   * a(lam), b(lam) are the limits of the Jost solution normalised to
//     (1, 0) e^{-j lam t} at t -> -inf.
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nft {

using cplx = std::complex<double>;
inline constexpr cplx kJ{0.0, 1.0};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad grid, bad file, invalid region).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Two eigenvalues closer than the configured separation.
class DuplicateEigenvalue : public Error {
 public:
  using Error::Error;
};

/// A computation hit a singular or non-representable intermediate value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// SampledPulse
// ---------------------------------------------------------------------------

class SampledPulse {
 public:
  SampledPulse(double t0_half_width, std::vector<cplx> samples);

  /// All-zero pulse on the given grid.
  static SampledPulse zeros(double t0_half_width, std::size_t n_samples);

  double t0_half_width() const noexcept { return t0_; }
  std::size_t n_samples() const noexcept { return samples_.size(); }
  /// Number of steps N (= n_samples - 1).
  std::size_t n_steps() const noexcept { return samples_.size() - 1; }
  double step() const noexcept { return h_; }
  double time(std::size_t n) const noexcept { return -t0_ + static_cast<double>(n) * h_; }
  std::span<const cplx> samples() const noexcept { return samples_; }
  const cplx& operator[](std::size_t n) const noexcept { return samples_[n]; }

  std::vector<double> times() const;
  /// h * sum |q_n|^2
  double energy() const noexcept;
  double max_abs() const noexcept;

 private:
  double t0_;
  double h_;
  std::vector<cplx> samples_;
};

// ---------------------------------------------------------------------------
// Scattering data and spectra
// ---------------------------------------------------------------------------

struct ScatteringData {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};
  cplx a_prime{0.0, 0.0};
  std::optional<cplx> b_prime;
};

struct SpectralPoint {
  cplx lambda;
  double eta() const noexcept { return lambda.imag(); }
  bool in_upper_half_plane() const noexcept { return lambda.imag() > 0.0; }
};

struct DiscretePoint {
  cplx lambda;
  cplx qd;
  std::optional<cplx> b;
};

inline constexpr double kDefaultMinSeparation = 1e-6;

class DiscreteSpectrum {
 public:
  DiscreteSpectrum() = default;
  explicit DiscreteSpectrum(std::vector<DiscretePoint> points,
                            double min_separation = kDefaultMinSeparation);

  std::span<const DiscretePoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const DiscretePoint& operator[](std::size_t i) const noexcept { return points_[i]; }
  std::vector<cplx> eigenvalues() const;

 private:
  std::vector<DiscretePoint> points_;
};

class ContinuousSpectrum {
 public:
  ContinuousSpectrum() = default;
  /// Entries of qc may be NaN to mark points where the spectrum is undefined
  /// (a(lam) = 0 on the real axis).
  ContinuousSpectrum(std::vector<double> lambda_grid, std::vector<cplx> qc);

  std::span<const double> lambda_grid() const noexcept { return lambda_; }
  std::span<const cplx> qc() const noexcept { return qc_; }
  std::size_t size() const noexcept { return lambda_.size(); }
  bool valid(std::size_t i) const noexcept;

 private:
  std::vector<double> lambda_;
  std::vector<cplx> qc_;
};

/// Discrete part plus an optional sampled continuous part.
struct NonlinearSpectrum {
  DiscreteSpectrum discrete;
  std::optional<ContinuousSpectrum> continuous;
};

// ---------------------------------------------------------------------------
// TransferMatrix
// ---------------------------------------------------------------------------

struct Vec2 {
  cplx x0{};
  cplx x1{};
};

struct TransferMatrix {
  cplx m11{1.0, 0.0};
  cplx m12{0.0, 0.0};
  cplx m21{0.0, 0.0};
  cplx m22{1.0, 0.0};

  static TransferMatrix identity() noexcept { return {}; }
  static TransferMatrix zero() noexcept { return {0.0, 0.0, 0.0, 0.0}; }

  cplx det() const noexcept { return m11 * m22 - m12 * m21; }
  Vec2 operator*(const Vec2& v) const noexcept {
    return {m11 * v.x0 + m12 * v.x1, m21 * v.x0 + m22 * v.x1};
  }
  TransferMatrix operator*(const TransferMatrix& o) const noexcept {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }
};

inline Vec2 operator+(const Vec2& u, const Vec2& v) noexcept { return {u.x0 + v.x0, u.x1 + v.x1}; }

// ---------------------------------------------------------------------------
// Elementary spectral arithmetic
// ---------------------------------------------------------------------------

/// exp(-4 j lam^2 z): the z-propagation factor of b (and of Q_c, Q_d).
cplx propagation_factor(cplx lambda, double z);

DiscreteSpectrum evolve_spectrum(const DiscreteSpectrum& spec, double z);
ContinuousSpectrum evolve_spectrum(const ContinuousSpectrum& spec, double z);
NonlinearSpectrum evolve_spectrum(const NonlinearSpectrum& spec, double z);

/// Maps scattering data of a pulse p(t) to that of q(t) = p(t - t_shift),
/// i.e. data computed on a window centred at t_shift back to absolute time:
/// b -> b exp(-2j lam t_shift), a and a' unchanged.
ScatteringData time_shift_correction(const ScatteringData& data, cplx lambda, double t_shift);

/// Throws DuplicateEigenvalue if two of the values are closer than min_separation.
void require_distinct(std::span<const cplx> lambdas, double min_separation = kDefaultMinSeparation);

}  // namespace nft
