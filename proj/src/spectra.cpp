#include "nft/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nft {

SampledPulse::SampledPulse(double t0_half_width, std::vector<cplx> samples)
    : t0_(t0_half_width), h_(0.0), samples_(std::move(samples)) {
  if (!(t0_ > 0.0) || !std::isfinite(t0_))
    throw InvalidInput("pulse half-width T0 must be finite and positive");
  if (samples_.size() < 2) throw InvalidInput("pulse needs at least two samples");
  h_ = 2.0 * t0_ / static_cast<double>(samples_.size() - 1);
  for (const auto& q : samples_)
    if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
      throw InvalidInput("pulse contains non-finite samples");
}

SampledPulse SampledPulse::zeros(double t0_half_width, std::size_t n_samples) {
  return SampledPulse(t0_half_width, std::vector<cplx>(n_samples, cplx{}));
}

std::vector<double> SampledPulse::times() const {
  std::vector<double> t(samples_.size());
  for (std::size_t n = 0; n < t.size(); ++n) t[n] = time(n);
  return t;
}

double SampledPulse::energy() const noexcept {
  double e = 0.0;
  for (const auto& q : samples_) e += std::norm(q);
  return e * h_;
}

double SampledPulse::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& q : samples_) m = std::max(m, std::abs(q));
  return m;
}

void require_distinct(std::span<const cplx> lambdas, double min_separation) {
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t k = i + 1; k < lambdas.size(); ++k)
      if (std::abs(lambdas[i] - lambdas[k]) < min_separation) {
        std::ostringstream os;
        os << "eigenvalues " << i << " and " << k << " coincide (" << lambdas[i] << ")";
        throw DuplicateEigenvalue(os.str());
      }
}

DiscreteSpectrum::DiscreteSpectrum(std::vector<DiscretePoint> points, double min_separation)
    : points_(std::move(points)) {
  for (const auto& p : points_) {
    if (!(p.lambda.imag() > 0.0))
      throw InvalidInput("discrete eigenvalues must lie strictly in the upper half-plane");
  }
  const auto lambdas = eigenvalues();
  require_distinct(lambdas, min_separation);
}

std::vector<cplx> DiscreteSpectrum::eigenvalues() const {
  std::vector<cplx> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.lambda);
  return out;
}

ContinuousSpectrum::ContinuousSpectrum(std::vector<double> lambda_grid, std::vector<cplx> qc)
    : lambda_(std::move(lambda_grid)), qc_(std::move(qc)) {
  if (lambda_.size() != qc_.size())
    throw InvalidInput("continuous spectrum: grid and values differ in length");
  for (std::size_t i = 1; i < lambda_.size(); ++i)
    if (!(lambda_[i] > lambda_[i - 1]))
      throw InvalidInput("continuous spectrum: lambda grid must be strictly increasing");
}

bool ContinuousSpectrum::valid(std::size_t i) const noexcept {
  return std::isfinite(qc_[i].real()) && std::isfinite(qc_[i].imag());
}

cplx propagation_factor(cplx lambda, double z) { return std::exp(-4.0 * kJ * lambda * lambda * z); }

DiscreteSpectrum evolve_spectrum(const DiscreteSpectrum& spec, double z) {
  std::vector<DiscretePoint> pts(spec.points().begin(), spec.points().end());
  for (auto& p : pts) {
    const cplx f = propagation_factor(p.lambda, z);
    p.qd *= f;
    if (p.b) *p.b *= f;
  }
  // Separation was already validated on the input.
  return DiscreteSpectrum(std::move(pts), 0.0);
}

ContinuousSpectrum evolve_spectrum(const ContinuousSpectrum& spec, double z) {
  std::vector<double> grid(spec.lambda_grid().begin(), spec.lambda_grid().end());
  std::vector<cplx> qc(spec.qc().begin(), spec.qc().end());
  for (std::size_t i = 0; i < qc.size(); ++i) qc[i] *= propagation_factor(grid[i], z);
  return ContinuousSpectrum(std::move(grid), std::move(qc));
}

NonlinearSpectrum evolve_spectrum(const NonlinearSpectrum& spec, double z) {
  NonlinearSpectrum out{evolve_spectrum(spec.discrete, z), std::nullopt};
  if (spec.continuous) out.continuous = evolve_spectrum(*spec.continuous, z);
  return out;
}

ScatteringData time_shift_correction(const ScatteringData& data, cplx lambda, double t_shift) {
  const cplx f = std::exp(-2.0 * kJ * lambda * t_shift);
  ScatteringData out = data;
  out.b = data.b * f;
  if (data.b_prime) out.b_prime = (*data.b_prime - 2.0 * kJ * t_shift * data.b) * f;
  return out;
}

}  // namespace nft
