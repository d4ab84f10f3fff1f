#include "nft/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace nft {

namespace {

// Safe pieces of the signal update for rho = exp(log_rho):
//   proj = 1 / (1 + |rho|^2),  co_proj = 1 - proj,  weighted = rho / (1 + |rho|^2).
// co_proj is formed directly; 1 - proj cancels when |rho| is small.
struct RatioWeights {
  double proj;
  double co_proj;
  cplx weighted;
};

RatioWeights ratio_weights(cplx log_rho) {
  const double lr = log_rho.real();
  if (lr <= 0.0) {
    const cplx rho = std::exp(log_rho);
    const double inv = 1.0 / (1.0 + std::norm(rho));
    return {inv, std::norm(rho) * inv, rho * inv};
  }
  // |rho| > 1: work with 1/rho* = exp(-conj(log_rho)).
  const cplx rinv = std::exp(-std::conj(log_rho));
  const double r2 = std::norm(rinv);
  return {r2 / (1.0 + r2), 1.0 / (1.0 + r2), rinv / (1.0 + r2)};
}

// log rho_k(t) = log(-B_k) + 2j lam_k t with the phase reduced to [-pi, pi].
// A raw phase of size |2 Re(lam) t| would cost ulp(phase) in every exp().
cplx seed_log_ratio(cplx log_c, cplx lam, double t) {
  const cplx lr = log_c + 2.0 * kJ * lam * t;
  return {lr.real(), std::remainder(lr.imag(), 2.0 * std::numbers::pi)};
}

std::vector<DiscretePoint> ordered_points(const DiscreteSpectrum& spectrum, EigenvalueOrder order) {
  std::vector<DiscretePoint> pts(spectrum.points().begin(), spectrum.points().end());
  if (order == EigenvalueOrder::AscendingImag)
    std::stable_sort(pts.begin(), pts.end(), [](const DiscretePoint& x, const DiscretePoint& y) {
      if (x.lambda.imag() != y.lambda.imag()) return x.lambda.imag() < y.lambda.imag();
      return x.lambda.real() < y.lambda.real();
    });
  return pts;
}

double tail_ratio(const SampledPulse& pulse) {
  const double peak = pulse.max_abs();
  if (peak == 0.0) return 0.0;
  const double edge = std::max(std::abs(pulse[0]), std::abs(pulse[pulse.n_steps()]));
  return edge / peak;
}

std::vector<cplx> zero_samples(const SynthesisGrid& grid) {
  if (grid.n_steps < 1) throw InvalidInput("synthesis grid needs N >= 1");
  return std::vector<cplx>(grid.n_steps + 1, cplx{});
}

// Explicit eigenvector recursion. The update is homogeneous of degree 0 in
// psi and linear in v_k, so every v_k(t) is rescaled freely to stay finite.
SampledPulse synthesize_vector_form(const DiscreteSpectrum& spec, const SynthesisGrid& grid) {
  const std::size_t K = spec.size();
  const SampledPulse shape = SampledPulse::zeros(grid.t0_half_width, grid.n_steps + 1);
  const std::size_t n_samples = shape.n_samples();
  std::vector<cplx> q(n_samples, cplx{});

  // Seeded from the same log ratio as the ratio form, v_k = (1, -rho_k) up to
  // scale, so the two forms differ only in the update algebra.
  std::vector<std::vector<Vec2>> v(K, std::vector<Vec2>(n_samples));
  for (std::size_t k = 0; k < K; ++k) {
    const cplx lam = spec[k].lambda;
    const cplx log_c = std::log(-norming_factor(k, spec));
    for (std::size_t n = 0; n < n_samples; ++n) {
      const cplx lr = seed_log_ratio(log_c, lam, shape.time(n));
      v[k][n] = lr.real() <= 0.0 ? Vec2{1.0, -std::exp(lr)} : Vec2{-std::exp(-lr), 1.0};
    }
  }

  for (std::size_t i = 0; i < K; ++i) {
    const cplx li = spec[i].lambda;
    const cplx D = li - std::conj(li);
    for (std::size_t n = 0; n < n_samples; ++n) {
      const cplx psi1 = v[i][n].x0, psi2 = v[i][n].x1;
      const double S = std::norm(psi1) + std::norm(psi2);
      const cplx cross = std::conj(psi2) * psi1 / S;
      const double p1 = std::norm(psi1) / S;
      const double p2 = std::norm(psi2) / S;
      q[n] -= 2.0 * kJ * D * cross;
      for (std::size_t k = i + 1; k < K; ++k) {
        const cplx lk = spec[k].lambda;
        const Vec2 old = v[k][n];
        // lk - li* - D p1 written as (lk - li) + D p2 to avoid cancellation.
        Vec2 upd{(lk - li + D * p2) * old.x0 - D * cross * old.x1,
                 -D * std::conj(cross) * old.x0 + (lk - li + D * p1) * old.x1};
        const double norm = std::max(std::abs(upd.x0), std::abs(upd.x1));
        if (norm > 0.0) upd = {upd.x0 / norm, upd.x1 / norm};
        v[k][n] = upd;
      }
    }
  }
  return SampledPulse(grid.t0_half_width, std::move(q));
}

}  // namespace

SynthesisGrid default_synthesis_grid(const DiscreteSpectrum& spectrum) {
  SynthesisGrid grid;
  if (spectrum.empty()) return grid;
  double eta_min = std::numeric_limits<double>::infinity();
  for (const auto& p : spectrum.points()) eta_min = std::min(eta_min, p.lambda.imag());
  grid.t0_half_width = std::max(5.0, 10.0 / (2.0 * eta_min));
  return grid;
}

SynthesisGrid fit_synthesis_grid(const DiscreteSpectrum& spectrum, std::size_t n_steps,
                                 double edge_level) {
  if (!(edge_level > 0.0 && edge_level < 1.0)) throw InvalidInput("edge level must lie in (0, 1)");
  SynthesisGrid probe = default_synthesis_grid(spectrum);
  probe.n_steps = 8192;
  probe.t0_half_width *= 4.0;
  if (spectrum.empty()) return {probe.t0_half_width / 4.0, n_steps, 0.0};

  // Widen the probe until the pulse has decayed below the edge level at both ends.
  for (int attempt = 0;; ++attempt) {
    const Synthesis s = synthesize(spectrum, probe);
    const SampledPulse& q = s.pulse;
    const double level = edge_level * q.max_abs();
    std::size_t lo = 0, hi = q.n_steps();
    while (std::abs(q[lo]) < level) ++lo;
    while (std::abs(q[hi]) < level) --hi;
    if ((lo > 0 && hi < q.n_steps()) || attempt == 4) {
      const double h = q.step();
      return {0.5 * (hi - lo) * h + h, n_steps, 0.5 * (q.time(lo) + q.time(hi))};
    }
    probe.t0_half_width *= 2.0;
    probe.n_steps *= 2;
  }
}

cplx norming_factor(std::size_t i, const DiscreteSpectrum& spectrum) {
  if (i >= spectrum.size()) throw InvalidInput("norming_factor: index out of range");
  const auto lambdas = spectrum.eigenvalues();
  require_distinct(lambdas);
  const cplx qd = spectrum[i].qd;
  if (qd == cplx{}) throw InvalidInput("norming_factor: Q_d = 0 describes an absent soliton");
  const cplx li = lambdas[i];
  cplx B = -qd / (li - std::conj(li));
  for (std::size_t k = 0; k < lambdas.size(); ++k)
    if (k != i) B *= (li - lambdas[k]) / (li - std::conj(lambdas[k]));
  return B;
}

DarbouxState::DarbouxState(const DiscreteSpectrum& ordered, const SynthesisGrid& grid)
    : stage_(0), pulse_(grid.t0_half_width, zero_samples(grid)) {
  const std::size_t K = ordered.size();
  log_ratios_.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    const cplx lam = ordered[k].lambda;
    // rho = -v2/v1 = -B e^{2j lam t}
    const cplx log_c = std::log(-norming_factor(k, ordered));
    auto& lr = log_ratios_[k];
    lr.resize(pulse_.n_samples());
    for (std::size_t n = 0; n < lr.size(); ++n) lr[n] = seed_log_ratio(log_c, lam, pulse_.time(n));
  }
}

DarbouxState darboux_step(const DarbouxState& state, const DiscreteSpectrum& ordered) {
  const std::size_t i = state.stage();
  if (i >= ordered.size() || state.log_ratios().empty())
    throw InvalidInput("darboux_step: all eigenvalues already absorbed");
  if (state.log_ratios().size() != ordered.size() - i)
    throw InvalidInput("darboux_step: state does not belong to this spectrum");

  const SampledPulse& prev = state.pulse();
  const std::size_t n_samples = prev.n_samples();
  const cplx li = ordered[i].lambda;
  const cplx D = li - std::conj(li);
  const auto& rho_i = state.log_ratios().front();

  std::vector<cplx> q(prev.samples().begin(), prev.samples().end());
  std::vector<std::vector<cplx>> next(state.log_ratios().begin() + 1, state.log_ratios().end());

  for (std::size_t n = 0; n < n_samples; ++n) {
    const RatioWeights wgt = ratio_weights(rho_i[n]);
    q[n] += 2.0 * kJ * D * std::conj(wgt.weighted);

    // rho_k <- (alpha rho_k + beta) / (gamma rho_k + delta)
    for (std::size_t j = 0; j < next.size(); ++j) {
      const cplx lk = ordered[i + 1 + j].lambda;
      const cplx alpha = lk - li + D * wgt.proj;
      const cplx beta = -D * wgt.weighted;
      const cplx gamma = -D * std::conj(wgt.weighted);
      const cplx delta = lk - li + D * wgt.co_proj;
      cplx& lr = next[j][n];
      cplx num, den;
      double scale;
      if (lr.real() <= 0.0) {
        const cplx rk = std::exp(lr);
        num = alpha * rk + beta;
        den = gamma * rk + delta;
        scale = std::abs(gamma * rk) + std::abs(delta);
      } else {
        const cplx rinv = std::exp(-lr);
        num = alpha + beta * rinv;
        den = gamma + delta * rinv;
        scale = std::abs(gamma) + std::abs(delta * rinv);
      }
      if (!(std::abs(den) > 1e-15 * scale)) {
        std::ostringstream os;
        os << "darboux_step: ratio update denominator vanishes at t index " << n
           << " (t = " << prev.time(n) << ")";
        throw NumericalError(os.str());
      }
      lr = std::log(num) - std::log(den);
    }
  }
  return DarbouxState(i + 1, SampledPulse(prev.t0_half_width(), std::move(q)), std::move(next));
}

Synthesis synthesize(const DiscreteSpectrum& spectrum, const SynthesisGrid& grid,
                     const SynthesisOptions& options) {
  require_distinct(spectrum.eigenvalues());
  // Sampling q on a window centred at c is the same as sampling q(t + c) on
  // [-T0, T0], which carries Q_d e^{2j lam c}.
  std::vector<DiscretePoint> pts = ordered_points(spectrum, options.order);
  if (grid.centre != 0.0)
    for (auto& p : pts) p.qd *= std::exp(2.0 * kJ * p.lambda * grid.centre);
  const DiscreteSpectrum ordered(std::move(pts));

  SampledPulse pulse = SampledPulse::zeros(grid.t0_half_width, grid.n_steps + 1);
  if (options.algorithm == DarbouxAlgorithm::VectorUpdate) {
    pulse = synthesize_vector_form(ordered, grid);
  } else {
    DarbouxState state(ordered, grid);
    while (state.stage() < ordered.size()) state = darboux_step(state, ordered);
    pulse = state.pulse();
  }

  Synthesis out{std::move(pulse), grid.centre, 0.0, false};
  out.tail_ratio = tail_ratio(out.pulse);
  out.tail_warning = out.tail_ratio > options.tail_threshold;
  return out;
}

NonlinearSpectrum add_eigenvalue_spectral_update(const NonlinearSpectrum& spectrum, cplx lambda0,
                                                 cplx qd0) {
  if (!(lambda0.imag() > 0.0))
    throw InvalidInput("added eigenvalue must lie in the upper half-plane");
  for (const auto& p : spectrum.discrete.points())
    if (std::abs(p.lambda - lambda0) < kDefaultMinSeparation)
      throw DuplicateEigenvalue("added eigenvalue is already a zero of a(lambda)");

  const auto factor = [lambda0](cplx lam) {
    return (lam - std::conj(lambda0)) / (lam - lambda0);
  };

  std::vector<DiscretePoint> pts(spectrum.discrete.points().begin(),
                                 spectrum.discrete.points().end());
  for (auto& p : pts) p.qd *= factor(p.lambda);
  pts.push_back({lambda0, qd0, std::nullopt});

  NonlinearSpectrum out{DiscreteSpectrum(std::move(pts)), std::nullopt};
  if (spectrum.continuous) {
    const auto& cs = *spectrum.continuous;
    std::vector<double> grid(cs.lambda_grid().begin(), cs.lambda_grid().end());
    std::vector<cplx> qc(cs.qc().begin(), cs.qc().end());
    for (std::size_t k = 0; k < qc.size(); ++k) qc[k] *= factor(grid[k]);
    out.continuous = ContinuousSpectrum(std::move(grid), std::move(qc));
  }
  return out;
}

}  // namespace nft
