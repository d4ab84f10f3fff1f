#include "nft/kernels.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace nft {

namespace {

// Off-diagonal phase factors e^{+2j lam t} and e^{-2j lam t}.
struct Phase {
  cplx up;
  cplx down;
};

Phase phase(double t, cplx lambda) {
  const cplx arg = 2.0 * kJ * lambda * t;
  return {std::exp(arg), std::exp(-arg)};
}

// Every kernel step has the shape [[d, u], [l, d]] with u ~ e^{2j lam t}
// and l ~ e^{-2j lam t}.
TransferMatrix shaped(cplx d, cplx u, cplx l) { return {d, u, l, d}; }

TransferMatrix derivative_of(const TransferMatrix& g, double t) {
  // d/dlam of e^{+-2j lam t} is +-2j t times itself; the diagonal is lam-free.
  return {0.0, 2.0 * kJ * t * g.m12, -2.0 * kJ * t * g.m21, 0.0};
}

}  // namespace

std::string_view to_string(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::Trapezoid: return "trapezoid";
    case KernelKind::Euler: return "euler";
    case KernelKind::CrankNicolson: return "cn";
    case KernelKind::AblowitzLadik: return "al";
  }
  return "?";
}

KernelKind parse_kernel(std::string_view name) {
  if (name == "trapezoid" || name == "td") return KernelKind::Trapezoid;
  if (name == "euler") return KernelKind::Euler;
  if (name == "cn" || name == "crank-nicolson") return KernelKind::CrankNicolson;
  if (name == "al" || name == "ablowitz-ladik") return KernelKind::AblowitzLadik;
  throw InvalidInput("unknown kernel '" + std::string(name) + "'");
}

bool has_unit_determinant(KernelKind kind) noexcept { return kind != KernelKind::Euler; }

TransferMatrix step_matrix(KernelKind kind, cplx q_n, double t_n, cplx lambda, double h) {
  const double mag = std::abs(q_n);
  // theta_n is undefined at q_n = 0; every kernel reduces to the identity there.
  if (mag == 0.0) return TransferMatrix::identity();
  const Phase ph = phase(t_n, lambda);
  switch (kind) {
    case KernelKind::Trapezoid: {
      const cplx unit = q_n / mag;
      const double s = std::sin(mag * h);
      return shaped(std::cos(mag * h), s * unit * ph.up, -s * std::conj(unit) * ph.down);
    }
    case KernelKind::Euler:
      return shaped(1.0, h * q_n * ph.up, -h * std::conj(q_n) * ph.down);
    case KernelKind::CrankNicolson: {
      const double k = 0.25 * h * h * mag * mag;
      const double inv = 1.0 / (1.0 + k);
      return shaped((1.0 - k) * inv, h * q_n * ph.up * inv, -h * std::conj(q_n) * ph.down * inv);
    }
    case KernelKind::AblowitzLadik: {
      const double inv = 1.0 / std::sqrt(1.0 + h * h * mag * mag);
      return shaped(inv, h * q_n * ph.up * inv, -h * std::conj(q_n) * ph.down * inv);
    }
  }
  return TransferMatrix::identity();
}

TransferMatrix step_matrix_dlambda(KernelKind kind, cplx q_n, double t_n, cplx lambda, double h) {
  if (q_n == cplx{}) return TransferMatrix::zero();
  return derivative_of(step_matrix(kind, q_n, t_n, lambda, h), t_n);
}

TransferMatrix inverse_step_matrix(KernelKind kind, cplx q_n, double t_n, cplx lambda, double h) {
  if (has_unit_determinant(kind)) return step_matrix(kind, q_n, t_n, lambda, -h);
  // Euler: adjugate over det = 1 + h^2 |q_n|^2.
  const TransferMatrix g = step_matrix(kind, q_n, t_n, lambda, -h);
  const double inv = 1.0 / (1.0 + h * h * std::norm(q_n));
  return {g.m11 * inv, g.m12 * inv, g.m21 * inv, g.m22 * inv};
}

TransferMatrix inverse_step_matrix_dlambda(KernelKind kind, cplx q_n, double t_n, cplx lambda,
                                           double h) {
  if (q_n == cplx{}) return TransferMatrix::zero();
  return derivative_of(inverse_step_matrix(kind, q_n, t_n, lambda, h), t_n);
}

ScatteringData forward_scatter(const SampledPulse& pulse, cplx lambda, KernelKind kind) {
  const double T0 = pulse.t0_half_width();
  if (std::abs(lambda.imag()) * T0 > kMaxExponent) {
    std::ostringstream os;
    os << "forward_scatter: e^{2|Im(lambda)| T0} overflows for lambda = " << lambda
       << ", T0 = " << T0 << "; use the forward-backward method";
    throw NumericalError(os.str());
  }

  const std::size_t N = pulse.n_steps();
  const double h = pulse.step();
  const bool trapezoid = kind == KernelKind::Trapezoid;

  Vec2 w{1.0, 0.0};
  Vec2 dw{0.0, 0.0};
  if (trapezoid) {
    const TransferMatrix g = step_matrix(kind, pulse[0], pulse.time(0), lambda, 0.5 * h);
    const TransferMatrix dg = step_matrix_dlambda(kind, pulse[0], pulse.time(0), lambda, 0.5 * h);
    dw = dg * w;
    w = g * w;
  }
  for (std::size_t n = 1; n <= N; ++n) {
    const double t = pulse.time(n);
    const TransferMatrix g = step_matrix(kind, pulse[n], t, lambda, h);
    const TransferMatrix dg = step_matrix_dlambda(kind, pulse[n], t, lambda, h);
    dw = g * dw + dg * w;
    w = g * w;
  }
  if (trapezoid) {
    const double t = pulse.time(N);
    const TransferMatrix g = step_matrix(kind, pulse[N], t, lambda, -0.5 * h);
    const TransferMatrix dg = step_matrix_dlambda(kind, pulse[N], t, lambda, -0.5 * h);
    dw = g * dw + dg * w;
    w = g * w;
  }

  ScatteringData out{w.x0, w.x1, dw.x0, dw.x1};
  for (const cplx v : {out.a, out.b, out.a_prime, *out.b_prime})
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError(
          "forward_scatter: accumulator overflow; use the forward-backward method");
  return out;
}

ScalarSchemeErrors scalar_trapezoid_demo(const std::function<double(double)>& f, double T,
                                         std::size_t N, std::optional<double> integral) {
  if (N == 0 || !(T > 0.0)) throw InvalidInput("scalar demo needs N >= 1 and T > 0");
  if (!integral)
    integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, T, 15, 1e-15);

  const double h = T / static_cast<double>(N);
  double x_trap = 1.0, x_euler = 1.0, x_cn = 1.0;
  double f_prev = f(0.0);
  for (std::size_t n = 0; n < N; ++n) {
    const double f_next = f(static_cast<double>(n + 1) * h);
    x_trap *= std::exp(0.5 * h * f_next) * std::exp(0.5 * h * f_prev);
    x_euler *= 1.0 + h * f_prev;
    x_cn *= (1.0 + 0.5 * h * f_prev) / (1.0 - 0.5 * h * f_next);
    f_prev = f_next;
  }
  const double exact = std::exp(*integral);
  return {exact,  std::abs(x_trap - exact), std::abs(x_euler - exact), std::abs(x_cn - exact),
          x_trap, x_euler, x_cn};
}

}  // namespace nft
