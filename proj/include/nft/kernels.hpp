// One-step transfer matrices for the Zakharov-Shabat system written in the
// rotating frame psi = (phi_1 e^{j lam t}, phi_2 e^{-j lam t}), where
//
//   d psi / dt = [[0, q(t) e^{2j lam t}], [-q*(t) e^{-2j lam t}, 0]] psi,
//
// psi(-T0) = (1, 0) and (a, b) = psi(T0).
//
// Kernels:
//   Trapezoid      exact exponential of the piecewise-constant generator,
//                  G_n = [[cos(|q_n|h), sin(|q_n|h) e^{j theta_n + 2j lam t_n}],
//                         [-sin(|q_n|h) e^{-j theta_n - 2j lam t_n}, cos(|q_n|h)]],
//                  with half steps G_0^{1/2}, G_N^{-1/2} at the window edges.
//   Euler          first-order truncation of G_n (det = 1 + h^2 |q_n|^2).
//   CrankNicolson  second-order (tan half-angle) truncation, unit determinant.
//   AblowitzLadik  normalised Euler step; reproduction-grade only.
//
// All kernels except Trapezoid are a plain product G_N ... G_1 with no
// boundary correction.
#pragma once

#include <functional>
#include <string_view>

#include "nft/spectra.hpp"

namespace nft {

enum class KernelKind { Trapezoid, Euler, CrankNicolson, AblowitzLadik };

std::string_view to_string(KernelKind kind) noexcept;
/// Accepts trapezoid|td, euler, cn|crank-nicolson, al|ablowitz-ladik.
KernelKind parse_kernel(std::string_view name);

/// True for kernels whose steps have det = 1, so that h -> -h inverts a step.
bool has_unit_determinant(KernelKind kind) noexcept;

/// One step of length h (h may be negative) using the sample q_n at t_n.
TransferMatrix step_matrix(KernelKind kind, cplx q_n, double t_n, cplx lambda, double h);

/// Element-wise d/d(lambda) of step_matrix.
TransferMatrix step_matrix_dlambda(KernelKind kind, cplx q_n, double t_n, cplx lambda, double h);

/// Exact inverse of step_matrix(kind, q_n, t_n, lambda, h), in closed form.
TransferMatrix inverse_step_matrix(KernelKind kind, cplx q_n, double t_n, cplx lambda, double h);
TransferMatrix inverse_step_matrix_dlambda(KernelKind kind, cplx q_n, double t_n, cplx lambda,
                                           double h);

/// Largest |Im(lambda)| * T0 product for which e^{2 |Im lambda| T0} is
/// representable with headroom.
inline constexpr double kMaxExponent = 350.0;

/// Plain left-to-right propagation of (1, 0) through the whole window.
/// Returns (a_N, b_N) and their lambda-derivatives.
/// Throws NumericalError if the exponential weights overflow.
ScatteringData forward_scatter(const SampledPulse& pulse, cplx lambda, KernelKind kind);

// ---------------------------------------------------------------------------
// Scalar model problem dx/dt = f(t) x, x(0) = 1, on [0, T].
// ---------------------------------------------------------------------------

struct ScalarSchemeErrors {
  double exact = 0.0;
  double trapezoid = 0.0;  ///< |x_N - exact| for x_{n+1} = e^{h f_{n+1}/2} e^{h f_n/2} x_n
  double euler = 0.0;      ///< forward Euler, x_{n+1} = (1 + h f_n) x_n
  double crank_nicolson = 0.0;
  double x_trapezoid = 1.0;  ///< the approximations x_N themselves
  double x_euler = 1.0;
  double x_crank_nicolson = 1.0;
};

/// `integral` is int_0^T f; when absent it is computed by adaptive
/// Gauss-Kronrod quadrature.
ScalarSchemeErrors scalar_trapezoid_demo(const std::function<double(double)>& f, double T,
                                         std::size_t N,
                                         std::optional<double> integral = std::nullopt);

}  // namespace nft
