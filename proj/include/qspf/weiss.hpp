#pragma once

#include <Eigen/Core>

#include "qspf/chebyshev.hpp"

namespace qspf {

struct WeissConfig {
  /// Lower bound on 1 - ||f||_inf.
  double eta = 0.5;
  /// Target accuracy for the computed coefficients of b/a.
  double eps = 1e-12;
  Eigen::Index max_grid = Eigen::Index(1) << 24;
  /// Keep the coefficients of the outer function a in the result.
  bool keep_outer = false;

  void validate() const;
};

struct WeissResult {
  /// Coefficients c_0..c_d of b/a (purely imaginary up to rounding).
  Eigen::VectorXcd c;
  Eigen::Index grid_size = 0;
  /// max over the grid of | |a|^2 + |b|^2 - 1 |.
  double residual_unitarity = 0.0;
  /// Aliasing indicator: largest coefficient of b/a above exponent d, or of
  /// log|a| near the Nyquist band, on the final grid.
  double tail = 0.0;
  /// Largest coefficient of a at a strictly positive exponent.
  double outer_leak = 0.0;
  /// a_coeffs(j) is the coefficient of z^{-j} (only with keep_outer).
  Eigen::VectorXcd a_coeffs;
};

/// Outer complement a of b = i f and the coefficients c_0..c_d of b/a.
///
/// On an N-point circle grid: R = log(1 - |b|^2) / 2, G = projection of R on
/// the nonpositive Fourier modes (doubled off zero), a = exp(G), then an
/// inverse FFT of b/a. N doubles until the aliasing indicator drops below
/// eps; throws GridExhausted if that needs more than max_grid points and
/// NormViolation if 1 - |b|^2 falls below the margin implied by eta.
WeissResult weiss(const ChebTarget& target, const WeissConfig& cfg);

/// Starting grid size for a given target size and configuration.
Eigen::Index weiss_initial_grid(int d, const WeissConfig& cfg);

/// Reference phase psi_k from the dense Hankel block system
///   [I, -Xi_k; -Xi_k, I] [a_k; b_k] = [e_0; 0],  psi_k = arctan(-i b_k0 / a_k0).
/// O((d-k)^3); intended as an oracle for small d.
double rhw_reference_phase(const Eigen::VectorXcd& c, int k);

}  // namespace qspf
