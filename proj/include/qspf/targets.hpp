#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "qspf/chebyshev.hpp"

namespace qspf {

/// cos(tau x) target truncated from its Jacobi-Anger expansion.
struct HamSimSpec {
  double tau = 0.0;
  double scale = 0.999;
  /// Truncation accuracy.
  double eps0 = 1e-15;

  void validate() const;
};

/// Standard normal coefficients from a seeded mt19937_64 stream (Box-Muller
/// on 53-bit uniforms, so the sequence is identical on every platform),
/// rescaled so that max |f| over [-1, 1] equals inf_norm.
ChebTarget random_target(int d, double inf_norm, std::uint64_t seed);

/// Even truncation order n = ceil(1.4 tau + ln(1/eps0)), bumped to even.
int hamsim_truncation(double tau, double eps0);

/// f_0 = scale J_0(tau), f_j = 2 scale (-1)^j J_{2j}(tau), j = 1..n/2.
ChebTarget hamsim_target(const HamSimSpec& spec);

/// J_0(x), ..., J_nmax(x) for x >= 0: power series for x < 2, otherwise
/// Miller's backward recurrence normalized by J_0 + 2 sum_k J_{2k} = 1.
Eigen::VectorXd bessel_j_sequence(double x, int nmax);

}  // namespace qspf
