#pragma once

#include <Eigen/Core>

#include "qspf/laurent.hpp"

namespace qspf {

/// Even target f(x) = sum_{j=0}^{d} coeffs(j) T_{2j}(x).
struct ChebTarget {
  Eigen::VectorXd coeffs;

  ChebTarget() : coeffs(Eigen::VectorXd::Zero(1)) {}
  explicit ChebTarget(Eigen::VectorXd c);

  int degree_half() const { return static_cast<int>(coeffs.size()) - 1; }
  double one_norm() const { return coeffs.lpNorm<1>(); }
};

/// b(z) = i f(x) under x = cos(theta), z = exp(2 i theta); window [-d, d].
Laurent cheb_to_laurent_b(const ChebTarget& target);

/// Clenshaw evaluation of an even Chebyshev series at x.
template <typename Scalar, typename Derived>
Scalar cheb_even_eval(const Eigen::MatrixBase<Derived>& coeffs, Scalar x)
{
  // T_{2j}(x) = T_j(2x^2 - 1)
  const Scalar y = Scalar(2) * x * x - Scalar(1);
  Scalar b1(0), b2(0);
  for (Eigen::Index j = coeffs.size() - 1; j >= 1; --j) {
    const Scalar b0 = Scalar(coeffs(j)) + Scalar(2) * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return Scalar(coeffs(0)) + y * b1 - b2;
}

inline double eval(const ChebTarget& t, double x) { return cheb_even_eval<double>(t.coeffs, x); }

/// max_{x in [-1,1]} |f(x)|, from an oversampled FFT grid followed by local
/// refinement around the largest grid peaks.
double inf_norm(const ChebTarget& target);

}  // namespace qspf
