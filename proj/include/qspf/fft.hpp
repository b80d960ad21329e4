#pragma once

#include <bit>
#include <complex>
#include <cstddef>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

namespace qspf {

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Thin layer over Eigen's FFT module. Sizes passed here are powers of two.
///
/// Convention: for coefficients c_0..c_{n-1} of sum_k c_k z^k,
/// `to_circle` returns the samples at z_m = exp(2 pi i m / n) and
/// `from_circle` is its exact inverse.
namespace fft {

inline bool is_pow2(std::size_t n) { return n != 0 && std::has_single_bit(n); }

inline std::size_t next_pow2(std::size_t n) { return n <= 1 ? 1 : std::bit_ceil(n); }

// Plans are cached per thread; kissfft keeps twiddle tables keyed by size.
template <typename Scalar>
Eigen::FFT<Scalar>& engine()
{
  thread_local Eigen::FFT<Scalar> e = [] {
    Eigen::FFT<Scalar> f;
    f.SetFlag(Eigen::FFT<Scalar>::Unscaled);
    return f;
  }();
  return e;
}

template <typename Scalar>
void to_circle(const std::complex<Scalar>* coeffs, std::complex<Scalar>* samples, Eigen::Index n)
{
  // kissfft does not handle a single point.
  if (n == 1) {
    samples[0] = coeffs[0];
    return;
  }
  engine<Scalar>().inv(samples, coeffs, n);
}

template <typename Scalar>
void from_circle(const std::complex<Scalar>* samples, std::complex<Scalar>* coeffs, Eigen::Index n)
{
  if (n == 1) {
    coeffs[0] = samples[0];
    return;
  }
  engine<Scalar>().fwd(coeffs, samples, n);
  const Scalar scale = Scalar(1) / Scalar(n);
  for (Eigen::Index i = 0; i < n; ++i) coeffs[i] *= scale;
}

template <typename Scalar>
CVector<Scalar> to_circle(const CVector<Scalar>& coeffs)
{
  CVector<Scalar> out(coeffs.size());
  to_circle<Scalar>(coeffs.data(), out.data(), coeffs.size());
  return out;
}

template <typename Scalar>
CVector<Scalar> from_circle(const CVector<Scalar>& samples)
{
  CVector<Scalar> out(samples.size());
  from_circle<Scalar>(samples.data(), out.data(), samples.size());
  return out;
}

}  // namespace fft
}  // namespace qspf
