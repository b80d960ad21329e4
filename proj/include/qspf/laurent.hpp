#pragma once

#include <algorithm>
#include <complex>
#include <string>

#include <Eigen/Core>

#include "qspf/errors.hpp"
#include "qspf/fft.hpp"

namespace qspf {

/// Finite Laurent polynomial  p(z) = sum_{k=lo}^{hi} c_k z^k.
///
/// The window may carry exact zeros at either end; `trimmed()` removes them
/// and equality compares trimmed values. No epsilon trimming happens anywhere.
template <typename Scalar>
class LaurentPoly {
 public:
  using Complex = std::complex<Scalar>;
  using Coeffs = CVector<Scalar>;

  LaurentPoly() = default;
  LaurentPoly(int lo, Coeffs coeffs) : lo_(lo), coeffs_(std::move(coeffs)) {}

  static LaurentPoly zero() { return {}; }
  static LaurentPoly constant(Complex c) { return monomial(0, c); }
  static LaurentPoly monomial(int k, Complex c = Complex(1))
  {
    Coeffs v(1);
    v(0) = c;
    return {k, std::move(v)};
  }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  Eigen::Index size() const { return coeffs_.size(); }
  const Coeffs& coeffs() const { return coeffs_; }
  Coeffs& coeffs() { return coeffs_; }

  bool is_zero() const { return (coeffs_.array() == Complex(0)).all(); }

  Complex coeff(int k) const
  {
    if (k < lo_ || k > hi()) return Complex(0);
    return coeffs_(k - lo_);
  }

  Complex& operator[](int k) { return coeffs_(k - lo_); }

  LaurentPoly trimmed() const
  {
    Eigen::Index first = 0, last = coeffs_.size();
    while (first < last && coeffs_(first) == Complex(0)) ++first;
    while (last > first && coeffs_(last - 1) == Complex(0)) --last;
    if (first == last) return {};
    return {lo_ + static_cast<int>(first), coeffs_.segment(first, last - first)};
  }

  /// Same polynomial stored over [lo, hi]; the window must cover the support.
  LaurentPoly widened(int lo, int hi) const
  {
    Coeffs v = Coeffs::Zero(hi - lo + 1);
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
      const int k = lo_ + static_cast<int>(i);
      if (k < lo || k > hi) {
        if (coeffs_(i) != Complex(0)) throw InvalidArgument("widened window drops a nonzero coefficient");
        continue;
      }
      v(k - lo) = coeffs_(i);
    }
    return {lo, std::move(v)};
  }

  /// p*(z) = conj(p(1/conj(z))): coefficient k becomes conj(c_{-k}).
  LaurentPoly star() const
  {
    if (coeffs_.size() == 0) return {};
    return {-hi(), coeffs_.reverse().conjugate()};
  }

  /// Conjugates the coefficients in place of the exponents.
  LaurentPoly conj() const { return {lo_, coeffs_.conjugate()}; }

  Complex operator()(Complex z) const
  {
    // Horner on the polynomial part, then the z^lo shift.
    Complex acc(0);
    for (Eigen::Index i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_(i);
    return acc * std::pow(z, lo_);
  }

  LaurentPoly& operator*=(Complex s)
  {
    coeffs_ *= s;
    return *this;
  }

  friend LaurentPoly operator*(Complex s, LaurentPoly p) { return p *= s; }
  friend LaurentPoly operator*(LaurentPoly p, Complex s) { return p *= s; }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b)
  {
    if (a.size() == 0) return b;
    if (b.size() == 0) return a;
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    Coeffs v = Coeffs::Zero(hi - lo + 1);
    v.segment(a.lo() - lo, a.size()) += a.coeffs();
    v.segment(b.lo() - lo, b.size()) += b.coeffs();
    return {lo, std::move(v)};
  }

  friend LaurentPoly operator-(const LaurentPoly& p) { return {p.lo_, -p.coeffs_}; }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b)
  {
    const LaurentPoly ta = a.trimmed(), tb = b.trimmed();
    return ta.lo() == tb.lo() && ta.coeffs_ == tb.coeffs_;
  }

  Scalar max_abs() const { return coeffs_.size() ? coeffs_.cwiseAbs().maxCoeff() : Scalar(0); }

 private:
  int lo_ = 0;
  Coeffs coeffs_;
};

using Laurent = LaurentPoly<double>;

/// Max coefficientwise |p - q| over the union of windows.
template <typename Scalar>
Scalar max_abs_diff(const LaurentPoly<Scalar>& p, const LaurentPoly<Scalar>& q)
{
  return (p - q).max_abs();
}

/// Samples of a function at z_m = exp(2 pi i m / n), m = 0..n-1; n a power of two.
template <typename Scalar>
struct UnitGridSamples {
  CVector<Scalar> values;

  Eigen::Index n() const { return values.size(); }
};

/// FFT product; the transform length is the next power of two >= output width.
template <typename Scalar>
LaurentPoly<Scalar> laurent_mul(const LaurentPoly<Scalar>& p, const LaurentPoly<Scalar>& q)
{
  using C = CVector<Scalar>;
  if (p.size() == 0 || q.size() == 0) return {};
  const Eigen::Index width = p.size() + q.size() - 1;
  const auto n = static_cast<Eigen::Index>(fft::next_pow2(static_cast<std::size_t>(width)));
  C a = C::Zero(n), b = C::Zero(n);
  a.head(p.size()) = p.coeffs();
  b.head(q.size()) = q.coeffs();
  C fa(n), fb(n);
  fft::to_circle<Scalar>(a.data(), fa.data(), n);
  fft::to_circle<Scalar>(b.data(), fb.data(), n);
  fa.array() *= fb.array();
  fft::from_circle<Scalar>(fa.data(), a.data(), n);
  return {p.lo() + q.lo(), a.head(width)};
}

/// Values of p on the size-n unit-circle grid.
template <typename Scalar>
UnitGridSamples<Scalar> laurent_eval_grid(const LaurentPoly<Scalar>& p, Eigen::Index n)
{
  if (!fft::is_pow2(static_cast<std::size_t>(n))) throw InvalidArgument("grid size must be a power of two");
  if (p.size() > n)
    throw AliasError("grid of size " + std::to_string(n) + " cannot hold a window of width " +
                     std::to_string(p.size()));
  CVector<Scalar> buf = CVector<Scalar>::Zero(n);
  // Coefficient of z^k lands in slot k mod n.
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Eigen::Index k = p.lo() + i;
    buf(((k % n) + n) % n) = p.coeffs()(i);
  }
  UnitGridSamples<Scalar> out{CVector<Scalar>(n)};
  fft::to_circle<Scalar>(buf.data(), out.values.data(), n);
  return out;
}

/// Coefficient window [lo, lo+len) recovered by inverse FFT. Lossy when the
/// window is narrower than the true support.
template <typename Scalar>
LaurentPoly<Scalar> grid_to_laurent(const UnitGridSamples<Scalar>& samples, int lo, Eigen::Index len)
{
  const Eigen::Index n = samples.n();
  if (!fft::is_pow2(static_cast<std::size_t>(n))) throw InvalidArgument("grid size must be a power of two");
  if (len > n) throw AliasError("coefficient window wider than the grid");
  const CVector<Scalar> all = fft::from_circle<Scalar>(samples.values);
  CVector<Scalar> v(len);
  for (Eigen::Index i = 0; i < len; ++i) {
    const Eigen::Index k = lo + i;
    v(i) = all(((k % n) + n) % n);
  }
  return {lo, std::move(v)};
}

}  // namespace qspf
