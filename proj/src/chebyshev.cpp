#include "qspf/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace qspf {

ChebTarget::ChebTarget(Eigen::VectorXd c) : coeffs(std::move(c))
{
  if (coeffs.size() == 0) throw InvalidArgument("target needs at least one coefficient");
  if (!coeffs.allFinite()) throw InvalidArgument("target coefficients must be finite");
}

Laurent cheb_to_laurent_b(const ChebTarget& target)
{
  const int d = target.degree_half();
  Laurent::Coeffs v = Laurent::Coeffs::Zero(2 * d + 1);
  const std::complex<double> i(0, 1);
  v(d) = i * target.coeffs(0);
  for (int j = 1; j <= d; ++j) {
    const auto half = i * (0.5 * target.coeffs(j));
    v(d + j) = half;
    v(d - j) = half;
  }
  return {-d, std::move(v)};
}

namespace {

// f as a function of w = 2 theta: F(w) = sum_j c_j cos(j w).
double eval_angle(const Eigen::VectorXd& c, double w)
{
  return cheb_even_eval<double>(c, std::cos(0.5 * w));
}

}  // namespace

double inf_norm(const ChebTarget& target)
{
  const Eigen::VectorXd& c = target.coeffs;
  const int d = target.degree_half();
  if (d == 0) return std::abs(c(0));

  // F(w) is a cosine series of degree d; 16x oversampling in w.
  const auto n = static_cast<Eigen::Index>(fft::next_pow2(16 * static_cast<std::size_t>(d + 1)));
  CVector<double> buf = CVector<double>::Zero(n);
  buf(0) = c(0);
  for (int j = 1; j <= d; ++j) {
    buf(j) = 0.5 * c(j);
    buf(n - j) = 0.5 * c(j);
  }
  const CVector<double> vals = fft::to_circle(buf);

  // Only w in [0, pi] is needed by symmetry.
  const Eigen::Index half = n / 2;
  std::vector<Eigen::Index> peaks;
  for (Eigen::Index m = 0; m <= half; ++m) {
    const double here = std::abs(vals(m).real());
    const double left = std::abs(vals((m - 1 + n) % n).real());
    const double right = std::abs(vals((m + 1) % n).real());
    if (here >= left && here >= right) peaks.push_back(m);
  }
  std::sort(peaks.begin(), peaks.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(vals(a).real()) > std::abs(vals(b).real());
  });
  if (peaks.size() > 8) peaks.resize(8);

  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  double best = 0.0;
  for (Eigen::Index m : peaks) {
    // Golden-section search for the max of |F| on the bracketing cell.
    auto g = [&](double w) { return -std::abs(eval_angle(c, w)); };
    double a = (static_cast<double>(m) - 1.0) * h, b = (static_cast<double>(m) + 1.0) * h;
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double g1 = g(x1), g2 = g(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
      if (g1 < g2) {
        b = x2;
        x2 = x1;
        g2 = g1;
        x1 = b - r * (b - a);
        g1 = g(x1);
      } else {
        a = x1;
        x1 = x2;
        g1 = g2;
        x2 = a + r * (b - a);
        g2 = g(x2);
      }
    }
    best = std::max({best, -g1, -g2, std::abs(vals(m).real())});
  }
  return best;
}

}  // namespace qspf
