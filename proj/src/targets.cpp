#include "qspf/targets.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qspf {

void HamSimSpec::validate() const
{
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be finite and nonnegative");
  if (!(scale > 0.0 && scale < 1.0)) throw InvalidArgument("scale must lie in (0, 1)");
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw InvalidArgument("eps0 must lie in (0, 1)");
}

namespace {

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

  double next()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = rad * std::sin(ang);
    has_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

ChebTarget random_target(int d, double inf_norm_target, std::uint64_t seed)
{
  if (d < 0) throw InvalidArgument("degree must be nonnegative");
  if (!(inf_norm_target > 0.0 && inf_norm_target < 1.0)) throw InvalidArgument("inf_norm must lie in (0, 1)");
  NormalStream rng(seed);
  Eigen::VectorXd c(d + 1);
  for (int j = 0; j <= d; ++j) c(j) = rng.next();
  ChebTarget t(std::move(c));
  const double current = inf_norm(t);
  if (!(current > 0.0)) throw InvalidArgument("degenerate random draw");
  t.coeffs *= inf_norm_target / current;
  return t;
}

int hamsim_truncation(double tau, double eps0)
{
  int n = static_cast<int>(std::ceil(1.4 * std::abs(tau) + std::log(1.0 / eps0)));
  if (n % 2 != 0) ++n;
  return n;
}

Eigen::VectorXd bessel_j_sequence(double x, int nmax)
{
  if (nmax < 0) throw InvalidArgument("nmax must be nonnegative");
  if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("bessel argument must be finite and nonnegative");
  Eigen::VectorXd out(nmax + 1);

  if (x < 2.0) {
    const double h = 0.5 * x;
    double lead = 1.0;  // (x/2)^n / n!
    for (int n = 0; n <= nmax; ++n) {
      if (n > 0) lead *= h / n;
      double term = lead, sum = 0.0;
      for (int m = 0; m < 200 && term != 0.0; ++m) {
        sum += term;
        term *= -h * h / ((m + 1.0) * (m + n + 1.0));
        if (std::abs(term) < 1e-18 * std::abs(sum)) {
          sum += term;
          break;
        }
      }
      out(n) = sum;
    }
    return out;
  }

  const double top = std::max<double>(nmax, x);
  int start = static_cast<int>(std::ceil(top + 100.0 + 4.0 * std::sqrt(top)));
  if (start % 2 != 0) ++start;

  Eigen::VectorXd j = Eigen::VectorXd::Zero(start + 2);
  j(start) = 1e-300;
  for (int k = start; k >= 1; --k) {
    // J_{k-1} = (2k/x) J_k - J_{k+1}
    j(k - 1) = (2.0 * k / x) * j(k) - j(k + 1);
    if (std::abs(j(k - 1)) > 1e250) j.segment(k - 1, start - k + 3) *= 1e-250;
  }
  double norm = j(0);
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j(k);
  out = j.head(nmax + 1) / norm;
  return out;
}

ChebTarget hamsim_target(const HamSimSpec& spec)
{
  spec.validate();
  const int n = hamsim_truncation(spec.tau, spec.eps0);
  const int d = n / 2;
  const Eigen::VectorXd jv = bessel_j_sequence(spec.tau, n);
  Eigen::VectorXd c(d + 1);
  c(0) = spec.scale * jv(0);
  for (int k = 1; k <= d; ++k) c(k) = spec.scale * 2.0 * (k % 2 == 0 ? 1.0 : -1.0) * jv(2 * k);
  return ChebTarget(std::move(c));
}

}  // namespace qspf
