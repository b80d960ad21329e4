#include "qspf/weiss.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace qspf {

using Complex = std::complex<double>;

void WeissConfig::validate() const
{
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("eta must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  if (!fft::is_pow2(static_cast<std::size_t>(max_grid))) throw InvalidArgument("max_grid must be a power of two");
}

Eigen::Index weiss_initial_grid(int d, const WeissConfig& cfg)
{
  const double dd = d + 1.0;
  // Coefficients of log(1 - |b|^2) decay like exp(-k sqrt(eta) / d).
  const double guess = 4.0 * dd / std::sqrt(cfg.eta) * std::log(dd / (cfg.eta * cfg.eps));
  const double floor = 2.0 * (2.0 * d + 1.0);
  const auto want = static_cast<std::size_t>(std::ceil(std::max(guess, floor)));
  return std::min(static_cast<Eigen::Index>(fft::next_pow2(want)), cfg.max_grid);
}

namespace {

WeissResult weiss_on_grid(const Laurent& b, int d, Eigen::Index n, const WeissConfig& cfg)
{
  const CVector<double> bv = laurent_eval_grid(b, n).values;
  const double margin = cfg.eta * (2.0 - cfg.eta) * (1.0 - 1e-3);

  CVector<double> r(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const double gap = 1.0 - std::norm(bv(m));
    if (!(gap >= margin))
      throw NormViolation("1 - |b|^2 = " + std::to_string(gap) + " below the margin for eta = " +
                          std::to_string(cfg.eta));
    r(m) = 0.5 * std::log(gap);
  }
  const CVector<double> rhat = fft::from_circle(r);

  // Anti-analytic projection; slot n - k holds exponent -k.
  const Eigen::Index half = n / 2;
  CVector<double> ghat = CVector<double>::Zero(n);
  ghat(0) = rhat(0);
  for (Eigen::Index k = 1; k < half; ++k) ghat(n - k) = 2.0 * rhat(n - k);
  ghat(half) = rhat(half);
  CVector<double> av = fft::to_circle(ghat);
  av = av.array().exp();

  WeissResult out;
  out.grid_size = n;
  double unit = 0.0;
  CVector<double> ratio(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    unit = std::max(unit, std::abs(std::norm(av(m)) + std::norm(bv(m)) - 1.0));
    ratio(m) = bv(m) / av(m);
  }
  out.residual_unitarity = unit;

  const CVector<double> chat = fft::from_circle(ratio);
  out.c = chat.head(d + 1);

  double tail = 0.0;
  for (Eigen::Index k = d + 1; k < half; ++k) tail = std::max(tail, std::abs(chat(k)));
  for (Eigen::Index k = n / 4; k <= half; ++k) tail = std::max(tail, std::abs(rhat(k)));
  out.tail = tail;

  const CVector<double> ahat = fft::from_circle(av);
  double leak = 0.0;
  for (Eigen::Index k = 1; k < half; ++k) leak = std::max(leak, std::abs(ahat(k)));
  out.outer_leak = leak;
  if (cfg.keep_outer) {
    out.a_coeffs.resize(half);
    out.a_coeffs(0) = ahat(0);
    for (Eigen::Index j = 1; j < half; ++j) out.a_coeffs(j) = ahat(n - j);
  }
  return out;
}

}  // namespace

WeissResult weiss(const ChebTarget& target, const WeissConfig& cfg)
{
  cfg.validate();
  const int d = target.degree_half();
  const Laurent b = cheb_to_laurent_b(target);
  Eigen::Index n = weiss_initial_grid(d, cfg);
  if (n < 2 * d + 1) throw GridExhausted("max_grid smaller than the coefficient window");
  for (;;) {
    WeissResult res = weiss_on_grid(b, d, n, cfg);
    if (res.tail <= cfg.eps && res.residual_unitarity <= cfg.eps) return res;
    if (n >= cfg.max_grid)
      throw GridExhausted("no convergence up to N = " + std::to_string(n) +
                          " (tail = " + std::to_string(res.tail) + ")");
    n *= 2;
  }
}

double rhw_reference_phase(const Eigen::VectorXcd& c, int k)
{
  const int d = static_cast<int>(c.size()) - 1;
  if (k < 0 || k > d) throw InvalidArgument("phase index out of range");
  const int m = d + 1 - k;
  // Hankel: first column (c_k..c_d), last row (c_d, 0, ..., 0).
  Eigen::MatrixXcd xi = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; i + j < m; ++j) xi(i, j) = c(k + i + j);

  Eigen::MatrixXcd sys(2 * m, 2 * m);
  sys.setIdentity();
  sys.topRightCorner(m, m) = -xi;
  sys.bottomLeftCorner(m, m) = -xi;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * m);
  rhs(0) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(sys);
  if (!lu.isInvertible()) throw SingularSystem("Hankel block system is rank deficient at k = " + std::to_string(k));
  const Eigen::VectorXcd sol = lu.solve(rhs);
  const Complex ratio = Complex(0, -1) * sol(m) / sol(0);
  return std::atan(ratio.real());
}

}  // namespace qspf
