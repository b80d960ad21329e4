#include "qspf/half_cholesky.hpp"

#include <cmath>
#include <string>

namespace qspf {

Eigen::VectorXd build_p(const Eigen::VectorXcd& c)
{
  const Eigen::Index n = c.size();
  if (n == 0) throw InvalidArgument("empty coefficient vector");
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  Eigen::VectorXd p(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<double> ck = c(n - 1 - j);
    if (std::abs(ck.real()) > 1e-8 * scale)
      throw NotImaginary("c_" + std::to_string(n - 1 - j) + " has real part " + std::to_string(ck.real()));
    // -i * (i y) = y
    p(j) = ck.imag();
  }
  return p;
}

namespace {

struct Rotation {
  double c;
  double s;
  double r;
};

Rotation rotation_for(double a, double b, int k)
{
  const double r = std::hypot(a, b);
  if (!(r >= 1e-300)) throw BreakdownError("vanishing pivot at step " + std::to_string(k));
  return {a / r, b / r, r};
}

}  // namespace

GeneratorPair schur_rotate(const GeneratorPair& g)
{
  const int k = g.step;
  const Rotation rot = rotation_for(g.u(k), g.v(k), k);
  GeneratorPair out{rot.c * g.u + rot.s * g.v, -rot.s * g.u + rot.c * g.v, k};
  out.u(k) = rot.r;
  out.v(k) = 0.0;
  return out;
}

HalfCholResult schur_ldl_halfsolve(const Eigen::VectorXd& p, bool keep_L)
{
  const Eigen::Index n = p.size();
  if (n == 0) throw InvalidArgument("empty right-hand side");

  // Active rows are k..n-1. The first generator column is kept with an offset
  // of k (gu(j) is row k+j), which absorbs the down-shift Z u for free; the
  // second column is stored unshifted.
  Eigen::VectorXd gu = Eigen::VectorXd::Zero(n);
  gu(0) = 1.0;
  Eigen::VectorXd gv = p;

  HalfCholResult res;
  res.y = p;
  res.diagD.resize(n);
  if (keep_L) res.L = Eigen::MatrixXd::Zero(n, n);

  double* u = gu.data();
  double* y = res.y.data();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index len = n - k;
    double* v = gv.data() + k;
    const Rotation rot = rotation_for(u[0], v[0], static_cast<int>(k));
    u[0] = rot.r;
    v[0] = 0.0;
    res.diagD(k) = rot.r * rot.r;

    // Rotate the remaining rows and eliminate with column k of L = u / r.
    const double f = y[k] / rot.r;
    for (Eigen::Index j = 1; j < len; ++j) {
      const double a = u[j], b = v[j];
      const double nu = rot.c * a + rot.s * b;
      u[j] = nu;
      v[j] = rot.c * b - rot.s * a;
      y[k + j] -= f * nu;
    }
    if (keep_L) res.L->col(k).tail(len) = gu.head(len) / rot.r;
  }

  res.phases.reduced = res.y.array().atan().reverse();
  return res;
}

HalfCholResult hc_phase_factors(const ChebTarget& target, const WeissConfig& cfg)
{
  WeissResult w = weiss(target, cfg);
  HalfCholResult res = schur_ldl_halfsolve(build_p(w.c));
  res.weiss = std::move(w);
  return res;
}

}  // namespace qspf
