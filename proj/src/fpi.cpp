#include "qspf/fpi.hpp"

#include <cstdio>

#include <cmath>
#include <sstream>

namespace qspf {

static std::string fmt_sci(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void FpiConfig::validate() const
{
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
}

double check_convergence_domain(const ChebTarget& target) { return target.one_norm(); }

SolveReport fpi_solve(const ChebTarget& target, const FpiConfig& cfg)
{
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Eigen::VectorXd& fhat = target.coeffs;

  SolveReport rep;
  rep.psi.reduced = Eigen::VectorXd::Zero(fhat.size());
  const double one_norm = check_convergence_domain(target);
  if (one_norm >= kFpiOneNormBound) {
    std::ostringstream msg;
    msg << "||f_hat||_1 = " << one_norm << " >= " << kFpiOneNormBound << "; convergence is not guaranteed";
    rep.warnings.push_back(msg.str());
  }

  auto finish = [&] { rep.wall_time = std::chrono::steady_clock::now() - start; };

  int blowups = 0;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Eigen::VectorXd r = qsp_map_F(rep.psi, cfg.evaluator) - fhat;
    const double res = r.lpNorm<Eigen::Infinity>();
    rep.residual_history.push_back(res);
    rep.iterations = it;
    if (res <= cfg.tol) {
      finish();
      return rep;
    }
    blowups = (!std::isfinite(res) || res > 10.0 * rep.residual_history.front()) ? blowups + 1 : 0;
    if (blowups >= 5) {
      finish();
      throw DivergenceError("fixed-point iteration diverged after " + std::to_string(it) + " iterations", rep);
    }
    rep.psi.reduced -= 0.5 * r;
  }
  finish();
  throw MaxIterReached("no convergence within " + std::to_string(cfg.max_iter) + " iterations (residual " +
                           fmt_sci(rep.residual_history.back()) + ")",
                       rep);
}

}  // namespace qspf
