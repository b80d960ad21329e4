#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "qspf/chebyshev.hpp"
#include "qspf/qsp_eval.hpp"

namespace qspf {

/// Sufficient condition on ||f_hat||_1 for the fixed-point map to contract.
inline constexpr double kFpiOneNormBound = 0.861;

struct FpiConfig {
  /// Threshold on ||F(Psi) - f_hat||_inf.
  double tol = 1e-12;
  int max_iter = 500;
  Evaluator evaluator = Evaluator::fast;

  void validate() const;
};

struct SolveReport {
  PhaseFactors psi;
  /// Number of evaluations of F, including the one that met the tolerance.
  int iterations = 0;
  /// ||F(Psi^(k)) - f_hat||_inf for k = 0, 1, ...
  std::vector<double> residual_history;
  std::chrono::duration<double> wall_time{0};
  std::vector<std::string> warnings;
};

/// Solver failure; carries the partial report.
class FpiError : public Error {
 public:
  FpiError(const std::string& what, SolveReport report) : Error(what), report_(std::move(report)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

class DivergenceError : public FpiError {
 public:
  using FpiError::FpiError;
};

class MaxIterReached : public FpiError {
 public:
  using FpiError::FpiError;
};

/// ||f_hat||_1 over all coefficients; compare against kFpiOneNormBound.
double check_convergence_domain(const ChebTarget& target);

/// Psi^(0) = 0,  Psi^(k+1) = Psi^(k) - (F(Psi^(k)) - f_hat) / 2.
///
/// Stops once the residual is within tol. Outside the guaranteed regime a
/// warning is recorded and the iteration proceeds; five consecutive residuals
/// above ten times the initial one raise DivergenceError.
SolveReport fpi_solve(const ChebTarget& target, const FpiConfig& cfg);

}  // namespace qspf
