#pragma once

#include <optional>

#include <Eigen/Core>

#include "qspf/qsp_eval.hpp"
#include "qspf/weiss.hpp"

namespace qspf {

/// Rank-2 generator [u, v] of the Schur recursion at step k, with zero padding
/// at the top: u(0..k-1) = 0 and v(0..k) = 0 after the rotation.
struct GeneratorPair {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  int step = 0;
};

struct HalfCholResult {
  /// y = L^{-1} p.
  Eigen::VectorXd y;
  /// Diagonal of D in I + B B^T = L D L^T.
  Eigen::VectorXd diagD;
  PhaseFactors phases;
  /// Unit lower-triangular L, only when requested.
  std::optional<Eigen::MatrixXd> L;
  /// Present when produced by hc_phase_factors.
  std::optional<WeissResult> weiss;
};

/// p_j = -i c_{d-j} as a real vector. Throws NotImaginary when some c_k has a
/// real part above 1e-8 (relative to max(1, max|c|)).
Eigen::VectorXd build_p(const Eigen::VectorXcd& c);

/// One step of the generalized Schur algorithm for K = I + B B^T, where B is
/// lower-triangular Toeplitz with first column p (displacement
/// K - Z K Z^T = G G^T with G = [e_0, p]). Rotates row k of `g` to [r, 0]
/// with r > 0, returning the rotated pair; the caller shifts u down.
GeneratorPair schur_rotate(const GeneratorPair& g);

/// LDL^T of K = I + B B^T from the displacement generator and y = L^{-1} p,
/// with phases = rev(arctan(y)). The forward substitution consumes each column
/// of L as soon as it is produced; `keep_L` also stores the dense factor.
HalfCholResult schur_ldl_halfsolve(const Eigen::VectorXd& p, bool keep_L = false);

/// f -> b -> Weiss -> p -> Schur -> Psi.
HalfCholResult hc_phase_factors(const ChebTarget& target, const WeissConfig& cfg);

}  // namespace qspf
