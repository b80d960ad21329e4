#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "qspf/errors.hpp"
#include "qspf/laurent.hpp"

namespace qspf {

/// Reduced phase factors (psi_0, ..., psi_d) of a symmetric sequence with n = 2d.
struct PhaseFactors {
  Eigen::VectorXd reduced;

  int degree_half() const { return static_cast<int>(reduced.size()) - 1; }
};

/// (psi_d, ..., psi_1, psi_0, psi_1, ..., psi_d).
Eigen::VectorXd expand_reduced(const PhaseFactors& psi);

/// g(x, Phi) = Im U(x, Phi)_{00} for each x, multiplying the 2x2 factors
///   e^{i phi_0 Z} W(x) e^{i phi_1 Z} ... W(x) e^{i phi_n Z}
/// left to right. O(len(phi)) per point. Scalar follows `xs`, so the same
/// routine runs in double or long double.
template <typename DerivedPhi, typename DerivedX>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, 1> eval_direct(const Eigen::MatrixBase<DerivedPhi>& phi,
                                                                        const Eigen::MatrixBase<DerivedX>& xs)
{
  using Scalar = typename DerivedX::Scalar;
  using C = std::complex<Scalar>;
  using M2 = Eigen::Matrix<C, 2, 2>;
  using std::cos;
  using std::sin;
  using std::sqrt;

  if (phi.size() == 0) throw InvalidArgument("empty phase sequence");
  Eigen::Matrix<C, Eigen::Dynamic, 1> rot(phi.size());
  for (Eigen::Index j = 0; j < phi.size(); ++j) {
    const Scalar a = Scalar(phi(j));
    rot(j) = C(cos(a), sin(a));
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(xs.size());
  for (Eigen::Index m = 0; m < xs.size(); ++m) {
    const Scalar x = xs(m);
    if (!(x >= Scalar(-1) && x <= Scalar(1))) throw DomainError("x outside [-1, 1]");
    const Scalar s = sqrt(Scalar(1) - x * x);
    M2 w;
    w << C(x, 0), C(0, s), C(0, s), C(x, 0);
    M2 u;
    u << rot(0), C(0), C(0), std::conj(rot(0));
    for (Eigen::Index j = 1; j < phi.size(); ++j) {
      M2 z;
      z << rot(j), C(0), C(0), std::conj(rot(j));
      u = (u * w).eval() * z;
    }
    out(m) = u(0, 0).imag();
  }
  return out;
}

/// Chebyshev coefficients (q_0..q_d) of g(., Phi) from direct evaluation on
/// the grid x_j = cos(2 pi j / (4d+1)) followed by a discrete cosine
/// projection. O(d^2). Rejects even-length phi.
Eigen::VectorXd eval_direct_cheb(const Eigen::VectorXd& phi);

/// Entries of a partial QSP product [[P, Q], [conj(Q), conj(P)]] in t = e^{i theta}.
struct SU2LaurentPair {
  Laurent P;
  Laurent Q;
};

/// V_j(t) for a single phase.
SU2LaurentPair qsp_factor(double phi);

/// Product of two partial QSP products:
///   P = P1 P2 + Q1 conj(Q2),  Q = P1 Q2 + Q1 conj(P2).
/// Reference form built on laurent_mul; the tree below uses a fused variant.
SU2LaurentPair qsp_combine(const SU2LaurentPair& a, const SU2LaurentPair& b);

/// Full product V_0 ... V_{n-1} e^{i phi_n Z} via the balanced product tree.
SU2LaurentPair qsp_laurent_pair(const Eigen::VectorXd& phi);

/// Chebyshev coefficients of g(., Phi) via the product tree, O(d log^2 d).
Eigen::VectorXd eval_fast_cheb(const Eigen::VectorXd& phi);

enum class Evaluator { fast, direct };

/// Psi -> Phi -> (q_0..q_d).
Eigen::VectorXd qsp_map_F(const PhaseFactors& psi, Evaluator ev = Evaluator::fast);

/// Nonlinear Fourier transform of a sequence supported on [-d, d]
/// (entry i of `F` is F_{i-d}).
struct NlftPair {
  Laurent a;
  Laurent b;
};

NlftPair nlft_forward(const Eigen::VectorXcd& F);

/// F_n = i tan(psi_{|n|}), n = -d..d.
Eigen::VectorXcd nlft_sequence_from_phases(const PhaseFactors& psi);

}  // namespace qspf
