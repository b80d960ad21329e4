#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "qspf/errors.hpp"
#include "qspf/half_cholesky.hpp"
#include "qspf/targets.hpp"

using namespace qspf;
using C = std::complex<double>;

namespace {

Eigen::MatrixXd toeplitz_lower(const Eigen::VectorXd& p)
{
  const Eigen::Index n = p.size();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) B.col(j).tail(n - j) = p.head(n - j);
  return B;
}

Eigen::MatrixXd form_K(const Eigen::VectorXd& p)
{
  const Eigen::MatrixXd B = toeplitz_lower(p);
  return Eigen::MatrixXd::Identity(p.size(), p.size()) + B * B.transpose();
}

struct DenseLdl {
  Eigen::MatrixXd L;
  Eigen::VectorXd D;
  Eigen::VectorXd y;
};

// LDL^T from the dense Cholesky factor: L = R diag(R)^{-1}, D = diag(R)^2.
DenseLdl dense_ldl(const Eigen::VectorXd& p)
{
  const Eigen::MatrixXd R = Eigen::LLT<Eigen::MatrixXd>(form_K(p)).matrixL();
  const Eigen::VectorXd r = R.diagonal();
  DenseLdl out;
  out.L = R * r.cwiseInverse().asDiagonal();
  out.D = r.cwiseAbs2();
  out.y = out.L.triangularView<Eigen::UnitLower>().solve(p);
  return out;
}

Eigen::VectorXd p_for(const ChebTarget& t, double eta)
{
  WeissConfig cfg;
  cfg.eta = eta;
  return build_p(weiss(t, cfg).c);
}

double generator_norm2(const Eigen::VectorXd& p) { return 1.0 + p.squaredNorm(); }

}  // namespace

TEST(BuildP, Examples)
{
  Eigen::VectorXcd c1(1), c3(3);
  c1 << C(0, 0.75);
  c3 << C(0, 1), C(0, 2), C(0, 3);
  EXPECT_EQ(build_p(c1), Eigen::VectorXd::Constant(1, 0.75));
  Eigen::VectorXd p3(3);
  p3 << 3, 2, 1;
  EXPECT_EQ(build_p(c3), p3);
  EXPECT_EQ(build_p(Eigen::VectorXcd::Zero(4)), Eigen::VectorXd::Zero(4));
}

TEST(BuildP, RejectsRealParts)
{
  Eigen::VectorXcd c(2);
  c << C(0, 0.5), C(1e-6, 0.2);
  EXPECT_THROW(build_p(c), NotImaginary);
  c(1) = C(1e-12, 0.2);
  EXPECT_NO_THROW(build_p(c));
}

TEST(SchurLdl, ZeroInput)
{
  const HalfCholResult r = schur_ldl_halfsolve(Eigen::VectorXd::Zero(1));
  EXPECT_EQ(r.y(0), 0.0);
  EXPECT_EQ(r.diagD(0), 1.0);
  EXPECT_EQ(r.phases.reduced(0), 0.0);
}

TEST(SchurLdl, OneByOne)
{
  const HalfCholResult r = schur_ldl_halfsolve(Eigen::VectorXd::Constant(1, 0.75));
  EXPECT_NEAR(r.y(0), 0.75, 1e-16);
  EXPECT_NEAR(r.diagD(0), 1.5625, 1e-15);
  EXPECT_NEAR(r.phases.reduced(0), 0.6435011087932844, 1e-16);
}

TEST(SchurLdl, TwoByTwo)
{
  Eigen::VectorXd p(2);
  p << 0.5, 0.25;
  const HalfCholResult r = schur_ldl_halfsolve(p, true);
  EXPECT_NEAR(r.y(0), 0.5, 1e-15);
  EXPECT_NEAR(r.y(1), 0.2, 1e-15);
  EXPECT_NEAR(r.diagD(0), 1.25, 1e-15);
  EXPECT_NEAR(r.diagD(1), 1.3, 1e-15);

  const DenseLdl ref = dense_ldl(p);
  EXPECT_NEAR(ref.D(1), 1.3125 - 0.125 * 0.125 / 1.25, 1e-15);
  EXPECT_LE((r.diagD - ref.D).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((*r.L - ref.L).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(r.phases.reduced(0), std::atan(0.2), 1e-16);
  EXPECT_NEAR(r.phases.reduced(1), std::atan(0.5), 1e-16);
}

TEST(SchurLdl, MatchesDenseOracle)
{
  for (int d : {3, 40, 256}) {
    const Eigen::VectorXd p = p_for(random_target(d, 0.5, static_cast<std::uint64_t>(d)), 0.5);
    const HalfCholResult r = schur_ldl_halfsolve(p, true);
    const DenseLdl ref = dense_ldl(p);
    const double tol = 1e-10 * generator_norm2(p);
    EXPECT_LE((*r.L - ref.L).cwiseAbs().maxCoeff(), tol) << "d " << d;
    EXPECT_LE((r.diagD - ref.D).cwiseAbs().maxCoeff(), tol) << "d " << d;
    EXPECT_LE((r.y - ref.y).cwiseAbs().maxCoeff(), tol) << "d " << d;
  }
}

TEST(SchurLdl, StreamingMatchesStoredFactor)
{
  const Eigen::VectorXd p = p_for(random_target(60, 0.5, 2), 0.5);
  const HalfCholResult a = schur_ldl_halfsolve(p, false), b = schur_ldl_halfsolve(p, true);
  EXPECT_FALSE(a.L.has_value());
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.diagD, b.diagD);
  EXPECT_LE((b.L->triangularView<Eigen::UnitLower>().solve(p) - b.y).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(SchurLdl, BackwardError)
{
  for (int d : {16, 128, 512}) {
    const Eigen::VectorXd p = p_for(random_target(d, 0.5, 3), 0.5);
    const HalfCholResult r = schur_ldl_halfsolve(p, true);
    const Eigen::MatrixXd rebuilt = *r.L * r.diagD.asDiagonal() * r.L->transpose();
    const double err = (rebuilt - form_K(p)).norm();
    const double bound = 100.0 * std::pow(d, 3) * generator_norm2(p) * std::ldexp(1.0, -52);
    EXPECT_LE(err, bound) << "d " << d;
  }
}

TEST(SchurLdl, SpectrumAndPivotBounds)
{
  for (double norm : {0.5, 0.9}) {
    const double eta = 1.0 - norm;
    const Eigen::VectorXd p = p_for(random_target(64, norm, 4), eta);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(form_K(p)).eigenvalues();
    EXPECT_GE(ev.minCoeff(), 1.0 - 1e-8);
    EXPECT_LE(ev.maxCoeff(), (1.0 + 1e-8) / eta);
    const HalfCholResult r = schur_ldl_halfsolve(p);
    EXPECT_GE(r.diagD.minCoeff(), 1.0 - 1e-12);
    EXPECT_LE(r.diagD.maxCoeff(), (1.0 + 1e-8) / eta);
  }
}

TEST(SchurLdl, DisplacementIdentity)
{
  const Eigen::VectorXd p = p_for(random_target(50, 0.5, 5), 0.5);
  const Eigen::Index n = p.size();
  const HalfCholResult r = schur_ldl_halfsolve(p, true);
  const Eigen::MatrixXd K = *r.L * r.diagD.asDiagonal() * r.L->transpose();
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(n, n);
  Z.diagonal(-1).setOnes();
  Eigen::MatrixXd G(n, 2);
  G.col(0) = Eigen::VectorXd::Unit(n, 0);
  G.col(1) = p;
  EXPECT_LE((K - Z * K * Z.transpose() - G * G.transpose()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SchurRotate, GeneratorZeroPattern)
{
  const Eigen::VectorXd p = p_for(random_target(20, 0.5, 6), 0.5);
  const Eigen::Index n = p.size();
  const HalfCholResult ref = schur_ldl_halfsolve(p, true);

  GeneratorPair g{Eigen::VectorXd::Unit(n, 0), p, 0};
  for (int k = 0; k < n; ++k) {
    g.step = k;
    g = schur_rotate(g);
    EXPECT_TRUE(g.u.head(k).isZero(0.0)) << "k " << k;
    EXPECT_TRUE(g.v.head(k + 1).isZero(0.0)) << "k " << k;
    EXPECT_GT(g.u(k), 0.0);
    EXPECT_NEAR(g.u(k) * g.u(k), ref.diagD(k), 1e-13);
    EXPECT_LE((g.u / g.u(k) - ref.L->col(k)).cwiseAbs().maxCoeff(), 1e-13);
    // Z u for the next step.
    Eigen::VectorXd shifted = Eigen::VectorXd::Zero(n);
    shifted.tail(n - 1) = g.u.head(n - 1);
    g.u = shifted;
  }
}

TEST(SchurLdl, Breakdown)
{
  Eigen::VectorXd p(3);
  p << 0.1, std::numeric_limits<double>::quiet_NaN(), 0.2;
  EXPECT_THROW(schur_ldl_halfsolve(p), BreakdownError);
  EXPECT_THROW(schur_ldl_halfsolve(Eigen::VectorXd()), InvalidArgument);
}

TEST(HcPhaseFactors, ClosedForms)
{
  WeissConfig cfg;
  cfg.eta = 0.3;
  EXPECT_EQ(hc_phase_factors(ChebTarget(Eigen::VectorXd::Zero(1)), cfg).phases.reduced(0), 0.0);
  const HalfCholResult r = hc_phase_factors(ChebTarget(Eigen::VectorXd::Constant(1, 0.6)), cfg);
  EXPECT_NEAR(r.phases.reduced(0), 0.6435011087932844, 1e-15);
  ASSERT_TRUE(r.weiss.has_value());
}

TEST(HcPhaseFactors, RandomDegree100)
{
  const ChebTarget t = random_target(100, 0.5, 7);
  WeissConfig cfg;
  cfg.eta = 0.5;
  const HalfCholResult r = hc_phase_factors(t, cfg);
  EXPECT_LE((qsp_map_F(r.phases, Evaluator::direct) - t.coeffs).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(r.phases.reduced.cwiseAbs().maxCoeff(), std::numbers::pi / 2);
}
