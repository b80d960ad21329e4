#include "qspf/qsp_eval.hpp"

#include <algorithm>
#include <numbers>
#include <vector>

#include "qspf/parallel.hpp"

namespace qspf {

using Complex = std::complex<double>;

Eigen::VectorXd expand_reduced(const PhaseFactors& psi)
{
  const int d = psi.degree_half();
  if (d < 0) throw InvalidArgument("empty reduced phase sequence");
  Eigen::VectorXd phi(2 * d + 1);
  phi.segment(d, d + 1) = psi.reduced;
  phi.head(d) = psi.reduced.tail(d).reverse();
  return phi;
}

static int half_degree_of(const Eigen::VectorXd& phi)
{
  if (phi.size() == 0) throw InvalidArgument("empty phase sequence");
  if (phi.size() % 2 == 0) throw UnsupportedParity("phase sequence length must be odd (n = 2d)");
  return static_cast<int>(phi.size() - 1) / 2;
}

Eigen::VectorXd eval_direct_cheb(const Eigen::VectorXd& phi)
{
  const int d = half_degree_of(phi);
  const int m = 4 * d + 1;
  // theta_j = 2 pi j / m; values at j and m - j coincide, so 2d+1 points suffice.
  Eigen::VectorXd cos_table(m);
  for (int j = 0; j < m; ++j) cos_table(j) = std::cos(2.0 * std::numbers::pi * j / m);
  const Eigen::VectorXd xs = cos_table.head(2 * d + 1);
  const Eigen::VectorXd g = eval_direct(phi, xs);

  Eigen::VectorXd q(d + 1);
  for (int k = 0; k <= d; ++k) {
    double acc = g(0);
    long long idx = 0;
    const long long step = 2LL * k % m;
    for (int j = 1; j <= 2 * d; ++j) {
      idx += step;
      if (idx >= m) idx -= m;
      acc += 2.0 * g(j) * cos_table(idx);
    }
    q(k) = (k == 0 ? 1.0 : 2.0) * acc / m;
  }
  return q;
}

SU2LaurentPair qsp_factor(double phi)
{
  const Complex e = std::polar(1.0, phi);
  Laurent::Coeffs p(3), q(3);
  p << 0.5 * e, 0.0, 0.5 * e;
  q << -0.5 * e, 0.0, 0.5 * e;
  return {Laurent(-1, p), Laurent(-1, q)};
}

SU2LaurentPair qsp_combine(const SU2LaurentPair& a, const SU2LaurentPair& b)
{
  return {laurent_mul(a.P, b.P) + laurent_mul(a.Q, b.Q.conj()),
          laurent_mul(a.P, b.Q) + laurent_mul(a.Q, b.P.conj())};
}

namespace {

// A product of m factors V_j only carries exponents t^{-m}, t^{-m+2}, ..., t^{m}.
// Nodes store those m+1 coefficients densely; entry i belongs to t^{-m+2i}.
struct PackedPair {
  Eigen::VectorXcd P;
  Eigen::VectorXcd Q;
};

constexpr Eigen::Index kSchoolbookWidth = 64;

PackedPair merge_schoolbook(const PackedPair& a, const PackedPair& b)
{
  const Eigen::Index la = a.P.size(), lb = b.P.size();
  PackedPair out{Eigen::VectorXcd::Zero(la + lb - 1), Eigen::VectorXcd::Zero(la + lb - 1)};
  for (Eigen::Index j = 0; j < lb; ++j) {
    const Complex p2 = b.P(j), q2 = b.Q(j);
    const Complex q2bar = std::conj(q2), p2bar = std::conj(p2);
    out.P.segment(j, la) += a.P * p2 + a.Q * q2bar;
    out.Q.segment(j, la) += a.P * q2 + a.Q * p2bar;
  }
  return out;
}

PackedPair merge_fft(const PackedPair& a, const PackedPair& b)
{
  const Eigen::Index la = a.P.size(), lb = b.P.size();
  const Eigen::Index width = la + lb - 1;
  // Cyclic length may be one short of the width: the top coefficient then
  // wraps onto slot 0 and is corrected from its closed form.
  const auto n = static_cast<Eigen::Index>(fft::next_pow2(static_cast<std::size_t>(width - 1)));
  const bool wraps = n < width;

  Eigen::VectorXcd buf = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd fp1(n), fq1(n), fp2(n), fq2(n);
  auto forward = [&](const Eigen::VectorXcd& src, Eigen::VectorXcd& dst) {
    buf.setZero();
    buf.head(src.size()) = src;
    fft::to_circle<double>(buf.data(), dst.data(), n);
  };
  forward(a.P, fp1);
  forward(a.Q, fq1);
  forward(b.P, fp2);
  forward(b.Q, fq2);

  // Samples of conj-coefficient polynomials: conj(F(w^{-m})).
  Eigen::VectorXcd vp(n), vq(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const Eigen::Index r = m == 0 ? 0 : n - m;
    vp(m) = fp1(m) * fp2(m) + fq1(m) * std::conj(fq2(r));
    vq(m) = fp1(m) * fq2(m) + fq1(m) * std::conj(fp2(r));
  }

  PackedPair out{Eigen::VectorXcd(width), Eigen::VectorXcd(width)};
  const Eigen::Index keep = std::min(n, width);
  fft::from_circle<double>(vp.data(), buf.data(), n);
  out.P.head(keep) = buf.head(keep);
  fft::from_circle<double>(vq.data(), buf.data(), n);
  out.Q.head(keep) = buf.head(keep);
  if (wraps) {
    const Complex topP = a.P(la - 1) * b.P(lb - 1) + a.Q(la - 1) * std::conj(b.Q(lb - 1));
    const Complex topQ = a.P(la - 1) * b.Q(lb - 1) + a.Q(la - 1) * std::conj(b.P(lb - 1));
    out.P(0) -= topP;
    out.Q(0) -= topQ;
    out.P(width - 1) = topP;
    out.Q(width - 1) = topQ;
  }
  return out;
}

PackedPair merge_packed(const PackedPair& a, const PackedPair& b)
{
  const Eigen::Index width = a.P.size() + b.P.size() - 1;
  if (width <= kSchoolbookWidth || a.P.size() < 4 || b.P.size() < 4) return merge_schoolbook(a, b);
  return merge_fft(a, b);
}

// Product V_0 ... V_{n-1} e^{i phi_n Z} in packed form (length n+1).
PackedPair packed_product(const Eigen::VectorXd& phi)
{
  const Eigen::Index n = phi.size() - 1;
  if (n == 0) {
    PackedPair out{Eigen::VectorXcd(1), Eigen::VectorXcd::Zero(1)};
    out.P(0) = std::polar(1.0, phi(0));
    return out;
  }
  std::vector<PackedPair> leaves(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, phi(j));
    auto& leaf = leaves[static_cast<std::size_t>(j)];
    leaf.P = Eigen::VectorXcd(2);
    leaf.Q = Eigen::VectorXcd(2);
    leaf.P << 0.5 * e, 0.5 * e;
    leaf.Q << -0.5 * e, 0.5 * e;
  }
  PackedPair prod = reduce_tree(std::move(leaves), merge_packed);
  const Complex last = std::polar(1.0, phi(n));
  prod.P *= last;
  prod.Q *= std::conj(last);
  return prod;
}

Laurent unpack(const Eigen::VectorXcd& packed)
{
  const auto m = static_cast<int>(packed.size()) - 1;
  Laurent::Coeffs v = Laurent::Coeffs::Zero(2 * m + 1);
  for (int i = 0; i <= m; ++i) v(2 * i) = packed(i);
  return {-m, std::move(v)};
}

}  // namespace

SU2LaurentPair qsp_laurent_pair(const Eigen::VectorXd& phi)
{
  if (phi.size() == 0) throw InvalidArgument("empty phase sequence");
  const PackedPair prod = packed_product(phi);
  return {unpack(prod.P), unpack(prod.Q)};
}

Eigen::VectorXd eval_fast_cheb(const Eigen::VectorXd& phi)
{
  const int d = half_degree_of(phi);
  const PackedPair prod = packed_product(phi);
  // p(x) = sum_j h_j (t^{2j} + t^{-2j}) / 2 and t^{2j} sits at packed index d + j.
  Eigen::VectorXd q(d + 1);
  q(0) = prod.P(d).imag();
  for (int j = 1; j <= d; ++j) q(j) = (prod.P(d + j) + prod.P(d - j)).imag();
  return q;
}

Eigen::VectorXd qsp_map_F(const PhaseFactors& psi, Evaluator ev)
{
  const Eigen::VectorXd phi = expand_reduced(psi);
  return ev == Evaluator::fast ? eval_fast_cheb(phi) : eval_direct_cheb(phi);
}

NlftPair nlft_forward(const Eigen::VectorXcd& F)
{
  if (F.size() % 2 == 0) throw InvalidArgument("NLFT input must be indexed symmetrically over [-d, d]");
  const int d = static_cast<int>(F.size() - 1) / 2;
  std::vector<NlftPair> leaves(static_cast<std::size_t>(F.size()));
  for (int i = 0; i < F.size(); ++i) {
    const double s = 1.0 / std::sqrt(1.0 + std::norm(F(i)));
    leaves[static_cast<std::size_t>(i)] = {Laurent::constant(s), Laurent::monomial(i - d, F(i) * s)};
  }
  return reduce_tree(std::move(leaves), [](const NlftPair& l, const NlftPair& r) {
    return NlftPair{laurent_mul(l.a, r.a) - laurent_mul(l.b, r.b.star()),
                    laurent_mul(l.a, r.b) + laurent_mul(l.b, r.a.star())};
  });
}

Eigen::VectorXcd nlft_sequence_from_phases(const PhaseFactors& psi)
{
  const int d = psi.degree_half();
  Eigen::VectorXcd F(2 * d + 1);
  for (int n = -d; n <= d; ++n) F(n + d) = Complex(0, std::tan(psi.reduced(std::abs(n))));
  return F;
}

}  // namespace qspf
