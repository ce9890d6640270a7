#include "oracle.hpp"

#include <random>
#include <vector>

#include "momentforge/matkit.hpp"
#include "momentforge/measures.hpp"
#include "momentforge/seqkit.hpp"

namespace momentforge {

namespace {

using Md = Eigen::MatrixXcd;
using Rd = Eigen::MatrixXd;
using cd = std::complex<double>;

Md to_double(const CMatrix& m) {
  Md out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k)
      out(i, k) = cd(static_cast<double>(m(i, k).real()), static_cast<double>(m(i, k).imag()));
  return out;
}

double norm2(const Md& m) { return m.size() == 0 ? 0.0 : Eigen::JacobiSVD<Md>(m).singularValues()(0); }

Md hankel_d(const std::vector<Md>& s, Index n) {
  const Index q = s[0].rows();
  Md h(q * (n + 1), q * (n + 1));
  for (Index i = 0; i <= n; ++i)
    for (Index k = 0; k <= n; ++k) h.block(i * q, k * q, q, q) = s[static_cast<size_t>(i + k)];
  return h;
}

bool psd_d(const Md& h) {
  const double scale = 1 + norm2(h);
  if ((h - h.adjoint()).norm() > 1e-9 * scale) return false;
  Eigen::SelfAdjointEigenSolver<Md> es((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-9 * scale;
}

Md pinv_d(const Md& h) {
  Eigen::JacobiSVD<Md> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-10 * (sv.size() ? sv(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Real basis of the q x q Hermitian matrices.
std::vector<Md> hermitian_basis(Index q) {
  std::vector<Md> out;
  for (Index i = 0; i < q; ++i) {
    Md e = Md::Zero(q, q);
    e(i, i) = 1;
    out.push_back(e);
    for (Index k = i + 1; k < q; ++k) {
      Md re = Md::Zero(q, q), im = Md::Zero(q, q);
      re(i, k) = re(k, i) = 1;
      im(i, k) = cd(0, 1);
      im(k, i) = cd(0, -1);
      out.push_back(re);
      out.push_back(im);
    }
  }
  return out;
}

Md random_hermitian(std::mt19937_64& rng, Index q) {
  std::normal_distribution<double> nd;
  Md g(q, q);
  for (Index i = 0; i < q; ++i)
    for (Index k = 0; k < q; ++k) g(i, k) = cd(nd(rng), nd(rng));
  Md h = (g + g.adjoint()) / 2.0;
  return h / norm2(h);
}

// The eigenvalue test alone accepts y outside R(H_n) once the trailing block is large
// enough to hide the negative eigenvalue, so the range residual is checked as well.
bool extension_psd(std::vector<Md> s, const Md& next, const Md& last, Index n, const Md& h, const Md& hp,
                   double scale) {
  s.push_back(next);
  s.push_back(last);
  const Md ext = hankel_d(s, n + 1);
  const Md y = ext.topRightCorner(h.rows(), last.cols());
  if ((y - h * (hp * y)).norm() > 1e-9 * scale) return false;
  return psd_d(ext);
}

}  // namespace

bool brute_force_extendable(const MatrixSeq& seq, int trials, std::uint64_t seed, long* used) {
  std::vector<Md> s;
  for (const auto& x : seq.items()) s.push_back(to_double(x));
  const Index q = seq.q();
  const Index kappa = seq.kappa();
  const Index n = kappa / 2;
  const Md h = hankel_d(s, n);
  if (!psd_d(h)) return false;
  const Md hp = pinv_d(h);
  double scale = 0;
  for (const auto& x : s) scale = std::max(scale, norm2(x));
  scale += 1;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1), expo(-8, 0);
  std::normal_distribution<double> nd;

  auto column = [&](const Md& top) {
    Md y(q * (n + 1), q);
    for (Index i = 0; i < n; ++i) y.block(i * q, 0, q, q) = s[static_cast<size_t>(n + 1 + i)];
    y.block(n * q, 0, q, q) = top;
    return y;
  };

  if (kappa % 2 == 1) {
    const Md y = column(s.back());
    const Md base = y.adjoint() * hp * y;
    std::vector<Md> head(s.begin(), s.end() - 1);
    for (int t = 0; t < trials; ++t) {
      if (used) ++*used;
      const double size = std::pow(10.0, expo(rng)) * scale;
      Md off = random_hermitian(rng, q);
      if (t % 2 == 0) off = off * off.adjoint();
      if (extension_psd(head, s.back(), base + size * off, n, h, hp, scale)) return true;
    }
    return false;
  }

  // Even: s_{2n+1} = X Hermitian with K* y(X) = 0 for every kernel vector K of H_n.
  Eigen::SelfAdjointEigenSolver<Md> es(h);
  const double cut = 1e-9 * (1 + norm2(h));
  std::vector<Index> ker;
  for (Index i = 0; i < h.rows(); ++i)
    if (es.eigenvalues()(i) <= cut) ker.push_back(i);
  const auto k = static_cast<Index>(ker.size());
  const std::vector<Md> basis = hermitian_basis(q);
  const auto dim = static_cast<Index>(basis.size());
  Md x0 = Md::Zero(q, q);
  Rd null = Rd::Identity(dim, dim);
  if (k > 0) {
    Md kv(h.rows(), k);
    for (Index i = 0; i < k; ++i) kv.col(i) = es.eigenvectors().col(ker[static_cast<size_t>(i)]);
    const Md last = kv.bottomRows(q).adjoint();
    Md rhs = Md::Zero(k, q);
    for (Index i = 0; i < n; ++i) rhs -= kv.middleRows(i * q, q).adjoint() * s[static_cast<size_t>(n + 1 + i)];
    Rd a(2 * k * q, dim);
    Eigen::VectorXd b(2 * k * q);
    for (Index p = 0; p < dim; ++p) {
      const Md img = last * basis[static_cast<size_t>(p)];
      for (Index e = 0; e < k * q; ++e) {
        a(e, p) = img(e % k, e / k).real();
        a(k * q + e, p) = img(e % k, e / k).imag();
      }
    }
    for (Index e = 0; e < k * q; ++e) {
      b(e) = rhs(e % k, e / k).real();
      b(k * q + e) = rhs(e % k, e / k).imag();
    }
    // kernel vectors have unit norm, so the rank cut is absolute
    Eigen::JacobiSVD<Rd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-9) ++rank;
    const Eigen::VectorXd coef = svd.matrixV().leftCols(rank) *
                                 (svd.matrixU().leftCols(rank).transpose() * b).cwiseQuotient(sv.head(rank));
    for (Index p = 0; p < dim; ++p) x0 += coef(p) * basis[static_cast<size_t>(p)];
    null = svd.matrixV().rightCols(dim - rank);
  }
  for (int t = 0; t < trials; ++t) {
    if (used) ++*used;
    Md x = x0;
    if (null.cols() > 0) {
      const double size = std::pow(10.0, 4 * unit(rng) - 3) * scale;
      Eigen::VectorXd c(null.cols());
      for (Index i = 0; i < c.size(); ++i) c(i) = nd(rng);
      const Eigen::VectorXd coef = null * c * (size / c.norm());
      for (Index p = 0; p < dim; ++p) x += coef(p) * basis[static_cast<size_t>(p)];
    }
    const Md y = column(x);
    const double pad = unit(rng) * std::pow(10.0, expo(rng)) * scale;
    const Md last = y.adjoint() * hp * y + pad * Md::Identity(q, q);
    if (extension_psd(s, x, (last + last.adjoint()) / 2.0, n, h, hp, scale)) return true;
  }
  return false;
}

MatrixSeq oracle_instance(int i, std::uint64_t seed) {
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
  const Index q = 1 + i % 2;
  const Index kappa = i % 6;
  const Index n = kappa / 2;
  const int kind = (i / 6) % 5;
  MeasureDraw draw;
  draw.min_atoms = 1;
  draw.max_atoms = kind < 2 ? n + 2 : std::max<Index>(1, n);
  const MatrixSeq exact = random_molecular(rng, q, draw).moments_prefix(kappa);
  std::vector<CMatrix> items = exact.items();
  const Real scale = 1 + exact.scale();
  std::uniform_real_distribution<double> unit(0.2, 1.0);
  const Index even = kappa - kappa % 2;
  if (kind == 2) items[static_cast<size_t>(even)] += Real(unit(rng)) * scale * random_psd(rng, q, 1);
  if (kind == 3) items.back() += Real(0.3L) * scale * re_part(random_complex(rng, q, q));
  if (kind == 4) items[static_cast<size_t>(even)] -= Real(unit(rng)) * scale * random_psd(rng, q, 1);
  return MatrixSeq(q, items);
}

ExtensionStats extension_oracle_agreement(int count, int trials, std::uint64_t seed) {
  ExtensionStats st;
  for (int i = 0; i < count; ++i) {
    const MatrixSeq seq = oracle_instance(i, seed);
    const bool lib = is_hnnd_extendable(seq);
    const bool brute = brute_force_extendable(seq, trials, seed * 31 + static_cast<std::uint64_t>(i), &st.trials);
    ++st.instances;
    st.extendable += brute ? 1 : 0;
    if (lib != brute) st.disagreeing.push_back(i);
  }
  return st;
}

}  // namespace momentforge
