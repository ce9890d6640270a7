// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "momentforge/grid.hpp"
#include "momentforge/matkit.hpp"
#include "momentforge/matpoly.hpp"
#include "momentforge/measures.hpp"
#include "momentforge/seqkit.hpp"
#include "momentforge/solver.hpp"
#include "momentforge/transforms.hpp"
#include "momentforge/verify.hpp"
#include "oracle.hpp"

using namespace momentforge;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Real rel(const CMatrix& diff, const CMatrix& ref) { return op_norm(diff) / (1 + op_norm(ref)); }

CMatrix random_rank(std::mt19937_64& rng, Index rows, Index cols, Index rank) {
  if (rank == 0) return zeros(rows, cols);
  return random_complex(rng, rows, rank) * random_complex(rng, rank, cols);
}

CMatrix psd_sqrt(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(re_part(a));
  CMatrix out = zeros(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    const Real ev = std::max(Real(es.eigenvalues()(i)), Real(0));
    out += sqrt(ev) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return out;
}

Outcome penrose_suite() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<Index> dim(1, 6);
  Real worst = 0;
  int failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Index r = dim(rng), c = dim(rng);
    std::uniform_int_distribution<Index> rk(0, std::min(r, c));
    const Index rank = rk(rng);
    const CMatrix m = random_rank(rng, r, c, rank);
    const CMatrix p = pinv(m);
    const Real scale = 1 + op_norm(m);
    // Frobenius norms bound the operator norm from above
    const CMatrix mp = m * p, pm = p * m;
    for (Real v : {(mp * m - m).norm(), (pm * p - p).norm(), (mp.adjoint() - mp).norm(), (pm.adjoint() - pm).norm()})
      worst = std::max(worst, v / scale);
    if (numerical_rank(m) != rank) ++failures;

    // 0 <= B <= A: B = A^{1/2} T A^{1/2}, 0 <= T <= I
    const Index q = 1 + trial % 6;
    const CMatrix a = random_psd(rng, q, 1 + trial % q);
    const CMatrix sq = psd_sqrt(a);
    const CMatrix b = sq * (random_psd(rng, q, 1 + (trial / 6) % q) * Real(0.9L)) * sq;
    const CMatrix bab = b * pinv(a) * b;
    if (min_eigenvalue(b - bab) < -Tolerances{}.psd_atol) ++failures;
    if (numerical_rank(bab) != numerical_rank(b)) ++failures;

    // equal kernels and ranges give equal projectors
    const CMatrix basis = random_complex(rng, q, 1 + trial % q);
    const CMatrix x1 = basis * random_psd(rng, basis.cols(), basis.cols()) * basis.adjoint();
    const CMatrix x2 = basis * random_psd(rng, basis.cols(), basis.cols()) * basis.adjoint();
    if (!kernel_contained(x1, x2) || !range_contained(x1, x2)) ++failures;
    const CMatrix p1 = pinv(x1), p2 = pinv(x2);
    if ((p1 * x1 - p2 * x2).norm() > 1e-9L || (x1 * p1 - x2 * p2).norm() > 1e-9L) ++failures;
  }
  const bool ok = worst <= 1e-10L && failures == 0;
  return {ok, fmt("500 matrices, worst Penrose residual %.2e (bound 1e-10), %d predicate failures",
                  static_cast<double>(worst), failures)};
}

struct SeqCase {
  MatrixSeq seq;
  MolecularMeasure sigma;
};

std::vector<SeqCase> schur_corpus() {
  std::vector<SeqCase> out;
  for (int i = 0; i < 200; ++i) {
    const Index q = 1 + i % 3;
    const Index kappa = (i / 3) % 10;
    auto [seq, sigma] = random_extendable_seq(q, kappa, 4, 5000 + static_cast<std::uint64_t>(i));
    out.push_back({seq, sigma});
  }
  return out;
}

Outcome schur_identities() {
  Real worst_param = 0, worst_trunc = 0;
  int lost = 0;
  for (const auto& c : schur_corpus()) {
    const MatrixSeq& s = c.seq;
    const Real scale = 1 + s.scale();
    const HankelParam p = canonical_param(s);
    const SchurHeads h = schur_heads(s);
    for (size_t k = 1; k <= p.C.size(); ++k)
      worst_param = std::max(worst_param, op_norm(p.C[k - 1] - h.s1[k - 1]) / scale);
    for (size_t k = 0; k < p.D.size(); ++k) worst_param = std::max(worst_param, op_norm(p.D[k] - h.s0[k]) / scale);
    for (Index k = 0; 2 * k <= s.kappa(); ++k)
      if (!is_hnnd_extendable(schur_transform(s, k))) ++lost;
    if (s.kappa() >= 2) {
      const MatrixSeq full = schur_transform(s, 1);
      for (Index m = 2; m <= s.kappa(); ++m) {
        const MatrixSeq part = schur_transform(s.truncate(m), 1);
        for (Index j = 0; j <= m - 2; ++j) worst_trunc = std::max(worst_trunc, op_norm(part[j] - full[j]) / scale);
      }
    }
  }
  const bool ok = worst_param <= 1e-9L && worst_trunc <= 1e-12L && lost == 0;
  return {ok, fmt("200 sequences, C/D vs Schur heads %.2e (1e-9), truncation %.2e (1e-12), %d extendability losses",
                  static_cast<double>(worst_param), static_cast<double>(worst_trunc), lost)};
}

Outcome inverse_pairs() {
  const std::vector<Complex> zs = standard_z_grid();
  Real worst_pair = 0, worst_lft = 0;
  std::mt19937_64 rng(1003);
  for (const auto& c : schur_corpus()) {
    const MatrixSeq& s = c.seq;
    const CMatrix& s0 = s[0];
    const CMatrix s1 = s.kappa() >= 1 ? s[1] : zeros(s.q(), s.q());
    const HerglotzExpr f = HerglotzExpr::stieltjes_of(c.sigma);
    const HerglotzExpr fp = schur_plus(f, s0, s1);
    const HerglotzExpr back = schur_minus(fp, s0, s1);
    MeasureDraw draw;
    const CMatrix u = orthonormal_range_basis(s0);
    const HerglotzExpr g = HerglotzExpr::compressed(u, HerglotzExpr::stieltjes_of(random_molecular(rng, u.cols(), draw)));
    const HerglotzExpr gm = schur_minus(g, s0, s1);
    const HerglotzExpr gback = schur_plus(gm, s0, s1);
    const auto fv = eval_grid(f, zs), fpv = eval_grid(fp, zs), bv = eval_grid(back, zs);
    const auto gv = eval_grid(g, zs), gmv = eval_grid(gm, zs), gbv = eval_grid(gback, zs);
    for (size_t i = 0; i < zs.size(); ++i) {
      worst_pair = std::max({worst_pair, rel(bv[i] - fv[i], fv[i]), rel(gbv[i] - gv[i], gv[i])});
      const CMatrix w = lft(LftMatrix{w_poly(s0, s1, zs[i])}, fv[i]);
      const CMatrix v = lft(LftMatrix{v_poly(s0, s1, zs[i])}, gv[i]);
      worst_lft = std::max({worst_lft, rel(w - fpv[i], w), rel(v - gmv[i], v)});
    }
  }
  const bool ok = worst_pair <= 1e-9L && worst_lft <= 1e-9L;
  return {ok, fmt("200 functions x 12 points, inverse pairs %.2e, LFT forms %.2e (bound 1e-9)",
                  static_cast<double>(worst_pair), static_cast<double>(worst_lft))};
}

struct SolveCase {
  MatrixSeq seq;
  MolecularMeasure sigma;
  Problem p;
  HerglotzExpr f;
  HerglotzExpr F;
};

// 100 instances per parity, kappa <= 6; atoms chosen so most problems are indeterminate.
std::vector<SolveCase> solve_corpus() {
  std::vector<SolveCase> out(200);
  for_each_index(200, Exec::Parallel, [&](Index i) {
    std::seed_seq ss{std::uint64_t{2024}, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(ss);
    const Index q = 1 + i % 3;
    const Index kappa = i < 100 ? 2 * ((i / 3) % 4) : 2 * ((i / 3) % 3) + 1;
    MeasureDraw draw;
    draw.min_atoms = kappa / 2 + 1;
    draw.max_atoms = kappa / 2 + 3;
    const MolecularMeasure sigma = random_molecular(rng, q, draw);
    const MatrixSeq seq = sigma.moments_prefix(kappa);
    Problem p = open_problem(seq);
    HerglotzExpr f = p.determinate() ? empty_parameter() : random_gallery_parameter(p.slot.r, p.parity, rng);
    HerglotzExpr F = p.determinate() ? determinate_solution(p) : solve(p, f);
    out[static_cast<size_t>(i)] = {seq, sigma, std::move(p), f, F};
  });
  return out;
}

Outcome roundtrip(const std::vector<SolveCase>& cases) {
  const std::vector<Complex> zs = standard_z_grid();
  std::vector<Real> diffs(cases.size(), 0), spread(cases.size(), INFINITY);
  for_each_index(static_cast<Index>(cases.size()), Exec::Parallel, [&](Index i) {
    const SolveCase& c = cases[static_cast<size_t>(i)];
    if (c.p.determinate()) return;
    diffs[static_cast<size_t>(i)] = compare(recover_parameter(c.p, c.F), c.f, zs, 1e-8L, Exec::Serial).max_diff;
    std::seed_seq ss{std::uint64_t{77}, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(ss);
    HerglotzExpr other = gallery_parameter(GalleryKind::Stieltjes, c.p.slot.r, c.p.parity, rng);
    if (c.f.kind() != "Zero") other = HerglotzExpr::zero(c.p.slot.r);
    spread[static_cast<size_t>(i)] = compare(solve(c.p, other), c.F, zs, 0, Exec::Serial).max_diff;
  });
  Real worst = 0, least_spread = INFINITY;
  int indet[2] = {0, 0};
  for (size_t i = 0; i < cases.size(); ++i) {
    if (cases[i].p.determinate()) continue;
    ++indet[cases[i].p.parity == Parity::Even ? 0 : 1];
    worst = std::max(worst, diffs[i]);
    least_spread = std::min(least_spread, spread[i]);
  }
  const bool ok = worst <= 1e-8L && least_spread >= 1e-4L && indet[0] > 0 && indet[1] > 0;
  return {ok, fmt("indeterminate %.0f even + %.0f odd of 100+100, max |recover(solve(f)) - f| %.2e (1e-8), "
                  "min injectivity gap %.2e (1e-4)",
                  indet[0], indet[1], static_cast<double>(worst), static_cast<double>(least_spread))};
}

Outcome verification(const std::vector<SolveCase>& cases) {
  std::vector<int> decays(cases.size(), 0);
  std::vector<Real> err(cases.size(), 0);
  for_each_index(static_cast<Index>(cases.size()), Exec::Parallel, [&](Index i) {
    const SolveCase& c = cases[static_cast<size_t>(i)];
    const AsymptoticReport rep = hn_check(c.F, c.seq, default_rays(), {}, false, Exec::Serial);
    decays[static_cast<size_t>(i)] = rep.verdict() == Verdict::Decaying;
    const MomentEstimate est = extract_moments(c.F, c.seq.kappa(), {}, Exec::Serial);
    Real e = est.complete ? 0 : INFINITY;
    for (Index j = 0; j <= c.seq.kappa() && j < est.moments.size(); ++j)
      e = std::max(e, op_norm(est.moments[j] - c.seq[j]) / (1 + op_norm(c.seq[j])));
    err[static_cast<size_t>(i)] = e;
  });
  int bad = 0;
  Real worst = 0;
  std::string which;
  for (size_t i = 0; i < cases.size(); ++i) {
    if (!decays[i]) {
      ++bad;
      which += " " + std::to_string(i);
    }
    worst = std::max(worst, err[i]);
  }
  const bool ok = bad == 0 && worst <= 1e-3L;
  return {ok, fmt("200 solutions, %.0f not decaying at k = kappa, worst moment error %.2e (1e-3)", bad,
                  static_cast<double>(worst)) +
                  (which.empty() ? "" : ", at" + which)};
}

Outcome determinacy() {
  const std::vector<Complex> zs = standard_z_grid();
  int missed = 0, wrong_r = 0;
  Real worst = 0, worst_l = 0;
  std::mt19937_64 rng(1009);
  for (int i = 0; i < 50; ++i) {
    const Index q = 1 + i % 3;
    const Index kappa = 2 + (i / 3) % 5;
    const Index n = kappa / 2;
    MeasureDraw draw;
    draw.min_atoms = 1;
    draw.max_atoms = n;
    const MolecularMeasure sigma = random_molecular(rng, q, draw);
    const Problem p = open_problem(sigma.moments_prefix(kappa));
    worst_l = std::max(worst_l, op_norm(p.L));
    if (!p.determinate() || op_norm(p.L) > 1e-10L) {
      ++missed;
      continue;
    }
    worst = std::max(worst, compare(determinate_solution(p), HerglotzExpr::stieltjes_of(sigma), zs, 0).max_diff);

    MeasureDraw wide;
    wide.min_atoms = n + 1;
    wide.max_atoms = n + 2;
    wide.allow_rank_deficient = false;
    const Problem ind = open_problem(random_molecular(rng, q, wide).moments_prefix(kappa));
    if (ind.slot.r < 1) ++wrong_r;
  }
  const bool ok = missed == 0 && wrong_r == 0 && worst <= 1e-9L;
  return {ok, fmt("50 determinate: max |L_n| %.2e, %.0f missed, max |F - S_sigma| %.2e (1e-9); %.0f indeterminate "
                  "with r = 0",
                  static_cast<double>(worst_l), missed, static_cast<double>(worst), wrong_r)};
}

Outcome extendability_oracle() {
  const ExtensionStats st = extension_oracle_agreement(200, 2000, 3003);
  std::string which;
  for (int i : st.disagreeing) which += " " + std::to_string(i);
  return {st.disagreeing.empty(),
          fmt("200 instances (%.0f extendable), %.0f disagreements, %.0f oracle trials", st.extendable,
              static_cast<double>(st.disagreeing.size()), static_cast<double>(st.trials)) +
              (which.empty() ? "" : ", at" + which)};
}

MatrixSeq corrupt(const MatrixSeq& s, Index j, std::mt19937_64& rng) {
  CMatrix dir = re_part(random_complex(rng, s.q(), s.q()));
  dir /= op_norm(dir);
  std::vector<CMatrix> items = s.items();
  items[static_cast<size_t>(j)] += Real(1e-2L) * (1 + op_norm(s[j])) * dir;
  return MatrixSeq(s.q(), items);
}

Outcome negative_controls(const std::vector<SolveCase>& cases) {
  std::vector<const SolveCase*> pool;
  for (const auto& c : cases)
    if (!c.p.determinate() && pool.size() < 100) pool.push_back(&c);
  std::vector<int> flipped(pool.size(), 0), broken(pool.size(), 0);
  for_each_index(static_cast<Index>(pool.size()), Exec::Parallel, [&](Index i) {
    const SolveCase& c = *pool[static_cast<size_t>(i)];
    std::seed_seq ss{std::uint64_t{4004}, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(ss);
    std::uniform_int_distribution<Index> pick(0, c.seq.kappa());
    const MatrixSeq bad = corrupt(c.seq, pick(rng), rng);
    flipped[static_cast<size_t>(i)] =
        hn_check(c.F, bad, default_rays(), {}, false, Exec::Serial).verdict() != Verdict::Decaying;
    try {
      const Problem pb = open_problem_unchecked(bad);
      if (pb.slot.r != c.p.slot.r) {
        broken[static_cast<size_t>(i)] = 1;
        return;
      }
      const HerglotzExpr g = recover_parameter(pb, c.F);
      broken[static_cast<size_t>(i)] = compare(g, c.f, standard_z_grid(), 1e-4L, Exec::Serial).max_diff > 1e-4L;
    } catch (const Error&) {
      broken[static_cast<size_t>(i)] = 1;
    }
  });
  int both = 0, nf = 0, nb = 0;
  for (size_t i = 0; i < pool.size(); ++i) {
    nf += flipped[i];
    nb += broken[i];
    both += flipped[i] && broken[i];
  }
  const bool ok = pool.size() == 100 && both >= 95;
  return {ok, fmt("%.0f corrupted instances: verdict flipped %.0f, roundtrip broken %.0f, both %.0f (need 95)",
                  static_cast<double>(pool.size()), nf, nb, both)};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  std::vector<SolveCase> cases;
  bool cases_ready = false;
  auto solved = [&]() -> const std::vector<SolveCase>& {
    if (!cases_ready) {
      cases = solve_corpus();
      cases_ready = true;
    }
    return cases;
  };

  const std::vector<Criterion> criteria{
      {1, "Penrose/predicate suite", 5, penrose_suite},
      {2, "Algebraic Schur identities", 10, schur_identities},
      {3, "Inverse-pair and LFT-form identities", 20, inverse_pairs},
      {4, "Solve/recover roundtrip", 60, [&] { return roundtrip(solved()); }},
      {5, "Solution verification", 60, [&] { return verification(solved()); }},
      {6, "Determinacy", 10, determinacy},
      {7, "Extendability oracle agreement", 30, extendability_oracle},
      {8, "Negative controls", 0, [&] { return negative_controls(solved()); }},
  };

  int failed = 0;
  std::printf("threads: %d\n", max_threads());
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s <= 0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::string budget = c.budget_s > 0 ? fmt(" / %.0f s", c.budget_s) : "";
    std::printf("[%s] %d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs,
                budget.c_str());
    std::fflush(stdout);
  }
  const int ran = only.empty() ? static_cast<int>(criteria.size()) : static_cast<int>(only.size());
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
