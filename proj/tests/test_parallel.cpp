#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <atomic>

#include "momentforge/extrapolate.hpp"
#include "momentforge/grid.hpp"
#include "momentforge/solver.hpp"
#include "momentforge/verify.hpp"
#include "support.hpp"

using namespace mf_test;

namespace {

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

bool identical(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) return false;
  return true;
}

HerglotzExpr solution_for(const Instance& inst, std::mt19937_64& rng) {
  const Problem p = open_problem(inst.seq);
  return p.determinate() ? determinate_solution(p) : solve(p, random_gallery_parameter(p.slot.r, p.parity, rng));
}

}  // namespace

TEST_CASE("for_each_index visits every index once and rethrows the first error") {
  Threads t(4);
  std::vector<std::atomic<int>> hits(257);
  for_each_index(257, Exec::Parallel, [&](Index i) { hits[static_cast<size_t>(i)]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_WITH(for_each_index(64, Exec::Parallel,
                                   [](Index i) {
                                     if (i == 17 || i == 40) throw RangeError("boom " + std::to_string(i));
                                   }),
                    "boom 17");
  CHECK(max_threads() >= 1);
}

TEST_CASE("parallel grid evaluation is bitwise equal to the serial reference") {
  Threads t(4);
  std::mt19937_64 rng(271);
  const std::vector<Complex> zs = ray_grid(geometric_grid(0.5L, 1.3L, 40), {0.3L, 1.2L, 2.5L});
  for (const auto& inst : corpus(277, 12, 3, 7, 1, 4)) {
    const HerglotzExpr f = solution_for(inst, rng);
    const auto serial = eval_grid(f, zs, Exec::Serial);
    const auto parallel = eval_grid(f, zs, Exec::Parallel);
    REQUIRE(serial.size() == zs.size());
    for (size_t i = 0; i < zs.size(); ++i) CHECK(identical(serial[i], parallel[i]));
    CHECK(compare(f, f, zs, 0, Exec::Parallel).max_diff == 0);
  }
}

TEST_CASE("verification reports do not depend on the execution mode") {
  Threads t(4);
  std::mt19937_64 rng(281);
  for (const auto& inst : corpus(283, 6, 2, 5, 1, 4)) {
    const HerglotzExpr f = solution_for(inst, rng);
    const AsymptoticReport a = hn_check(f, inst.seq, default_rays(), {}, false, Exec::Serial);
    const AsymptoticReport b = hn_check(f, inst.seq, default_rays(), {}, false, Exec::Parallel);
    REQUIRE(a.curves.size() == b.curves.size());
    CHECK(a.r_grid == b.r_grid);
    for (size_t i = 0; i < a.curves.size(); ++i) {
      CHECK(a.curves[i].values == b.curves[i].values);
      CHECK(a.curves[i].verdict == b.curves[i].verdict);
    }
    const MomentEstimate ma = extract_moments(f, inst.seq.kappa(), {}, Exec::Serial);
    const MomentEstimate mb = extract_moments(f, inst.seq.kappa(), {}, Exec::Parallel);
    CHECK(ma.y_grid == mb.y_grid);
    for (Index j = 0; j <= inst.seq.kappa(); ++j) CHECK(identical(ma.moments[j], mb.moments[j]));
  }
}

TEST_CASE("batch roundtrips give the same per-instance results in either mode") {
  Threads t(4);
  const auto insts = corpus(293, 24, 3, 6, 1, 4);
  auto batch = [&](Exec exec) {
    std::vector<Real> out(insts.size(), -1);
    for_each_index(static_cast<Index>(insts.size()), exec, [&](Index i) {
      std::seed_seq ss{std::uint64_t{293}, static_cast<std::uint64_t>(i)};
      std::mt19937_64 rng(ss);
      const Problem p = open_problem(insts[static_cast<size_t>(i)].seq);
      if (p.determinate()) {
        out[static_cast<size_t>(i)] = 0;
        return;
      }
      const HerglotzExpr f = random_gallery_parameter(p.slot.r, p.parity, rng);
      out[static_cast<size_t>(i)] = compare(recover_parameter(p, solve(p, f)), f, standard_z_grid(), 1e-8L,
                                            Exec::Serial).max_diff;
    });
    return out;
  };
  const auto serial = batch(Exec::Serial);
  const auto parallel = batch(Exec::Parallel);
  CHECK(serial == parallel);
  for (Real d : serial) CHECK(d <= 1e-8L);
}
