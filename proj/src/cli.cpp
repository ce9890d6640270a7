#include "momentforge/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "momentforge/grid.hpp"
#include "momentforge/json_io.hpp"
#include "momentforge/matkit.hpp"
#include "momentforge/seqkit.hpp"
#include "momentforge/solver.hpp"
#include "momentforge/verify.hpp"

namespace momentforge {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string seq, param, fn, out;
  std::uint64_t seed = 1;
  Index q = 1, kappa = 2, atoms = 0, k = 1, m = -1, n = 1;
  std::string kind = "V";
  std::vector<double> rays, ygrid;
  std::optional<double> tol_rank, tol_psd, tol_eq;
  Real roundtrip_tol = 1e-8L;
};

Tolerances profile_tolerances(std::string& name) {
  const char* env = std::getenv("MOMENTFORGE_TOL_PROFILE");
  name = env && *env ? env : "default";
  Tolerances t;
  if (name == "default") return t;
  if (name == "strict") {
    t.rank_rtol = 1e-12L;
    t.psd_atol = 1e-11L;
    t.eq_atol = 1e-11L;
    return t;
  }
  if (name == "loose") {
    t.rank_rtol = 1e-8L;
    t.psd_atol = 1e-7L;
    t.eq_atol = 1e-7L;
    return t;
  }
  throw ContractError("unknown MOMENTFORGE_TOL_PROFILE \"" + name + "\" (default, strict, loose)");
}

Tolerances resolve_tolerances(const Options& o, std::string& profile) {
  Tolerances t = profile_tolerances(profile);
  if (o.tol_rank) t.rank_rtol = *o.tol_rank;
  if (o.tol_psd) t.psd_atol = *o.tol_psd;
  if (o.tol_eq) t.eq_atol = *o.tol_eq;
  t.validate();
  return t;
}

// Accepts the bare object or any CLI output that wraps it under one of the keys.
json unwrap(const json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (j.is_object() && j.contains(k)) return j.at(k);
  return j;
}

const std::string& need(const std::string& path, const char* flag) {
  if (path.empty()) throw ContractError(std::string("missing required flag ") + flag);
  return path;
}

MatrixSeq load_seq(const Options& o) { return seq_from_json(unwrap(read_json_file(need(o.seq, "--seq")), {"seq"})); }

HerglotzExpr load_expr(const std::string& path, const char* flag) {
  return expr_from_json(unwrap(read_json_file(need(path, flag)), {"solution", "parameter", "expr"}));
}

std::vector<Real> to_real(const std::vector<double>& v) { return {v.begin(), v.end()}; }

json instance_json(Index i, const Problem& p, const HerglotzExpr& f, const CompareReport& c) {
  return json{{"index", i},
              {"kappa", p.kappa()},
              {"parity", parity_name(p.parity)},
              {"r", p.slot.r},
              {"parameter_kind", f.kind()},
              {"max_diff", static_cast<double>(c.max_diff)},
              {"pass", c.pass}};
}

struct Runner {
  Options o;
  std::string command;
  Tolerances tol;
  std::string profile;
  json inputs = json::object();

  json manifest(double seconds) const {
    return json{{"command", command},
                {"inputs", inputs},
                {"seed", command == "gen" || command == "roundtrip" ? json(o.seed) : json(nullptr)},
                {"tolerance_profile", profile},
                {"tolerances",
                 {{"rank_rtol", static_cast<double>(tol.rank_rtol)},
                  {"psd_atol", static_cast<double>(tol.psd_atol)},
                  {"eq_atol", static_cast<double>(tol.eq_atol)}}},
                {"output", o.out.empty() ? "-" : o.out},
                {"wall_clock_s", seconds}};
  }

  void note_input(const char* key, const std::string& path) {
    if (!path.empty()) inputs[key] = path;
  }

  int emit(json body, int code, double seconds) const {
    body["manifest"] = manifest(seconds);
    if (o.out.empty())
      std::cout << body.dump(2) << "\n";
    else
      write_json_file(o.out, body);
    return code;
  }

  int gen(json& body) {
    if (o.q < 1 || o.kappa < 0) throw ContractError("gen: need --q >= 1 and --kappa >= 0");
    std::mt19937_64 rng(o.seed);
    MeasureDraw draw;
    draw.min_atoms = draw.max_atoms = o.atoms > 0 ? o.atoms : o.kappa / 2 + 2;
    const MolecularMeasure sigma = random_molecular(rng, o.q, draw);
    body = json{{"measure", to_json(sigma)}, {"seq", to_json(sigma.moments_prefix(o.kappa))}};
    return kExitOk;
  }

  int check(json& body) {
    note_input("seq", o.seq);
    const MatrixSeq seq = load_seq(o);
    const bool ext = is_hnnd_extendable(seq, tol);
    body = json{{"kappa", seq.kappa()},
                {"q", seq.q()},
                {"hankel_nonnegative_definite", is_hnnd(seq, tol)},
                {"extendable", ext}};
    if (!ext) {
      std::cerr << "not Hankel nonnegative definite extendable: the solution set is empty\n";
      return kExitFail;
    }
    const Problem p = open_problem_unchecked(seq, tol);
    body["parity"] = parity_name(p.parity);
    body["r"] = p.slot.r;
    body["determinate"] = p.determinate();
    body["L"] = to_json(p.L);
    return kExitOk;
  }

  int schur(json& body) {
    note_input("seq", o.seq);
    body = json{{"k", o.k}, {"seq", to_json(schur_transform(load_seq(o), o.k, tol))}};
    return kExitOk;
  }

  int resolvent(json& body) {
    note_input("seq", o.seq);
    const MatrixSeq seq = load_seq(o);
    const Index m = o.m < 0 ? seq.kappa() : o.m;
    if (o.kind != "V" && o.kind != "W") throw ContractError("resolvent: --kind must be V or W");
    body = json{{"kind", o.kind}, {"resolvent", to_json(o.kind == "V" ? resolvent_v(seq, m, tol) : resolvent_w(seq, m, tol))}};
    return kExitOk;
  }

  int solve_cmd(json& body) {
    note_input("seq", o.seq);
    note_input("param", o.param);
    const Problem p = open_problem(load_seq(o), tol);
    HerglotzExpr F;
    if (p.determinate()) {
      if (!o.param.empty() && load_expr(o.param, "--param").q() != 0)
        throw ContractError("solve: the problem is determinate (r = 0), no parameter is accepted");
      F = determinate_solution(p);
    } else {
      const HerglotzExpr f = o.param.empty() ? HerglotzExpr::zero(p.slot.r) : load_expr(o.param, "--param");
      F = solve(p, f);
    }
    body = json{{"r", p.slot.r},
                {"parity", parity_name(p.parity)},
                {"path", p.determinate() ? "determinate: v12 v22^-1 of V^(kappa)" : "LFT of V^(kappa) on U f U*"},
                {"solution", to_json(F)}};
    return kExitOk;
  }

  int determinate(json& body) {
    note_input("seq", o.seq);
    const Problem p = open_problem(load_seq(o), tol);
    body = json{{"r", p.slot.r},
                {"parity", parity_name(p.parity)},
                {"path", "determinate: v12 v22^-1 of V^(kappa)"},
                {"solution", to_json(determinate_solution(p))}};
    return kExitOk;
  }

  int recover(json& body) {
    note_input("seq", o.seq);
    note_input("fn", o.fn);
    const Problem p = open_problem(load_seq(o), tol);
    body = json{{"r", p.slot.r},
                {"path", p.determinate() ? "determinate: empty parameter" : "U* F^(chain) U, forward Schur chain"},
                {"parameter", to_json(recover_parameter(p, load_expr(o.fn, "--fn")))}};
    return kExitOk;
  }

  int verify(json& body) {
    note_input("seq", o.seq);
    note_input("fn", o.fn);
    const MatrixSeq seq = load_seq(o);
    const HerglotzExpr F = load_expr(o.fn, "--fn");
    const std::vector<Real> rays = o.rays.empty() ? default_rays() : to_real(o.rays);
    AsymptoticReport rep = hn_check(F, seq, rays, {}, false);
    rep.moments = extract_moments(F, seq.kappa(), to_real(o.ygrid));
    body = to_json(rep);
    return rep.verdict() == Verdict::Decaying ? kExitOk : kExitFail;
  }

  int moments(json& body) {
    note_input("fn", o.fn);
    if (o.m < 0) throw ContractError("moments: --m is required");
    const MomentEstimate est = extract_moments(load_expr(o.fn, "--fn"), o.m, to_real(o.ygrid));
    body = to_json(est);
    return est.complete ? kExitOk : kExitFail;
  }

  int roundtrip(json& body) {
    if (o.q < 1 || o.kappa < 0 || o.n < 1) throw ContractError("roundtrip: need --q >= 1, --kappa >= 0, --n >= 1");
    std::vector<json> results(static_cast<size_t>(o.n));
    std::vector<Real> diffs(static_cast<size_t>(o.n), 0);
    for_each_index(o.n, Exec::Parallel, [&](Index i) {
      std::seed_seq ss{static_cast<std::uint64_t>(o.seed), static_cast<std::uint64_t>(i)};
      std::mt19937_64 rng(ss);
      MeasureDraw draw;
      draw.min_atoms = draw.max_atoms = o.atoms > 0 ? o.atoms : o.kappa / 2 + 2;
      const MatrixSeq seq = random_molecular(rng, o.q, draw).moments_prefix(o.kappa);
      const Problem p = open_problem(seq, tol);
      CompareReport c;
      c.tol = o.roundtrip_tol;
      HerglotzExpr f = empty_parameter();
      if (!p.determinate()) {
        f = random_gallery_parameter(p.slot.r, p.parity, rng);
        const HerglotzExpr g = recover_parameter(p, solve(p, f));
        c = compare(g, f, standard_z_grid(), o.roundtrip_tol, Exec::Serial);
      }
      diffs[static_cast<size_t>(i)] = c.max_diff;
      results[static_cast<size_t>(i)] = instance_json(i, p, f, c);
    });
    Real worst = 0;
    for (Real d : diffs) worst = std::max(worst, d);
    const bool pass = worst <= o.roundtrip_tol;
    body = json{{"instances", results},
                {"max_diff", static_cast<double>(worst)},
                {"tol", static_cast<double>(o.roundtrip_tol)},
                {"pass", pass}};
    return pass ? kExitOk : kExitFail;
  }
};

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Truncated matricial Hamburger moment problem toolkit"};
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  Runner run;
  Options& o = run.o;
  app.add_option("--out", o.out, "Write JSON here instead of stdout");
  app.add_option("--tol-rank", o.tol_rank, "Relative singular-value cutoff");
  app.add_option("--tol-psd", o.tol_psd, "Absolute eigenvalue slack for PSD tests");
  app.add_option("--tol-eq", o.tol_eq, "Absolute slack for equality tests");

  auto* gen = app.add_subcommand("gen", "Random molecular measure and its moments");
  gen->add_option("--q", o.q, "Block size");
  gen->add_option("--kappa", o.kappa, "Last moment index");
  gen->add_option("--atoms", o.atoms, "Number of atoms (default kappa/2 + 2)");
  gen->add_option("--seed", o.seed);

  auto* check = app.add_subcommand("check", "Hankel nonnegative definite extendability");
  check->add_option("--seq", o.seq)->required();

  auto* schur = app.add_subcommand("schur", "k-th Schur transform of a sequence");
  schur->add_option("--seq", o.seq)->required();
  schur->add_option("--k", o.k, "Transform order");

  auto* resolvent = app.add_subcommand("resolvent", "Resolvent matrix polynomial V or W");
  resolvent->add_option("--seq", o.seq)->required();
  resolvent->add_option("--kind", o.kind, "V or W");
  resolvent->add_option("--m", o.m, "Order (default kappa)");

  auto* solve = app.add_subcommand("solve", "Solution for a parameter (default: zero parameter)");
  solve->add_option("--seq", o.seq)->required();
  solve->add_option("--param", o.param);

  auto* determinate = app.add_subcommand("determinate", "The unique solution of a determinate problem");
  determinate->add_option("--seq", o.seq)->required();

  auto* recover = app.add_subcommand("recover", "Parameter of a solution");
  recover->add_option("--seq", o.seq)->required();
  recover->add_option("--fn,--solution", o.fn)->required();

  auto* verify = app.add_subcommand("verify", "Asymptotic check of a candidate solution");
  verify->add_option("--seq", o.seq)->required();
  verify->add_option("--fn", o.fn)->required();
  verify->add_option("--rays", o.rays, "Ray angles in (0, pi)")->delimiter(',');
  verify->add_option("--ygrid", o.ygrid, "y-grid for moment extraction")->delimiter(',');

  auto* moments = app.add_subcommand("moments", "Laurent moments of a function along iy");
  moments->add_option("--fn", o.fn)->required();
  moments->add_option("--m", o.m, "Highest moment index")->required();
  moments->add_option("--ygrid", o.ygrid)->delimiter(',');

  auto* roundtrip = app.add_subcommand("roundtrip", "recover(solve(f)) == f on random instances");
  roundtrip->add_option("--q", o.q);
  roundtrip->add_option("--kappa", o.kappa);
  roundtrip->add_option("--atoms", o.atoms, "Atoms per measure (default kappa/2 + 2)");
  roundtrip->add_option("--seed", o.seed);
  roundtrip->add_option("--n", o.n, "Number of instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    run.tol = resolve_tolerances(o, run.profile);
    json body;
    int code = kExitOk;
    const auto* sub = app.get_subcommands().front();
    run.command = sub->get_name();
    if (sub == gen) code = run.gen(body);
    else if (sub == check) code = run.check(body);
    else if (sub == schur) code = run.schur(body);
    else if (sub == resolvent) code = run.resolvent(body);
    else if (sub == solve) code = run.solve_cmd(body);
    else if (sub == determinate) code = run.determinate(body);
    else if (sub == recover) code = run.recover(body);
    else if (sub == verify) code = run.verify(body);
    else if (sub == moments) code = run.moments(body);
    else if (sub == roundtrip) code = run.roundtrip(body);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run.emit(std::move(body), code, secs);
  } catch (const NotExtendableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace momentforge
