// rblab — command-line front end.
//
//   rblab check <example> [params]      soliton verification report (JSON)
//   rblab lemma <id> --example <name>   integral-identity rows (CSV)
//   rblab flow --init <name> [params]   conformal-flow trajectory (CSV)
//
// Exit codes: 0 pass, 1 usage/refusal, 2 verification failure, 3 blow-up.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rblab/catalog.hpp"
#include "rblab/integrals.hpp"
#include "rblab/jsonio.hpp"
#include "rblab/rbflow.hpp"

namespace {

using namespace rblab;

constexpr int kPass = 0, kUsage = 1, kVerifyFail = 2, kBlowUp = 3;

void write_out(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot open output file: " + path);
  f << content;
}

struct ExampleParams {
  double rho = 0.0, t = 0.0, c = 1.0;
  double a = 1.0, b = 0.0, h0 = 0.0, h1 = 1.0;
  std::vector<double> Z = {0.0, 0.0, 1.0};
};

SolitonData build_example(const std::string& name, const ExampleParams& p) {
  if (name == "hamilton-cigar") return catalog::hamilton_cigar();
  if (name == "cigar-rb") return catalog::cigar_almost_rb(p.rho, p.t);
  if (name == "sphere") return catalog::round_sphere_soliton(p.c, p.Z, p.rho);
  if (name == "warped") return catalog::warped_product_2d(p.c, p.h0, p.h1, p.a, p.b, p.rho);
  throw ParameterError("unknown example '" + name +
                       "' (choose hamilton-cigar, cigar-rb, sphere, warped)");
}

void report_fields(jsonio::Builder& b, const SolitonReport& r) {
  using jsonio::num;
  using jsonio::quote;
  b.field("residual_sup", num(r.residual_sup));
  b.field("lambda_min", num(r.lambda_min));
  b.field("lambda_max", num(r.lambda_max));
  b.field("lambda_discrepancy", num(r.lambda_discrepancy));
  b.field("trace_free", r.trace_free ? "true" : "false");
  b.field("classification", quote(to_string(r.classification)));
  jsonio::Builder ids;
  for (const auto& [k, v] : r.identities) ids.field(k, num(v));
  b.field("identities", ids.str());
  jsonio::Builder pts;
  pts.field("count", std::to_string(r.point_count));
  pts.field("description", quote(r.points_desc));
  b.field("points", pts.str());
}

// ---- check -------------------------------------------------------------------

struct CheckConfig {
  std::string example;
  ExampleParams p;
  int points = 20;
  double tol = 1e-8;     // residual_sup gate (trace-derived λ)
  double tol_id = 1e-6;  // identity-table gate
  std::string out;
};

int cmd_check(const CheckConfig& cfg) {
  SolitonData d = build_example(cfg.example, cfg.p);
  std::vector<Point> pts = default_sample_grid(d.metric, cfg.points);

  // The pass gate always uses trace-derived λ: it asks whether the metric/ξ
  // pair satisfies *some* almost-soliton equation.  A closed-form λ, when the
  // example carries one, is reported alongside with its own classification
  // and the max discrepancy — measured, never asserted equal.
  SolitonData solve = d;
  solve.lambda_closed = {};
  SolitonReport trace = soliton_residual(solve, pts);
  std::optional<SolitonReport> paper;
  if (d.has_closed_lambda()) paper = soliton_residual(d, pts);

  bool pass = trace.residual_sup <= cfg.tol;
  double ctrbs_best = 0;
  for (const auto& [k, v] : trace.identities) {
    if (k == "ctrbs_printed" || k == "ctrbs_derived") continue;
    if (v > cfg.tol_id) pass = false;
  }
  {
    double pr = 0, dr = 0;
    for (const auto& [k, v] : trace.identities) {
      if (k == "ctrbs_printed") pr = v;
      if (k == "ctrbs_derived") dr = v;
    }
    ctrbs_best = std::min(pr, dr);
    if (ctrbs_best > cfg.tol_id) pass = false;
  }

  jsonio::Builder b;
  b.field("example", jsonio::quote(d.name));
  report_fields(b, trace);
  if (paper) {
    b.field("lambda_discrepancy_vs_closed_form", jsonio::num(paper->lambda_discrepancy));
    jsonio::Builder pb;
    pb.field("residual_sup", jsonio::num(paper->residual_sup));
    pb.field("lambda_min", jsonio::num(paper->lambda_min));
    pb.field("lambda_max", jsonio::num(paper->lambda_max));
    pb.field("classification", jsonio::quote(to_string(paper->classification)));
    b.field("closed_form_lambda", pb.str());
  }
  b.field("residual_tolerance", jsonio::num(cfg.tol));
  b.field("identity_tolerance", jsonio::num(cfg.tol_id));
  b.field("passed", pass ? "true" : "false");
  write_out(cfg.out, b.str() + "\n");
  return pass ? kPass : kVerifyFail;
}

// ---- lemma -------------------------------------------------------------------

struct LemmaConfig {
  std::string id;
  std::string example = "sphere";
  ExampleParams p;
  std::string grid;  // "RxC"; default depends on the chart
  double Lx = 2.0 * 3.14159265358979323846, Ly = 2.0 * 3.14159265358979323846;
  std::string out;
};

std::pair<int, int> parse_grid(const std::string& s, int def_r, int def_c) {
  if (s.empty()) return {def_r, def_c};
  int r = 0, c = 0;
  char x = 0;
  if (std::sscanf(s.c_str(), "%d%c%d", &r, &x, &c) != 3 || x != 'x' || r <= 0 || c <= 0)
    throw ParameterError("bad --grid '" + s + "', expected e.g. 128x256");
  return {r, c};
}

ChartMetric perturb_sphere(const ChartMetric& round) {
  ChartMetric m = round;
  m.name = "perturbed_sphere";
  MetricMap base = round.components;
  m.components = [base](const JetPoint& x, double t) {
    Mat<Jet> g = base(x, t);
    Jet f = 1.0 + 0.1 * cos(x[0]) * cos(x[1]);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) g(i, j) = f * g(i, j);
    return g;
  };
  return m;
}

int cmd_lemma(const LemmaConfig& cfg) {
  const bool on_torus = cfg.example == "torus-field";
  QuadratureGrid grid;
  ChartMetric metric;
  VectorField xi;
  ScalarField lam;
  std::optional<SolitonData> d;

  if (cfg.example == "sphere" || cfg.example == "sphere-perturbed") {
    auto [nr, nc] = parse_grid(cfg.grid, 128, 256);
    grid = sphere_grid(cfg.p.c, nr, nc);
    catalog::SphereConstruction sc = catalog::make_sphere_construction(cfg.p.c, cfg.p.Z);
    xi = sc.xi;
    lam = sc.mu;
    if (cfg.example == "sphere") {
      d = catalog::round_sphere_soliton(cfg.p.c, cfg.p.Z, cfg.p.rho);
      metric = d->metric;
    } else {
      metric = perturb_sphere(sc.metric);
    }
  } else if (on_torus) {
    auto [nr, nc] = parse_grid(cfg.grid, 64, 64);
    grid = torus_grid(cfg.Lx, cfg.Ly, nr, nc);
    metric = grid.chart;
    xi = [](const JetPoint& x, double) { return std::vector<Jet>{sin(x[0]), cos(x[1])}; };
    lam = [](const JetPoint& x, double) { return sin(x[0]) * cos(x[1]); };
  } else {
    // Non-compact / boundary examples reach here so that lemma preconditions
    // produce their refusals (exit 1) rather than a usage error.
    d = build_example(cfg.example, cfg.p);
    auto [nr, nc] = parse_grid(cfg.grid, 16, 32);
    grid = sphere_grid(1.0, nr, nc);
    metric = d->metric;
    xi = d->xi;
  }

  const std::vector<std::string> lemma_ids = {"L2.1", "L2.2", "L2.3a", "L2.3b", "L2.4", "L2.5"};
  std::vector<std::string> wanted;
  if (cfg.id == "all") {
    if (!d)
      throw PreconditionError("'all' needs a soliton example; '" + cfg.example +
                              "' provides fields only (run yano/bochner/bianchi)");
    wanted = lemma_ids;
    wanted.push_back("yano");
    wanted.push_back("bochner");
  } else {
    wanted.push_back(cfg.id);
  }

  std::string csv = lemma_csv_header() + "\n";
  bool all_pass = true;
  for (const std::string& id : wanted) {
    LemmaResult r;
    if (id == "yano" || id == "bochner") {
      if (!metric.closed_manifold)
        throw PreconditionError(id + ": integral identity needs a closed manifold, but '" +
                                metric.name + "' is not one");
      double l1 = 0;
      double v = (id == "yano") ? yano_residual(grid, metric, xi, 0.0, &l1)
                                : bochner_residual(grid, metric, lam, 0.0, &l1);
      r.id = id;
      r.lhs = v;
      r.rhs = 0.0;
      r.residual = v;
      r.term_l1 = l1;
      r.tolerance = lemma_base_tolerance(grid) * (1.0 + l1);
      r.pass = v <= r.tolerance;
      r.grid_desc = grid.resolution + " " + metric.name;
    } else if (id == "bianchi") {
      double v = bianchi_sweep(grid, metric, 0.0);
      r.id = id;
      r.lhs = v;
      r.rhs = 0.0;
      r.residual = v;
      r.tolerance = on_torus ? 1e-10 : 1e-7;
      r.pass = v <= r.tolerance;
      r.grid_desc = grid.resolution + " " + metric.name;
    } else {
      if (!d)
        throw PreconditionError(id + ": needs a soliton example; '" + cfg.example +
                                "' provides fields only");
      r = lemma_residual(id, *d, grid);
    }
    csv += to_csv_row(r) + "\n";
    all_pass = all_pass && r.pass;
  }
  write_out(cfg.out, csv);
  return all_pass ? kPass : kVerifyFail;
}

// ---- flow --------------------------------------------------------------------

struct FlowConfig {
  std::string init = "cigar";
  double rho = 0.0, T = 0.1, h = 1.0 / 32, dt = 0.0, amp = 0.1, half_width = 4.0;
  int n = 64, sample_every = 1;
  std::string out;
};

int cmd_flow(const FlowConfig& cfg) {
  FlowState s;
  if (cfg.init == "cigar")
    s = cigar_state(cfg.rho, cfg.h, cfg.half_width);
  else if (cfg.init == "torus-perturb")
    s = perturbed_torus_state(cfg.n, cfg.amp, cfg.rho);
  else if (cfg.init == "flat")
    s = flat_torus_state(cfg.n, cfg.rho);
  else
    throw ParameterError("unknown --init '" + cfg.init +
                         "' (choose cigar, torus-perturb, flat)");

  FlowResult r = run(std::move(s), cfg.T, cfg.dt, cfg.sample_every);
  write_out(cfg.out, trajectory_csv(r));
  if (r.blew_up) {
    std::cerr << "blow-up: " << r.blow_up_reason << "\n";
    return kBlowUp;
  }
  return kPass;
}

void add_example_params(CLI::App* cmd, ExampleParams& p) {
  cmd->add_option("--rho", p.rho, "coupling constant");
  cmd->add_option("--t", p.t, "family time slice");
  cmd->add_option("--c", p.c, "sphere curvature / warped h''=c*h coefficient");
  cmd->add_option("--Z", p.Z, "ambient vector, comma separated (3 or 4 entries)")
      ->delimiter(',');
  cmd->add_option("--a", p.a, "warped potential slope");
  cmd->add_option("--b", p.b, "warped potential offset");
  cmd->add_option("--h0", p.h0, "warped h(0)");
  cmd->add_option("--h1", p.h1, "warped h'(0)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost Ricci-Bourguignon soliton laboratory"};
  app.require_subcommand(1);

  CheckConfig ck;
  CLI::App* check = app.add_subcommand("check", "verify a catalog soliton pointwise");
  check->add_option("example", ck.example, "hamilton-cigar | cigar-rb | sphere | warped")
      ->required();
  add_example_params(check, ck.p);
  check->add_option("--points", ck.points, "sample-grid resolution per axis (default 20)");
  check->add_option("--tol", ck.tol, "residual_sup pass tolerance (default 1e-8)");
  check->add_option("--tol-identity", ck.tol_id, "identity residual tolerance (default 1e-6)");
  check->add_option("--out", ck.out, "write JSON here instead of stdout");

  LemmaConfig lm;
  CLI::App* lemma = app.add_subcommand("lemma", "integral identities by quadrature");
  lemma
      ->add_option("id", lm.id,
                   "L2.1 | L2.2 | L2.3a | L2.3b | L2.4 | L2.5 | yano | bochner | bianchi | all")
      ->required();
  lemma->add_option("--example", lm.example,
                    "sphere | sphere-perturbed | torus-field | hamilton-cigar | cigar-rb | warped");
  add_example_params(lemma, lm.p);
  lemma->add_option("--grid", lm.grid, "quadrature resolution RxC (default 128x256 / 64x64)");
  lemma->add_option("--Lx", lm.Lx, "torus x period (default 2*pi)");
  lemma->add_option("--Ly", lm.Ly, "torus y period (default 2*pi)");
  lemma->add_option("--out", lm.out, "write CSV here instead of stdout");

  FlowConfig fl;
  CLI::App* flow = app.add_subcommand("flow", "run the conformal-gauge flow");
  flow->set_help_flag("--help", "print help");  // frees -h for the spacing flag
  flow->add_option("--init", fl.init, "cigar | torus-perturb | flat")->required();
  flow->add_option("--rho", fl.rho, "coupling constant (<= 1/2)");
  flow->add_option("--T", fl.T, "final time")->required();
  flow->add_option("--h", fl.h, "plane-grid spacing (cigar init, default 1/32)");
  flow->add_option("--half-width", fl.half_width, "plane half-width (default 4)");
  flow->add_option("--n", fl.n, "torus nodes per axis (default 64)");
  flow->add_option("--amp", fl.amp, "torus perturbation amplitude (default 0.1)");
  flow->add_option("--dt", fl.dt, "fixed time step (default: 0.8x CFL bound)");
  flow->add_option("--sample-every", fl.sample_every, "record every k-th step (default 1)");
  flow->add_option("--out", fl.out, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
    if (check->parsed()) return cmd_check(ck);
    if (lemma->parsed()) return cmd_lemma(lm);
    if (flow->parsed()) return cmd_flow(fl);
    return kUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help/message
    return code == 0 ? kPass : kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
}
