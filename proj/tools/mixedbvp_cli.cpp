// Command-line front end: orchestrates verification campaigns over the
// library modules and emits JSON reports, CSV tables, and optional SVG
// sketches. Exit codes: 0 pass, 2 assertion failure, 3 inconclusive,
// 4 bad input.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixedbvp/greens.hpp"
#include "mixedbvp/harmonic.hpp"
#include "mixedbvp/jsonio.hpp"
#include "mixedbvp/quadrature.hpp"

using namespace mixedbvp;

namespace {

constexpr int kPass = 0;
constexpr int kAssertFail = 2;
constexpr int kInconclusive = 3;
constexpr int kBadInput = 4;

struct Sink {
  std::string report_path;  // empty: stdout
  std::string csv_path;
  std::string svg_path;
};

struct CommonArgs {
  std::string config_path;
  Sink sink;
  std::uint64_t seed = 12345;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file for this run");
  cmd->add_option("--report", args.sink.report_path,
                  "write the JSON report to this file instead of stdout");
  cmd->add_option("--csv", args.sink.csv_path, "write the CSV table here");
  cmd->add_option("--svg", args.sink.svg_path, "write an SVG sketch here");
  cmd->add_option("--seed", args.seed, "seed for probe sampling");
}

ojson load_config(const std::string& path) {
  if (path.empty()) return ojson::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return ojson::parse(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write output file: " + path);
  out << text;
}

// The JSON report always goes somewhere (file or stdout); CSV and SVG only
// when a path was requested.
void emit(const Sink& sink, const ojson& report, const std::string& csv,
          const std::string& svg) {
  std::string text = report.dump(2) + "\n";
  if (sink.report_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_file(sink.report_path, text);
  if (!sink.csv_path.empty()) write_file(sink.csv_path, csv);
  if (!sink.svg_path.empty()) write_file(sink.svg_path, svg);
}

// Deterministic uniform double in [0, 1) from the raw generator, so output
// bytes depend only on the seed and not on library distribution internals.
double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// Field recipes accepted in configs: {"type": "signdefinite"|"mixed",
// "M": m, "epsilon": e} builds a certificate; {"lambda": l, "epsilon": e}
// is a raw field without one.
struct FieldChoice {
  HolomorphicField field;
  FieldCertificate cert;
  bool has_cert = false;
};

FieldChoice field_choice_from_json(const ojson& j) {
  FieldChoice fc;
  std::string type = j.value("type", std::string(j.contains("lambda") ? "raw" : "signdefinite"));
  if (type == "raw") {
    fc.field = field_from_json(j);
    return fc;
  }
  double M = j.value("M", 0.0);
  double eps = j.value("epsilon", 0.0);
  fc.cert = type == "mixed" ? build_field_mixed(M, eps)
                            : build_field_signdefinite(M, eps);
  fc.field = fc.cert.field;
  fc.has_cert = true;
  return fc;
}

ojson field_choice_to_json(const FieldChoice& fc) {
  if (!fc.has_cert) return field_to_json(fc.field);
  return certificate_to_json(fc.cert);
}

// Seeded interior probe points, kept away from the contour: radius within
// [0.15, 0.85] R and angular slack 6% of the opening on sectors, vertical
// clearance 0.1 R (1 + M) above graphs.
std::vector<Vec2> seeded_probes(const Domain& dom, double R, int count,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec2> probes;
  if (const Sector* sec = std::get_if<Sector>(&dom)) {
    double slack = 0.06 * sec->opening;
    while ((int)probes.size() < count) {
      double r = (0.15 + 0.70 * uniform01(rng)) * R;
      double th = kPi / 2 + (sec->opening - slack) * (2 * uniform01(rng) - 1);
      probes.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return probes;
  }
  const GraphDomain& g = std::get<GraphDomain>(dom);
  double M = g.lipschitz();
  while ((int)probes.size() < count) {
    double x = 0.7 * R * (2 * uniform01(rng) - 1);
    double y = g.phi(x) + (0.1 + 0.6 * uniform01(rng)) * R * (1 + M);
    Vec2 p{x, y};
    if (norm(p) < 0.9 * R && norm(p) > 0.1 * R) probes.push_back(p);
  }
  return probes;
}

// ---------------------------------------------------------------------------
// verify-rellich

int cmd_verify_rellich(const CommonArgs& args) {
  ojson cfg = load_config(args.config_path);
  Domain dom = cfg.contains("domain") ? domain_from_json(cfg.at("domain"))
                                      : Domain(GraphDomain::flat());
  double R = cfg.value("R", 4.0);
  std::string harmonic = cfg.value("harmonic", std::string("poly:0,0,1"));
  FieldChoice fc = field_choice_from_json(
      cfg.contains("field") ? cfg.at("field") : ojson::object());
  std::vector<int> ladder = cfg.value("ladder", std::vector<int>{40, 60, 80});
  double tol = cfg.value("tolerance", 1e-8);
  // The two-sided energy comparison is always run and reported when the
  // field carries a certificate, but it only drives the exit code on
  // request: for growing test functions the truncation flux never becomes
  // negligible, which is an expected "inconclusive", not a failure.
  bool twosided = fc.has_cert;
  bool assert_twosided = cfg.value("assert_twosided", false) && twosided;

  HarmonicFunction u = catalog_lookup(harmonic);

  ojson materialized;
  materialized["domain"] = domain_to_json(dom);
  materialized["R"] = R;
  materialized["harmonic"] = harmonic;
  materialized["field"] = field_choice_to_json(fc);
  materialized["ladder"] = ladder;
  materialized["tolerance"] = tol;
  materialized["assert_twosided"] = assert_twosided;

  bool identity_ok = true;
  std::vector<std::vector<double>> rows;
  ojson jrows = ojson::array();
  for (int levels : ladder) {
    RellichResult r = rellich_residual(u, fc.field, dom, R, levels);
    double residual = std::abs(r.boundary_integral + r.flux_correction);
    double bound = tol * (std::abs(r.boundary_integral) +
                          std::abs(r.flux_correction) + 1e-14);
    bool ok = r.converged && residual < bound;
    identity_ok = identity_ok && ok;
    rows.push_back({double(levels), r.boundary_integral, r.flux_correction,
                    residual, bound});
    jrows.push_back(ojson{{"levels", levels},
                          {"boundary_integral", r.boundary_integral},
                          {"flux_correction", r.flux_correction},
                          {"residual", residual},
                          {"tolerance", bound},
                          {"converged", r.converged},
                          {"ok", ok}});
  }

  bool inconclusive = false;
  bool twosided_ok = true;
  ojson jtwo;
  if (twosided) {
    TwosidedReport t =
        rellich_twosided_check(u, fc.cert, dom, R, ladder.back());
    jtwo = ojson{{"A", t.A},
                 {"B", t.B},
                 {"ratio", t.ratio},
                 {"certificate", t.certificate},
                 {"flux_term", t.flux_term},
                 {"trivial", t.trivial},
                 {"conclusive", t.conclusive},
                 {"bound_ok", t.bound_ok},
                 {"bound_ok_corrected", t.bound_ok_corrected}};
    if (assert_twosided && !t.trivial) {
      if (!t.conclusive)
        inconclusive = true;
      else
        twosided_ok = t.bound_ok;
    }
  }

  int code = kPass;
  if (!identity_ok || !twosided_ok)
    code = kAssertFail;
  else if (inconclusive)
    code = kInconclusive;

  ojson report;
  report["command"] = "verify-rellich";
  report["config"] = materialized;
  report["ladder_rows"] = jrows;
  if (twosided) report["twosided"] = jtwo;
  report["verdict"] = code == kPass          ? "pass"
                      : code == kAssertFail  ? "fail"
                                             : "inconclusive";
  std::string csv = csv_table(materialized,
                              {"levels", "boundary_integral", "flux_correction",
                               "residual", "tolerance"},
                              rows);
  emit(args.sink, report, csv, "");
  return code;
}

// ---------------------------------------------------------------------------
// counterexample-scan

int cmd_counterexample_scan(const CommonArgs& args) {
  ojson cfg = load_config(args.config_path);
  double ball = cfg.value("ball_radius", 0.5);
  std::vector<double> p_small = cfg.value("p_small", std::vector<double>{1.5, 1.9});
  std::vector<int> ladder =
      cfg.value("grading_ladder", std::vector<int>{200, 220, 240, 260});
  std::vector<double> cutoffs =
      cfg.value("cutoffs", std::vector<double>{1e-2, 1e-3, 1e-4, 1e-5, 1e-6});
  int nodes = cfg.value("nodes_per_panel", 6);
  double rel_tol = cfg.value("rel_tol", 1e-3);
  double inc_tol = cfg.value("increment_tol", 0.1);

  ojson materialized;
  materialized["ball_radius"] = ball;
  materialized["p_small"] = p_small;
  materialized["grading_ladder"] = ladder;
  materialized["cutoffs"] = cutoffs;
  materialized["nodes_per_panel"] = nodes;
  materialized["rel_tol"] = rel_tol;
  materialized["increment_tol"] = inc_tol;

  Domain dom = GraphDomain::flat();
  WeightedMeasure plain(0.0);
  HarmonicFunction u = catalog_lookup("counterexample");

  // Nontangential maximal values at the nodes of a graded mesh. The sampling
  // radii start at a fixed fraction of the foot point's distance to the
  // junction, so the 1/sqrt|t| blow-up is probed at its own scale.
  auto ntmax_on_mesh = [&](const BoundaryMesh& mesh) {
    std::vector<double> vals(mesh.samples.size());
    for (size_t i = 0; i < mesh.samples.size(); ++i) {
      const BoundarySample& s = mesh.samples[i];
      NontangentialGrid grid;
      grid.r_min = std::abs(s.arc) * 1e-2;
      grid.r_max = 2.0;
      grid.cone = make_cone(dom, default_cone_angle(dom));
      vals[i] = ntmax_grad(u, s.point, grid);
    }
    return vals;
  };

  bool cauchy_ok = true;
  std::vector<std::vector<double>> rows;
  ojson jsmall = ojson::array();
  for (double p : p_small) {
    double prev = 0.0;
    bool have_prev = false;
    for (int levels : ladder) {
      BoundaryMesh mesh = boundary_mesh(dom, ball, {levels, 1, nodes});
      double np = weighted_lp_boundary_norm(ntmax_on_mesh(mesh), p, plain, mesh);
      double diff = have_prev ? std::abs(np - prev) : 0.0;
      bool ok = !have_prev || diff < rel_tol * np;
      cauchy_ok = cauchy_ok && ok;
      rows.push_back({p, double(levels), np, diff, rel_tol * np});
      jsmall.push_back(ojson{{"p", p},
                             {"levels", levels},
                             {"norm", np},
                             {"diff", diff},
                             {"tolerance", rel_tol * np},
                             {"ok", ok}});
      prev = np;
      have_prev = true;
    }
  }

  // p = 2 on one deep mesh: the squared norm over {cutoff <= |t| <= ball}
  // grows by a near-constant amount per decade of cutoff, the numerical
  // signature of logarithmic divergence.
  BoundaryMesh deep = boundary_mesh(dom, ball, {ladder.back(), 1, nodes});
  std::vector<double> nt = ntmax_on_mesh(deep);
  std::vector<double> sq(cutoffs.size(), 0.0);
  for (size_t c = 0; c < cutoffs.size(); ++c)
    for (size_t i = 0; i < deep.samples.size(); ++i)
      if (std::abs(deep.samples[i].arc) >= cutoffs[c])
        sq[c] += nt[i] * nt[i] * deep.samples[i].weight;
  std::vector<double> inc;
  for (size_t c = 1; c < sq.size(); ++c) inc.push_back(sq[c] - sq[c - 1]);
  double mean = 0.0;
  for (double v : inc) mean += v;
  mean /= inc.size();
  bool diverge_ok = mean > 0.0;
  ojson jtwo = ojson::array();
  for (size_t c = 1; c < sq.size(); ++c) {
    double dev = std::abs(inc[c - 1] - mean);
    bool ok = mean > 0 && dev < inc_tol * mean;
    diverge_ok = diverge_ok && ok;
    rows.push_back({2.0, cutoffs[c], sq[c], inc[c - 1], inc_tol * mean});
    jtwo.push_back(ojson{{"cutoff", cutoffs[c]},
                         {"squared_norm", sq[c]},
                         {"increment", inc[c - 1]},
                         {"mean_increment", mean},
                         {"tolerance", inc_tol * mean},
                         {"ok", ok}});
  }

  int code = (cauchy_ok && diverge_ok) ? kPass : kAssertFail;
  ojson report;
  report["command"] = "counterexample-scan";
  report["config"] = materialized;
  report["convergent_rows"] = jsmall;
  report["divergent_rows"] = jtwo;
  report["verdict"] = code == kPass ? "pass" : "fail";
  std::string csv = csv_table(
      materialized, {"p", "parameter", "norm", "diff_or_increment", "tolerance"},
      rows);
  emit(args.sink, report, csv, "");
  return code;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const CommonArgs& args) {
  ojson cfg = load_config(args.config_path);
  ProblemConfig prob = problem_from_json(cfg);
  int n_probes = cfg.value("probes", 25);
  double tol = cfg.value("tolerance", 1e-6);

  // Manufactured mode: all three data sources name the same catalog
  // function, whose interior values then serve as the reference.
  bool manufactured = !prob.f_N.is_inline() && !prob.f_D.is_inline() &&
                      prob.f_N.name == prob.f_D.name &&
                      (prob.arc.name.empty() || prob.arc.name == prob.f_D.name);

  ojson materialized = problem_to_json(prob);
  materialized["probes"] = n_probes;
  materialized["tolerance"] = tol;
  materialized["seed"] = args.seed;
  materialized["manufactured"] = manufactured;

  std::vector<Vec2> probes = seeded_probes(prob.domain, prob.R, n_probes, args.seed);

  SolverMesh mesh = solver_mesh(prob.domain, prob.R, prob.levels,
                                prob.panels_per_level, prob.panel_order,
                                prob.arc_panels);
  auto node_fill = [&](const DataSpec& spec, ContourPanel::Kind kind,
                       bool normal_data) {
    std::vector<double> out;
    if (spec.is_inline()) {
      out = spec.samples;
      if ((int)out.size() != mesh.count_of(kind))
        throw std::invalid_argument(
            "inline samples do not match the mesh node count");
      return out;
    }
    HarmonicFunction h = catalog_lookup(spec.name);
    for (int i = 0; i < mesh.size(); ++i)
      if (mesh.node_kind(i) == kind)
        out.push_back(normal_data
                          ? dot(mesh.normals[i], h.gradient(to_cplx(mesh.nodes[i])))
                          : h.value(to_cplx(mesh.nodes[i])));
    return out;
  };
  const DataSpec& arc_spec =
      (prob.arc.name.empty() && prob.arc.samples.empty()) ? prob.f_D : prob.arc;

  ojson report;
  report["command"] = "solve";
  report["config"] = materialized;

  std::vector<std::vector<double>> rows;
  std::string density_csv_text;
  double max_err = 0.0;
  bool solve_ok = true;

  HarmonicFunction ref = catalog_lookup(manufactured ? prob.f_N.name : "absz2");
  if (prob.map_s < 1.0) {
    if (!std::holds_alternative<Sector>(prob.domain))
      throw std::invalid_argument("map_s < 1 requires a sector domain");
    if (prob.f_N.is_inline() || prob.f_D.is_inline() || arc_spec.is_inline())
      throw std::invalid_argument(
          "map_s < 1 requires catalog data, not inline samples");
    HarmonicFunction hN = catalog_lookup(prob.f_N.name);
    HarmonicFunction hD = catalog_lookup(prob.f_D.name);
    HarmonicFunction hA = catalog_lookup(arc_spec.name);
    TransferSolution ts = conformal_transfer_solve(
        std::get<Sector>(prob.domain), prob.map_s,
        [&](Vec2 p, Vec2 n) { return dot(n, hN.gradient(to_cplx(p))); },
        [&](Vec2 p) { return hD.value(to_cplx(p)); },
        [&](Vec2 p) { return hA.value(to_cplx(p)); }, prob.R, prob.levels,
        prob.panels_per_level, prob.panel_order, prob.arc_panels);
    solve_ok = ts.image.ok;
    report["image_residual"] = ts.image.residual;
    report["image_cond_estimate"] = ts.image.cond_estimate;
    report["unknowns"] = (int)ts.image.density.values.size();
    for (Vec2 p : probes) {
      Evaluation ev = ts.eval(p);
      double exact = manufactured ? ref.value(to_cplx(p)) : 0.0;
      double err = manufactured ? std::abs(ev.u - exact) : ts.image.residual;
      max_err = std::max(max_err, err);
      rows.push_back({p.x, p.y, ev.u, ev.grad.x, ev.grad.y, err});
    }
    density_csv_text = density_to_csv(materialized, ts.image);
  } else {
    MixedData data;
    data.f_N = node_fill(prob.f_N, ContourPanel::Kind::neumann, true);
    data.f_D = node_fill(prob.f_D, ContourPanel::Kind::dirichlet, false);
    data.arc = node_fill(arc_spec, ContourPanel::Kind::arc, false);
    SolveResult sr = solve_mixed(mesh, data);
    solve_ok = sr.ok;
    report["residual"] = sr.residual;
    report["cond_estimate"] = sr.cond_estimate;
    report["unknowns"] = mesh.size();
    for (Vec2 p : probes) {
      Evaluation ev = eval_solution(sr.density, p);
      double exact = manufactured ? ref.value(to_cplx(p)) : 0.0;
      double err = manufactured ? std::abs(ev.u - exact) : sr.residual;
      max_err = std::max(max_err, err);
      rows.push_back({p.x, p.y, ev.u, ev.grad.x, ev.grad.y, err});
    }
    density_csv_text = density_to_csv(materialized, sr);
  }

  int code = kPass;
  if (!solve_ok) code = kAssertFail;
  if (manufactured) {
    report["max_probe_error"] = max_err;
    if (max_err >= tol) code = kAssertFail;
  }
  report["verdict"] = code == kPass ? "pass" : "fail";

  std::string csv = csv_table(
      materialized, {"x", "y", "u", "grad_x", "grad_y", "error_estimate"}, rows);
  csv += density_csv_text;
  emit(args.sink, report, csv, contour_svg(mesh, probes));
  return code;
}

// ---------------------------------------------------------------------------
// exponents

int cmd_exponents(const CommonArgs& args) {
  ojson cfg = load_config(args.config_path);
  double M = cfg.value("M", 0.0);
  if (M > 0 && !cfg.contains("delta"))
    throw std::invalid_argument(
        "delta must be given explicitly when M > 0; the quadrant default 0.5 "
        "only applies to the flat case");
  double delta = cfg.value("delta", 0.5);

  ojson materialized;
  materialized["M"] = M;
  materialized["delta"] = delta;

  ExponentReport rep = exponent_report(M, delta);
  ojson report;
  report["command"] = "exponents";
  report["config"] = materialized;
  report["report"] = exponent_report_to_json(rep);

  if (cfg.contains("window_queries")) {
    ojson jq = ojson::array();
    for (const auto& q : cfg.at("window_queries")) {
      double eps = q.at("epsilon").get<double>();
      std::string which = q.at("window").get<std::string>();
      WindowReport w = window_check(M, eps, which, delta);
      jq.push_back(ojson{{"epsilon", eps},
                         {"window", which},
                         {"inside", w.inside},
                         {"lower", w.lower},
                         {"upper", w.upper},
                         {"margin_lower", w.margin_lower},
                         {"margin_upper", w.margin_upper}});
    }
    report["window_queries"] = jq;
  }

  std::vector<std::vector<double>> rows;
  if (cfg.contains("sweep")) {
    for (const auto& jm : cfg.at("sweep")) {
      double Ms = jm.get<double>();
      ExponentReport r = exponent_report(Ms, delta);
      rows.push_back({r.M, r.beta, r.mixed_L2.lo, r.p1, r.p2, r.p0});
    }
    materialized["sweep"] = cfg.at("sweep");
  }
  report["verdict"] = "pass";
  std::string csv = csv_table(
      materialized, {"M", "beta", "lower_mixed", "p1", "p2", "p0"}, rows);
  emit(args.sink, report, csv, "");
  return kPass;
}

// ---------------------------------------------------------------------------
// greens-check

int cmd_greens_check(const CommonArgs& args) {
  ojson cfg = load_config(args.config_path);
  int n_pairs = cfg.value("pairs", 1000);
  double bc_tol = cfg.value("bc_tolerance", 1e-12);
  double sym_tol = cfg.value("symmetry_tolerance", 1e-12);
  double rho = cfg.value("rho", 0.0625);
  double cx = cfg.value("atom_center", 1.0);
  double eps_prime = cfg.value("eps_prime", 0.0);
  int n_dyadic = cfg.value("dyadic_steps", 9);
  double fit_min = cfg.value("fit_min", 0.45);
  double r2_min = cfg.value("r2_min", 0.98);

  ojson materialized;
  materialized["pairs"] = n_pairs;
  materialized["bc_tolerance"] = bc_tol;
  materialized["symmetry_tolerance"] = sym_tol;
  materialized["rho"] = rho;
  materialized["atom_center"] = cx;
  materialized["eps_prime"] = eps_prime;
  materialized["dyadic_steps"] = n_dyadic;
  materialized["fit_min"] = fit_min;
  materialized["r2_min"] = r2_min;
  materialized["seed"] = args.seed;

  std::mt19937_64 rng(args.seed);
  auto draw = [&](double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
  };

  double worst_dirichlet = 0.0, worst_neumann = 0.0, worst_sym = 0.0;
  for (int i = 0; i < n_pairs; ++i) {
    Vec2 w{draw(0.01, 10.0), draw(0.01, 10.0)};
    // Dirichlet face: the value vanishes on the positive x2-axis.
    Vec2 zd{0.0, draw(0.01, 10.0)};
    worst_dirichlet = std::max(worst_dirichlet, std::abs(greens_eval(zd, w)));
    // Neumann face: the source-side normal derivative vanishes on the
    // positive x1-axis.
    Vec2 z{draw(0.01, 10.0), draw(0.01, 10.0)};
    Vec2 wn{draw(0.01, 10.0), 0.0};
    worst_neumann = std::max(worst_neumann, std::abs(greens_grad_w(z, wn).y));
    worst_sym = std::max(worst_sym,
                         std::abs(greens_eval(z, w) - greens_eval(w, z)));
  }
  bool bc_ok = worst_dirichlet < bc_tol && worst_neumann < bc_tol;
  bool sym_ok = worst_sym < sym_tol;

  // Decay scan: potential of a mean-zero atom sampled at dyadic distances
  // from its center, regression of log|u| against log(distance).
  AtomSpec atom = make_atom(GraphDomain::flat(), {cx, 0.0}, rho, "haar",
                            eps_prime, 0.0);
  std::vector<double> logd, logv;
  std::vector<std::vector<double>> rows;
  Vec2 dir{std::cos(kPi / 4), std::sin(kPi / 4)};
  for (int j = 1; j <= n_dyadic; ++j) {
    double d = rho * std::pow(2.0, j);
    AtomSolution sol = atom_solution(atom, Vec2{cx, 0.0} + d * dir);
    if (!sol.converged || sol.value == 0.0) continue;
    logd.push_back(std::log(d));
    logv.push_back(std::log(std::abs(sol.value)));
  }
  LineFit fit = fit_line(logd, logv);
  double decay = -fit.slope;
  for (size_t i = 0; i < logd.size(); ++i)
    rows.push_back({logd[i], logv[i], decay, fit.r2});
  bool decay_ok = decay >= fit_min && fit.r2 >= r2_min;

  int code = (bc_ok && sym_ok && decay_ok) ? kPass : kAssertFail;
  ojson report;
  report["command"] = "greens-check";
  report["config"] = materialized;
  report["worst_dirichlet_value"] = worst_dirichlet;
  report["worst_neumann_normal_derivative"] = worst_neumann;
  report["worst_symmetry_defect"] = worst_sym;
  report["decay_exponent"] = decay;
  report["decay_fit_r2"] = fit.r2;
  report["boundary_conditions_ok"] = bc_ok;
  report["symmetry_ok"] = sym_ok;
  report["decay_ok"] = decay_ok;
  report["verdict"] = code == kPass ? "pass" : "fail";
  std::string csv = csv_table(
      materialized, {"log_distance", "log_value", "fitted_delta", "fit_r2"},
      rows);
  emit(args.sink, report, csv, "");
  return code;
}

// ---------------------------------------------------------------------------
// measure-check

Domain domain_from_config(const ojson& cfg) {
  if (cfg.contains("sawtooth")) {
    const ojson& s = cfg.at("sawtooth");
    return random_sawtooth(s.at("M").get<double>(),
                           s.value("segments_per_side", 40),
                           s.value("seed", std::uint64_t{7}));
  }
  if (cfg.contains("domain")) return domain_from_json(cfg.at("domain"));
  return GraphDomain::flat();
}

int cmd_measure_check(const CommonArgs& args) {
  ojson cfg = load_config(args.config_path);
  Domain dom = domain_from_config(cfg);
  std::vector<double> eps_list =
      cfg.value("eps_list", std::vector<double>{-0.5, 0.0, 0.5, 0.9});
  double r_lo = cfg.value("r_min", 1e-3);
  double r_hi = cfg.value("r_max", 1e3);
  std::vector<double> x_list = cfg.value("x_list", std::vector<double>{0.0, 1.0, 8.0});
  double ratio_max = cfg.value("ratio_max", 4.0);

  ojson materialized;
  materialized["domain"] = domain_to_json(dom);
  materialized["eps_list"] = eps_list;
  materialized["r_min"] = r_lo;
  materialized["r_max"] = r_hi;
  materialized["x_list"] = x_list;
  materialized["ratio_max"] = ratio_max;

  const GraphDomain* g = std::get_if<GraphDomain>(&dom);
  bool all_ok = true;
  std::vector<std::vector<double>> rows;
  ojson jeps = ojson::array();
  for (double eps : eps_list) {
    WeightedMeasure mu(eps);
    double c1 = 1e300, c2 = 0.0;
    for (double xc : x_list) {
      Vec2 x{xc, g ? g->phi(xc) : 0.0};
      for (double r = r_lo; r <= r_hi * 1.0000001; r *= 2.0) {
        double sigma = weighted_ball_measure(dom, x, r, mu);
        double ratio = sigma / (r * std::pow(std::max(norm(x), r), eps));
        c1 = std::min(c1, ratio);
        c2 = std::max(c2, ratio);
        rows.push_back({eps, xc, r, sigma, ratio});
      }
    }
    bool ok = c2 / c1 < ratio_max;
    all_ok = all_ok && ok;
    jeps.push_back(ojson{{"eps", eps},
                         {"c1", c1},
                         {"c2", c2},
                         {"spread", c2 / c1},
                         {"ok", ok}});
  }

  int code = all_ok ? kPass : kAssertFail;
  ojson report;
  report["command"] = "measure-check";
  report["config"] = materialized;
  report["per_eps"] = jeps;
  report["verdict"] = code == kPass ? "pass" : "fail";
  std::string csv = csv_table(materialized, {"eps", "x", "r", "sigma", "ratio"},
                              rows);
  emit(args.sink, report, csv, "");
  return code;
}

// ---------------------------------------------------------------------------
// atoms-check

int cmd_atoms_check(const CommonArgs& args) {
  ojson cfg = load_config(args.config_path);
  double rho = cfg.value("rho", 0.25);
  double eps_prime = cfg.value("eps_prime", -0.25);
  std::string shape = cfg.value("shape", std::string("haar"));
  double R = cfg.value("partition_radius", 256.0);
  int levels = cfg.value("partition_levels", 40);
  int nodes = cfg.value("partition_nodes", 6);
  int n_blocks = cfg.value("blocks", 9);
  double ratio_max = cfg.value("ratio_max", 0.9);

  ojson materialized;
  materialized["rho"] = rho;
  materialized["eps_prime"] = eps_prime;
  materialized["shape"] = shape;
  materialized["partition_radius"] = R;
  materialized["partition_levels"] = levels;
  materialized["partition_nodes"] = nodes;
  materialized["blocks"] = n_blocks;
  materialized["ratio_max"] = ratio_max;

  // Corner-touching atom on the Neumann face of the quadrant.
  AtomSpec atom = make_atom(GraphDomain::flat(), {rho, 0.0}, rho, shape,
                            eps_prime, 0.0);
  atom.validate();

  // Primitive closes back to zero past the support (mean-zero in integral
  // form) and the weighted primitive bound stays finite.
  H11Primitive prim = h11_primitive(atom);
  double closure = std::abs(prim.value(atom.support_hi + 0.5 * rho));
  double prim_scale = atom.sup_norm * (atom.support_hi - atom.support_lo);
  bool closure_ok = closure <= 1e-12 * prim_scale;
  double pair_bound = h11_seminorm_pair_check(atom);
  bool pair_ok = std::isfinite(pair_bound);

  // Moment partition of the atom potential's conormal trace over the full
  // quadrant boundary. The truncated trace misses a small amount of flux
  // escaping past R, so its nodal mean is subtracted before partitioning and
  // the reconstruction is checked against the centered values.
  BoundaryMesh qmesh = quadrant_boundary_mesh(R, {levels, 1, nodes});
  std::vector<double> trace = atom_conormal_trace(atom, qmesh);
  MomentPartition part =
      moment_partition(trace, qmesh, atom.center, rho, true);
  double mbar = part.measured_mean / qmesh.total_weight();

  double recon = 0.0, trace_scale = 0.0;
  for (size_t i = 0; i < trace.size(); ++i) {
    double sum = 0.0;
    for (const auto& blk : part.blocks) sum += blk[i];
    recon = std::max(recon, std::abs(sum - (trace[i] - mbar)));
    trace_scale = std::max(trace_scale, std::abs(trace[i]));
  }
  bool recon_ok = recon <= 1e-12 * std::max(trace_scale, 1.0);

  double worst_integral = 0.0;
  std::vector<double> norms;
  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < part.blocks.size(); ++k) {
    double integral = 0.0;
    for (size_t i = 0; i < trace.size(); ++i)
      integral += part.blocks[k][i] * qmesh.samples[i].weight;
    worst_integral = std::max(worst_integral, std::abs(integral));
    double l1 = block_weighted_l1(part.blocks[k], qmesh, eps_prime);
    norms.push_back(l1);
    rows.push_back({double(k), l1, part.radii[k]});
  }
  bool integral_ok = worst_integral < 1e-12;

  bool decay_ok = true;
  double worst_ratio = 0.0;
  for (size_t k = 1; k + 1 < norms.size(); ++k) {
    // The last block is clipped by the mesh truncation; ratios are read on
    // interior blocks only.
    double ratio = norms[k] / norms[k - 1];
    worst_ratio = std::max(worst_ratio, ratio);
    decay_ok = decay_ok && ratio < ratio_max;
  }

  int code = (closure_ok && pair_ok && recon_ok && integral_ok && decay_ok)
                 ? kPass
                 : kAssertFail;
  ojson report;
  report["command"] = "atoms-check";
  report["config"] = materialized;
  report["atom"] = atom_to_json(atom);
  report["primitive_closure"] = closure;
  report["primitive_pair_bound"] = pair_bound;
  report["reconstruction_defect"] = recon;
  report["worst_block_integral"] = worst_integral;
  report["worst_decay_ratio"] = worst_ratio;
  report["verdict"] = code == kPass ? "pass" : "fail";
  std::string csv = csv_table(
      materialized, {"k", "L1_weighted_norm", "support_radius"}, rows);
  emit(args.sink, report, csv, "");
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed Dirichlet/Neumann boundary value problem toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* c_rellich = app.add_subcommand(
      "verify-rellich", "check the Rellich identity and the two-sided bound");
  CLI::App* c_counter = app.add_subcommand(
      "counterexample-scan",
      "L^p dichotomy of the nontangential maximal gradient");
  CLI::App* c_solve =
      app.add_subcommand("solve", "run one mixed boundary value solve");
  CLI::App* c_expo =
      app.add_subcommand("exponents", "closed-form solvability windows");
  CLI::App* c_greens = app.add_subcommand(
      "greens-check", "quadrant kernel boundary conditions and atom decay");
  CLI::App* c_measure = app.add_subcommand(
      "measure-check", "weighted surface ball measure comparisons");
  CLI::App* c_atoms = app.add_subcommand(
      "atoms-check", "atom invariants and the moment partition");
  for (CLI::App* cmd : {c_rellich, c_counter, c_solve, c_expo, c_greens,
                        c_measure, c_atoms})
    add_common(cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kPass : kBadInput;
  }

  try {
    if (c_rellich->parsed()) return cmd_verify_rellich(args);
    if (c_counter->parsed()) return cmd_counterexample_scan(args);
    if (c_solve->parsed()) return cmd_solve(args);
    if (c_expo->parsed()) return cmd_exponents(args);
    if (c_greens->parsed()) return cmd_greens_check(args);
    if (c_measure->parsed()) return cmd_measure_check(args);
    if (c_atoms->parsed()) return cmd_atoms_check(args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  }
  return kBadInput;
}
