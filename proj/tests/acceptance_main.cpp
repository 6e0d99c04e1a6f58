#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mixedbvp/atoms.hpp"
#include "mixedbvp/exponents.hpp"
#include "mixedbvp/fields.hpp"
#include "mixedbvp/geometry.hpp"
#include "mixedbvp/greens.hpp"
#include "mixedbvp/harmonic.hpp"
#include "mixedbvp/quadrature.hpp"
#include "mixedbvp/solver.hpp"

// Acceptance gate: every advertised quantitative guarantee of the library,
// one criterion per function, one PASS/FAIL line per criterion. The process
// exits with the number of failed criteria, so any failure is visible both
// in the log and in the exit status. CLI_BINARY_PATH is injected by the
// build for the determinism criterion.

using namespace mixedbvp;

namespace {

int failures = 0;

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, ap);
  va_end(ap);
  return buf;
}

void verdict(int index, const std::string& label, bool ok,
             const std::string& detail) {
  std::printf("[%s] criterion %2d %-28s %s\n", ok ? "PASS" : "FAIL", index,
              label.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// Deterministic uniform draw that depends only on the engine's bit stream.
double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// 1. The Rellich identity closes on a sweep of harmonic functions, boundary
//    fields, and truncation radii: |I + F| below 1e-8 relative to the mass
//    of the two terms, with converged quadrature, in under 30 seconds.

void criterion_1() {
  Timer timer;
  std::vector<HarmonicFunction> funcs;
  funcs.push_back(HarmonicFunction::power(2.0 / 3.0));
  funcs.push_back(HarmonicFunction::power(0.75));
  funcs.push_back(HarmonicFunction::power(0.8));
  funcs.push_back(HarmonicFunction::poly({{0.0, 0.0}, {3.0, 0.0}, {1.0, 0.0}}));
  funcs.push_back(
      HarmonicFunction::poly({{0.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}}));

  std::vector<HolomorphicField> fields;
  fields.push_back(HolomorphicField{});  // constant vertical field
  fields.push_back(build_field_signdefinite(0.0, 1.0 / 3.0).field);
  fields.push_back(build_field_mixed(0.0, 0.5).field);

  Domain dom{GraphDomain::flat()};
  bool ok = true;
  double worst = 0.0;
  int runs = 0;
  for (const HarmonicFunction& u : funcs)
    for (const HolomorphicField& f : fields)
      for (double R : {1.0, 4.0, 16.0}) {
        RellichResult r = rellich_residual(u, f, dom, R);
        double scale = std::abs(r.boundary_integral) +
                       std::abs(r.flux_correction) + 1e-14;
        double ratio =
            std::abs(r.boundary_integral + r.flux_correction) / scale;
        worst = std::max(worst, ratio);
        ok = ok && r.converged && ratio < 1e-8;
        ++runs;
      }
  double dt = timer.seconds();
  ok = ok && dt < 30.0;
  verdict(1, "rellich-closure",
          ok, fmt("worst residual ratio %.2e over %d runs, %.1f s", worst,
                  runs, dt));
}

// ---------------------------------------------------------------------------
// 2. Integrability dichotomy of the nontangential maximal gradient of the
//    junction counterexample: the p = 1.9 weighted norm is Cauchy under mesh
//    deepening (successive differences below 1e-3 of the value) while the
//    p = 2 squared norm gains a near-constant amount per decade of inner
//    cutoff, the numerical signature of a logarithmic divergence. Under 10 s.

void criterion_2() {
  Timer timer;
  Domain dom{GraphDomain::flat()};
  WeightedMeasure plain(0.0);
  HarmonicFunction u = HarmonicFunction::counterexample_fn();
  double ball = 0.5;
  std::vector<int> ladder{200, 220, 240, 260};

  // The sampling radii start at a fixed fraction of the foot point's
  // distance to the junction, so the blow-up is probed at its own scale.
  auto ntmax_on_mesh = [&](const BoundaryMesh& mesh) {
    std::vector<double> vals(mesh.samples.size());
    for (std::size_t i = 0; i < mesh.samples.size(); ++i) {
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
  double worst_rel = 0.0;
  double prev = 0.0;
  bool have_prev = false;
  BoundaryMesh deep;
  std::vector<double> deep_vals;
  for (int levels : ladder) {
    BoundaryMesh mesh = boundary_mesh(dom, ball, {levels, 1, 6});
    std::vector<double> vals = ntmax_on_mesh(mesh);
    double np = weighted_lp_boundary_norm(vals, 1.9, plain, mesh);
    if (have_prev) {
      double rel = std::abs(np - prev) / np;
      worst_rel = std::max(worst_rel, rel);
      cauchy_ok = cauchy_ok && rel < 1e-3;
    }
    prev = np;
    have_prev = true;
    if (levels == ladder.back()) {
      deep = std::move(mesh);
      deep_vals = std::move(vals);
    }
  }

  std::vector<double> cutoffs{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  std::vector<double> sq(cutoffs.size(), 0.0);
  for (std::size_t c = 0; c < cutoffs.size(); ++c)
    for (std::size_t i = 0; i < deep.samples.size(); ++i)
      if (std::abs(deep.samples[i].arc) >= cutoffs[c])
        sq[c] += deep_vals[i] * deep_vals[i] * deep.samples[i].weight;
  double mean = 0.0;
  for (std::size_t c = 1; c < sq.size(); ++c) mean += sq[c] - sq[c - 1];
  mean /= double(sq.size() - 1);
  bool diverge_ok = mean > 0.0;
  double worst_dev = 0.0;
  for (std::size_t c = 1; c < sq.size(); ++c) {
    double dev = std::abs(sq[c] - sq[c - 1] - mean) / mean;
    worst_dev = std::max(worst_dev, dev);
    diverge_ok = diverge_ok && dev < 0.1;
  }

  double dt = timer.seconds();
  bool ok = cauchy_ok && diverge_ok && dt < 10.0;
  verdict(2, "maximal-gradient-dichotomy", ok,
          fmt("p=1.9 worst diff %.2e of value, p=2 increment spread %.1f%% "
              "of mean, %.1f s",
              worst_rel, 100.0 * worst_dev, dt));
}

// ---------------------------------------------------------------------------
// 3. The sign-flipping field certificate holds pointwise on random sawtooth
//    boundaries: alpha.nu lies in -|x|^eps [margin, 1] on the Neumann side
//    and +|x|^eps [margin, 1] on the Dirichlet side, margin = sin(beta0 -
//    beta), at 10^4 samples on each of 20 domains per slope bound. Under 20 s.

void criterion_3() {
  Timer timer;
  double slopes[4] = {0.0, 0.3, std::tan(kPi / 8), 0.9};
  bool ok = true;
  long checked = 0;
  double worst_excess = 0.0;  // how far past a bound any sample lands
  for (int mi = 0; mi < 4; ++mi) {
    double M = slopes[mi];
    double beta = std::atan(M);
    double lo = (M == 0.0) ? 0.0 : 2.0 * beta / (kPi - 2.0 * beta);
    double eps = 0.5 * (lo + 1.0);  // middle of the admissible window
    FieldCertificate cert = build_field_mixed(M, eps);
    for (int k = 0; k < 20; ++k) {
      GraphDomain g = random_sawtooth(M, 10, 1000u * mi + k + 1);
      BoundaryMesh mesh = boundary_mesh(Domain{g}, 8.0, {25, 25, 8});
      ok = ok && mesh.samples.size() == 10000;
      for (const BoundarySample& s : mesh.samples) {
        double an = field_dot_normal(cert.field, s);
        double wt = std::pow(norm(s.point), eps);
        double slack = 1e-9 * wt;
        double excess;
        if (s.arc >= 0.0)
          excess = std::max(an - (-cert.margin * wt), (-wt) - an);
        else
          excess = std::max((cert.margin * wt) - an, an - wt);
        worst_excess = std::max(worst_excess, excess);
        ok = ok && excess <= slack;
        ++checked;
      }
    }
  }
  double dt = timer.seconds();
  ok = ok && dt < 20.0;
  verdict(3, "field-sign-certificates", ok,
          fmt("%ld samples, worst bound excess %.1e, %.1f s", checked,
              worst_excess, dt));
}

// ---------------------------------------------------------------------------
// 4. Weighted surface ball measure: sigma_eps(Delta_r(x)) compares to
//    r * max(|x|, r)^eps with a per-weight constant spread below 4, across
//    dyadic radii spanning six orders of magnitude, three centers, and both
//    a flat and a sawtooth boundary.

void criterion_4() {
  std::vector<GraphDomain> doms{GraphDomain::flat(),
                                random_sawtooth(0.5, 10, 2026)};
  bool ok = true;
  double worst_spread = 0.0;
  for (double eps : {-0.5, 0.0, 0.5, 0.9}) {
    WeightedMeasure mu(eps);
    double c1 = 1e300, c2 = 0.0;
    for (const GraphDomain& g : doms)
      for (double xc : {0.0, 1.0, 8.0}) {
        Vec2 x{xc, g.phi(xc)};
        for (double r = 1e-3; r <= 1e3 * 1.0000001; r *= 2.0) {
          double sigma = weighted_ball_measure(Domain{g}, x, r, mu);
          double ratio = sigma / (r * std::pow(std::max(norm(x), r), eps));
          c1 = std::min(c1, ratio);
          c2 = std::max(c2, ratio);
        }
      }
    double spread = c2 / c1;
    worst_spread = std::max(worst_spread, spread);
    ok = ok && spread < 4.0;
  }
  verdict(4, "ball-measure-doubling", ok,
          fmt("worst per-weight constant spread %.3f (< 4)", worst_spread));
}

// ---------------------------------------------------------------------------
// 5. Conformal transfer machinery on the nonconvex sector of half-opening
//    3 pi / 4 straightened by s = 0.6: the pointwise quadrature-measure
//    identity holds to 1e-10, the transferred solve agrees with the direct
//    solve within ten times the combined self-convergence estimates, and the
//    Neumann data norms match across the map to 1e-6 relative:
//    integral |g_N|^2 dsigma = (1/s) integral |f_N|^2 |x|^{1-s} dsigma.

void criterion_5() {
  Sector sec{3.0 * kPi / 4.0};
  double s = 0.6, R = 2.0;
  SectorMap map{s};

  BoundaryMesh check_mesh = boundary_mesh(Domain{sec}, R, {20, 1, 8});
  double defect = measure_transfer_check(map, sec, check_mesh);
  bool measure_ok = defect < 1e-10;

  // Manufactured solution u = Re((phi_s z)^2): harmonic on the original
  // sector, polynomial after straightening.
  auto uex = [&](Vec2 p) {
    cplx w = sector_map(map, to_cplx(p));
    return (w * w).real();
  };
  auto ugr = [&](Vec2 p) {
    cplx w = sector_map(map, to_cplx(p));
    cplx fp = 2.0 * w * sector_map_cderiv(map, to_cplx(p));
    return Vec2{fp.real(), -fp.imag()};
  };
  auto fN = [&](Vec2 p, Vec2 n) { return dot(n, ugr(p)); };
  auto fD = [&](Vec2 p) { return uex(p); };

  TransferSolution tc = conformal_transfer_solve(sec, s, fN, fD, fD, R, 12, 1, 8, 8);
  TransferSolution tf = conformal_transfer_solve(sec, s, fN, fD, fD, R, 20, 1, 8, 16);
  SolverMesh dmc = solver_mesh(Domain{sec}, R, 12, 1, 8, 8);
  SolveResult drc = solve_mixed(dmc, sample_mixed_data(dmc, fN, fD, fD));
  SolverMesh dmf = solver_mesh(Domain{sec}, R, 20, 1, 8, 16);
  SolveResult drf = solve_mixed(dmf, sample_mixed_data(dmf, fN, fD, fD));

  double est_T = 0.0, est_D = 0.0, mismatch = 0.0;
  for (double r : {0.4, 1.0, 1.6})
    for (double th : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
      Vec2 p{r * std::cos(th), r * std::sin(th)};
      double tcoarse = tc.eval(p).u, tfine = tf.eval(p).u;
      double dcoarse = eval_solution(drc.density, p).u;
      double dfine = eval_solution(drf.density, p).u;
      est_T = std::max(est_T, std::abs(tfine - tcoarse));
      est_D = std::max(est_D, std::abs(dfine - dcoarse));
      mismatch = std::max(mismatch, std::abs(tfine - dfine));
    }
  bool agree_ok = tc.image.ok && tf.image.ok && drc.ok && drf.ok &&
                  mismatch < 10.0 * (est_T + est_D);

  // Data-norm identity, both sides by quadrature on independent meshes. The
  // outward normal along the Neumann ray is the ray direction turned
  // clockwise.
  Vec2 nd = sec.ray_dir(+1);
  Vec2 nn{nd.y, -nd.x};
  double epsw = 1.0 - s;
  BoundaryMesh om = boundary_mesh(Domain{sec}, R, {50, 1, 10});
  double rhs = 0.0;
  for (const BoundarySample& q : om.samples)
    if (q.arc > 0.0) {
      double v = fN(q.point, nn);
      rhs += q.weight * v * v * std::pow(norm(q.point), epsw);
    }
  rhs /= s;
  Sector imsec{s * sec.opening};
  BoundaryMesh im = boundary_mesh(Domain{imsec}, std::pow(R, s), {50, 1, 10});
  double lhs = 0.0;
  for (const BoundarySample& q : im.samples)
    if (q.arc > 0.0) {
      cplx z = sector_map_inverse(map, to_cplx(q.point));
      double dmod = s * std::pow(std::abs(z), s - 1.0);
      double gv = fN(to_vec(z), nn) / dmod;
      lhs += q.weight * gv * gv;
    }
  double norm_rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
  bool norm_ok = norm_rel < 1e-6;

  bool ok = measure_ok && agree_ok && norm_ok;
  verdict(5, "conformal-transfer", ok,
          fmt("measure defect %.1e, solve mismatch %.1e vs budget %.1e, "
              "data-norm defect %.1e",
              defect, mismatch, 10.0 * (est_T + est_D), norm_rel));
}

// ---------------------------------------------------------------------------
// 6. Solver convergence on the manufactured harmonic polynomial
//    Re(z^2 + 3 z) over the convex sector of half-opening 3 pi / 8: interior
//    max error below 1e-6 at 512 unknowns, empirical order at least 1.5
//    between 256 and 512, and zero data returning the zero density. Under 60 s.

void criterion_6() {
  Timer timer;
  Sector sec{3.0 * kPi / 8.0};
  double R = 2.0;
  auto val = [](Vec2 p) { return p.x * p.x - p.y * p.y + 3.0 * p.x; };
  auto grad = [](Vec2 p) { return Vec2{2.0 * p.x + 3.0, -2.0 * p.y}; };
  auto fN = [&](Vec2 p, Vec2 n) { return dot(n, grad(p)); };

  std::mt19937_64 rng(20260823);
  std::vector<Vec2> probes;
  while (probes.size() < 50) {
    double r = 0.15 + 1.65 * uniform01(rng);
    double th = kPi / 2 + (2.0 * uniform01(rng) - 1.0) * 0.85 * sec.opening;
    probes.push_back({r * std::cos(th), r * std::sin(th)});
  }

  SolverMesh m256 = solver_mesh(Domain{sec}, R, 12, 1, 8, 8);
  SolverMesh m512 = solver_mesh(Domain{sec}, R, 24, 1, 8, 16);
  double errs[2];
  int idx = 0;
  bool solves_ok = true;
  for (SolverMesh* m : {&m256, &m512}) {
    SolveResult sr = solve_mixed(*m, sample_mixed_data(*m, fN, val, val));
    solves_ok = solves_ok && sr.ok && sr.residual < 1e-10;
    double err = 0.0;
    for (Vec2 p : probes)
      err = std::max(err, std::abs(eval_solution(sr.density, p).u - val(p)));
    errs[idx++] = err;
  }
  double order = std::log2(errs[0] / errs[1]);

  MixedData zero{
      std::vector<double>(m256.count_of(ContourPanel::Kind::neumann), 0.0),
      std::vector<double>(m256.count_of(ContourPanel::Kind::dirichlet), 0.0),
      std::vector<double>(m256.count_of(ContourPanel::Kind::arc), 0.0)};
  SolveResult zr = solve_mixed(m256, zero);
  double rho_max = 0.0;
  for (double v : zr.density.values) rho_max = std::max(rho_max, std::abs(v));

  double dt = timer.seconds();
  bool ok = solves_ok && errs[1] < 1e-6 && order >= 1.5 && rho_max < 1e-10 &&
            dt < 60.0;
  verdict(6, "solver-convergence", ok,
          fmt("err512 %.2e, order %.2f, zero-data density %.1e, %.1f s",
              errs[1], order, rho_max, dt));
}

// ---------------------------------------------------------------------------
// 7. Quadrant kernel: the Dirichlet-face value and the Neumann-face source
//    normal derivative vanish to 1e-12 at 1000 random pairs, the kernel is
//    symmetric to 1e-12, and the potential of a mean-zero boundary atom
//    decays with a fitted exponent of at least 0.45 (r^2 >= 0.98) over
//    dyadic distances from twice to 512 times the atom radius.

void criterion_7() {
  std::mt19937_64 rng(424242);
  auto draw = [&](double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
  };
  double worst_dir = 0.0, worst_neu = 0.0, worst_sym = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Vec2 w{draw(0.01, 10.0), draw(0.01, 10.0)};
    Vec2 zd{0.0, draw(0.01, 10.0)};
    worst_dir = std::max(worst_dir, std::abs(greens_eval(zd, w)));
    Vec2 z{draw(0.01, 10.0), draw(0.01, 10.0)};
    Vec2 wn{draw(0.01, 10.0), 0.0};
    worst_neu = std::max(worst_neu, std::abs(greens_grad_w(z, wn).y));
    worst_sym =
        std::max(worst_sym, std::abs(greens_eval(z, w) - greens_eval(w, z)));
  }
  bool bc_ok = worst_dir < 1e-12 && worst_neu < 1e-12;
  bool sym_ok = worst_sym < 1e-12;

  double rho = 0.0625;
  Vec2 center{1.0, 0.0};
  AtomSpec atom = make_atom(GraphDomain::flat(), center, rho, "haar", 0.0, 0.0);
  Vec2 dir{std::cos(kPi / 4), std::sin(kPi / 4)};
  std::vector<double> logd, logv;
  bool decay_converged = true;
  for (int j = 1; j <= 9; ++j) {
    double d = rho * std::pow(2.0, j);
    AtomSolution sol = atom_solution(atom, center + d * dir);
    decay_converged = decay_converged && sol.converged && sol.value != 0.0;
    if (sol.converged && sol.value != 0.0) {
      logd.push_back(std::log(d));
      logv.push_back(std::log(std::abs(sol.value)));
    }
  }
  LineFit fit = fit_line(logd, logv);
  double decay = -fit.slope;
  bool decay_ok = decay_converged && decay >= 0.45 && fit.r2 >= 0.98;

  bool ok = bc_ok && sym_ok && decay_ok;
  verdict(7, "quadrant-kernel", ok,
          fmt("worst boundary value %.1e, symmetry %.1e, decay %.3f "
              "(r2 %.4f)",
              std::max(worst_dir, worst_neu), worst_sym, decay, fit.r2));
}

// ---------------------------------------------------------------------------
// 8. Moment partition of the quadrant flux trace of a corner atom: the
//    blocks telescope back to the centered data exactly on the mesh, each
//    block has zero nodal integral to 1e-12, and the weighted block norms
//    decay geometrically with every consecutive ratio below 0.9.

void criterion_8() {
  Domain flat{GraphDomain::flat()};
  BoundaryMesh qm = quadrant_boundary_mesh(256.0, {40, 1, 6});
  double total_w = qm.total_weight();
  bool ok = true;
  double worst_recon = 0.0, worst_integral = 0.0, worst_ratio = 0.0;
  for (double epsp : {-0.25, 0.0}) {
    AtomSpec atom = make_atom(flat, {0.25, 0.0}, 0.25, "haar", epsp, 256.0);
    std::vector<double> tr = atom_conormal_trace(atom, qm);
    MomentPartition mp = moment_partition(tr, qm, {0.25, 0.0}, 0.25, true);
    double mbar = mp.measured_mean / total_w;

    for (std::size_t i = 0; i < qm.samples.size(); ++i) {
      double sum = 0.0;
      for (const auto& b : mp.blocks) sum += b[i];
      worst_recon = std::max(worst_recon, std::abs(sum - (tr[i] - mbar)));
    }
    for (const auto& b : mp.blocks) {
      double integral = 0.0;
      for (std::size_t i = 0; i < qm.samples.size(); ++i)
        integral += qm.samples[i].weight * b[i];
      worst_integral = std::max(worst_integral, std::abs(integral));
    }
    std::vector<double> norms;
    for (const auto& b : mp.blocks)
      norms.push_back(block_weighted_l1(b, qm, epsp));
    for (std::size_t k = 0; k + 1 < norms.size(); ++k) {
      double ratio = norms[k + 1] / norms[k];
      worst_ratio = std::max(worst_ratio, ratio);
      ok = ok && ratio < 0.9;
    }
  }
  ok = ok && worst_recon < 1e-12 && worst_integral < 1e-12;
  verdict(8, "moment-partition", ok,
          fmt("reconstruction defect %.1e, block integral %.1e, worst decay "
              "ratio %.3f",
              worst_recon, worst_integral, worst_ratio));
}

// ---------------------------------------------------------------------------
// 9. Closed-form exponent arithmetic: the flat-boundary solvability exponent
//    is exactly 2; at slope bound tan(pi/8) with Holder rate 1/2 the
//    interpolation exponent matches the independently recomputed rational
//    19/13 to 1e-12 and the weighted-window lower endpoint is exactly 1/3.

void criterion_9() {
  ExponentReport flat = exponent_report(0.0, 0.5);
  bool flat_ok = flat.p0 == 2.0;

  double M = std::tan(kPi / 8);
  ExponentReport rep = exponent_report(M, 0.5);
  // Recompute from scratch: m caps at (pi - 4 beta)/(2 (pi - beta)) = 2/7,
  // and the interpolation formula collapses to (2*(3/4)*(2/7) + 1/4) over
  // ((3/4)*(2/7) + 1/4) = 19/13 after the common factor pi cancels.
  double beta = std::atan(M);
  double mterm = std::min(0.5, (kPi - 4.0 * beta) / (2.0 * (kPi - beta)));
  double p1_again = (2.0 * (kPi - 2.0 * beta) * mterm + 2.0 * beta) /
                    ((kPi - 2.0 * beta) * mterm + 2.0 * beta);
  bool p1_ok = std::abs(rep.p1 - 19.0 / 13.0) < 1e-12 &&
               std::abs(p1_again - 19.0 / 13.0) < 1e-12;
  bool window_ok = rep.mixed_L2.lo == 1.0 / 3.0;

  bool ok = flat_ok && p1_ok && window_ok;
  verdict(9, "exponent-formulas", ok,
          fmt("p0(flat) %.1f, p1 defect %.1e, window endpoint defect %.1e",
              flat.p0, std::abs(rep.p1 - 19.0 / 13.0),
              std::abs(rep.mixed_L2.lo - 1.0 / 3.0)));
}

// ---------------------------------------------------------------------------
// 10. Repeated command line runs with a fixed seed produce byte-identical
//     reports and tables.

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<unreadable " + path + ">";
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_10() {
  std::string dir = "/tmp/mixedbvp-acceptance-" + std::to_string(::getpid());
  if (std::system(("mkdir -p " + dir).c_str()) != 0) dir = "/tmp";
  auto run = [&](const std::string& args) {
    std::string cmd =
        std::string(CLI_BINARY_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };

  bool ok = true;
  int identical = 0, runs_ok = 0;
  struct Job {
    const char* tag;
    std::string args;
  };
  std::vector<Job> jobs{
      {"greens", "greens-check --seed 777"},
      {"solve", "solve --seed 31337"},
  };
  for (const Job& job : jobs) {
    std::string r1 = dir + "/" + job.tag + "-1.json";
    std::string r2 = dir + "/" + job.tag + "-2.json";
    std::string c1 = dir + "/" + job.tag + "-1.csv";
    std::string c2 = dir + "/" + job.tag + "-2.csv";
    int e1 = run(job.args + " --report " + r1 + " --csv " + c1);
    int e2 = run(job.args + " --report " + r2 + " --csv " + c2);
    if (e1 == 0 && e2 == 0) runs_ok += 2;
    bool same = slurp(r1) == slurp(r2) && slurp(c1) == slurp(c2);
    if (same) ++identical;
    ok = ok && e1 == 0 && e2 == 0 && same;
  }
  verdict(10, "cli-determinism", ok,
          fmt("%d/4 runs clean, %d/2 artifact pairs byte-identical", runs_ok,
              identical));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("acceptance: %d of 10 criteria passed\n", 10 - failures);
  return failures;
}
