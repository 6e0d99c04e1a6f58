#include "mixedbvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixedbvp/quadrature.hpp"

namespace mixedbvp {

namespace {

constexpr double kInv2Pi = 1.0 / (2.0 * kPi);

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// ---------------------------------------------------------------------------
// Panel geometry in the reference coordinate t on [-1, 1]

Vec2 panel_point(const ContourPanel& P, double t) {
  if (!P.curved)
    return 0.5 * (1.0 - t) * P.p0 + 0.5 * (1.0 + t) * P.p1;
  double a = 0.5 * (P.a0 + P.a1) + 0.5 * t * (P.a1 - P.a0);
  return {P.radius * std::cos(a), P.radius * std::sin(a)};
}

Vec2 panel_normal(const ContourPanel& P, double t) {
  if (!P.curved) return P.normal;
  Vec2 q = panel_point(P, t);
  double r = norm(q);
  return {q.x / r, q.y / r};
}

// |dq/dt|, constant for both panel shapes.
double panel_jac(const ContourPanel& P) { return 0.5 * P.length; }

// Parameter of the point on the panel nearest to x, clamped to [-1, 1].
double panel_foot(const ContourPanel& P, Vec2 x) {
  if (!P.curved) {
    Vec2 d = P.p1 - P.p0;
    double L2 = norm2(d);
    if (L2 <= 0.0) return 0.0;
    double t = 2.0 * dot(x - P.p0, d) / L2 - 1.0;
    return std::clamp(t, -1.0, 1.0);
  }
  double ax = std::atan2(x.y, x.x);
  while (ax < P.a0 - kPi) ax += 2.0 * kPi;
  while (ax > P.a1 + kPi) ax -= 2.0 * kPi;
  double t = 2.0 * (ax - P.a0) / (P.a1 - P.a0) - 1.0;
  return std::clamp(t, -1.0, 1.0);
}

double panel_dist(const ContourPanel& P, Vec2 x) {
  return norm(x - panel_point(P, panel_foot(P, x)));
}

bool collinear_with(const ContourPanel& P, Vec2 x) {
  Vec2 d = P.p1 - P.p0;
  return std::abs(cross(d, x - P.p0)) <=
         1e-12 * P.length * (norm(x - P.p0) + P.length);
}

// ---------------------------------------------------------------------------
// Lagrange basis on the panel's Gauss nodes (barycentric form)

std::vector<double> bary_weights(const std::vector<double>& tn) {
  int n = static_cast<int>(tn.size());
  std::vector<double> bw(n, 1.0);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      if (k != m) bw[m] /= (tn[m] - tn[k]);
  return bw;
}

void lagrange_all(const std::vector<double>& tn, const std::vector<double>& bw,
                  double t, double* out) {
  int n = static_cast<int>(tn.size());
  for (int m = 0; m < n; ++m) {
    if (t == tn[m]) {
      for (int k = 0; k < n; ++k) out[k] = (k == m) ? 1.0 : 0.0;
      return;
    }
  }
  double s = 0.0;
  for (int m = 0; m < n; ++m) {
    out[m] = bw[m] / (t - tn[m]);
    s += out[m];
  }
  for (int m = 0; m < n; ++m) out[m] /= s;
}

// ---------------------------------------------------------------------------
// Graded subdivision of [-1, 1], refined dyadically toward t0. When
// exclude_sliver is set the innermost gap around t0 is left out (the caller
// adds it back in closed form, which is how the logarithmic self-interaction
// reaches machine accuracy).

struct PanelQuad {
  std::vector<double> edges;
  double t0 = 0.0;
  double sliver = 0.0;  // half-width of the excluded gap, 0 if none
};

PanelQuad graded_param(double t0, double wstop, bool exclude_sliver) {
  std::vector<double> e{-1.0, 1.0};
  double w = 2.0;
  while (w * 0.5 > wstop) {
    w *= 0.5;
    if (t0 - w > -1.0) e.push_back(t0 - w);
    if (t0 + w < 1.0) e.push_back(t0 + w);
  }
  if (!exclude_sliver && t0 > -1.0 && t0 < 1.0) e.push_back(t0);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  PanelQuad pq;
  pq.edges = std::move(e);
  pq.t0 = t0;
  pq.sliver = exclude_sliver ? w : 0.0;
  return pq;
}

// Accumulates integral of kern(t) * basis_m(t) * jac over the subdivision
// into out[m].
void basis_integrate(const PanelQuad& pq, const std::vector<double>& tn,
                     const std::vector<double>& bw, double jac,
                     const std::function<double(double)>& kern, double* out) {
  const GaussRule& sub = gauss_rule(16);
  int order = static_cast<int>(tn.size());
  std::vector<double> basis(order);
  for (size_t e = 0; e + 1 < pq.edges.size(); ++e) {
    double a = pq.edges[e], b = pq.edges[e + 1];
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    if (pq.sliver > 0.0 && std::abs(mid - pq.t0) < pq.sliver) continue;
    for (size_t k = 0; k < sub.node.size(); ++k) {
      double t = mid + half * sub.node[k];
      double val = kern(t);
      lagrange_all(tn, bw, t, basis.data());
      double w = sub.weight[k] * half * jac * val;
      for (int m = 0; m < order; ++m) out[m] += w * basis[m];
    }
  }
}

// Closed-form integral of -(1/2pi) log(jac * tau) over the excluded slivers
// [t0 - wL, t0] and [t0, t0 + wR]; the basis is frozen at its value in t0
// (exact when t0 is a node: the delta property picks out one column).
double sliver_log_mass(double jac, double wL, double wR) {
  double m = 0.0;
  if (wL > 0.0) m += wL * (std::log(jac * wL) - 1.0);
  if (wR > 0.0) m += wR * (std::log(jac * wR) - 1.0);
  return -kInv2Pi * jac * m;
}

double log_kernel(Vec2 x, Vec2 q) { return -kInv2Pi * std::log(norm(x - q)); }

double normal_deriv_kernel(Vec2 x, Vec2 nv, Vec2 q) {
  Vec2 r = x - q;
  return -kInv2Pi * dot(nv, r) / norm2(r);
}

}  // namespace

// ---------------------------------------------------------------------------
// Mesh construction

int SolverMesh::count_of(ContourPanel::Kind k) const {
  int n = 0;
  for (const auto& p : panels)
    if (p.kind == k) n += p.count;
  return n;
}

namespace {

// Appends panels_per_level straight panels over the curve arc range [u0, u1].
void append_ray_panels(const BoundaryCurve& curve, double u0, double u1,
                       int panels_per_level, int order,
                       ContourPanel::Kind kind, SolverMesh& mesh) {
  const GaussRule& pn = gauss_rule(order);
  for (int p = 0; p < panels_per_level; ++p) {
    double a = u0 + (u1 - u0) * p / panels_per_level;
    double b = u0 + (u1 - u0) * (p + 1) / panels_per_level;
    ContourPanel P;
    P.kind = kind;
    P.curved = false;
    // Inner end (smaller |arc|) first so panels touching the corner carry
    // the exact origin as an endpoint.
    bool flip = std::abs(a) > std::abs(b);
    P.p0 = curve.point(flip ? b : a);
    P.p1 = curve.point(flip ? a : b);
    P.normal = curve.normal_at(0.5 * (a + b));
    P.length = norm(P.p1 - P.p0);
    P.first = mesh.size();
    P.count = order;
    int pidx = static_cast<int>(mesh.panels.size());
    for (size_t k = 0; k < pn.node.size(); ++k) {
      mesh.nodes.push_back(panel_point(P, pn.node[k]));
      mesh.normals.push_back(P.normal);
      mesh.weights.push_back(pn.weight[k] * panel_jac(P));
      mesh.panel_of.push_back(pidx);
    }
    mesh.panels.push_back(P);
  }
}

void append_band(const BoundaryCurve& curve, double a, double b,
                 int panels_per_level, int order, ContourPanel::Kind kind,
                 SolverMesh& mesh) {
  std::vector<double> cuts = curve.kinks_in(a, b);
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (size_t c = 0; c + 1 < cuts.size(); ++c)
    append_ray_panels(curve, cuts[c], cuts[c + 1], panels_per_level, order,
                      kind, mesh);
}

void append_side(const BoundaryCurve& curve, double s_edge, int levels,
                 int panels_per_level, int order, ContourPanel::Kind kind,
                 SolverMesh& mesh) {
  // The density is singular at both ends of the ray: at the origin (where
  // the boundary condition changes type) and at the junction with the
  // closing arc (a right-angle corner of the contour). Both ends get
  // geometric bands; the origin end, whose singularity is the stronger one
  // on half-plane-like runs, takes twice the depth. s_edge may be negative
  // (the Dirichlet side walks to negative arc parameters).
  int jl = levels / 2;       // bands graded into the arc junction
  int ol = levels - jl;      // bands graded into the origin
  double mid = jl > 0 ? 0.5 * s_edge : s_edge;
  for (int j = ol - 1; j >= 0; --j) {
    double hi = mid * std::pow(0.5, j);
    double lo = (j == ol - 1) ? 0.0 : hi * 0.5;
    append_band(curve, std::min(lo, hi), std::max(lo, hi), panels_per_level,
                order, kind, mesh);
  }
  for (int k = 0; k < jl; ++k) {
    double lo = s_edge * (1.0 - std::pow(0.5, k + 1));
    double hi = (k == jl - 1) ? s_edge
                              : s_edge * (1.0 - std::pow(0.5, k + 2));
    append_band(curve, std::min(lo, hi), std::max(lo, hi), panels_per_level,
                order, kind, mesh);
  }
}

// Angular edges for the closing arc: panel widths shrink dyadically into
// both ray junctions.
std::vector<double> arc_edges(double aN, double aD, int arc_panels) {
  std::vector<double> edges{aN};
  double half = 0.5 * (aD - aN);
  int mL = arc_panels / 2, mR = arc_panels - mL;
  if (mL == 0) {
    edges.push_back(aD);
    return edges;
  }
  for (int k = 1; k < mL; ++k)
    edges.push_back(aN + half * std::pow(0.5, mL - k));
  edges.push_back(aN + half);
  for (int k = 1; k < mR; ++k)
    edges.push_back(aD - half * std::pow(0.5, k));
  edges.push_back(aD);
  return edges;
}

}  // namespace

SolverMesh solver_mesh(const Domain& dom, double R, int levels,
                       int panels_per_level, int panel_order, int arc_panels) {
  if (!(R > 0.0)) throw std::invalid_argument("solver_mesh: R must be > 0");
  if (levels < 1 || panels_per_level < 1 || arc_panels < 1)
    throw std::invalid_argument("solver_mesh: counts must be >= 1");
  if (panel_order < 2 || panel_order > 32)
    throw std::invalid_argument("solver_mesh: panel_order out of range");

  double M = domain_lipschitz(dom);
  BoundaryCurve curve = make_curve(dom, R * (1.0 + M) + 1.0);
  double sN = curve.radius_crossing(R, +1);
  double sD = curve.radius_crossing(R, -1);

  SolverMesh mesh;
  mesh.domain = dom;
  mesh.R = R;
  mesh.panel_order = panel_order;

  append_side(curve, sN, levels, panels_per_level, panel_order,
              ContourPanel::Kind::neumann, mesh);

  // Closing arc, counterclockwise from the Neumann crossing to the
  // Dirichlet crossing.
  double aN = arg_upper(to_cplx(curve.point(sN)));
  double aD = arg_upper(to_cplx(curve.point(sD)));
  std::vector<double> edges = arc_edges(aN, aD, arc_panels);
  const GaussRule& pn = gauss_rule(panel_order);
  for (int p = 0; p < arc_panels; ++p) {
    ContourPanel P;
    P.kind = ContourPanel::Kind::arc;
    P.curved = true;
    P.radius = R;
    P.a0 = edges[p];
    P.a1 = edges[p + 1];
    P.length = R * (P.a1 - P.a0);
    P.p0 = panel_point(P, -1.0);
    P.p1 = panel_point(P, 1.0);
    P.first = mesh.size();
    P.count = panel_order;
    int pidx = static_cast<int>(mesh.panels.size());
    for (size_t k = 0; k < pn.node.size(); ++k) {
      mesh.nodes.push_back(panel_point(P, pn.node[k]));
      mesh.normals.push_back(panel_normal(P, pn.node[k]));
      mesh.weights.push_back(pn.weight[k] * panel_jac(P));
      mesh.panel_of.push_back(pidx);
    }
    mesh.panels.push_back(P);
  }

  append_side(curve, sD, levels, panels_per_level, panel_order,
              ContourPanel::Kind::dirichlet, mesh);

  mesh.kind_index.resize(mesh.nodes.size());
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < mesh.size(); ++i) {
    int k = static_cast<int>(mesh.node_kind(i));
    mesh.kind_index[i] = counts[k]++;
  }
  return mesh;
}

MixedData sample_mixed_data(const SolverMesh& mesh,
                            const std::function<double(Vec2, Vec2)>& neumann,
                            const std::function<double(Vec2)>& dirichlet,
                            const std::function<double(Vec2)>& arc_data) {
  MixedData data;
  for (int i = 0; i < mesh.size(); ++i) {
    switch (mesh.node_kind(i)) {
      case ContourPanel::Kind::neumann:
        data.f_N.push_back(neumann(mesh.nodes[i], mesh.normals[i]));
        break;
      case ContourPanel::Kind::dirichlet:
        data.f_D.push_back(dirichlet(mesh.nodes[i]));
        break;
      case ContourPanel::Kind::arc:
        data.arc.push_back(arc_data(mesh.nodes[i]));
        break;
    }
  }
  return data;
}

// ---------------------------------------------------------------------------
// Assembly

LinearSystem assemble_mixed_system(const SolverMesh& mesh,
                                   const MixedData& data) {
  int n = mesh.size();
  if (n == 0) throw std::invalid_argument("assemble: empty mesh");
  if (static_cast<int>(data.f_N.size()) !=
          mesh.count_of(ContourPanel::Kind::neumann) ||
      static_cast<int>(data.f_D.size()) !=
          mesh.count_of(ContourPanel::Kind::dirichlet) ||
      static_cast<int>(data.arc.size()) !=
          mesh.count_of(ContourPanel::Kind::arc))
    throw std::invalid_argument("assemble: data arrays do not conform");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (mesh.nodes[i].x == mesh.nodes[j].x &&
          mesh.nodes[i].y == mesh.nodes[j].y)
        throw std::invalid_argument("assemble: coincident mesh nodes");

  const GaussRule& pn = gauss_rule(mesh.panel_order);
  std::vector<double> bw = bary_weights(pn.node);

  LinearSystem sys;
  sys.A.setZero(n, n);
  sys.b.resize(n);

  for (int i = 0; i < n; ++i) {
    Vec2 x = mesh.nodes[i];
    Vec2 nv = mesh.normals[i];
    bool neu = mesh.node_kind(i) == ContourPanel::Kind::neumann;
    switch (mesh.node_kind(i)) {
      case ContourPanel::Kind::neumann:
        sys.b(i) = data.f_N[mesh.kind_index[i]];
        break;
      case ContourPanel::Kind::dirichlet:
        sys.b(i) = data.f_D[mesh.kind_index[i]];
        break;
      case ContourPanel::Kind::arc:
        sys.b(i) = data.arc[mesh.kind_index[i]];
        break;
    }

    for (size_t pi = 0; pi < mesh.panels.size(); ++pi) {
      const ContourPanel& P = mesh.panels[pi];
      bool self = mesh.panel_of[i] == static_cast<int>(pi);
      double d = panel_dist(P, x);
      if (!self && d > 2.5 * P.length) {
        for (int k = 0; k < P.count; ++k) {
          Vec2 q = mesh.nodes[P.first + k];
          double val = neu ? normal_deriv_kernel(x, nv, q) : log_kernel(x, q);
          sys.A(i, P.first + k) += mesh.weights[P.first + k] * val;
        }
        continue;
      }
      // The normal-derivative kernel vanishes identically when the target
      // sits on the panel's own line; integrating it numerically would only
      // amplify rounding noise near the singularity.
      if (neu && !P.curved && collinear_with(P, x)) continue;

      double jac = panel_jac(P);
      double t0 = self ? pn.node[i - P.first] : panel_foot(P, x);
      bool log_self = !neu && self;
      double wstop =
          log_self ? 1e-15
                   : std::max(1e-15, 0.05 * d / std::max(jac, 1e-300));
      PanelQuad pq = graded_param(t0, wstop, log_self);

      std::function<double(double)> kern;
      if (log_self && !P.curved) {
        kern = [&P, jac, t0](double t) {
          return -kInv2Pi * std::log(jac * std::abs(t - t0));
        };
      } else if (log_self) {
        double dang = 0.25 * (P.a1 - P.a0);
        kern = [&P, dang, t0](double t) {
          return -kInv2Pi *
                 std::log(2.0 * P.radius * std::sin(std::abs(t - t0) * dang));
        };
      } else if (neu) {
        kern = [&P, x, nv](double t) {
          return normal_deriv_kernel(x, nv, panel_point(P, t));
        };
      } else {
        kern = [&P, x](double t) {
          return log_kernel(x, panel_point(P, t));
        };
      }

      std::vector<double> out(mesh.panel_order, 0.0);
      basis_integrate(pq, pn.node, bw, jac, kern, out.data());
      if (log_self) {
        double wL = std::min(pq.sliver, t0 + 1.0);
        double wR = std::min(pq.sliver, 1.0 - t0);
        out[i - P.first] += sliver_log_mass(jac, wL, wR);
      }
      for (int m = 0; m < mesh.panel_order; ++m)
        sys.A(i, P.first + m) += out[m];
    }
    if (neu) sys.A(i, i) += 0.5;
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Solve and evaluation

SolveResult solve_mixed(const SolverMesh& mesh, const MixedData& data) {
  LinearSystem sys = assemble_mixed_system(mesh, data);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.A);
  Eigen::VectorXd rho = lu.solve(sys.b);

  SolveResult res;
  double bn = sys.b.lpNorm<Eigen::Infinity>();
  double rn = (sys.A * rho - sys.b).lpNorm<Eigen::Infinity>();
  res.residual = bn > 0.0 ? rn / bn : rn;
  double rc = lu.rcond();
  res.cond_estimate = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  res.ok = res.cond_estimate <= 1e12 && res.residual < 1e-10;
  res.density.values.assign(rho.data(), rho.data() + rho.size());
  res.density.mesh = mesh;
  return res;
}

Evaluation eval_solution(const BoundaryDensity& density, Vec2 z) {
  const SolverMesh& mesh = density.mesh;
  if (density.values.size() != mesh.nodes.size())
    throw std::invalid_argument("eval_solution: density does not conform");
  const GaussRule& pn = gauss_rule(mesh.panel_order);
  std::vector<double> bw = bary_weights(pn.node);
  std::vector<double> basis(mesh.panel_order);

  Evaluation ev;
  for (const ContourPanel& P : mesh.panels) {
    double d = panel_dist(P, z);
    if (d <= 1e-13 * (1.0 + norm(z) + P.length))
      throw std::invalid_argument("eval_solution: point lies on the contour");
    if (d > 3.0 * P.length) {
      for (int k = 0; k < P.count; ++k) {
        Vec2 q = mesh.nodes[P.first + k];
        double w = mesh.weights[P.first + k] * density.values[P.first + k];
        Vec2 r = z - q;
        ev.u += w * (-kInv2Pi) * std::log(norm(r));
        ev.grad = ev.grad + (w * (-kInv2Pi) / norm2(r)) * r;
      }
      continue;
    }
    double jac = panel_jac(P);
    double t0 = panel_foot(P, z);
    double wstop = std::max(1e-15, 0.05 * d / std::max(jac, 1e-300));
    PanelQuad pq = graded_param(t0, wstop, false);
    const GaussRule& sub = gauss_rule(16);
    for (size_t e = 0; e + 1 < pq.edges.size(); ++e) {
      double a = pq.edges[e], b = pq.edges[e + 1];
      double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (size_t k = 0; k < sub.node.size(); ++k) {
        double t = mid + half * sub.node[k];
        lagrange_all(pn.node, bw, t, basis.data());
        double rho_t = 0.0;
        for (int m = 0; m < mesh.panel_order; ++m)
          rho_t += basis[m] * density.values[P.first + m];
        Vec2 q = panel_point(P, t);
        Vec2 r = z - q;
        double w = sub.weight[k] * half * jac * rho_t;
        ev.u += w * (-kInv2Pi) * std::log(norm(r));
        ev.grad = ev.grad + (w * (-kInv2Pi) / norm2(r)) * r;
      }
    }
  }
  return ev;
}

// ---------------------------------------------------------------------------
// Conformal transfer

TransferSolution conformal_transfer_solve(
    const Sector& sec, double s, const std::function<double(Vec2, Vec2)>& f_N,
    const std::function<double(Vec2)>& f_D,
    const std::function<double(Vec2)>& arc_data, double R, int levels,
    int panels_per_level, int panel_order, int arc_panels) {
  sec.validate();
  if (!(s > 0.0 && s <= 1.0))
    throw std::invalid_argument("conformal_transfer_solve: need 0 < s <= 1");
  if (!(s * sec.opening < kPi / 2.0))
    throw std::invalid_argument(
        "conformal_transfer_solve: image sector must be convex "
        "(s * opening < pi/2)");

  if (s == 1.0) {
    SolverMesh mesh = solver_mesh(sec, R, levels, panels_per_level,
                                  panel_order, arc_panels);
    MixedData data = sample_mixed_data(mesh, f_N, f_D, arc_data);
    SolveResult direct = solve_mixed(mesh, data);
    BoundaryDensity den = direct.density;
    TransferSolution out;
    out.s = 1.0;
    out.image = std::move(direct);
    out.eval = [den](Vec2 z) { return eval_solution(den, z); };
    return out;
  }

  SectorMap map{s};
  Sector image{s * sec.opening};
  double R_im = std::pow(R, s);
  SolverMesh mesh =
      solver_mesh(image, R_im, levels, panels_per_level, panel_order,
                  arc_panels);

  // Original-boundary normals are constant along each ray.
  Vec2 dN = sec.ray_dir(+1), dD = sec.ray_dir(-1);
  Vec2 nN{dN.y, -dN.x};
  Vec2 nD{-dD.y, dD.x};

  auto pull_point = [map](Vec2 w) {
    return to_vec(sector_map_inverse(map, to_cplx(w)));
  };
  // |m'(z)| = s |z|^{s-1}; the Neumann datum transfers with its reciprocal.
  auto gN = [&, s](Vec2 w, Vec2) {
    Vec2 z = pull_point(w);
    double scale = s * std::pow(norm(z), s - 1.0);
    return f_N(z, nN) / scale;
  };
  auto gD = [&](Vec2 w) { return f_D(pull_point(w)); };
  auto gA = [&](Vec2 w) { return arc_data(pull_point(w)); };
  (void)nD;

  MixedData data = sample_mixed_data(mesh, gN, gD, gA);
  SolveResult image_solve = solve_mixed(mesh, data);
  BoundaryDensity den = image_solve.density;

  TransferSolution out;
  out.s = s;
  out.image = std::move(image_solve);
  out.eval = [den, map](Vec2 z) {
    cplx w = sector_map(map, to_cplx(z));
    Evaluation inner = eval_solution(den, to_vec(w));
    Evaluation ev;
    ev.u = inner.u;
    // grad(v o m) = conj(m') * grad v at the image point, complex form.
    cplx g = std::conj(sector_map_cderiv(map, to_cplx(z))) *
             to_cplx(inner.grad);
    ev.grad = to_vec(g);
    return ev;
  };
  return out;
}

// ---------------------------------------------------------------------------
// Cauchy-integral consistency of the pulled-back derivative

namespace {

cplx cintegrate(const std::function<cplx(double)>& f, double a, double b,
                double rel, double abs_tol) {
  double re = integrate_adaptive([&](double t) { return f(t).real(); }, a, b,
                                 rel, abs_tol, 46)
                  .value;
  double im = integrate_adaptive([&](double t) { return f(t).imag(); }, a, b,
                                 rel, abs_tol, 46)
                  .value;
  return {re, im};
}

}  // namespace

CauchyCheck cauchy_transfer_check(const std::function<cplx(cplx)>& dv,
                                  const SectorMap& map, const Sector& sec,
                                  double R, const std::vector<Vec2>& probes,
                                  double min_dist) {
  sec.validate();
  cplx dN = to_cplx(sec.ray_dir(+1));
  cplx dD = to_cplx(sec.ray_dir(-1));
  double aN = kPi / 2.0 - sec.opening;
  double aD = kPi / 2.0 + sec.opening;

  auto f = [&](cplx zeta) {
    return sector_map_cderiv(map, zeta) * dv(sector_map(map, zeta));
  };

  auto contour_dist = [&](Vec2 p) {
    auto ray_d = [&](Vec2 dir) {
      double t = std::clamp(dot(p, dir), 0.0, R);
      return norm(p - t * dir);
    };
    double da;
    double ap = std::atan2(p.y, p.x);
    if (ap >= aN && ap <= aD)
      da = std::abs(norm(p) - R);
    else
      da = std::min(norm(p - R * to_vec(std::polar(1.0, aN))),
                    norm(p - R * to_vec(std::polar(1.0, aD))));
    return std::min({ray_d(to_vec(dN)), ray_d(to_vec(dD)), da});
  };

  CauchyCheck chk;
  for (Vec2 p : probes) {
    if (contour_dist(p) < min_dist) {
      ++chk.skipped;
      continue;
    }
    cplx z = to_cplx(p);
    // Counterclockwise: out the Neumann ray, over the arc, back down the
    // Dirichlet ray.
    cplx I = cintegrate(
        [&](double t) { return f(t * dN) / (t * dN - z) * dN; }, 0.0, R,
        1e-12, 1e-16);
    I += cintegrate(
        [&](double th) {
          cplx zeta = std::polar(R, th);
          return f(zeta) / (zeta - z) * cplx(0.0, 1.0) * zeta;
        },
        aN, aD, 1e-12, 1e-16);
    I -= cintegrate(
        [&](double t) { return f(t * dD) / (t * dD - z) * dD; }, 0.0, R,
        1e-12, 1e-16);
    I /= cplx(0.0, 2.0 * kPi);

    cplx direct = f(z);
    double mis = std::abs(I - direct);
    if (mis != 0.0) mis /= std::max(std::abs(direct), 1e-300);
    chk.max_rel_mismatch = std::max(chk.max_rel_mismatch, mis);
    ++chk.used;
  }
  return chk;
}

}  // namespace mixedbvp
