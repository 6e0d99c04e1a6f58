#include "mixedbvp/greens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mixedbvp/quadrature.hpp"

namespace mixedbvp {

namespace {

// Difference vectors against the source and its three reflections, with
// squared lengths. d1 reflects across the Dirichlet face (x1 -> -x1), d2
// across the Neumann face (x2 -> -x2), d3 across both.
struct Images {
  Vec2 d0, d1, d2, d3;
  double n0, n1, n2, n3;
};

Images images(Vec2 z, Vec2 w) {
  if (z.x < 0.0 || z.y < 0.0 || w.x < 0.0 || w.y < 0.0)
    throw std::invalid_argument(
        "greens: both points must lie in the closed quadrant");
  Images im;
  im.d0 = {z.x - w.x, z.y - w.y};
  im.d1 = {z.x + w.x, z.y - w.y};
  im.d2 = {z.x - w.x, z.y + w.y};
  im.d3 = {z.x + w.x, z.y + w.y};
  im.n0 = norm2(im.d0);
  im.n1 = norm2(im.d1);
  im.n2 = norm2(im.d2);
  im.n3 = norm2(im.d3);
  if (im.n0 == 0.0 || im.n1 == 0.0 || im.n2 == 0.0 || im.n3 == 0.0)
    throw std::domain_error(
        "greens: singular evaluation (coincident or reflected points)");
  return im;
}

}  // namespace

double greens_eval(Vec2 z, Vec2 w) {
  Images im = images(z, w);
  // Pairing the logs (0 with 1, 2 with 3) makes the Dirichlet-face zero an
  // exact floating-point cancellation, not just a small residual.
  double a = std::log(im.n0) - std::log(im.n1);
  double b = std::log(im.n2) - std::log(im.n3);
  return -(a + b) / (4.0 * kPi);
}

Vec2 greens_grad_w(Vec2 z, Vec2 w) {
  Images im = images(z, w);
  // Source-side gradient; the reflections contribute through their own
  // Jacobians. Terms are paired (0 with 2, 1 with 3) so the Neumann-face
  // normal derivative cancels exactly in floating point.
  double gx = (im.d0.x / im.n0 + im.d2.x / im.n2) +
              (im.d1.x / im.n1 + im.d3.x / im.n3);
  double gy = (im.d0.y / im.n0 - im.d2.y / im.n2) +
              (-im.d1.y / im.n1 + im.d3.y / im.n3);
  return {gx / (2.0 * kPi), gy / (2.0 * kPi)};
}

Vec2 greens_grad_z(Vec2 z, Vec2 w) {
  Images im = images(z, w);
  double gx = (im.d0.x / im.n0 - im.d1.x / im.n1) +
              (im.d2.x / im.n2 - im.d3.x / im.n3);
  double gy = (im.d0.y / im.n0 - im.d1.y / im.n1) +
              (im.d2.y / im.n2 - im.d3.y / im.n3);
  return {-gx / (2.0 * kPi), -gy / (2.0 * kPi)};
}

HolderProbe greens_holder_probe(Vec2 z, Vec2 zeta, Vec2 w) {
  double sep = norm(zeta - w);
  double d = norm(z - zeta);
  if (!(sep < 0.5 * d))
    throw std::invalid_argument(
        "greens_holder_probe: need |zeta - w| < |z - zeta| / 2");
  HolderProbe p;
  p.lhs = std::abs(greens_eval(z, zeta) - greens_eval(z, w));
  p.ratio = sep / d;
  return p;
}

AtomSolution atom_solution(const AtomSpec& atom, Vec2 z) {
  if (atom.support_lo < -1e-12)
    throw std::invalid_argument(
        "atom_solution: support must lie on the Neumann face (arc >= 0)");
  if (z.x < 0.0 || z.y < 0.0)
    throw std::invalid_argument("atom_solution: point outside the quadrant");

  // Distance to the support, for the near-singular flag and a quadrature
  // split at the closest parameter.
  double dist = std::numeric_limits<double>::infinity();
  double s_near = atom.support_lo;
  const int nscan = 64;
  for (int i = 0; i <= nscan; ++i) {
    double s = atom.support_lo +
               (atom.support_hi - atom.support_lo) * i / double(nscan);
    double d = norm(z - atom.curve.point(s));
    if (d < dist) {
      dist = d;
      s_near = s;
    }
  }
  AtomSolution out;
  out.near_singular = dist < 2.0 * atom.rho;

  auto f = [&](double s) {
    return atom.trace(s) * greens_eval(z, atom.curve.point(s));
  };
  std::vector<double> splits = atom.split_points;
  splits.push_back(s_near);
  QuadResult q = integrate_adaptive_split(f, atom.support_lo, atom.support_hi,
                                          splits, 1e-10, 1e-16, 30);
  out.value = q.value;
  out.converged = q.converged;
  return out;
}

BoundaryMesh quadrant_boundary_mesh(double truncation_radius,
                                    const GradingSpec& grading) {
  if (!(truncation_radius > 0.0))
    throw std::invalid_argument("quadrant mesh: need a positive radius");
  if (grading.levels < 1 || grading.panels_per_level < 1 ||
      grading.nodes_per_panel < 2)
    throw std::invalid_argument("quadrant mesh: bad grading");
  const GaussRule& gr = gauss_rule(grading.nodes_per_panel);
  BoundaryMesh mesh;
  mesh.truncation_radius = truncation_radius;

  // side = -1: Dirichlet face (0, s), walked from the truncation radius in;
  // side = +1: Neumann face (s, 0), walked from the origin out. Sample arcs
  // are then globally ascending, matching the graph-domain mesh convention.
  auto add_band = [&](int side, double r0, double r1) {
    for (int p = 0; p < grading.panels_per_level; ++p) {
      double a = r0 + (r1 - r0) * p / double(grading.panels_per_level);
      double b = r0 + (r1 - r0) * (p + 1) / double(grading.panels_per_level);
      BoundaryMesh::Panel panel;
      panel.s0 = side > 0 ? a : -b;
      panel.s1 = side > 0 ? b : -a;
      panel.first = static_cast<int>(mesh.samples.size());
      panel.count = grading.nodes_per_panel;
      for (int q = 0; q < grading.nodes_per_panel; ++q) {
        // walk nodes in ascending signed arc on either face
        double u = side > 0 ? gr.node[q] : -gr.node[q];
        double r = 0.5 * (a + b) + 0.5 * (b - a) * u;
        BoundarySample s;
        s.arc = side > 0 ? r : -r;
        s.point = side > 0 ? Vec2{r, 0.0} : Vec2{0.0, r};
        s.normal = side > 0 ? Vec2{0.0, -1.0} : Vec2{-1.0, 0.0};
        s.weight = 0.5 * (b - a) * gr.weight[q];
        mesh.samples.push_back(s);
      }
      mesh.panels.push_back(panel);
    }
  };
  auto band_edge = [&](int j) {
    return j == 0 ? 0.0
                  : truncation_radius *
                        std::ldexp(1.0, std::min(j, grading.levels) -
                                            grading.levels);
  };
  for (int j = grading.levels; j >= 1; --j)
    add_band(-1, band_edge(j - 1), band_edge(j));
  for (int j = 1; j <= grading.levels; ++j)
    add_band(+1, band_edge(j - 1), band_edge(j));
  return mesh;
}

std::vector<double> atom_conormal_trace(const AtomSpec& atom,
                                        const BoundaryMesh& quadrant_mesh) {
  if (atom.support_lo < -1e-12)
    throw std::invalid_argument(
        "atom_conormal_trace: support must lie on the Neumann face");
  std::vector<double> g;
  g.reserve(quadrant_mesh.samples.size());
  for (const BoundarySample& s : quadrant_mesh.samples) {
    if (s.arc >= 0.0) {
      // Neumann face: the conormal trace is the data itself.
      g.push_back(s.arc >= atom.support_lo && s.arc <= atom.support_hi
                      ? atom.trace(s.arc)
                      : 0.0);
    } else {
      // Dirichlet face: outward normal (-1, 0), so the conormal derivative
      // is minus the x1-derivative of the potential.
      Vec2 p = s.point;
      auto f = [&](double t) {
        return atom.trace(t) * greens_grad_z(p, atom.curve.point(t)).x;
      };
      QuadResult q =
          integrate_adaptive_split(f, atom.support_lo, atom.support_hi,
                                   atom.split_points, 1e-9, 1e-16, 30);
      g.push_back(-q.value);
    }
  }
  return g;
}

}  // namespace mixedbvp
