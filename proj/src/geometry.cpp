#include "mixedbvp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "mixedbvp/quadrature.hpp"

namespace mixedbvp {

namespace {

// Uniform double in [0,1) built from the top 53 bits of the generator, so
// results do not depend on library distribution internals.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

// ---------------------------------------------------------------------------
// GraphDomain

double GraphDomain::phi(double t) const {
  if (breakpoints.empty()) return t < 0 ? left_slope * t : right_slope * t;
  if (t <= breakpoints.front().x)
    return breakpoints.front().y + left_slope * (t - breakpoints.front().x);
  if (t >= breakpoints.back().x)
    return breakpoints.back().y + right_slope * (t - breakpoints.back().x);
  auto it = std::upper_bound(
      breakpoints.begin(), breakpoints.end(), t,
      [](double v, const Vec2& b) { return v < b.x; });
  const Vec2& hi = *it;
  const Vec2& lo = *(it - 1);
  double m = (hi.y - lo.y) / (hi.x - lo.x);
  return lo.y + m * (t - lo.x);
}

double GraphDomain::slope_at(double t) const {
  if (breakpoints.empty()) return t < 0 ? left_slope : right_slope;
  if (t < breakpoints.front().x) return left_slope;
  if (t >= breakpoints.back().x) return right_slope;
  auto it = std::upper_bound(
      breakpoints.begin(), breakpoints.end(), t,
      [](double v, const Vec2& b) { return v < b.x; });
  const Vec2& hi = *it;
  const Vec2& lo = *(it - 1);
  return (hi.y - lo.y) / (hi.x - lo.x);
}

double GraphDomain::lipschitz() const {
  double m = std::max(std::abs(left_slope), std::abs(right_slope));
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double s = (breakpoints[i + 1].y - breakpoints[i].y) /
               (breakpoints[i + 1].x - breakpoints[i].x);
    m = std::max(m, std::abs(s));
  }
  return m;
}

void GraphDomain::validate() const {
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i + 1].x > breakpoints[i].x))
      throw std::invalid_argument(
          "GraphDomain: breakpoints must be strictly increasing in x");
  if (std::abs(phi(0.0)) > 1e-12)
    throw std::invalid_argument("GraphDomain: phi(0) must be 0");
}

// ---------------------------------------------------------------------------
// Sector

double Sector::lipschitz() const {
  if (opening == kPi / 2) return 0.0;
  return std::abs(std::tan(kPi / 2 - opening));
}

void Sector::validate() const {
  if (!(opening > 0.0 && opening < kPi))
    throw std::invalid_argument("Sector: opening must lie in (0, pi)");
}

Vec2 Sector::ray_dir(int side) const {
  double theta = side > 0 ? kPi / 2 - opening : kPi / 2 + opening;
  return {std::cos(theta), std::sin(theta)};
}

double domain_lipschitz(const Domain& dom) {
  return std::visit([](const auto& d) { return d.lipschitz(); }, dom);
}

namespace {

// Both domain kinds are graphs over x1; reduce the sector to slopes so all
// point-membership and cell tests share one code path.
GraphDomain as_graph(const Domain& dom) {
  if (std::holds_alternative<GraphDomain>(dom))
    return std::get<GraphDomain>(dom);
  const Sector& sec = std::get<Sector>(dom);
  GraphDomain g;
  g.right_slope = std::tan(kPi / 2 - sec.opening);
  g.left_slope = std::tan(kPi / 2 + sec.opening);
  return g;
}

}  // namespace

bool domain_contains(const Domain& dom, Vec2 p) {
  GraphDomain g = as_graph(dom);
  return p.y > g.phi(p.x);
}

// ---------------------------------------------------------------------------
// BoundaryCurve

Vec2 BoundaryCurve::point(double s) const {
  // Anchor at the nearer endpoint. Anchoring always at s0 loses the offset
  // to rounding when |s - s0| is below the ulp of s0, which matters for
  // pieces ending at the origin: points meant to sit at distance 1e-18 from
  // the corner would otherwise collapse onto it exactly.
  const Piece& pc = piece_of(s);
  if (s - pc.s0 <= pc.s1 - s) return pc.p0 + (s - pc.s0) * pc.tangent;
  return pc.p1 + (s - pc.s1) * pc.tangent;
}

Vec2 BoundaryCurve::normal_at(double s) const { return piece_of(s).normal; }

const BoundaryCurve::Piece& BoundaryCurve::piece_of(double s) const {
  if (pieces.empty()) throw std::logic_error("BoundaryCurve: empty");
  auto it = std::upper_bound(
      pieces.begin(), pieces.end(), s,
      [](double v, const Piece& p) { return v < p.s0; });
  if (it != pieces.begin()) --it;
  return *it;
}

double BoundaryCurve::radius_crossing(double R, int side) const {
  double best = 0.0;
  bool found = false;
  for (const Piece& pc : pieces) {
    if (side > 0 && pc.s1 <= 0) continue;
    if (side < 0 && pc.s0 >= 0) continue;
    // |p(s)|^2 = (u + b)^2 + h^2 with u = s - s0, b = p0 . T.
    double b = dot(pc.p0, pc.tangent);
    double h2 = norm2(pc.p0) - b * b;
    double disc = R * R - h2;
    if (disc < 0) continue;
    double root = std::sqrt(disc);
    for (double u : {-b - root, -b + root}) {
      double s = pc.s0 + u;
      if (s >= pc.s0 - 1e-12 && s <= pc.s1 + 1e-12) {
        s = std::clamp(s, pc.s0, pc.s1);
        if ((side > 0 && s > 0) || (side < 0 && s < 0)) {
          if (!found || std::abs(s) > std::abs(best)) best = s;
          found = true;
        }
      }
    }
  }
  if (!found)
    throw std::invalid_argument(
        "radius_crossing: curve window does not reach the requested radius");
  return best;
}

std::vector<std::pair<double, double>> BoundaryCurve::ball_intervals(
    Vec2 x, double r) const {
  std::vector<std::pair<double, double>> raw;
  for (const Piece& pc : pieces) {
    Vec2 d = pc.p0 - x;
    double b = dot(d, pc.tangent);
    double c = norm2(d) - r * r;
    double disc = b * b - c;
    if (disc <= 0) continue;
    double root = std::sqrt(disc);
    double lo = std::max(pc.s0, pc.s0 - b - root);
    double hi = std::min(pc.s1, pc.s0 - b + root);
    if (hi > lo) raw.emplace_back(lo, hi);
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<double, double>> merged;
  for (auto& iv : raw) {
    if (!merged.empty() && iv.first <= merged.back().second + 1e-13 * (1 + r))
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  return merged;
}

std::vector<double> BoundaryCurve::kinks_in(double a, double b) const {
  std::vector<double> out;
  for (const Piece& pc : pieces)
    if (pc.s0 > a && pc.s0 < b) out.push_back(pc.s0);
  return out;
}

BoundaryCurve make_curve(const Domain& dom, double extent) {
  if (!(extent > 0)) throw std::invalid_argument("make_curve: extent <= 0");
  BoundaryCurve curve;
  if (std::holds_alternative<Sector>(dom)) {
    const Sector& sec = std::get<Sector>(dom);
    sec.validate();
    curve.lipschitz = sec.lipschitz();
    Vec2 dN = sec.ray_dir(+1), dD = sec.ray_dir(-1);
    BoundaryCurve::Piece left;
    left.s0 = -extent;
    left.s1 = 0.0;
    left.tangent = -1.0 * dD;
    left.p0 = extent * dD;
    left.p1 = {0.0, 0.0};
    left.normal = {left.tangent.y, -left.tangent.x};
    BoundaryCurve::Piece right;
    right.s0 = 0.0;
    right.s1 = extent;
    right.p0 = {0.0, 0.0};
    right.p1 = extent * dN;
    right.tangent = dN;
    right.normal = {right.tangent.y, -right.tangent.x};
    curve.pieces = {left, right};
    return curve;
  }
  const GraphDomain& g = std::get<GraphDomain>(dom);
  g.validate();
  curve.lipschitz = g.lipschitz();
  // Walk the graph from the origin in both directions, converting each linear
  // segment to an arc-parameterized piece until the requested window is
  // covered. Vertex x-coordinates on each side:
  auto segment_piece = [&](double ta, double tb, double sa) {
    // Piece covering graph x-range [ta, tb], starting at arc parameter sa.
    BoundaryCurve::Piece pc;
    double m = g.slope_at(0.5 * (ta + tb));
    double len = (tb - ta) * std::hypot(1.0, m);
    pc.s0 = sa;
    pc.s1 = sa + len;
    pc.p0 = {ta, g.phi(ta)};
    pc.p1 = {tb, g.phi(tb)};
    double inv = 1.0 / std::hypot(1.0, m);
    pc.tangent = {inv, m * inv};
    pc.normal = {m * inv, -inv};
    return pc;
  };
  std::vector<double> verts;
  for (const Vec2& b : g.breakpoints) verts.push_back(b.x);
  // Right of the origin.
  {
    std::vector<BoundaryCurve::Piece> out;
    double t = 0.0, s = 0.0;
    size_t vi = std::upper_bound(verts.begin(), verts.end(), 0.0) - verts.begin();
    while (s < extent) {
      double tb;
      if (vi < verts.size())
        tb = verts[vi++];
      else {
        double m = g.slope_at(t + 1.0);
        tb = t + (extent - s) / std::hypot(1.0, m) + 1.0;
      }
      if (tb <= t) continue;
      BoundaryCurve::Piece pc = segment_piece(t, tb, s);
      if (pc.s1 > extent) {
        double m = g.slope_at(0.5 * (t + tb));
        tb = t + (extent - s) / std::hypot(1.0, m);
        pc = segment_piece(t, tb, s);
        pc.s1 = extent;
      }
      out.push_back(pc);
      s = pc.s1;
      t = tb;
    }
    curve.pieces.insert(curve.pieces.end(), out.begin(), out.end());
  }
  // Left of the origin, walked outward and then reversed into ascending order.
  {
    std::vector<BoundaryCurve::Piece> out;
    double t = 0.0, s = 0.0;  // s is arc distance (positive) to the left
    auto first_below =
        std::lower_bound(verts.begin(), verts.end(), 0.0) - verts.begin();
    long vi = static_cast<long>(first_below) - 1;
    while (s < extent) {
      double tb;
      if (vi >= 0)
        tb = verts[vi--];
      else {
        double m = g.slope_at(t - 1.0);
        tb = t - ((extent - s) / std::hypot(1.0, m) + 1.0);
      }
      if (tb >= t) continue;
      double m = g.slope_at(0.5 * (t + tb));
      double len = (t - tb) * std::hypot(1.0, m);
      if (s + len > extent) {
        tb = t - (extent - s) / std::hypot(1.0, m);
        len = extent - s;
      }
      BoundaryCurve::Piece pc = segment_piece(tb, t, -(s + len));
      pc.s1 = -s;
      out.push_back(pc);
      s += len;
      t = tb;
    }
    std::reverse(out.begin(), out.end());
    curve.pieces.insert(curve.pieces.begin(), out.begin(), out.end());
  }
  return curve;
}

// ---------------------------------------------------------------------------
// WeightedMeasure

WeightedMeasure::WeightedMeasure(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > -1.0))
    throw std::invalid_argument(
        "WeightedMeasure: epsilon must exceed -1 for local integrability");
}

double WeightedMeasure::weight(Vec2 p) const {
  return std::pow(norm(p), epsilon_);
}

// ---------------------------------------------------------------------------
// Meshing

double BoundaryMesh::total_weight() const {
  double s = 0.0;
  for (const auto& q : samples) s += q.weight;
  return s;
}

namespace {

double curve_extent_for_radius(const Domain& dom, double R) {
  double M = domain_lipschitz(dom);
  return R * std::hypot(1.0, M) * (1.0 + 1e-9) + 1e-9;
}

void mesh_band(const BoundaryCurve& curve, double a, double b,
               const GradingSpec& spec, BoundaryMesh& mesh) {
  // One dyadic band [a, b]: split at graph vertices, then into equal panels.
  std::vector<double> cuts = curve.kinks_in(a, b);
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  const GaussRule& rule = gauss_rule(spec.nodes_per_panel);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    if (hi <= lo) continue;
    for (int k = 0; k < spec.panels_per_level; ++k) {
      double pa = lo + (hi - lo) * k / spec.panels_per_level;
      double pb = lo + (hi - lo) * (k + 1) / spec.panels_per_level;
      BoundaryMesh::Panel panel;
      panel.s0 = pa;
      panel.s1 = pb;
      panel.first = static_cast<int>(mesh.samples.size());
      panel.count = spec.nodes_per_panel;
      double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
      for (int j = 0; j < spec.nodes_per_panel; ++j) {
        BoundarySample smp;
        smp.arc = mid + half * rule.node[j];
        smp.point = curve.point(smp.arc);
        smp.normal = curve.normal_at(smp.arc);
        smp.weight = rule.weight[j] * half;
        mesh.samples.push_back(smp);
      }
      mesh.panels.push_back(panel);
    }
  }
}

}  // namespace

BoundaryMesh boundary_mesh(const Domain& dom, double truncation_radius,
                           const GradingSpec& grading) {
  if (!(truncation_radius > 0))
    throw std::invalid_argument("boundary_mesh: truncation radius must be > 0");
  if (grading.levels < 1 || grading.panels_per_level < 1 ||
      grading.nodes_per_panel < 2)
    throw std::invalid_argument("boundary_mesh: invalid grading");
  BoundaryCurve curve =
      make_curve(dom, curve_extent_for_radius(dom, truncation_radius));
  double sN = curve.radius_crossing(truncation_radius, +1);
  double sD = curve.radius_crossing(truncation_radius, -1);
  BoundaryMesh mesh;
  mesh.truncation_radius = truncation_radius;
  // Dirichlet side, outermost band first so samples end up ordered by arc.
  for (int j = 0; j < grading.levels; ++j) {
    double hi = std::abs(sD) * std::pow(0.5, j);
    double lo = (j == grading.levels - 1) ? 0.0 : hi * 0.5;
    mesh_band(curve, -hi, -lo, grading, mesh);
  }
  {
    // Reorder the D-side bands into ascending arc order.
    std::vector<BoundaryMesh::Panel> panels = mesh.panels;
    std::vector<BoundarySample> samples = mesh.samples;
    std::sort(panels.begin(), panels.end(),
              [](const auto& p, const auto& q) { return p.s0 < q.s0; });
    BoundaryMesh sorted;
    for (auto& p : panels) {
      BoundaryMesh::Panel np = p;
      np.first = static_cast<int>(sorted.samples.size());
      for (int j = 0; j < p.count; ++j)
        sorted.samples.push_back(samples[p.first + j]);
      sorted.panels.push_back(np);
    }
    mesh.panels = std::move(sorted.panels);
    mesh.samples = std::move(sorted.samples);
  }
  // Neumann side, innermost band last-to-first flipped for ascending order.
  for (int j = grading.levels - 1; j >= 0; --j) {
    double hi = sN * std::pow(0.5, j);
    double lo = (j == grading.levels - 1) ? 0.0 : hi * 0.5;
    mesh_band(curve, lo, hi, grading, mesh);
  }
  return mesh;
}

// ---------------------------------------------------------------------------
// Weighted measures of surface balls

namespace {

// Closed-form integral of |s - c|^e over [a, b] (a <= b), with a fixed inner
// cutoff for non-integrable exponents so divergence is reported as a large
// finite number that grows with the window.
double power_integral(double a, double b, double c, double e) {
  const double cutoff = 1e-12;
  auto one_side = [&](double lo, double hi) {
    // integral of u^e over [lo, hi], 0 <= lo <= hi
    if (hi <= lo) return 0.0;
    if (e <= -1.0) lo = std::max(lo, cutoff);
    if (hi <= lo) return 0.0;
    if (std::abs(e + 1.0) < 1e-14) return std::log(hi / lo);
    return (std::pow(hi, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0);
  };
  double lo = a - c, hi = b - c;
  if (lo >= 0) return one_side(lo, hi);
  if (hi <= 0) return one_side(-hi, -lo);
  return one_side(0, -lo) + one_side(0, hi);
}

}  // namespace

double weighted_curve_integral(const BoundaryCurve& curve, double a, double b,
                               double expo) {
  if (b <= a) return 0.0;
  double total = 0.0;
  for (const BoundaryCurve::Piece& pc : curve.pieces) {
    double lo = std::max(a, pc.s0), hi = std::min(b, pc.s1);
    if (hi <= lo) continue;
    double bb = dot(pc.p0, pc.tangent);
    double h2 = norm2(pc.p0) - bb * bb;
    double foot = pc.s0 - bb;  // parameter of the point nearest the origin
    double h = std::sqrt(std::max(0.0, h2));
    // h is computed by cancellation, so a through-origin segment built from a
    // distant vertex shows h ~ |p0| * 1e-8 rather than 0; classify generously.
    if (h < 1e-7 * (1.0 + norm(pc.p0))) {
      // The piece's line runs through the origin: |p(s)| = |s - foot|.
      total += power_integral(lo, hi, foot, expo);
    } else {
      auto f = [&](double s) {
        double u = s - foot;
        return std::pow(std::sqrt(u * u + h * h), expo);
      };
      QuadResult q =
          integrate_adaptive_split(f, lo, hi, {foot}, 1e-10, 1e-300, 48);
      total += q.value;
    }
  }
  return total;
}

double weighted_ball_measure(const Domain& dom, Vec2 x, double r,
                             const WeightedMeasure& mu) {
  if (r <= 0) return 0.0;
  double M = domain_lipschitz(dom);
  double extent = (norm(x) + r) * std::hypot(1.0, M) * 1.01 + 1e-6;
  BoundaryCurve curve = make_curve(dom, extent);
  double total = 0.0;
  for (auto& iv : curve.ball_intervals(x, r))
    total += weighted_curve_integral(curve, iv.first, iv.second, mu.epsilon());
  return total;
}

double ap_constant_estimate(const Domain& dom, const WeightedMeasure& mu,
                            double p, const BallFamily& family) {
  if (!(p > 1)) throw std::invalid_argument("ap_constant_estimate: p must be > 1");
  if (family.centers.empty() || family.radii.empty())
    throw std::invalid_argument("ap_constant_estimate: empty family");
  double M = domain_lipschitz(dom);
  double reach = 0.0;
  for (Vec2 c : family.centers) reach = std::max(reach, norm(c));
  double rmax = *std::max_element(family.radii.begin(), family.radii.end());
  BoundaryCurve curve =
      make_curve(dom, (reach + rmax) * std::hypot(1.0, M) * 1.01 + 1e-6);
  double sup = 0.0;
  double dual = -mu.epsilon() / (p - 1.0);
  for (Vec2 c : family.centers) {
    for (double r : family.radii) {
      auto ivs = curve.ball_intervals(c, r);
      double plain = 0.0, wint = 0.0, dint = 0.0;
      for (auto& iv : ivs) {
        plain += iv.second - iv.first;
        wint += weighted_curve_integral(curve, iv.first, iv.second,
                                        mu.epsilon());
        dint += weighted_curve_integral(curve, iv.first, iv.second, dual);
      }
      if (plain <= 0) continue;
      double val = (wint / plain) * std::pow(dint / plain, p - 1.0);
      sup = std::max(sup, val);
    }
  }
  return sup;
}

// ---------------------------------------------------------------------------
// Carleson ratio by adaptive cell quadrature

namespace {

struct CellIntegrator {
  GraphDomain graph;
  Vec2 center;
  double r = 0.0;
  double R = 0.0;
  double eps = 0.0;
  int max_depth = 11;

  // -1 outside, +1 inside, 0 straddles (conservative).
  int classify(double x0, double x1, double y0, double y1) const {
    auto ball_class = [&](Vec2 c, double rad) {
      double dx = std::max({x0 - c.x, c.x - x1, 0.0});
      double dy = std::max({y0 - c.y, c.y - y1, 0.0});
      double dmin = std::hypot(dx, dy);
      double fx = std::max(std::abs(x0 - c.x), std::abs(x1 - c.x));
      double fy = std::max(std::abs(y0 - c.y), std::abs(y1 - c.y));
      double dmax = std::hypot(fx, fy);
      if (dmin >= rad) return -1;
      if (dmax <= rad) return +1;
      return 0;
    };
    int c1 = ball_class(center, r);
    if (c1 < 0) return -1;
    int c2 = ball_class({0, 0}, R);
    if (c2 < 0) return -1;
    // Against the graph: phi is piecewise linear, so extremes over [x0, x1]
    // occur at the ends or at interior vertices.
    double lo = std::min(graph.phi(x0), graph.phi(x1));
    double hi = std::max(graph.phi(x0), graph.phi(x1));
    for (const Vec2& b : graph.breakpoints)
      if (b.x > x0 && b.x < x1) {
        lo = std::min(lo, b.y);
        hi = std::max(hi, b.y);
      }
    int c3;
    if (y0 >= hi)
      c3 = +1;
    else if (y1 <= lo)
      c3 = -1;
    else
      c3 = 0;
    if (c3 < 0) return -1;
    if (c1 > 0 && c2 > 0 && c3 > 0) return +1;
    return 0;
  }

  double weight_cell(double x0, double x1, double y0, double y1) const {
    // integral of |y|^eps over the full cell, 4x4 product Gauss
    const GaussRule& g = gauss_rule(4);
    double sx = 0.5 * (x1 - x0), cx = 0.5 * (x0 + x1);
    double sy = 0.5 * (y1 - y0), cy = 0.5 * (y0 + y1);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Vec2 p{cx + sx * g.node[i], cy + sy * g.node[j]};
        sum += g.weight[i] * g.weight[j] * std::pow(norm(p), eps);
      }
    return sum * sx * sy;
  }

  double integrate(double x0, double x1, double y0, double y1,
                   int depth) const {
    int cls = classify(x0, x1, y0, y1);
    if (cls < 0) return 0.0;
    if (cls > 0 && !(eps < 0 && x0 < 0 && x1 > 0 && y0 < 0 && y1 > 0))
      return weight_cell(x0, x1, y0, y1);
    if (depth >= max_depth) {
      // Leaf straddling cell: fraction by subsampling.
      int in = 0;
      double wsum = 0.0;
      const int grid = 4;
      for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
          Vec2 p{x0 + (x1 - x0) * (i + 0.5) / grid,
                 y0 + (y1 - y0) * (j + 0.5) / grid};
          bool inside = norm(p - center) < r && norm(p) < R &&
                        p.y > graph.phi(p.x);
          if (inside) {
            ++in;
            wsum += std::pow(norm(p), eps);
          }
        }
      return wsum / (grid * grid) * (x1 - x0) * (y1 - y0);
    }
    double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    return integrate(x0, xm, y0, ym, depth + 1) +
           integrate(xm, x1, y0, ym, depth + 1) +
           integrate(x0, xm, ym, y1, depth + 1) +
           integrate(xm, x1, ym, y1, depth + 1);
  }
};

}  // namespace

double carleson_ratio(const Domain& dom, const WeightedMeasure& mu, double R,
                      const CarlesonSampling& sampling) {
  if (!(R > 0)) throw std::invalid_argument("carleson_ratio: R must be > 0");
  GraphDomain g = as_graph(dom);
  double sup = 0.0;
  for (Vec2 c : sampling.centers) {
    for (double r : sampling.radii) {
      CellIntegrator ci;
      ci.graph = g;
      ci.center = c;
      ci.r = r;
      ci.R = R;
      ci.eps = mu.epsilon();
      ci.max_depth = sampling.refinement_depth;
      double span = std::min(r, R + norm(c));
      double numer = ci.integrate(c.x - span, c.x + span, c.y - span,
                                  c.y + span, 0) /
                     R;
      double denom = weighted_ball_measure(dom, c, r, mu);
      if (denom > 0) sup = std::max(sup, numer / denom);
    }
  }
  return sup;
}

// ---------------------------------------------------------------------------
// Cones and helpers

double default_cone_angle(const Domain& dom) {
  return 0.5 * (kPi / 2 - std::atan(domain_lipschitz(dom)));
}

ConeParams make_cone(const Domain& dom, double theta0) {
  double limit = kPi / 2 - std::atan(domain_lipschitz(dom));
  if (!(theta0 > 0) || !(theta0 < limit))
    throw std::invalid_argument(
        "make_cone: cone half-angle must lie in (0, pi/2 - arctan M)");
  return ConeParams{theta0};
}

GraphDomain random_sawtooth(double M, int segments_per_side,
                            std::uint64_t seed) {
  if (M < 0 || segments_per_side < 1)
    throw std::invalid_argument("random_sawtooth: bad parameters");
  std::mt19937_64 rng(seed);
  double sign = (rng() & 1) ? 1.0 : -1.0;
  GraphDomain g;
  std::vector<Vec2> right;
  double x = 0.0, y = 0.0, s = sign;
  for (int i = 0; i < segments_per_side; ++i) {
    double dx = 0.3 + 0.7 * uniform01(rng);
    x += dx;
    y += s * M * dx;
    right.push_back({x, y});
    s = -s;
  }
  g.right_slope = s * M;
  std::vector<Vec2> left;
  x = 0.0;
  y = 0.0;
  s = -sign;
  for (int i = 0; i < segments_per_side; ++i) {
    double dx = 0.3 + 0.7 * uniform01(rng);
    x -= dx;
    y -= s * M * dx;
    left.push_back({x, y});
    s = -s;
  }
  g.left_slope = s * M;
  std::reverse(left.begin(), left.end());
  g.breakpoints = std::move(left);
  g.breakpoints.push_back({0.0, 0.0});
  g.breakpoints.insert(g.breakpoints.end(), right.begin(), right.end());
  g.validate();
  return g;
}

std::string mesh_to_csv(const BoundaryMesh& mesh) {
  std::string out = "x,y,arc,nu_x,nu_y,weight\n";
  char buf[160];
  for (const auto& s : mesh.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  s.point.x, s.point.y, s.arc, s.normal.x, s.normal.y,
                  s.weight);
    out += buf;
  }
  return out;
}

}  // namespace mixedbvp
