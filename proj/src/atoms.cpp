#include "mixedbvp/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mixedbvp/quadrature.hpp"

namespace mixedbvp {

namespace {

std::string fmt_sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// The ball interval of the support, which must be a single arc containing
// the center.
std::pair<double, double> support_interval(const BoundaryCurve& curve,
                                           Vec2 center, double center_arc,
                                           double rho) {
  auto ivs = curve.ball_intervals(center, rho);
  for (auto [a, b] : ivs) {
    if (center_arc >= a - 1e-12 && center_arc <= b + 1e-12) return {a, b};
  }
  throw std::invalid_argument(
      "atom: ball does not cut a single arc containing its center");
}

double trace_sup_norm(const std::function<double(double)>& trace, double lo,
                      double hi, const std::vector<double>& splits) {
  double m = 0.0;
  const int n = 4096;
  for (int i = 0; i <= n; ++i) {
    double s = lo + (hi - lo) * i / double(n);
    m = std::max(m, std::abs(trace(s)));
  }
  // probe both sides of each jump
  for (double s : splits) {
    for (double d : {-1e-9, 1e-9}) {
      double t = s + d * (hi - lo);
      if (t > lo && t < hi) m = std::max(m, std::abs(trace(t)));
    }
  }
  return m;
}

void check_invariants(const AtomSpec& a) {
  double plain = a.support_hi - a.support_lo;
  QuadResult mean = integrate_adaptive_split(a.trace, a.support_lo,
                                             a.support_hi, a.split_points,
                                             1e-12, 1e-16, 40);
  if (std::abs(mean.value) > 1e-10 * plain * a.sup_norm + 1e-300)
    throw std::invalid_argument(
        "atom: trace is not mean-zero; measured integral " +
        fmt_sci(mean.value));
  // Weighted measure of the supporting arc, evaluated in closed form so the
  // |x|^{eps'} singularity at the origin is handled exactly.
  double acc = weighted_curve_integral(a.curve, a.support_lo, a.support_hi,
                                       a.eps_prime);
  double cap = 1.0 / acc;
  if (a.sup_norm > cap * (1.0 + 1e-10))
    throw std::invalid_argument(
        "atom: sup norm " + fmt_sci(a.sup_norm) +
        " exceeds the normalization cap " + fmt_sci(cap));
}

}  // namespace

void AtomSpec::validate() const { check_invariants(*this); }

double arc_parameter_of(const BoundaryCurve& curve, Vec2 p) {
  double best_d = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (const auto& pc : curve.pieces) {
    double t = dot(p - pc.p0, pc.tangent);
    t = std::clamp(t, 0.0, pc.s1 - pc.s0);
    Vec2 q = pc.p0 + t * pc.tangent;
    double d = norm(p - q);
    if (d < best_d) {
      best_d = d;
      best_s = pc.s0 + t;
    }
  }
  if (best_d > 1e-9 * (1.0 + norm(p)))
    throw std::invalid_argument("point is not on the boundary curve");
  return best_s;
}

namespace {

AtomSpec atom_base(const Domain& dom, Vec2 center, double rho,
                   double eps_prime, double mesh_extent) {
  if (!(rho > 0.0)) throw std::invalid_argument("atom: need rho > 0");
  WeightedMeasure mu(eps_prime);  // rejects eps' <= -1
  double M = domain_lipschitz(dom);
  double extent = mesh_extent > 0.0
                      ? mesh_extent
                      : 2.0 * (norm(center) + rho) * (1.0 + M) + 1.0;
  AtomSpec a;
  a.curve = make_curve(dom, extent);
  a.center = center;
  a.center_arc = arc_parameter_of(a.curve, center);
  a.rho = rho;
  a.eps_prime = eps_prime;
  a.non_canonical = eps_prime > 0.0;
  auto [lo, hi] = support_interval(a.curve, center, a.center_arc, rho);
  double edge = extent * (1.0 - 1e-9);
  if (lo <= -edge || hi >= edge)
    throw std::invalid_argument(
        "atom: ball is not contained in the meshed boundary");
  a.support_lo = lo;
  a.support_hi = hi;
  return a;
}

}  // namespace

AtomSpec make_atom(const Domain& dom, Vec2 center, double rho,
                   const std::string& shape, double eps_prime,
                   double mesh_extent) {
  if (shape != "haar" && shape != "bump-pair")
    throw std::invalid_argument("atom: unknown shape '" + shape +
                                "' (use haar, bump-pair, or the custom "
                                "constructor)");
  AtomSpec a = atom_base(dom, center, rho, eps_prime, mesh_extent);
  a.shape = shape;
  double c = shape == "bump-pair"
                 ? 1.0 / weighted_ball_measure(dom, center, rho,
                                               WeightedMeasure(0.0))
                 : 1.0 / weighted_ball_measure(dom, center, rho,
                                               WeightedMeasure(eps_prime));
  double mid = 0.5 * (a.support_lo + a.support_hi);
  double lo = a.support_lo, hi = a.support_hi;
  a.trace = [c, mid, lo, hi](double s) {
    if (s < lo || s > hi) return 0.0;
    return s < mid ? c : -c;
  };
  a.split_points = {mid};
  a.sup_norm = c;
  a.normalization = c;
  if (shape == "haar") a.validate();
  return a;
}

AtomSpec make_atom_custom(const Domain& dom, Vec2 center, double rho,
                          double eps_prime,
                          std::function<double(double)> trace,
                          std::vector<double> split_points,
                          double mesh_extent) {
  AtomSpec a = atom_base(dom, center, rho, eps_prime, mesh_extent);
  a.shape = "custom";
  a.trace = std::move(trace);
  a.split_points = std::move(split_points);
  a.sup_norm =
      trace_sup_norm(a.trace, a.support_lo, a.support_hi, a.split_points);
  a.validate();
  return a;
}

MomentPartition moment_partition(const std::vector<double>& g,
                                 const BoundaryMesh& mesh, Vec2 center,
                                 double rho, bool subtract_mean) {
  std::size_t n = mesh.samples.size();
  if (g.size() != n)
    throw std::invalid_argument(
        "moment_partition: sample count does not match the mesh");
  if (!(rho > 0.0)) throw std::invalid_argument("moment_partition: rho > 0");

  double W = 0.0, I = 0.0, amax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    W += mesh.samples[i].weight;
    I += mesh.samples[i].weight * g[i];
    amax = std::max(amax, std::abs(g[i]));
  }
  MomentPartition out;
  out.measured_mean = I;
  std::vector<double> vals = g;
  if (subtract_mean) {
    double mbar = I / W;
    for (double& v : vals) v -= mbar;
    out.mean_subtracted = true;
  } else if (std::abs(I) > 1e-8 * W * amax + 1e-300) {
    throw std::invalid_argument(
        "moment_partition: data is not mean-zero; nodal integral " +
        fmt_sci(I));
  }

  // Ring index: smallest k with |p - center| <= 2^k rho.
  std::vector<int> ring(n, 0);
  int K = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = norm(mesh.samples[i].point - center);
    int k = 0;
    while (d > std::ldexp(rho, k)) ++k;
    ring[i] = k;
    K = std::max(K, k);
  }
  std::vector<double> ringW(K + 1, 0.0), ringI(K + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    ringW[ring[i]] += mesh.samples[i].weight;
    ringI[ring[i]] += mesh.samples[i].weight * vals[i];
  }
  std::vector<double> avg(K + 1, 0.0);
  double cw = 0.0, ci = 0.0;
  for (int k = 0; k <= K; ++k) {
    cw += ringW[k];
    ci += ringI[k];
    avg[k] = cw > 0.0 ? ci / cw : 0.0;
  }

  out.blocks.assign(K + 1, std::vector<double>(n, 0.0));
  out.radii.resize(K + 1);
  for (int k = 0; k <= K; ++k) out.radii[k] = std::ldexp(rho, k);
  for (std::size_t i = 0; i < n; ++i) {
    int r = ring[i];
    if (r == 0) out.blocks[0][i] = vals[i] - avg[0];
    for (int k = 1; k <= K; ++k) {
      if (r == k)
        out.blocks[k][i] = vals[i] - avg[k];  // ring term of block k
      else if (r < k)
        out.blocks[k][i] = avg[k - 1] - avg[k];  // telescoping inner part
    }
  }
  return out;
}

double block_weighted_l1(const std::vector<double>& block,
                         const BoundaryMesh& mesh, double eps_prime) {
  if (block.size() != mesh.samples.size())
    throw std::invalid_argument(
        "block_weighted_l1: sample count does not match the mesh");
  double acc = 0.0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    const BoundarySample& s = mesh.samples[i];
    acc += s.weight * std::pow(norm(s.point), eps_prime) *
           std::abs(block[i]);
  }
  return acc;
}

H11Primitive h11_primitive(const AtomSpec& atom, double base_arc) {
  H11Primitive p;
  p.base_arc = base_arc;
  double lo = atom.support_lo, hi = atom.support_hi;
  auto trace = atom.trace;
  auto splits = atom.split_points;
  p.value = [trace, splits, lo, hi, base_arc](double s) {
    double a = std::min(base_arc, s), b = std::max(base_arc, s);
    double ca = std::max(a, lo), cb = std::min(b, hi);
    if (cb <= ca) return 0.0;
    double v =
        integrate_adaptive_split(trace, ca, cb, splits, 1e-12, 1e-15, 40)
            .value;
    return s >= base_arc ? v : -v;
  };
  return p;
}

double h11_seminorm_pair_check(const AtomSpec& atom) {
  H11Primitive p = h11_primitive(atom, 0.0);
  double lo = std::min(0.0, atom.support_lo);
  double hi = std::max(0.0, atom.support_hi);
  double best = 0.0;
  const int n = 2048;
  for (int i = 0; i <= n; ++i) {
    double s = lo + (hi - lo) * i / double(n);
    double r = norm(atom.curve.point(s));
    double w = std::pow(r, -atom.eps_prime);
    best = std::max(best, w * std::abs(p.value(s)));
  }
  return best;
}

}  // namespace mixedbvp
