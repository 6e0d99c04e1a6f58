#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mixedbvp/core.hpp"
#include "mixedbvp/geometry.hpp"

namespace mixedbvp {

// Boundary atom: supported on the surface ball Delta_rho(center), mean zero
// against arc length, sup norm capped by 1/sigma_{eps'}(Delta_rho). The
// weight exponent eps' of the target space is <= 0 in the canonical setting;
// atoms built with eps' > 0 are allowed for experiments but flagged.
struct AtomSpec {
  BoundaryCurve curve;
  Vec2 center;
  double center_arc = 0.0;
  double rho = 0.0;
  double eps_prime = 0.0;
  std::function<double(double)> trace;  // by arc parameter, 0 off support
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::vector<double> split_points;  // interior jump locations
  double sup_norm = 0.0;
  double normalization = 0.0;  // the step height for haar shapes
  std::string shape;           // "haar", "bump-pair", or "custom"
  bool non_canonical = false;

  void validate() const;  // re-runs the mean-zero and sup-norm invariants
};

// Arc parameter of a point lying on the resolved curve; rejects points off
// the boundary.
double arc_parameter_of(const BoundaryCurve& curve, Vec2 p);

// shape "haar": +c on the low-arc half of the ball, -c on the high-arc half,
// c = 1/sigma_{eps'}(Delta_rho); the equal-arc split makes the plain mean
// vanish identically. shape "bump-pair": the same geometry normalized by
// plain arc measure, +-1/sigma_0(Delta_rho), a discrete dipole.
// mesh_extent = 0 sizes the resolved boundary automatically; a positive
// value is enforced and rejects atoms whose ball sticks out.
AtomSpec make_atom(const Domain& dom, Vec2 center, double rho,
                   const std::string& shape, double eps_prime,
                   double mesh_extent = 0.0);
AtomSpec make_atom_custom(const Domain& dom, Vec2 center, double rho,
                          double eps_prime,
                          std::function<double(double)> trace,
                          std::vector<double> split_points,
                          double mesh_extent = 0.0);

// Ring decomposition of mean-zero boundary data g about a center:
//   b_0 = (g - avg_{D_0} g) on D_0,
//   b_k = g on D_k minus D_{k-1}, plus avg_{D_{k-1}} g on D_{k-1},
//         minus avg_{D_k} g on D_k,
// with D_k the nodes within Euclidean distance 2^k rho of the center and
// averages taken against the nodal quadrature weights. Blocks telescope back
// to g exactly on the nodes and each has exactly zero nodal integral.
struct MomentPartition {
  std::vector<std::vector<double>> blocks;  // nodal values, one row per k
  std::vector<double> radii;                // ball radius 2^k rho per row
  bool mean_subtracted = false;
  double measured_mean = 0.0;  // nodal integral of g before any subtraction
};

MomentPartition moment_partition(const std::vector<double>& g,
                                 const BoundaryMesh& mesh, Vec2 center,
                                 double rho, bool subtract_mean = false);

// Nodal integral of |b| |x|^{eps'} dsigma.
double block_weighted_l1(const std::vector<double>& block,
                         const BoundaryMesh& mesh, double eps_prime);

// Primitive A(s) = integral of the atom trace from base_arc to s along the
// boundary. Mean zero makes A close back to 0 past the support.
struct H11Primitive {
  double base_arc = 0.0;
  std::function<double(double)> value;
};

H11Primitive h11_primitive(const AtomSpec& atom, double base_arc = 0.0);

// Finiteness surrogate for the weighted primitive bound: the max of
// |x|^{-eps'} |A(x)| over a fine sampling of the hull of {base point 0} and
// the support.
double h11_seminorm_pair_check(const AtomSpec& atom);

}  // namespace mixedbvp
