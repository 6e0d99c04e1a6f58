#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mixedbvp/core.hpp"

namespace mixedbvp {

// Region above a piecewise-linear Lipschitz function phi with phi(0) = 0.
// The boundary splits at the origin: Dirichlet piece D = {x1 < 0}, Neumann
// piece N = {x1 >= 0}. Breakpoints are the graph vertices, strictly
// increasing in x1; beyond the first/last breakpoint the graph continues
// with the given end slopes. An empty breakpoint list with unequal slopes
// describes a single kink at the origin.
struct GraphDomain {
  std::vector<Vec2> breakpoints;
  double left_slope = 0.0;
  double right_slope = 0.0;

  static GraphDomain flat() { return {}; }

  double phi(double t) const;
  double slope_at(double t) const;  // right-continuous choice at vertices
  double lipschitz() const;
  void validate() const;  // throws std::invalid_argument on bad input
};

// Infinite sector {r e^{i theta} : r > 0, |theta - pi/2| < opening}, a graph
// domain whose two boundary rays meet at the origin. The half-plane is
// opening = pi/2.
struct Sector {
  double opening = kPi / 2;

  double lipschitz() const;
  void validate() const;
  // Ray directions as unit vectors; positive side is the Neumann ray.
  Vec2 ray_dir(int side) const;  // side = +1 (N) or -1 (D)
};

using Domain = std::variant<GraphDomain, Sector>;

double domain_lipschitz(const Domain& dom);
bool domain_contains(const Domain& dom, Vec2 p);

// One quadrature node of a boundary mesh. arc is the signed arc length from
// the origin, negative on the Dirichlet side.
struct BoundarySample {
  Vec2 point;
  double arc = 0.0;
  Vec2 normal;  // outward unit normal (points out of the domain)
  double weight = 0.0;
};

// Resolved polygonal boundary, parameterized by signed arc length over a
// finite window [-extent, extent]. Sectors and graphs both reduce to this.
struct BoundaryCurve {
  struct Piece {
    double s0 = 0.0, s1 = 0.0;  // arc-parameter range
    Vec2 p0;                    // point at s0
    Vec2 p1;                    // point at s1
    Vec2 tangent;               // unit, in direction of increasing s
    Vec2 normal;                // outward unit normal
  };
  std::vector<Piece> pieces;  // ordered by s0
  double lipschitz = 0.0;

  Vec2 point(double s) const;
  Vec2 normal_at(double s) const;
  const Piece& piece_of(double s) const;
  // Arc parameters where |point(s)| = R on the positive (side=+1) or
  // negative (side=-1) half; boundary distance to the origin is monotone in
  // |s| only for M < 1, so the crossing is located per piece and the largest
  // |s| crossing is returned.
  double radius_crossing(double R, int side) const;
  // Parameter intervals covered by the Euclidean ball B(x, r).
  std::vector<std::pair<double, double>> ball_intervals(Vec2 x, double r) const;
  // Kink locations (piece junctions) inside [a, b], for quadrature splits.
  std::vector<double> kinks_in(double a, double b) const;
};

BoundaryCurve make_curve(const Domain& dom, double extent);

// Power weight |x|^epsilon against arc length. epsilon <= -1 loses local
// integrability at the origin and is rejected.
class WeightedMeasure {
 public:
  explicit WeightedMeasure(double epsilon);
  double epsilon() const { return epsilon_; }
  double weight(Vec2 p) const;

 private:
  double epsilon_;
};

// Geometric mesh refinement toward the origin: `levels` dyadic bands per
// side, each band cut into `panels_per_level` panels carrying
// `nodes_per_panel` Gauss nodes.
struct GradingSpec {
  int levels = 12;
  int panels_per_level = 1;
  int nodes_per_panel = 8;
};

struct BoundaryMesh {
  struct Panel {
    double s0 = 0.0, s1 = 0.0;
    int first = 0;  // index into samples
    int count = 0;
  };
  std::vector<BoundarySample> samples;
  std::vector<Panel> panels;
  double truncation_radius = 0.0;
  double total_weight() const;
};

// Quadrature mesh of the truncated boundary (both sides of the origin out to
// |x| = truncation_radius), graded toward the D/N junction. Panels never
// straddle graph vertices, so every panel is a straight segment.
BoundaryMesh boundary_mesh(const Domain& dom, double truncation_radius,
                           const GradingSpec& grading);

// sigma_eps(Delta_r(x)): the weight |y|^eps integrated over the part of the
// boundary within Euclidean distance r of x. r = 0 gives 0.
double weighted_ball_measure(const Domain& dom, Vec2 x, double r,
                             const WeightedMeasure& mu);

// Integral of |point(s)|^expo over the parameter set [a, b] of the curve.
// Exponents <= -1 make the integral diverge at the origin; such calls are
// evaluated with a fixed inner cutoff |s| > 1e-12 so that divergence
// surfaces as growth with ball size rather than as an exception.
double weighted_curve_integral(const BoundaryCurve& curve, double a, double b,
                               double expo);

struct BallFamily {
  std::vector<Vec2> centers;
  std::vector<double> radii;
};

// Empirical Muckenhoupt constant: sup over the sampled family of
// (avg_B w)(avg_B w^{-1/(p-1)})^{p-1} with averages against arc length.
double ap_constant_estimate(const Domain& dom, const WeightedMeasure& mu,
                            double p, const BallFamily& family);

struct CarlesonSampling {
  std::vector<Vec2> centers;
  std::vector<double> radii;
  int refinement_depth = 11;
};

// Empirical Carleson constant of the interior measure (|y|^eps / R) dA on
// B(0, R) relative to sigma_eps on boundary balls: sup over the sampled
// (x, r) of mu(B_r(x) cap Omega) / sigma_eps(Delta_r(x)).
double carleson_ratio(const Domain& dom, const WeightedMeasure& mu, double R,
                      const CarlesonSampling& sampling);

// Nontangential cone half-opening; must leave room below the graph's
// steepest slope so cones stay inside the domain.
struct ConeParams {
  double theta0 = 0.0;
};

double default_cone_angle(const Domain& dom);  // (pi/2 - arctan M) / 2
ConeParams make_cone(const Domain& dom, double theta0);

// Test-support generator: graph with slopes exactly +-M alternating over
// random segment lengths, vertex at the origin. Deterministic in the seed.
GraphDomain random_sawtooth(double M, int segments_per_side, std::uint64_t seed);

// CSV export of a mesh: rows x,y,arc,nu_x,nu_y,weight.
std::string mesh_to_csv(const BoundaryMesh& mesh);

}  // namespace mixedbvp
