#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "mixedbvp/core.hpp"
#include "mixedbvp/fields.hpp"
#include "mixedbvp/geometry.hpp"

namespace mixedbvp {

// Nystrom single-layer solver for the mixed problem on a truncated domain:
// the boundary inside B_R (Neumann part and Dirichlet part meeting at the
// origin) closed by a circular arc of radius R that carries Dirichlet data.
// The ansatz is u(z) = -(1/2pi) integral of log|z - q| rho(q) dsigma(q) over
// the closed contour; collocation imposes the interior conormal jump
// (1/2) rho + K*[rho] = f_N on Neumann nodes and S[rho] = f_D (or the arc
// closure data) on the rest.

struct ContourPanel {
  enum class Kind { neumann, dirichlet, arc };
  Kind kind = Kind::neumann;
  bool curved = false;  // circular-arc panel (truncation circle)
  Vec2 p0, p1;          // straight panel endpoints, inner end first
  Vec2 normal;          // outward unit normal (straight panels)
  double a0 = 0.0, a1 = 0.0;  // angular range of a curved panel
  double radius = 0.0;        // radius of a curved panel
  int first = 0;              // index of the panel's first node
  int count = 0;              // nodes on the panel
  double length = 0.0;        // geodesic length
};

struct SolverMesh {
  std::vector<ContourPanel> panels;
  std::vector<Vec2> nodes;
  std::vector<Vec2> normals;
  std::vector<double> weights;    // arc-length quadrature weights
  std::vector<int> panel_of;      // node index -> panel index
  std::vector<int> kind_index;    // node index -> position within its kind
  Domain domain = GraphDomain::flat();
  double R = 1.0;
  int panel_order = 8;

  int size() const { return static_cast<int>(nodes.size()); }
  ContourPanel::Kind node_kind(int i) const {
    return panels[panel_of[i]].kind;
  }
  int count_of(ContourPanel::Kind k) const;
};

// Graded contour mesh: `levels` dyadic bands per boundary ray shrinking
// toward the origin, `panels_per_level` equal panels per band (bands are
// further split at graph kinks), `panel_order` Gauss nodes per panel and
// `arc_panels` equal-angle panels on the closing arc. Unknown count is
// 2 * levels * panels_per_level * panel_order + arc_panels * panel_order
// on kink-free domains.
SolverMesh solver_mesh(const Domain& dom, double R, int levels,
                       int panels_per_level, int panel_order, int arc_panels);

// Boundary data sampled at mesh nodes, one array per contour part.
struct MixedData {
  std::vector<double> f_N;  // conormal derivative samples, Neumann nodes
  std::vector<double> f_D;  // trace samples, Dirichlet nodes
  std::vector<double> arc;  // trace samples closing the contour at radius R
};

MixedData sample_mixed_data(
    const SolverMesh& mesh,
    const std::function<double(Vec2, Vec2)>& neumann,  // (point, normal)
    const std::function<double(Vec2)>& dirichlet,
    const std::function<double(Vec2)>& arc_data);

struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

LinearSystem assemble_mixed_system(const SolverMesh& mesh,
                                   const MixedData& data);

struct BoundaryDensity {
  std::vector<double> values;  // one per mesh node
  SolverMesh mesh;
};

struct SolveResult {
  BoundaryDensity density;
  double residual = 0.0;       // ||A rho - b||_inf / ||b||_inf
  double cond_estimate = 0.0;  // 1 / rcond of the collocation matrix
  bool ok = false;             // false when cond_estimate > 1e12
};

SolveResult solve_mixed(const SolverMesh& mesh, const MixedData& data);

struct Evaluation {
  double u = 0.0;
  Vec2 grad;
};

// Potential and gradient of the single layer at an interior point. Panels
// closer than three panel lengths are re-integrated against the density's
// panel interpolant on a graded subdivision, so the evaluation stays
// accurate up to (but not onto) the contour.
Evaluation eval_solution(const BoundaryDensity& density, Vec2 z);

// Mixed problem on the sector of the given opening solved through the
// conformal straightening map z -> i(-iz)^s: data is transferred to the
// image sector of opening s * phi (where the corner is convex and the
// solver is most accurate), solved there, and pulled back. Requires
// 0 < s <= 1 and s * opening < pi/2; s = 1 reduces to the direct solve.
struct TransferSolution {
  std::function<Evaluation(Vec2)> eval;  // pulled-back interior evaluator
  SolveResult image;                     // diagnostics of the image solve
  double s = 1.0;
};

TransferSolution conformal_transfer_solve(
    const Sector& sec, double s,
    const std::function<double(Vec2, Vec2)>& f_N,
    const std::function<double(Vec2)>& f_D,
    const std::function<double(Vec2)>& arc_data, double R, int levels,
    int panels_per_level, int panel_order, int arc_panels);

// Contour-integral representation of the pulled-back complex derivative:
// d(v o m)(z) recovered as (1/2pi i) times the integral of
// m'(zeta) v'(m(zeta)) / (zeta - z) over the truncated sector contour,
// compared against the direct composition at each probe. Probes closer
// than min_dist to the contour are skipped and counted.
struct CauchyCheck {
  double max_rel_mismatch = 0.0;
  int used = 0;
  int skipped = 0;
};

CauchyCheck cauchy_transfer_check(const std::function<cplx(cplx)>& dv,
                                  const SectorMap& map, const Sector& sec,
                                  double R, const std::vector<Vec2>& probes,
                                  double min_dist = 0.1);

}  // namespace mixedbvp
