#pragma once

#include <vector>

#include "mixedbvp/atoms.hpp"
#include "mixedbvp/core.hpp"
#include "mixedbvp/geometry.hpp"

namespace mixedbvp {

// Mixed Green's function of the first quadrant, assembled from the free
// logarithmic kernel by reflections: the value vanishes on the positive
// x2-axis (Dirichlet face) and the source-side normal derivative vanishes on
// the positive x1-axis (Neumann face), both by exact pairwise cancellation.
double greens_eval(Vec2 z, Vec2 w);
Vec2 greens_grad_w(Vec2 z, Vec2 w);
Vec2 greens_grad_z(Vec2 z, Vec2 w);

// One Holder-continuity probe of the kernel in its second argument:
// lhs = |G(z, zeta) - G(z, w)|, ratio = |zeta - w| / |z - zeta|.
// Requires |zeta - w| < |z - zeta| / 2. Sweeping (zeta, w) over dyadic
// separations and regressing log lhs on log ratio estimates the Holder
// exponent.
struct HolderProbe {
  double lhs = 0.0;
  double ratio = 0.0;
};
HolderProbe greens_holder_probe(Vec2 z, Vec2 zeta, Vec2 w);

// Potential of a Neumann-face atom: u(z) = integral of G(z, x) a(x) over the
// support. Solves the quadrant problem with Neumann data a on the x1-axis
// and zero Dirichlet data on the x2-axis. Evaluation closer than 2 rho to
// the support is flagged near-singular but still computed with subdivision.
struct AtomSolution {
  double value = 0.0;
  bool near_singular = false;
  bool converged = true;
};
AtomSolution atom_solution(const AtomSpec& atom, Vec2 z);

// Graded quadrature mesh of the quadrant boundary itself: arc parameter
// s > 0 walks the Neumann face (s, 0), s < 0 walks the Dirichlet face
// (0, -s).
BoundaryMesh quadrant_boundary_mesh(double truncation_radius,
                                    const GradingSpec& grading);

// Conormal trace of the atom potential at the nodes of a quadrant boundary
// mesh: the atom itself on the Neumann face (it is the data there), the
// computed normal derivative of the potential on the Dirichlet face.
std::vector<double> atom_conormal_trace(const AtomSpec& atom,
                                        const BoundaryMesh& quadrant_mesh);

}  // namespace mixedbvp
