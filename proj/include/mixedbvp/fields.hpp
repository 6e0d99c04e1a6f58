#pragma once

#include "mixedbvp/core.hpp"
#include "mixedbvp/geometry.hpp"

namespace mixedbvp {

// The vector field alpha(z) = (Re(e^{i lambda} z^epsilon),
// Im(e^{i lambda} z^epsilon)), holomorphic above the graph for the branch cut
// on the downward ray. In polar form alpha(r e^{i theta}) = r^epsilon
// e^{i psi(theta)} with psi(theta) = epsilon * theta + lambda.
struct HolomorphicField {
  double lambda = kPi / 2;
  double epsilon = 0.0;
};

// A constructed field together with the angle certificate that makes its
// boundary sign bounds checkable: margin = sin(beta0 - beta) with
// beta = arctan M.
struct FieldCertificate {
  HolomorphicField field;
  double beta0 = 0.0;
  double margin = 0.0;
};

// Field whose normal component is strictly negative on the whole boundary of
// every graph with constant at most M:
//   -|x|^eps <= alpha . nu <= -|x|^eps sin(beta0 - beta).
// Admissible window: |epsilon| < (pi - 2 beta)/(pi + 2 beta).
FieldCertificate build_field_signdefinite(double M, double epsilon);

// Field whose normal component changes sign across the origin: negative on
// N = {x1 >= 0}, positive on D = {x1 < 0}, with the same margin on both
// sides. Requires M < 1 and 2 beta/(pi - 2 beta) < epsilon < 1. The phase
// works out to lambda = pi - epsilon * pi / 2, independent of M.
FieldCertificate build_field_mixed(double M, double epsilon);

Vec2 field_eval(const HolomorphicField& field, cplx z);
double field_dot_normal(const HolomorphicField& field,
                        const BoundarySample& sample);

// Power map eta = i(-iz)^s between sectors, taking the sector of half-opening
// phi about the vertical to the one of half-opening s*phi. s = 1 is the
// identity.
struct SectorMap {
  double s = 1.0;
};

cplx sector_map(const SectorMap& map, cplx z);
cplx sector_map_inverse(const SectorMap& map, cplx eta);
cplx sector_map_cderiv(const SectorMap& map, cplx z);

// Max relative defect of the pointwise identity
// |d phi_s(x)|^{-1} = (1/s)|x|^{1-s} over the mesh nodes.
double measure_transfer_check(const SectorMap& map, const Sector& sector,
                              const BoundaryMesh& mesh);

}  // namespace mixedbvp
