#include "mixedbvp/fields.hpp"

#include <cmath>
#include <cstdio>

namespace mixedbvp {

namespace {

std::string window_message(const char* which, double lo, double hi,
                           double value) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%s: epsilon = %.12g outside the admissible window (%.12g, %.12g)",
                which, value, lo, hi);
  return buf;
}

}  // namespace

FieldCertificate build_field_signdefinite(double M, double epsilon) {
  if (!(M >= 0)) throw std::invalid_argument("build_field_signdefinite: M < 0");
  double beta = std::atan(M);
  double window = (kPi - 2 * beta) / (kPi + 2 * beta);
  if (!(std::abs(epsilon) < window))
    throw std::invalid_argument(window_message("build_field_signdefinite",
                                               -window, window, epsilon));
  // |epsilon| = (pi - 2 beta0)/(pi + 2 beta) inverted for beta0; epsilon = 0
  // degenerates to the constant vertical field with beta0 = pi/2.
  double beta0 = 0.5 * (kPi - std::abs(epsilon) * (kPi + 2 * beta));
  double lambda;
  if (epsilon >= 0)
    lambda = beta0 + epsilon * beta;  // psi increasing: psi(-beta) = beta0
  else
    lambda = kPi - beta0 + epsilon * beta;  // psi decreasing from pi - beta0
  FieldCertificate cert;
  cert.field = {lambda, epsilon};
  cert.beta0 = beta0;
  cert.margin = std::sin(beta0 - beta);
  return cert;
}

FieldCertificate build_field_mixed(double M, double epsilon) {
  if (!(M >= 0 && M < 1))
    throw std::invalid_argument(
        "build_field_mixed: Lipschitz constant must be < 1");
  double beta = std::atan(M);
  double lo = 2 * beta / (kPi - 2 * beta);
  if (!(epsilon > lo && epsilon < 1))
    throw std::invalid_argument(
        window_message("build_field_mixed", lo, 1.0, epsilon));
  double beta0 = 0.5 * epsilon * (kPi - 2 * beta);
  double lambda = kPi - kPi * beta0 / (kPi - 2 * beta);  // = pi - eps*pi/2
  FieldCertificate cert;
  cert.field = {lambda, epsilon};
  cert.beta0 = beta0;
  cert.margin = std::sin(beta0 - beta);
  return cert;
}

Vec2 field_eval(const HolomorphicField& field, cplx z) {
  if (z == cplx{0.0, 0.0}) {
    if (field.epsilon > 0) return {0.0, 0.0};
    if (field.epsilon == 0.0)
      return {std::cos(field.lambda), std::sin(field.lambda)};
    throw std::domain_error("field_eval: z = 0 with negative exponent");
  }
  double r = std::pow(std::abs(z), field.epsilon);
  double psi = field.epsilon * arg_upper(z) + field.lambda;
  return {r * std::cos(psi), r * std::sin(psi)};
}

double field_dot_normal(const HolomorphicField& field,
                        const BoundarySample& sample) {
  return dot(field_eval(field, to_cplx(sample.point)), sample.normal);
}

cplx sector_map(const SectorMap& map, cplx z) {
  if (!(map.s > 0 && map.s <= 1))
    throw std::invalid_argument("sector_map: s must lie in (0, 1]");
  if (map.s == 1.0) return z;
  // -iz rotates the upward sector onto the right half-plane, where the
  // principal power is single-valued; i rotates back.
  return cplx{0, 1} * std::pow(cplx{0, -1} * z, map.s);
}

cplx sector_map_inverse(const SectorMap& map, cplx eta) {
  if (!(map.s > 0 && map.s <= 1))
    throw std::invalid_argument("sector_map_inverse: s must lie in (0, 1]");
  if (map.s == 1.0) return eta;
  return cplx{0, 1} * std::pow(cplx{0, -1} * eta, 1.0 / map.s);
}

cplx sector_map_cderiv(const SectorMap& map, cplx z) {
  if (!(map.s > 0 && map.s <= 1))
    throw std::invalid_argument("sector_map_cderiv: s must lie in (0, 1]");
  if (map.s == 1.0) return {1.0, 0.0};
  if (z == cplx{0.0, 0.0})
    throw std::domain_error("sector_map_cderiv: singular at z = 0 for s < 1");
  return map.s * std::pow(cplx{0, -1} * z, map.s - 1.0);
}

double measure_transfer_check(const SectorMap& map, const Sector& sector,
                              const BoundaryMesh& mesh) {
  sector.validate();
  double worst = 0.0;
  for (const BoundarySample& q : mesh.samples) {
    double r = norm(q.point);
    if (r == 0.0) continue;
    double lhs = 1.0 / std::abs(sector_map_cderiv(map, to_cplx(q.point)));
    double rhs = (1.0 / map.s) * std::pow(r, 1.0 - map.s);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  return worst;
}

}  // namespace mixedbvp
