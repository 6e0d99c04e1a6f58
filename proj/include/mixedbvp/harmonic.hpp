#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mixedbvp/core.hpp"
#include "mixedbvp/fields.hpp"
#include "mixedbvp/geometry.hpp"

namespace mixedbvp {

// Harmonic test function u = Re f with f holomorphic, carrying the exact
// complex derivative so gradients never come from numerical differentiation.
// One deliberately non-harmonic probe (|z|^2) shares the type for
// failure-path testing; it reports claims_harmonic() == false.
class HarmonicFunction {
 public:
  double value(cplx z) const { return value_(z); }
  Vec2 gradient(cplx z) const { return grad_(z); }
  cplx cderiv(cplx z) const;  // throws if no holomorphic generator
  bool has_cderiv() const { return static_cast<bool>(cderiv_); }
  bool claims_harmonic() const { return claims_harmonic_; }
  const std::string& name() const { return name_; }

  // u = Re(a z^k), branch cut on the downward ray, k > 0.
  static HarmonicFunction power(double k, cplx a = {1.0, 0.0});
  // u = Re sqrt(z + c) on the closed upper half-plane.
  static HarmonicFunction root_shift(cplx c);
  // u = Re(sum_j coeffs[j] z^j).
  static HarmonicFunction poly(std::vector<cplx> coeffs);
  // u = Re(sqrt z - sqrt(z + i)): bounded data on both boundary pieces but
  // nontangential gradient blowing up like |z|^{-1/2} at the junction.
  static HarmonicFunction counterexample_fn();
  // Homogeneous solution r^k cos(k(theta - theta_N)) vanishing on the
  // Dirichlet ray and with vanishing normal derivative on the Neumann ray of
  // the sector with full opening A about the vertical; k = pi/(2A).
  static HarmonicFunction mixed_eigen(double full_opening = kPi);
  // u = Re(1/(z + c)), Im c > 0: a decaying test function.
  static HarmonicFunction inverse_shift(cplx c);
  static HarmonicFunction combo(double ca, const HarmonicFunction& f,
                                double cb, const HarmonicFunction& g);
  // u = v(phi_s(z)) for harmonic v on the image sector.
  static HarmonicFunction compose_sector(const HarmonicFunction& v,
                                         const SectorMap& map);
  // Non-harmonic |z|^2 probe (value x^2 + y^2, gradient (2x, 2y)).
  static HarmonicFunction absz2();

 private:
  std::string name_;
  std::function<double(cplx)> value_;
  std::function<Vec2(cplx)> grad_;
  std::function<cplx(cplx)> cderiv_;
  bool claims_harmonic_ = true;
};

// Names: "counterexample", "power:k", "mixed-eigen:A" (full opening, default
// pi), "poly:a0,a1,..." (real coefficients), "decay" (Re 1/(z+i)), "absz2".
HarmonicFunction catalog_lookup(const std::string& name);

struct CounterexampleEval {
  double value = 0.0;
  Vec2 grad;
};
// Throws std::domain_error at z = 0 and z = -i where the gradient is
// singular; the value alone remains defined at z = 0.
CounterexampleEval counterexample(cplx z);
double counterexample_value(cplx z);

// Finite sampling grid of the nontangential cone Gamma(x): radii
// r_min * q^j <= r_max along rays_per_cone rays spread over the cone.
struct NontangentialGrid {
  double r_min = 1e-6;
  double r_max = 1.0;
  double q = 2.0;
  int rays_per_cone = 5;
  ConeParams cone{kPi / 4};

  // Nested refinement: every old sample point is kept.
  NontangentialGrid refined() const;
  void validate() const;
};

// Certified lower bound for the nontangential maximal function of |grad u|
// at boundary point x: the max over the finite cone grid. Monotone under
// grid refinement by construction.
double ntmax_grad(const HarmonicFunction& u, Vec2 x,
                  const NontangentialGrid& grid);

// (integral of |g|^p |x|^eps dsigma)^(1/p) over the mesh, nodal values.
double weighted_lp_boundary_norm(const std::vector<double>& samples, double p,
                                 const WeightedMeasure& mu,
                                 const BoundaryMesh& mesh);
double weighted_lp_boundary_norm(const std::function<double(Vec2)>& g,
                                 double p, const WeightedMeasure& mu,
                                 const BoundaryMesh& mesh);

// Rellich identity accounting on the truncated domain: the boundary integral
//   I = int_{boundary cap B_R} (|grad u|^2 alpha.nu - 2 (alpha.grad u)(du/dnu))
// plus the same form over the truncation arc with the outward arc normal must
// vanish for harmonic u. Masses of |integrand| are returned so callers can
// judge cancellation; `converged` reports whether every adaptive panel met
// its tolerance (principal-value-only integrands fail it honestly).
struct RellichResult {
  double boundary_integral = 0.0;
  double flux_correction = 0.0;
  double boundary_mass = 0.0;
  double arc_mass = 0.0;
  bool converged = true;
};
RellichResult rellich_residual(const HarmonicFunction& u,
                               const HolomorphicField& field,
                               const Domain& dom, double R,
                               int grading_levels = 60);

// Two-sided energy comparison driven by a sign-flipping field certificate:
// A = full weighted gradient energy on the truncated boundary, B = the data
// energies (normal derivative on N, tangential derivative on D). The
// comparison A <= (4/margin) B is asserted only when the truncation arc's
// energy is below 1% of A; otherwise the verdict is inconclusive and the
// arc-corrected inequality A <= (4/margin)(B + arc term) is reported.
struct TwosidedReport {
  double A = 0.0;
  double B = 0.0;
  double ratio = 0.0;  // A/B when B > 0
  double certificate = 0.0;  // 1/sin(beta0 - beta)
  double flux_term = 0.0;  // arc gradient energy
  bool trivial = false;    // A = B = 0
  bool conclusive = false;
  bool bound_ok = false;            // strict form, only when conclusive
  bool bound_ok_corrected = false;  // arc-corrected form, always evaluated
};
TwosidedReport rellich_twosided_check(const HarmonicFunction& u,
                                      const FieldCertificate& cert,
                                      const Domain& dom, double R,
                                      int grading_levels = 60);

// Least-squares growth exponent of max_{|z|=r} |u| over the sector, with the
// Phragmen-Lindelof threshold pi/(2*opening) for reference.
struct GrowthResult {
  double exponent = 0.0;
  double threshold = 0.0;
  bool defined = true;
};
GrowthResult growth_exponent(const HarmonicFunction& u, const Sector& sector,
                             const std::vector<double>& radii);

}  // namespace mixedbvp
