#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mixedbvp/harmonic.hpp"

using namespace mixedbvp;

TEST_CASE("catalog gradients agree with central differences of the value") {
  for (const char* name : {"power:0.75", "poly:0,3,1", "decay",
                           "counterexample", "mixed-eigen"}) {
    HarmonicFunction u = catalog_lookup(name);
    CHECK(u.claims_harmonic());
    cplx z{1.1, 0.7};
    Vec2 g = u.gradient(z);
    double h = 1e-5;
    double gx = (u.value(z + cplx{h, 0.0}) - u.value(z - cplx{h, 0.0})) / (2 * h);
    double gy = (u.value(z + cplx{0.0, h}) - u.value(z - cplx{0.0, h})) / (2 * h);
    CHECK(g.x == doctest::Approx(gx).epsilon(1e-7));
    CHECK(g.y == doctest::Approx(gy).epsilon(1e-7));
    if (u.has_cderiv()) {
      // grad Re f = (Re f', -Im f')
      cplx d = u.cderiv(z);
      CHECK(d.real() == doctest::Approx(g.x));
      CHECK(d.imag() == doctest::Approx(-g.y));
    }
  }
  CHECK_THROWS_AS(catalog_lookup("no-such-function"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_lookup("power:-1"), std::invalid_argument);
}

TEST_CASE("polynomial catalog entries evaluate exactly") {
  HarmonicFunction u = catalog_lookup("poly:0,3,1");  // Re(3z + z^2)
  cplx z{1.25, -0.5};
  CHECK(u.value(z) == doctest::Approx((3.0 * z + z * z).real()));
  Vec2 g = u.gradient(z);
  CHECK(g.x == doctest::Approx(3.0 + 2.0 * z.real()));
  CHECK(g.y == doctest::Approx(-2.0 * z.imag()));
}

TEST_CASE("non-harmonic probe identifies itself") {
  HarmonicFunction u = catalog_lookup("absz2");
  CHECK(!u.claims_harmonic());
  CHECK(!u.has_cderiv());
  CHECK_THROWS_AS(u.cderiv({1.0, 1.0}), std::logic_error);
  CHECK(u.value({3.0, 4.0}) == doctest::Approx(25.0));
  CHECK(u.gradient({3.0, 4.0}).x == doctest::Approx(6.0));
  CHECK(u.gradient({3.0, 4.0}).y == doctest::Approx(8.0));
}

TEST_CASE("junction counterexample: closed-form values, singular gradient") {
  // Re(sqrt z - sqrt(z + i)): at z = 1 the second root has modulus 2^{1/4}
  // and phase pi/8
  CHECK(counterexample_value({1.0, 0.0}) ==
        doctest::Approx(1.0 - std::pow(2.0, 0.25) * std::cos(kPi / 8)));
  // the value extends to the corner even though the gradient does not
  CHECK(counterexample_value({0.0, 0.0}) == doctest::Approx(-std::sqrt(0.5)));
  CHECK_THROWS_AS(counterexample({0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(counterexample({0.0, -1.0}), std::domain_error);

  // |grad| ~ 1/(2 sqrt r) near the junction
  CHECK(norm(counterexample({1e-6, 0.0}).grad) ==
        doctest::Approx(500.0).epsilon(0.01));
  // bounded data: Neumann derivative on N stays O(1) as x -> 0 since the
  // singular root is purely tangential there
  for (double x : {1e-3, 1e-5, 1e-7})
    CHECK(std::abs(counterexample({x, 0.0}).grad.y) < 1.0);
}

TEST_CASE("mixed eigenfunction: boundary conditions and homogeneity") {
  HarmonicFunction u = catalog_lookup("mixed-eigen");  // half-plane, k = 1/2
  CHECK(std::abs(u.value({-2.0, 0.0})) < 1e-15);          // Dirichlet ray
  CHECK(u.gradient({1.5, 0.0}).y == 0.0);                 // Neumann ray
  CHECK(u.value({0.0, 4.0}) == doctest::Approx(2.0 * u.value({0.0, 1.0})));

  // opening pi/2 gives k = 1: homogeneous of degree one
  HarmonicFunction v = catalog_lookup("mixed-eigen:1.5707963267948966");
  CHECK(v.value({0.0, 2.0}) == doctest::Approx(2.0 * v.value({0.0, 1.0})));
  CHECK_THROWS_AS(HarmonicFunction::mixed_eigen(0.0), std::invalid_argument);
}

TEST_CASE("sector composition matches direct evaluation through the map") {
  SectorMap m{0.6};
  HarmonicFunction v = catalog_lookup("power:2");
  HarmonicFunction u = HarmonicFunction::compose_sector(v, m);
  cplx z{0.4, 0.9};
  CHECK(u.value(z) == doctest::Approx(v.value(sector_map(m, z))));
  // chain rule: (v o m)' = v'(m(z)) m'(z)
  cplx d = u.cderiv(z);
  cplx expect = v.cderiv(sector_map(m, z)) * sector_map_cderiv(m, z);
  CHECK(d.real() == doctest::Approx(expect.real()));
  CHECK(d.imag() == doctest::Approx(expect.imag()));
}

TEST_CASE("combo is the stated linear combination") {
  HarmonicFunction f = catalog_lookup("power:2");
  HarmonicFunction g = catalog_lookup("decay");
  HarmonicFunction u = HarmonicFunction::combo(2.0, f, -3.0, g);
  cplx z{0.7, 1.2};
  CHECK(u.value(z) == doctest::Approx(2.0 * f.value(z) - 3.0 * g.value(z)));
  Vec2 gu = u.gradient(z);
  CHECK(gu.x ==
        doctest::Approx(2.0 * f.gradient(z).x - 3.0 * g.gradient(z).x));
}

TEST_CASE("nontangential maximal bound grows monotonically under refinement") {
  HarmonicFunction u = catalog_lookup("counterexample");
  NontangentialGrid g0;
  g0.r_min = 1e-4;
  g0.r_max = 1.0;
  double a = ntmax_grad(u, {0.25, 0.0}, g0);
  NontangentialGrid g1 = g0.refined();
  double b = ntmax_grad(u, {0.25, 0.0}, g1);
  double c = ntmax_grad(u, {0.25, 0.0}, g1.refined());
  CHECK(a > 0.0);
  CHECK(b >= a);
  CHECK(c >= b);
  CHECK(g1.rays_per_cone > g0.rays_per_cone);

  // closer to the junction the maximal function grows like |x|^{-1/2}
  NontangentialGrid fine;
  fine.r_min = 1e-8;
  fine.r_max = 1.0;
  double near = ntmax_grad(u, {1e-4, 0.0}, fine);
  double far = ntmax_grad(u, {1e-2, 0.0}, fine);
  CHECK(near / far == doctest::Approx(10.0).epsilon(0.15));

  NontangentialGrid bad;
  bad.r_min = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  NontangentialGrid badq;
  badq.q = 1.0;
  CHECK_THROWS_AS(badq.validate(), std::invalid_argument);
}

TEST_CASE("weighted boundary norms reproduce closed forms on graded meshes") {
  Domain flat{GraphDomain::flat()};
  BoundaryMesh mesh = boundary_mesh(flat, 2.0, {30, 1, 8});

  // |t^2|^{3/2} |t|^{1/2} integrates to 2 * 2^{4.5}/4.5 over [-2, 2]
  WeightedMeasure mu(0.5);
  auto g = [](Vec2 q) { return q.x * q.x; };
  double expect = std::pow(2.0 * std::pow(2.0, 4.5) / 4.5, 1.0 / 1.5);
  CHECK(weighted_lp_boundary_norm(g, 1.5, mu, mesh) ==
        doctest::Approx(expect).epsilon(1e-12));

  // nodal-sample overload, constant data: (2R)^{1/2}
  std::vector<double> ones(mesh.samples.size(), 1.0);
  CHECK(weighted_lp_boundary_norm(ones, 2.0, WeightedMeasure(0.0), mesh) ==
        doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("Rellich accounting: exact cancellation for a harmonic function") {
  // u = Re z^2 with the constant vertical field on the half-plane at R = 4:
  // boundary integral -4 int_{-4}^4 t^2 dt = -512/3, arc flux +512/3
  Domain flat{GraphDomain::flat()};
  HarmonicFunction u = catalog_lookup("poly:0,0,1");
  HolomorphicField e2{kPi / 2, 0.0};
  RellichResult r = rellich_residual(u, e2, flat, 4.0, 60);
  CHECK(r.converged);
  CHECK(r.boundary_integral == doctest::Approx(-512.0 / 3.0).epsilon(1e-12));
  CHECK(r.flux_correction == doctest::Approx(512.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(r.boundary_integral + r.flux_correction) <
        1e-10 * r.boundary_mass);

  // the non-harmonic probe breaks the identity by an O(1) amount
  RellichResult bad =
      rellich_residual(catalog_lookup("absz2"), e2, flat, 4.0, 40);
  CHECK(std::abs(bad.boundary_integral + bad.flux_correction) >
        1e-1 * bad.boundary_mass);
}

TEST_CASE("two-sided energy comparison reports honest verdicts") {
  Domain flat{GraphDomain::flat()};
  FieldCertificate cert = build_field_mixed(0.0, 0.5);
  // certificate = 1/margin with margin sin(pi/4 - 0)
  CHECK(cert.margin == doctest::Approx(std::sin(kPi / 4)));

  // decaying solution, R large: truncation flux is negligible, verdict is
  // conclusive, and mirror symmetry across the vertical axis makes the
  // data energy exactly half the full gradient energy
  TwosidedReport far =
      rellich_twosided_check(catalog_lookup("decay"), cert, flat, 16.0);
  CHECK(far.conclusive);
  CHECK(far.bound_ok);
  CHECK(far.ratio == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(far.certificate == doctest::Approx(1.0 / std::sin(kPi / 4)));
  CHECK(far.flux_term < 0.01 * far.A);

  // same solution truncated at R = 1: the arc carries real energy, so the
  // strict verdict must be withheld while the corrected bound still holds
  TwosidedReport near =
      rellich_twosided_check(catalog_lookup("decay"), cert, flat, 1.0);
  CHECK(!near.conclusive);
  CHECK(near.bound_ok_corrected);

  // the mixed eigenfunction has identically vanishing data on both pieces:
  // A > 0 with B at rounding level can certify nothing
  TwosidedReport eig =
      rellich_twosided_check(catalog_lookup("mixed-eigen"), cert, flat, 4.0);
  CHECK(eig.A > 0.0);
  CHECK(std::abs(eig.B) < 1e-30 * eig.A);
  CHECK(!eig.trivial);
  CHECK(!eig.conclusive);
  CHECK(eig.bound_ok_corrected);

  // growing polynomial at R = 1: inconclusive but arc-corrected
  TwosidedReport z2 =
      rellich_twosided_check(catalog_lookup("poly:0,0,1"), cert, flat, 1.0);
  CHECK(!z2.conclusive);
  CHECK(z2.ratio == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(z2.bound_ok_corrected);
}

TEST_CASE("growth exponents and the Phragmen-Lindelof threshold") {
  Sector sec{kPi / 2};
  std::vector<double> radii{1, 2, 4, 8, 16, 32};
  GrowthResult g = growth_exponent(catalog_lookup("power:2"), sec, radii);
  CHECK(g.defined);
  CHECK(g.exponent == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(g.threshold == doctest::Approx(1.0));  // pi/(2 opening), opening pi/2
  CHECK(g.exponent > g.threshold);

  GrowthResult d = growth_exponent(catalog_lookup("decay"), sec, radii);
  CHECK(d.exponent < -0.5);
  CHECK(d.exponent < d.threshold);
}
