#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "mixedbvp/geometry.hpp"

using namespace mixedbvp;

TEST_CASE("graph evaluation, slopes, and Lipschitz constant") {
  GraphDomain g;
  g.breakpoints = {{-2.0, 1.0}, {0.0, 0.0}, {1.0, 0.5}};
  g.left_slope = -0.25;
  g.right_slope = 0.5;
  g.validate();

  CHECK(g.phi(0.0) == 0.0);
  CHECK(g.phi(-1.0) == doctest::Approx(0.5));
  CHECK(g.phi(0.5) == doctest::Approx(0.25));
  // beyond the last breakpoint the end slopes take over
  CHECK(g.phi(3.0) == doctest::Approx(0.5 + 2.0 * 0.5));
  CHECK(g.phi(-4.0) == doctest::Approx(1.0 + 2.0 * 0.25));

  CHECK(g.slope_at(0.25) == doctest::Approx(0.5));
  CHECK(g.slope_at(-1.0) == doctest::Approx(-0.5));
  // right-continuous choice at a vertex
  CHECK(g.slope_at(0.0) == doctest::Approx(0.5));

  CHECK(g.lipschitz() == doctest::Approx(0.5));

  CHECK(domain_contains(Domain{g}, {0.5, 0.3}));
  CHECK(!domain_contains(Domain{g}, {0.5, 0.2}));
}

TEST_CASE("graph validation rejects malformed input") {
  GraphDomain bad_order;
  bad_order.breakpoints = {{1.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(bad_order.validate(), std::invalid_argument);

  // the junction convention needs phi(0) = 0
  GraphDomain off_origin;
  off_origin.breakpoints = {{-1.0, 0.5}, {1.0, 0.5}};
  CHECK_THROWS_AS(off_origin.validate(), std::invalid_argument);
}

TEST_CASE("sectors expose the graph constant of their rays") {
  Sector half{kPi / 2};
  half.validate();
  CHECK(half.lipschitz() == 0.0);

  Sector sec{3 * kPi / 8};
  CHECK(sec.lipschitz() == doctest::Approx(std::tan(kPi / 8)));
  Vec2 rn = sec.ray_dir(+1);
  CHECK(rn.x == doctest::Approx(std::cos(kPi / 8)));
  CHECK(rn.y == doctest::Approx(std::sin(kPi / 8)));
  Vec2 rd = sec.ray_dir(-1);
  CHECK(rd.x == doctest::Approx(-std::cos(kPi / 8)));
  CHECK(rd.y == doctest::Approx(std::sin(kPi / 8)));

  CHECK_THROWS_AS(Sector{0.0}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(Sector{kPi}.validate(), std::invalid_argument);

  CHECK(domain_contains(Domain{sec}, {0.0, 1.0}));
  CHECK(!domain_contains(Domain{sec}, {1.0, 0.1}));
  CHECK(!domain_contains(Domain{sec}, {0.0, -0.5}));
}

TEST_CASE("resolved curves walk the boundary by signed arc length") {
  BoundaryCurve flat = make_curve(Domain{GraphDomain::flat()}, 3.0);
  CHECK(flat.point(1.5).x == doctest::Approx(1.5));
  CHECK(flat.point(1.5).y == 0.0);
  CHECK(flat.point(-2.0).x == doctest::Approx(-2.0));
  CHECK(flat.normal_at(1.0).x == doctest::Approx(0.0));
  CHECK(flat.normal_at(1.0).y == doctest::Approx(-1.0));
  CHECK(flat.lipschitz == 0.0);
  // sub-ulp arc offsets from the junction must not snap to the origin
  CHECK(flat.point(-1e-18).x == -1e-18);

  // single kink of slope +-1: arc sqrt(2) sits at the point (1, 1)
  GraphDomain v;
  v.left_slope = -1.0;
  v.right_slope = 1.0;
  BoundaryCurve kink = make_curve(Domain{v}, 4.0);
  double s = std::sqrt(2.0);
  CHECK(kink.point(s).x == doctest::Approx(1.0));
  CHECK(kink.point(s).y == doctest::Approx(1.0));
  CHECK(kink.point(-s).x == doctest::Approx(-1.0));
  CHECK(kink.point(-s).y == doctest::Approx(1.0));
  // outward normal on the right piece points down-right
  Vec2 n = kink.normal_at(s);
  CHECK(n.x == doctest::Approx(std::sqrt(0.5)));
  CHECK(n.y == doctest::Approx(-std::sqrt(0.5)));
}

TEST_CASE("radius crossings and ball intervals on the flat boundary") {
  BoundaryCurve flat = make_curve(Domain{GraphDomain::flat()}, 8.0);
  CHECK(flat.radius_crossing(2.0, +1) == doctest::Approx(2.0));
  CHECK(flat.radius_crossing(2.0, -1) == doctest::Approx(-2.0));

  auto iv = flat.ball_intervals({1.0, 0.0}, 0.5);
  REQUIRE(iv.size() >= 1);
  double lo = iv.front().first, hi = iv.back().second, len = 0.0;
  for (auto& p : iv) len += p.second - p.first;
  CHECK(lo == doctest::Approx(0.5));
  CHECK(hi == doctest::Approx(1.5));
  CHECK(len == doctest::Approx(1.0));

  // ball about the origin covers one unit of arc on each side
  auto iv0 = flat.ball_intervals({0.0, 0.0}, 1.0);
  double len0 = 0.0;
  for (auto& p : iv0) len0 += p.second - p.first;
  CHECK(len0 == doctest::Approx(2.0));

  // interior center strictly above the line still cuts the right chord
  auto ivc = flat.ball_intervals({0.0, 0.6}, 1.0);
  double lenc = 0.0;
  for (auto& p : ivc) lenc += p.second - p.first;
  CHECK(lenc == doctest::Approx(2.0 * 0.8));
}

TEST_CASE("weighted ball measures match the flat closed forms") {
  Domain flat{GraphDomain::flat()};
  WeightedMeasure mu(0.5);

  // centered at the origin: sigma_eps = 2 r^{1+eps}/(1+eps)
  CHECK(weighted_ball_measure(flat, {0.0, 0.0}, 2.0, mu) ==
        doctest::Approx(2.0 * std::pow(2.0, 1.5) / 1.5).epsilon(1e-10));
  WeightedMeasure mneg(-0.5);
  CHECK(weighted_ball_measure(flat, {0.0, 0.0}, 0.25, mneg) ==
        doctest::Approx(4.0 * std::sqrt(0.25)).epsilon(1e-10));

  // centered at (1, 0) with r < 1: integral of t^eps over [1-r, 1+r]
  double r = 0.5, eps = 0.5;
  double expect =
      (std::pow(1.5, 1.0 + eps) - std::pow(0.5, 1.0 + eps)) / (1.0 + eps);
  CHECK(weighted_ball_measure(flat, {1.0, 0.0}, r, mu) ==
        doctest::Approx(expect).epsilon(1e-10));

  CHECK(weighted_ball_measure(flat, {1.0, 0.0}, 0.0, mu) == 0.0);
  CHECK_THROWS_AS(WeightedMeasure(-1.0), std::invalid_argument);

  // single kink: both rays pass through the origin, so the plain measure of
  // a centered ball is still 2r
  GraphDomain v;
  v.left_slope = -1.0;
  v.right_slope = 1.0;
  WeightedMeasure m0(0.0);
  CHECK(weighted_ball_measure(Domain{v}, {0.0, 0.0}, 1.0, m0) ==
        doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("graded meshes have the advertised size and mass") {
  Domain flat{GraphDomain::flat()};
  GradingSpec spec{10, 2, 6};
  BoundaryMesh mesh = boundary_mesh(flat, 2.0, spec);
  CHECK((int)mesh.samples.size() == 2 * 10 * 2 * 6);
  CHECK(mesh.truncation_radius == 2.0);
  // plain arc mass of [-R, R] is 2R
  CHECK(mesh.total_weight() == doctest::Approx(4.0).epsilon(1e-13));

  double amin = 1e300, amax = 0.0;
  for (const auto& s : mesh.samples) {
    amin = std::min(amin, std::abs(s.arc));
    amax = std::max(amax, std::abs(s.arc));
    CHECK(std::abs(s.point.x - s.arc) < 1e-15);
    CHECK(s.normal.y == doctest::Approx(-1.0));
    CHECK(s.weight > 0.0);
  }
  CHECK(amax < 2.0);
  CHECK(amin > 0.0);
  // geometric grading reaches scale R 2^{-levels}
  CHECK(amin < 2.0 * std::pow(2.0, -10));
}

TEST_CASE("mesh csv export carries one row per node") {
  BoundaryMesh mesh = boundary_mesh(Domain{GraphDomain::flat()}, 1.0, {3, 1, 2});
  std::string csv = mesh_to_csv(mesh);
  CHECK(csv.rfind("x,y,arc,nu_x,nu_y,weight\n", 0) == 0);
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + (int)mesh.samples.size());
}

TEST_CASE("muckenhoupt and carleson diagnostics on the flat line") {
  Domain flat{GraphDomain::flat()};
  BallFamily fam;
  fam.centers = {{0.0, 0.0}, {1.0, 0.0}, {3.0, 0.0}};
  fam.radii = {0.25, 1.0, 2.0};

  // unweighted case: every average is 1, so the constant is exactly 1
  WeightedMeasure m0(0.0);
  CHECK(ap_constant_estimate(flat, m0, 2.0, fam) == doctest::Approx(1.0));
  // |t|^{1/2} is A_2 on the line: finite constant, at least 1
  WeightedMeasure mh(0.5);
  double ap = ap_constant_estimate(flat, mh, 2.0, fam);
  CHECK(ap >= 1.0);
  CHECK(ap < 10.0);

  // interior measure dA/R against arc on the half-plane: the ratio for a
  // boundary ball of radius r is (pi r^2/2)/(R 2r) = pi r/(4R), so the
  // sampled sup sits at r = R
  CarlesonSampling cs;
  cs.centers = {{0.0, 0.0}, {0.5, 0.0}};
  cs.radii = {0.25, 0.5, 1.0};
  double ratio = carleson_ratio(flat, m0, 1.0, cs);
  CHECK(ratio == doctest::Approx(kPi / 4.0).epsilon(0.05));
}

TEST_CASE("nontangential cones respect the slope bound") {
  Domain flat{GraphDomain::flat()};
  CHECK(default_cone_angle(flat) == doctest::Approx(kPi / 4));
  GraphDomain s;
  s.left_slope = -1.0;
  s.right_slope = 1.0;
  CHECK(default_cone_angle(Domain{s}) == doctest::Approx(kPi / 8));

  CHECK(make_cone(flat, 0.3).theta0 == 0.3);
  CHECK_THROWS_AS(make_cone(Domain{s}, kPi / 4 + 0.01), std::invalid_argument);
  CHECK_THROWS_AS(make_cone(flat, 0.0), std::invalid_argument);
}

TEST_CASE("random sawtooth generator is deterministic and on-spec") {
  for (double M : {0.3, 0.9}) {
    GraphDomain a = random_sawtooth(M, 6, 2024);
    GraphDomain b = random_sawtooth(M, 6, 2024);
    REQUIRE(a.breakpoints.size() == b.breakpoints.size());
    for (size_t i = 0; i < a.breakpoints.size(); ++i) {
      CHECK(a.breakpoints[i].x == b.breakpoints[i].x);
      CHECK(a.breakpoints[i].y == b.breakpoints[i].y);
    }
    GraphDomain c = random_sawtooth(M, 6, 2025);
    bool differs = c.breakpoints.size() != a.breakpoints.size();
    for (size_t i = 0; !differs && i < a.breakpoints.size(); ++i)
      differs = c.breakpoints[i].x != a.breakpoints[i].x;
    CHECK(differs);

    a.validate();
    CHECK(a.phi(0.0) == 0.0);
    CHECK(a.lipschitz() == doctest::Approx(M));
    // slopes are exactly +-M everywhere
    for (double t : {-5.0, -1.7, -0.2, 0.3, 1.1, 4.9})
      CHECK(std::abs(std::abs(a.slope_at(t)) - M) < 1e-15);
  }
  // M = 0 degenerates to the flat graph
  GraphDomain z = random_sawtooth(0.0, 4, 7);
  for (double t : {-2.0, 0.4, 3.0}) CHECK(z.phi(t) == 0.0);
}
