#include "mixedbvp/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "mixedbvp/quadrature.hpp"

namespace mixedbvp {

namespace {

std::string fmt_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// u = Re f gives grad u = (Re f', -Im f').
Vec2 grad_of(cplx fprime) { return {fprime.real(), -fprime.imag()}; }

double parse_num(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("catalog: bad numeric argument '" + s + "'");
  }
  if (used != s.size())
    throw std::invalid_argument("catalog: bad numeric argument '" + s + "'");
  return v;
}

}  // namespace

cplx HarmonicFunction::cderiv(cplx z) const {
  if (!cderiv_)
    throw std::logic_error("no holomorphic derivative available for " + name_);
  return cderiv_(z);
}

HarmonicFunction HarmonicFunction::power(double k, cplx a) {
  if (!(k > 0.0))
    throw std::invalid_argument("power: exponent must be positive");
  HarmonicFunction h;
  h.name_ = "power:" + fmt_g(k);
  auto d = [k, a](cplx z) -> cplx {
    if (k == 1.0) return a;  // z^0 extends continuously to 1 at the origin
    return a * k * pow_upper(z, k - 1.0);
  };
  h.value_ = [k, a](cplx z) { return (a * pow_upper(z, k)).real(); };
  h.cderiv_ = d;
  h.grad_ = [d](cplx z) { return grad_of(d(z)); };
  return h;
}

HarmonicFunction HarmonicFunction::root_shift(cplx c) {
  HarmonicFunction h;
  h.name_ = (c == cplx{0.0, 0.0}) ? "root-shift:0"
                                  : "root-shift:" + fmt_g(c.real()) + "," +
                                        fmt_g(c.imag());
  auto d = [c](cplx z) -> cplx { return 0.5 * pow_upper(z + c, -0.5); };
  h.value_ = [c](cplx z) { return pow_upper(z + c, 0.5).real(); };
  h.cderiv_ = d;
  h.grad_ = [d](cplx z) { return grad_of(d(z)); };
  return h;
}

HarmonicFunction HarmonicFunction::poly(std::vector<cplx> coeffs) {
  HarmonicFunction h;
  bool all_real = true;
  for (cplx c : coeffs) all_real = all_real && c.imag() == 0.0;
  std::string nm = "poly:";
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j) nm += ",";
    nm += all_real ? fmt_g(coeffs[j].real())
                   : fmt_g(coeffs[j].real()) + "+" + fmt_g(coeffs[j].imag()) +
                         "i";
  }
  h.name_ = nm;
  std::vector<cplx> dc;
  for (std::size_t j = 1; j < coeffs.size(); ++j)
    dc.push_back(static_cast<double>(j) * coeffs[j]);
  auto horner = [](const std::vector<cplx>& cs, cplx z) {
    cplx s{0.0, 0.0};
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) s = s * z + *it;
    return s;
  };
  auto cs = std::move(coeffs);
  h.value_ = [cs, horner](cplx z) { return horner(cs, z).real(); };
  h.cderiv_ = [dc, horner](cplx z) { return horner(dc, z); };
  h.grad_ = [dc, horner](cplx z) { return grad_of(horner(dc, z)); };
  return h;
}

HarmonicFunction HarmonicFunction::counterexample_fn() {
  HarmonicFunction h;
  h.name_ = "counterexample";
  h.value_ = [](cplx z) { return counterexample_value(z); };
  auto d = [](cplx z) -> cplx {
    return 0.5 * (pow_upper(z, -0.5) - pow_upper(z + cplx{0.0, 1.0}, -0.5));
  };
  h.cderiv_ = d;
  h.grad_ = [d](cplx z) { return grad_of(d(z)); };
  return h;
}

HarmonicFunction HarmonicFunction::mixed_eigen(double full_opening) {
  if (!(full_opening > 0.0 && full_opening < 2.0 * kPi))
    throw std::invalid_argument("mixed_eigen: opening must lie in (0, 2 pi)");
  // Sector about the vertical with full opening A: Neumann ray at angle
  // theta_N = pi/2 - A/2, Dirichlet ray at theta_N + A. The lowest mixed
  // eigenfunction r^k cos(k (theta - theta_N)) needs k A = pi/2.
  double k = kPi / (2.0 * full_opening);
  double theta_n = kPi / 2.0 - full_opening / 2.0;
  cplx phase = std::polar(1.0, -k * theta_n);
  HarmonicFunction h = power(k, phase);
  h.name_ = "mixed-eigen:" + fmt_g(full_opening);
  return h;
}

HarmonicFunction HarmonicFunction::inverse_shift(cplx c) {
  if (!(c.imag() > 0.0))
    throw std::invalid_argument(
        "inverse_shift: pole -c must lie strictly below the boundary");
  HarmonicFunction h;
  h.name_ = "decay";
  h.value_ = [c](cplx z) { return (1.0 / (z + c)).real(); };
  auto d = [c](cplx z) -> cplx {
    cplx w = z + c;
    return -1.0 / (w * w);
  };
  h.cderiv_ = d;
  h.grad_ = [d](cplx z) { return grad_of(d(z)); };
  return h;
}

HarmonicFunction HarmonicFunction::combo(double ca, const HarmonicFunction& f,
                                         double cb,
                                         const HarmonicFunction& g) {
  HarmonicFunction h;
  h.name_ = fmt_g(ca) + "*(" + f.name_ + ")" + (cb < 0.0 ? "" : "+") +
            fmt_g(cb) + "*(" + g.name_ + ")";
  h.claims_harmonic_ = f.claims_harmonic_ && g.claims_harmonic_;
  auto fv = f.value_, gv = g.value_;
  auto fg = f.grad_, gg = g.grad_;
  h.value_ = [ca, cb, fv, gv](cplx z) { return ca * fv(z) + cb * gv(z); };
  h.grad_ = [ca, cb, fg, gg](cplx z) { return ca * fg(z) + cb * gg(z); };
  if (f.cderiv_ && g.cderiv_) {
    auto fd = f.cderiv_, gd = g.cderiv_;
    h.cderiv_ = [ca, cb, fd, gd](cplx z) { return ca * fd(z) + cb * gd(z); };
  }
  return h;
}

HarmonicFunction HarmonicFunction::compose_sector(const HarmonicFunction& v,
                                                  const SectorMap& map) {
  if (!v.has_cderiv())
    throw std::invalid_argument(
        "compose_sector: inner function needs a holomorphic derivative");
  HarmonicFunction h;
  h.name_ = v.name_ + "@s=" + fmt_g(map.s);
  auto vv = v.value_;
  auto vd = v.cderiv_;
  h.value_ = [vv, map](cplx z) { return vv(sector_map(map, z)); };
  auto d = [vd, map](cplx z) -> cplx {
    return vd(sector_map(map, z)) * sector_map_cderiv(map, z);
  };
  h.cderiv_ = d;
  h.grad_ = [d](cplx z) { return grad_of(d(z)); };
  return h;
}

HarmonicFunction HarmonicFunction::absz2() {
  HarmonicFunction h;
  h.name_ = "absz2";
  h.claims_harmonic_ = false;
  h.value_ = [](cplx z) { return std::norm(z); };
  h.grad_ = [](cplx z) { return Vec2{2.0 * z.real(), 2.0 * z.imag()}; };
  return h;
}

HarmonicFunction catalog_lookup(const std::string& name) {
  if (name == "counterexample") return HarmonicFunction::counterexample_fn();
  if (name == "decay") return HarmonicFunction::inverse_shift({0.0, 1.0});
  if (name == "absz2") return HarmonicFunction::absz2();
  if (name == "mixed-eigen") return HarmonicFunction::mixed_eigen();
  if (name.rfind("power:", 0) == 0)
    return HarmonicFunction::power(parse_num(name.substr(6)));
  if (name.rfind("mixed-eigen:", 0) == 0)
    return HarmonicFunction::mixed_eigen(parse_num(name.substr(12)));
  if (name.rfind("poly:", 0) == 0) {
    std::vector<cplx> coeffs;
    std::string rest = name.substr(5);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t comma = rest.find(',', pos);
      std::string tok = rest.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      coeffs.push_back({parse_num(tok), 0.0});
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return HarmonicFunction::poly(std::move(coeffs));
  }
  throw std::invalid_argument("unknown catalog function: " + name);
}

double counterexample_value(cplx z) {
  return (pow_upper(z, 0.5) - pow_upper(z + cplx{0.0, 1.0}, 0.5)).real();
}

CounterexampleEval counterexample(cplx z) {
  if (z == cplx{0.0, 0.0} || z == cplx{0.0, -1.0})
    throw std::domain_error(
        "counterexample: gradient is singular at the branch points 0 and -i");
  cplx fp = 0.5 * (pow_upper(z, -0.5) - pow_upper(z + cplx{0.0, 1.0}, -0.5));
  return {counterexample_value(z), grad_of(fp)};
}

NontangentialGrid NontangentialGrid::refined() const {
  NontangentialGrid g = *this;
  g.q = std::sqrt(q);
  g.rays_per_cone = 2 * rays_per_cone - 1;
  return g;
}

void NontangentialGrid::validate() const {
  if (!(r_min > 0.0) || !(r_max >= r_min))
    throw std::invalid_argument("cone grid: need 0 < r_min <= r_max");
  if (!(q > 1.0))
    throw std::invalid_argument("cone grid: radial ratio must exceed 1");
  if (rays_per_cone < 1)
    throw std::invalid_argument("cone grid: need at least one ray");
  if (!(cone.theta0 > 0.0 && cone.theta0 < kPi / 2.0))
    throw std::invalid_argument("cone grid: half-opening out of range");
}

double ntmax_grad(const HarmonicFunction& u, Vec2 x,
                  const NontangentialGrid& grid) {
  grid.validate();
  double best = 0.0;
  int n = grid.rays_per_cone;
  for (int i = 0; i < n; ++i) {
    double t = (n == 1) ? 0.0 : -1.0 + 2.0 * i / (n - 1.0);
    double th = kPi / 2.0 + t * grid.cone.theta0;
    Vec2 dir{std::cos(th), std::sin(th)};
    for (double r = grid.r_min; r <= grid.r_max * (1.0 + 1e-12);
         r *= grid.q) {
      Vec2 y = x + r * dir;
      best = std::max(best, norm(u.gradient(to_cplx(y))));
    }
  }
  return best;
}

double weighted_lp_boundary_norm(const std::vector<double>& samples, double p,
                                 const WeightedMeasure& mu,
                                 const BoundaryMesh& mesh) {
  if (samples.size() != mesh.samples.size())
    throw std::invalid_argument(
        "weighted_lp_boundary_norm: sample count does not match the mesh");
  if (!(p >= 1.0))
    throw std::invalid_argument("weighted_lp_boundary_norm: need p >= 1");
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const BoundarySample& s = mesh.samples[i];
    acc += s.weight * mu.weight(s.point) * std::pow(std::abs(samples[i]), p);
  }
  return std::pow(acc, 1.0 / p);
}

double weighted_lp_boundary_norm(const std::function<double(Vec2)>& g,
                                 double p, const WeightedMeasure& mu,
                                 const BoundaryMesh& mesh) {
  std::vector<double> vals;
  vals.reserve(mesh.samples.size());
  for (const BoundarySample& s : mesh.samples) vals.push_back(g(s.point));
  return weighted_lp_boundary_norm(vals, p, mu, mesh);
}

namespace {

// Dyadic band endpoints from the origin out to arc parameter send (signed);
// each band is returned with ascending endpoints.
std::vector<std::pair<double, double>> dyadic_bands(double send, int levels) {
  std::vector<std::pair<double, double>> out;
  double prev = 0.0;
  for (int j = 1; j <= levels; ++j) {
    double frac = (j == levels) ? 1.0 : std::ldexp(1.0, j - levels);
    double cur = send * frac;
    if (send > 0.0)
      out.emplace_back(prev, cur);
    else
      out.emplace_back(cur, prev);
    prev = cur;
  }
  return out;
}

struct BandAccum {
  double value = 0.0;
  double mass = 0.0;
  bool converged = true;
};

BandAccum integrate_bands(const BoundaryCurve& curve, double send, int levels,
                          const std::function<double(double)>& f) {
  BandAccum acc;
  for (auto [a, b] : dyadic_bands(send, levels)) {
    QuadResult q =
        integrate_adaptive_split(f, a, b, curve.kinks_in(a, b), 2e-13, 0.0, 48);
    acc.value += q.value;
    acc.mass += std::abs(q.value);
    acc.converged = acc.converged && q.converged;
  }
  return acc;
}

// Angular range of the truncation arc, from the Neumann-side crossing to the
// Dirichlet-side crossing, in the branch with the cut on the downward ray.
std::pair<double, double> arc_range(const BoundaryCurve& curve, double R,
                                    double sN, double sD) {
  (void)R;
  double aN = arg_upper(to_cplx(curve.point(sN)));
  double aD = arg_upper(to_cplx(curve.point(sD)));
  return {aN, aD};
}

}  // namespace

RellichResult rellich_residual(const HarmonicFunction& u,
                               const HolomorphicField& field,
                               const Domain& dom, double R,
                               int grading_levels) {
  if (!(R > 0.0)) throw std::invalid_argument("rellich_residual: need R > 0");
  if (grading_levels < 1)
    throw std::invalid_argument("rellich_residual: need at least one level");
  double extent = R * (1.0 + domain_lipschitz(dom)) + 1.0;
  BoundaryCurve curve = make_curve(dom, extent);
  double sN = curve.radius_crossing(R, +1);
  double sD = curve.radius_crossing(R, -1);

  auto form = [&u, &field](Vec2 p, Vec2 nu) {
    Vec2 g = u.gradient(to_cplx(p));
    Vec2 a = field_eval(field, to_cplx(p));
    return norm2(g) * dot(a, nu) - 2.0 * dot(a, g) * dot(g, nu);
  };
  auto on_graph = [&](double s) {
    return form(curve.point(s), curve.normal_at(s));
  };

  RellichResult out;
  BandAccum accN = integrate_bands(curve, sN, grading_levels, on_graph);
  BandAccum accD = integrate_bands(curve, sD, grading_levels, on_graph);
  out.boundary_integral = accN.value + accD.value;
  out.boundary_mass = accN.mass + accD.mass;
  out.converged = accN.converged && accD.converged;

  auto [aN, aD] = arc_range(curve, R, sN, sD);
  auto on_arc = [&](double th) {
    Vec2 n{std::cos(th), std::sin(th)};
    return form(R * n, n) * R;
  };
  QuadResult arc = integrate_adaptive(on_arc, aN, aD, 1e-12, 0.0, 44);
  out.flux_correction = arc.value;
  out.arc_mass = std::abs(arc.value);
  out.converged = out.converged && arc.converged;
  return out;
}

TwosidedReport rellich_twosided_check(const HarmonicFunction& u,
                                      const FieldCertificate& cert,
                                      const Domain& dom, double R,
                                      int grading_levels) {
  if (!(cert.margin > 0.0))
    throw std::invalid_argument(
        "rellich_twosided_check: certificate margin must be positive");
  if (!(R > 0.0))
    throw std::invalid_argument("rellich_twosided_check: need R > 0");
  double eps = cert.field.epsilon;
  double extent = R * (1.0 + domain_lipschitz(dom)) + 1.0;
  BoundaryCurve curve = make_curve(dom, extent);
  double sN = curve.radius_crossing(R, +1);
  double sD = curve.radius_crossing(R, -1);

  auto energy_full = [&](double s) {
    Vec2 p = curve.point(s);
    Vec2 g = u.gradient(to_cplx(p));
    return norm2(g) * std::pow(norm(p), eps);
  };
  // Data energy: normal derivative on the Neumann side (s > 0), tangential
  // derivative on the Dirichlet side (s < 0).
  auto energy_data = [&](double s) {
    const BoundaryCurve::Piece& pc = curve.piece_of(s);
    Vec2 p = curve.point(s);
    Vec2 g = u.gradient(to_cplx(p));
    double d = (s >= 0.0) ? dot(g, pc.normal) : dot(g, pc.tangent);
    return d * d * std::pow(norm(p), eps);
  };

  TwosidedReport out;
  out.certificate = 1.0 / cert.margin;
  BandAccum aN = integrate_bands(curve, sN, grading_levels, energy_full);
  BandAccum aD = integrate_bands(curve, sD, grading_levels, energy_full);
  BandAccum bN = integrate_bands(curve, sN, grading_levels, energy_data);
  BandAccum bD = integrate_bands(curve, sD, grading_levels, energy_data);
  out.A = aN.value + aD.value;
  out.B = bN.value + bD.value;

  auto [thN, thD] = arc_range(curve, R, sN, sD);
  auto arc_energy = [&](double th) {
    Vec2 n{std::cos(th), std::sin(th)};
    Vec2 g = u.gradient(to_cplx(R * n));
    return norm2(g) * std::pow(R, eps) * R;
  };
  out.flux_term = integrate_adaptive(arc_energy, thN, thD, 1e-10, 0.0, 44).value;

  if (out.A <= 1e-280 && out.B <= 1e-280) {
    out.trivial = true;
    out.conclusive = true;
    out.bound_ok = true;
    out.bound_ok_corrected = true;
    return out;
  }
  out.ratio = out.B > 0.0
                  ? out.A / out.B
                  : std::numeric_limits<double>::infinity();
  double cap = 4.0 / cert.margin;
  double slack = 1e-9 * (out.A + out.B + out.flux_term);
  out.conclusive = out.flux_term <= 0.01 * out.A;
  out.bound_ok = out.A <= cap * out.B + slack;
  out.bound_ok_corrected = out.A <= cap * (out.B + out.flux_term) + slack;
  return out;
}

GrowthResult growth_exponent(const HarmonicFunction& u, const Sector& sector,
                             const std::vector<double>& radii) {
  sector.validate();
  if (radii.size() < 3)
    throw std::invalid_argument("growth_exponent: need at least 3 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw std::invalid_argument(
          "growth_exponent: radii must be positive and increasing");
  }
  GrowthResult out;
  out.threshold = kPi / (2.0 * sector.opening);
  std::vector<double> lr, lm;
  const int nth = 720;
  for (double r : radii) {
    double m = 0.0;
    for (int i = 0; i <= nth; ++i) {
      double th =
          kPi / 2.0 + sector.opening * (-1.0 + 2.0 * i / double(nth));
      m = std::max(m, std::abs(u.value(std::polar(r, th))));
    }
    if (m > 1e-300) {
      lr.push_back(std::log(r));
      lm.push_back(std::log(m));
    }
  }
  if (lr.size() < 3) {
    out.defined = false;
    return out;
  }
  out.exponent = fit_line(lr, lm).slope;
  return out;
}

}  // namespace mixedbvp
