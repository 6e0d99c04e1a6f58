#include "mixedbvp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mixedbvp {

namespace {

GaussRule compute_gauss(int n) {
  GaussRule rule;
  rule.node.resize(n);
  rule.weight.resize(n);
  // Newton iteration from the Chebyshev initial guess; the rule is symmetric
  // so only half the roots are computed.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.node[i] = -x;
    rule.node[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weight[i] = w;
    rule.weight[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  if (n < 2 || n > 48) throw std::invalid_argument("gauss_rule: order out of range");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

double integrate_gauss(const std::function<double(double)>& f, double a,
                       double b, int n) {
  const GaussRule& rule = gauss_rule(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += rule.weight[i] * f(mid + half * rule.node[i]);
  return sum * half;
}

namespace {

struct AdaptiveState {
  const std::function<double(double)>* f;
  double rel_tol;
  double abs_tol;
  int max_depth;
  double value = 0.0;
  double mass = 0.0;  // integral of |f|, accumulated, for the relative test
  double error = 0.0;
  bool converged = true;
  // Hard cap on subdivisions per call. Integrands that cancel to rounding
  // noise pointwise defeat any error estimate scaled by their own magnitude;
  // without a budget the bisection tree on such stretches grows as 2^depth.
  long intervals = 0;
  long budget = 20000;
};

void adapt(AdaptiveState& st, double a, double b, int depth) {
  double coarse = integrate_gauss(*st.f, a, b, 10);
  double fine = integrate_gauss(*st.f, a, b, 20);
  double err = std::abs(fine - coarse);
  double scale = std::max(st.mass, std::abs(st.value));
  // Interval-local tolerance: the relative target applies to the running
  // magnitude of the whole integral, so thin slivers are not over-refined.
  double tol = std::max(st.abs_tol * 0.25,
                        st.rel_tol * std::max(scale, std::abs(fine)) * 0.25);
  ++st.intervals;
  if (err <= tol || depth >= st.max_depth || st.intervals > st.budget) {
    st.value += fine;
    st.mass += std::abs(fine);
    st.error += err;
    if (err > tol) st.converged = false;
    return;
  }
  double mid = 0.5 * (a + b);
  adapt(st, a, mid, depth + 1);
  adapt(st, mid, b, depth + 1);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double rel_tol, double abs_tol,
                              int max_depth) {
  return integrate_adaptive_split(f, a, b, {}, rel_tol, abs_tol, max_depth);
}

QuadResult integrate_adaptive_split(const std::function<double(double)>& f,
                                    double a, double b,
                                    const std::vector<double>& split_points,
                                    double rel_tol, double abs_tol,
                                    int max_depth) {
  if (!(b > a)) {
    if (b == a) return {0.0, 0.0, true};
    QuadResult r = integrate_adaptive_split(f, b, a, split_points, rel_tol,
                                            abs_tol, max_depth);
    r.value = -r.value;
    return r;
  }
  std::vector<double> pts;
  pts.push_back(a);
  for (double s : split_points)
    if (s > a && s < b) pts.push_back(s);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  AdaptiveState st;
  st.f = &f;
  st.rel_tol = rel_tol;
  st.abs_tol = abs_tol;
  st.max_depth = max_depth;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i + 1] > pts[i]) adapt(st, pts[i], pts[i + 1], 0);
  return {st.value, st.error, st.converged};
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need two samples of equal length");
  size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0, ybar = sy / n;
  for (size_t i = 0; i < n; ++i) {
    double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace mixedbvp
