#pragma once

#include <functional>
#include <vector>

namespace mixedbvp {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> node;
  std::vector<double> weight;
};

// Cached rule of order n (2 <= n <= 48). Nodes are computed once by Newton
// iteration on the Legendre polynomial and reused.
const GaussRule& gauss_rule(int n);

// Fixed-order Gauss quadrature of f over [a, b].
double integrate_gauss(const std::function<double(double)>& f, double a,
                       double b, int n);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  bool converged = true;
};

// Adaptive bisection quadrature with a Gauss 10/20 error estimate per
// interval. Integrable endpoint singularities are handled by the geometric
// refinement toward the offending end. rel_tol is measured against the
// accumulated absolute mass, abs_tol is a hard floor per call.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double rel_tol, double abs_tol,
                              int max_depth = 52);

// Same, with the interval pre-split at the given interior points (kinks,
// jumps, or near-singularity feet).
QuadResult integrate_adaptive_split(const std::function<double(double)>& f,
                                    double a, double b,
                                    const std::vector<double>& split_points,
                                    double rel_tol, double abs_tol,
                                    int max_depth = 52);

// Least-squares slope and r^2 of y against x. Used by the growth and decay
// diagnostics.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mixedbvp
