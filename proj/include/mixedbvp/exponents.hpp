#pragma once

#include <string>

namespace mixedbvp {

// Open interval of admissible exponents.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
};

// Closed-form solvability data for boundary slope bound M (beta = arctan M)
// and Holder exponent delta of the flattened Green's function:
//   neumann_reg: |eps| < (pi - 2 beta)/(pi + 2 beta), the window where a
//     sign-definite boundary field exists;
//   mixed_L2:    2 beta/(pi - 2 beta) < eps < 1, the weighted-L2 mixed
//     solvability window (empty exactly when M >= 1);
//   atomic:      (4 beta - pi)/(2 (pi - beta)) < eps' < delta, the window of
//     the atomic-data estimate;
//   m  = min(delta, (pi - 4 beta)/(2 (pi - beta)));
//   p1 = (2 (pi - 2 beta) m + 2 beta)/((pi - 2 beta) m + 2 beta);
//   p2 = 1/(1 - delta);   p0 = min(p1, p2).
struct ExponentReport {
  double M = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  Window neumann_reg;
  Window mixed_L2;
  Window atomic;
  double m = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p0 = 0.0;
  bool out_of_hypothesis = false;  // beta >= pi/4 empties the m-term
};

ExponentReport exponent_report(double M, double delta);

// Strict membership of an exponent in one of the named windows, with signed
// distances to both endpoints. which: "neumann_reg", "mixed_L2", "atomic"
// (the atomic window needs delta).
struct WindowReport {
  bool inside = false;
  double lower = 0.0;
  double upper = 0.0;
  double margin_lower = 0.0;  // epsilon - lower
  double margin_upper = 0.0;  // upper - epsilon
};
WindowReport window_check(double M, double epsilon, const std::string& which,
                          double delta = 0.5);

}  // namespace mixedbvp
