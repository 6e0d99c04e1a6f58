#include "mixedbvp/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixedbvp/core.hpp"

namespace mixedbvp {

ExponentReport exponent_report(double M, double delta) {
  if (!(M >= 0.0 && M < 1.0))
    throw std::invalid_argument("exponent_report: need 0 <= M < 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("exponent_report: need 0 < delta < 1");
  ExponentReport r;
  r.M = M;
  r.beta = std::atan(M);
  r.delta = delta;
  double b = r.beta;
  double e_reg = (kPi - 2.0 * b) / (kPi + 2.0 * b);
  r.neumann_reg = {-e_reg, e_reg};
  r.mixed_L2 = {2.0 * b / (kPi - 2.0 * b), 1.0};
  r.atomic = {(4.0 * b - kPi) / (2.0 * (kPi - b)), delta};
  double second = (kPi - 4.0 * b) / (2.0 * (kPi - b));
  r.out_of_hypothesis = !(second > 0.0);
  r.m = std::min(delta, second);
  r.p1 = (2.0 * (kPi - 2.0 * b) * r.m + 2.0 * b) /
         ((kPi - 2.0 * b) * r.m + 2.0 * b);
  r.p2 = 1.0 / (1.0 - delta);
  r.p0 = std::min(r.p1, r.p2);
  return r;
}

WindowReport window_check(double M, double epsilon, const std::string& which,
                          double delta) {
  if (!(M >= 0.0)) throw std::invalid_argument("window_check: need M >= 0");
  double b = std::atan(M);
  WindowReport w;
  if (which == "neumann_reg") {
    double e = (kPi - 2.0 * b) / (kPi + 2.0 * b);
    w.lower = -e;
    w.upper = e;
  } else if (which == "mixed_L2") {
    w.lower = 2.0 * b / (kPi - 2.0 * b);
    w.upper = 1.0;
  } else if (which == "atomic") {
    if (!(delta > 0.0 && delta < 1.0))
      throw std::invalid_argument("window_check: need 0 < delta < 1");
    w.lower = (4.0 * b - kPi) / (2.0 * (kPi - b));
    w.upper = delta;
  } else {
    throw std::invalid_argument("window_check: unknown window '" + which +
                                "'");
  }
  w.margin_lower = epsilon - w.lower;
  w.margin_upper = w.upper - epsilon;
  w.inside = epsilon > w.lower && epsilon < w.upper;
  return w;
}

}  // namespace mixedbvp
