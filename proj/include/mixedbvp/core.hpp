#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mixedbvp {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

using cplx = std::complex<double>;

// Minimal 2D vector. Geometry here is small enough that a plain struct with
// the handful of operations we need reads better than a linear-algebra type.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
// Counterclockwise quarter turn.
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

inline cplx to_cplx(Vec2 v) { return {v.x, v.y}; }
inline Vec2 to_vec(cplx z) { return {z.real(), z.imag()}; }

// Argument in (-pi/2, 3pi/2]: branch cut on the downward vertical ray, which
// stays outside the closure of every region above a Lipschitz graph except for
// the origin itself.
inline double arg_upper(cplx z) {
  double a = std::arg(z);
  if (a <= -kPi / 2) a += 2 * kPi;
  return a;
}

// z^k with the branch above; z = 0 maps to 0 for k > 0.
inline cplx pow_upper(cplx z, double k) {
  double r = std::abs(z);
  if (r == 0.0) {
    if (k > 0) return {0.0, 0.0};
    throw std::domain_error("pow_upper: z = 0 with nonpositive exponent");
  }
  double a = arg_upper(z);
  return std::polar(std::pow(r, k), k * a);
}

// log z with the same branch.
inline cplx log_upper(cplx z) {
  double r = std::abs(z);
  if (r == 0.0) throw std::domain_error("log_upper: z = 0");
  return {std::log(r), arg_upper(z)};
}

}  // namespace mixedbvp
