#pragma once

// Forward-mode derivative bundles of order three: a Jet3 carries the value of
// a function together with its first three derivatives with respect to one
// underlying variable.  Arithmetic follows the Leibniz and Faa di Bruno rules,
// so compositions of closed-form pieces yield derivatives that are exact up to
// roundoff.  The constructed profile families (smooth steps, oscillating
// bumps, arclength-parametrized sphere profiles) are built on this type.

#include <cmath>

namespace revolve {

struct Jet3 {
  double f = 0.0;   // value
  double d1 = 0.0;  // first derivative
  double d2 = 0.0;  // second derivative
  double d3 = 0.0;  // third derivative

  static Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
  // The independent variable itself.
  static Jet3 variable(double x) { return {x, 1.0, 0.0, 0.0}; }

  double deriv(int order) const {
    switch (order) {
      case 0: return f;
      case 1: return d1;
      case 2: return d2;
      default: return d3;
    }
  }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

inline Jet3 operator-(const Jet3& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }

inline Jet3 operator*(const Jet3& a, double s) {
  return {a.f * s, a.d1 * s, a.d2 * s, a.d3 * s};
}

inline Jet3 operator*(double s, const Jet3& a) { return a * s; }

inline Jet3 operator+(const Jet3& a, double c) {
  return {a.f + c, a.d1, a.d2, a.d3};
}

inline Jet3 operator+(double c, const Jet3& a) { return a + c; }

inline Jet3 operator-(const Jet3& a, double c) { return a + (-c); }

inline Jet3 operator-(double c, const Jet3& a) { return (-a) + c; }

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.f * b.f,
          a.d1 * b.f + a.f * b.d1,
          a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2,
          a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3};
}

// Quotient q = a / b obtained by Leibniz expansion of a = q * b.
inline Jet3 operator/(const Jet3& a, const Jet3& b) {
  Jet3 q;
  q.f = a.f / b.f;
  q.d1 = (a.d1 - q.f * b.d1) / b.f;
  q.d2 = (a.d2 - q.f * b.d2 - 2.0 * q.d1 * b.d1) / b.f;
  q.d3 = (a.d3 - q.f * b.d3 - 3.0 * q.d1 * b.d2 - 3.0 * q.d2 * b.d1) / b.f;
  return q;
}

inline Jet3 operator/(const Jet3& a, double s) { return a * (1.0 / s); }

inline Jet3 operator/(double c, const Jet3& b) {
  return Jet3::constant(c) / b;
}

// Composition g(u) where the outer derivatives g', g'', g''' are evaluated at
// u.f and u carries the inner jet.
inline Jet3 compose(double g0, double g1, double g2, double g3,
                    const Jet3& u) {
  Jet3 r;
  r.f = g0;
  r.d1 = g1 * u.d1;
  r.d2 = g2 * u.d1 * u.d1 + g1 * u.d2;
  r.d3 = g3 * u.d1 * u.d1 * u.d1 + 3.0 * g2 * u.d1 * u.d2 + g1 * u.d3;
  return r;
}

inline Jet3 exp(const Jet3& u) {
  double e = std::exp(u.f);
  return compose(e, e, e, e, u);
}

inline Jet3 sin(const Jet3& u) {
  double s = std::sin(u.f), c = std::cos(u.f);
  return compose(s, c, -s, -c, u);
}

inline Jet3 cos(const Jet3& u) {
  double s = std::sin(u.f), c = std::cos(u.f);
  return compose(c, -s, -c, s, u);
}

inline Jet3 sqrt(const Jet3& u) {
  double r = std::sqrt(u.f);
  double g1 = 0.5 / r;
  double g2 = -0.25 / (u.f * r);
  double g3 = 0.375 / (u.f * u.f * r);
  return compose(r, g1, g2, g3, u);
}

}  // namespace revolve
