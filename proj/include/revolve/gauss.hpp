#pragma once

// Fixed-order Gauss-Legendre panel quadrature for smooth integrands with no
// endpoint singularities.  The adaptive double-exponential rules in
// quadrature.hpp are the right tool for singular integrands; these panels are
// for cheap, machine-accurate integrals of analytic functions.

#include <array>

namespace revolve {
namespace detail {

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the rule
// is symmetric).
inline constexpr std::array<double, 8> kGL16Nodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr std::array<double, 8> kGL16Weights = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

// Integral of f over [a, b]; exact for polynomials of degree <= 31.  A
// reversed interval (b < a) gives the signed value.
template <class F>
double gauss16(const F& f, double a, double b) {
  double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) {
    s += kGL16Weights[i] *
         (f(c - r * kGL16Nodes[i]) + f(c + r * kGL16Nodes[i]));
  }
  return s * r;
}

// Composite rule over `panels` equal subdivisions of [a, b].
template <class F>
double gauss16_panels(const F& f, double a, double b, int panels) {
  double h = (b - a) / panels;
  double s = 0.0;
  for (int i = 0; i < panels; ++i) {
    s += gauss16(f, a + i * h, a + (i + 1) * h);
  }
  return s;
}

}  // namespace detail
}  // namespace revolve
