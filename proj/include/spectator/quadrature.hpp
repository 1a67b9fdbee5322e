#pragma once

// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta) times
// a uniform periodic rule in phi (equal weights 2*pi/n, exact for e^{i k phi},
// |k| < n).  The amplitude overlap integrands are trigonometric polynomials
// of low degree, so the default order 32 is exact to round-off.

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "spectator/errors.hpp"

namespace spectator {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], by
// Newton iteration on the Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    x[i - 1] = -z;
    x[n - i] = z;
    w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - i] = w[i - 1];
  }
  return {std::move(x), std::move(w)};
}

struct QuadratureGrid {
  std::vector<double> cos_nodes;    // ascending in [-1, 1]
  std::vector<double> cos_weights;  // sum to 2
  std::vector<double> phi_nodes;    // 2*pi*j/n_phi
  double phi_weight = 0.0;          // 2*pi/n_phi

  int n_cos() const { return static_cast<int>(cos_nodes.size()); }
  int n_phi() const { return static_cast<int>(phi_nodes.size()); }

  double total_weight() const {
    double s = 0.0;
    for (double w : cos_weights) s += w;
    return s * phi_weight * n_phi();
  }

  static QuadratureGrid sphere(int n_cos_theta, int n_phi) {
    if (n_phi < 1) throw std::invalid_argument("QuadratureGrid: n_phi must be positive");
    QuadratureGrid g;
    auto [x, w] = gauss_legendre(n_cos_theta);
    g.cos_nodes = std::move(x);
    g.cos_weights = std::move(w);
    g.phi_weight = 2.0 * std::numbers::pi / n_phi;
    g.phi_nodes.resize(n_phi);
    for (int j = 0; j < n_phi; ++j) g.phi_nodes[j] = g.phi_weight * j;
    if (std::abs(g.total_weight() - 4.0 * std::numbers::pi) > 1e-12) {
      throw ContractError("QuadratureGrid: weights do not sum to the solid angle");
    }
    return g;
  }
};

// integral over the sphere of f(cos(theta), phi), d(cos theta) d(phi)
template <typename F>
std::complex<double> integrate_sphere(F&& f, const QuadratureGrid& g) {
  std::complex<double> acc = 0.0;
  for (int i = 0; i < g.n_cos(); ++i) {
    std::complex<double> row = 0.0;
    for (int j = 0; j < g.n_phi(); ++j) row += f(g.cos_nodes[i], g.phi_nodes[j]);
    acc += g.cos_weights[i] * g.phi_weight * row;
  }
  return acc;
}

}  // namespace spectator
