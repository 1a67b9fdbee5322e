#pragma once

// Brute-force cross-checks, kept deliberately independent of the main path:
// the amplitudes here come from hand-reduced lepton and muon currents (no
// gamma matrices, no spinor objects), the spin sum from the standard trace
// theorem, and the 8x8 out-state from direct nested loops at whatever grid
// order the caller asks for.  Shared with the main path: only the numerics
// layer and the plain parameter structs.

#include <cmath>
#include <complex>

#include "spectator/complex_matrix.hpp"
#include "spectator/density.hpp"
#include "spectator/kinematics.hpp"
#include "spectator/quadrature.hpp"
#include "spectator/states.hpp"

namespace spectator::oracle {

// Sum over all 16 spin configurations of |M|^2 via the trace theorem:
//   (32 e^4 / s^2) [ (p1.p3)(p2.p4) + (p1.p4)(p2.p3)
//                    + m_mu^2 (p1.p2) + m_e^2 (p3.p4) + 2 m_e^2 m_mu^2 ].
// phi-independent by azimuthal symmetry.
inline double trace_theorem_spin_sum(const KinematicSetup& kin, double theta) {
  const double E = kin.beam_energy;
  const double p = kin.electron_momentum();
  const double P = kin.muon_momentum();
  const double me2 = kin.m_e * kin.m_e;
  const double mmu2 = kin.m_mu * kin.m_mu;
  const double ct = std::cos(theta);

  const double p1p3 = E * E - p * P * ct;
  const double p1p4 = E * E + p * P * ct;
  const double p1p2 = E * E + p * p;
  const double p3p4 = E * E + P * P;

  const double e2 = kin.e_squared();
  const double s = kin.mandelstam_s();
  return 32.0 * e2 * e2 / (s * s) *
         (p1p3 * p1p3 + p1p4 * p1p4 + mmu2 * p1p2 + me2 * p3p4 + 2.0 * me2 * mmu2);
}

// M(s1 s2 -> r s) from the reduced currents.  With k = P/(E + m_mu),
// n = E + m_mu, c = cos theta, sn = sin theta:
//   electron side   j(uu) = 2E (0, 1, i, 0),   j(dd) = 2E (0, -1, i, 0),
//                   j(ud) = j(du) = (0, 0, 0, -2 m_e);
//   muon side       J(uu), J(ud) = J(du), J(dd) as written below;
//   M = e^2/(4E^2) (J^0 j^0 - J.j).
inline Complex amplitude_direct(const KinematicSetup& kin, Spin s1, Spin s2, Spin r, Spin s,
                                double theta, double phi) {
  const double E = kin.beam_energy;
  const double n = E + kin.m_mu;
  const double k2 = kin.muon_momentum() * kin.muon_momentum() / (n * n);
  const double c = std::cos(theta), sn = std::sin(theta);
  const Complex em = std::exp(Complex{0.0, -phi});
  const Complex ep = std::exp(Complex{0.0, phi});
  const Complex i{0.0, 1.0};

  Complex j1, j2, j3;
  if (s1 == s2) {
    j1 = (s1 == Spin::Up ? 2.0 * E : -2.0 * E);
    j2 = i * 2.0 * E;
    j3 = 0.0;
  } else {
    j1 = 0.0;
    j2 = 0.0;
    j3 = -2.0 * kin.m_e;
  }

  Complex J1, J2, J3;
  if (r == Spin::Up && s == Spin::Up) {
    J1 = n * (1.0 + k2 * c * c - k2 * sn * sn * em * em);
    J2 = -i * n * (1.0 + k2 * c * c + k2 * sn * sn * em * em);
    J3 = -2.0 * n * k2 * sn * c * em;
  } else if (r == Spin::Down && s == Spin::Down) {
    J1 = -n * (1.0 + k2 * c * c - k2 * sn * sn * ep * ep);
    J2 = -i * n * (1.0 + k2 * c * c + k2 * sn * sn * ep * ep);
    J3 = 2.0 * n * k2 * sn * c * ep;
  } else {
    J1 = 2.0 * n * k2 * sn * c * std::cos(phi);
    J2 = 2.0 * n * k2 * sn * c * std::sin(phi);
    J3 = -n * (1.0 - k2 * (c * c - sn * sn));
  }

  return kin.e_squared() / (4.0 * E * E) * (-(J1 * j1 + J2 * j2 + J3 * j3));
}

// Same contract as assemble_out_abc, rebuilt from scratch at grid order n:
// accumulate the 16x16 pair integrals over an n x n grid, then contract every
// 8x8 entry with explicit loops over all in-spin pair combinations.
inline DensityMatrix naive_out_density(const TripartiteSpinState& state,
                                       const KinematicSetup& kin, const Regulators& reg,
                                       int n) {
  const auto [nodes, weights] = gauss_legendre(n);
  const double wphi = 2.0 * std::numbers::pi / n;

  std::array<Complex, 256> pair{};  // [16 a + b] with a = 4 in + out
  for (int iq = 0; iq < n; ++iq) {
    const double theta = std::acos(nodes[static_cast<size_t>(iq)]);
    const double wth = weights[static_cast<size_t>(iq)] * wphi;
    for (int jq = 0; jq < n; ++jq) {
      const double phi = wphi * jq;
      std::array<Complex, 16> m{};
      for (Spin s1 : kSpins)
        for (Spin s2 : kSpins)
          for (Spin r : kSpins)
            for (Spin s : kSpins)
              m[static_cast<size_t>(8 * index(s1) + 4 * index(s2) + 2 * index(r) + index(s))] =
                  amplitude_direct(kin, s1, s2, r, s, theta, phi);
      for (int a = 0; a < 16; ++a) {
        const Complex wma = wth * m[static_cast<size_t>(a)];
        for (int b = 0; b < 16; ++b) {
          pair[static_cast<size_t>(16 * a + b)] += wma * std::conj(m[static_cast<size_t>(b)]);
        }
      }
    }
  }

  const double w = reg.mixing_weight(kin);
  const auto& c = state.coefficients();
  ComplexMatrix num(8);
  double trans_trace = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int cc = 0; cc < 2; ++cc)
        for (int rp = 0; rp < 2; ++rp)
          for (int sp = 0; sp < 2; ++sp)
            for (int cp = 0; cp < 2; ++cp) {
              Complex acc = 0.0;
              for (int a1 = 0; a1 < 2; ++a1)
                for (int b1 = 0; b1 < 2; ++b1)
                  for (int a2 = 0; a2 < 2; ++a2)
                    for (int b2 = 0; b2 < 2; ++b2)
                      acc += c[static_cast<size_t>(4 * a1 + 2 * b1 + cc)] *
                             std::conj(c[static_cast<size_t>(4 * a2 + 2 * b2 + cp)]) *
                             pair[static_cast<size_t>(16 * (8 * a1 + 4 * b1 + 2 * r + s) +
                                                      (8 * a2 + 4 * b2 + 2 * rp + sp))];
              const int row = 4 * r + 2 * s + cc;
              const int col = 4 * rp + 2 * sp + cp;
              num(row, col) = w * acc;
              if (row == col) trans_trace += (w * acc).real();
            }
  num += state.projector();
  num *= 1.0 / (1.0 + trans_trace);
  return DensityMatrix(num);
}

}  // namespace spectator::oracle
