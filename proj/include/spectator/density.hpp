#pragma once

// Normalised out-state spin density matrices.
//
// The out state splits into the untouched in part and the transition part.
// After the momentum integrations are carried out analytically, the spin
// sector of the normalised 8x8 matrix on (A_out, B_out, C) is
//
//   rho_ABC = [ |S><S| + w R ] / (1 + w Tr R),
//
//   R[(r,s,c),(r',s',c')] = Sum over in-spin pairs of
//       c_(s1 s2 c) conj(c_(s1' s2' c')) O[(s1 s2, r s), (s1' s2', r' s')],
//
// with O the angular overlap table and the mixing weight
//
//   w = T P / (128 pi^2 E^3 V),
//
// which carries the whole dependence on the regulators V ("space volume",
// MeV^-3) and T ("time duration", MeV^-1).  The spectator energy E_q and the
// overall V^3 cancel between numerator and normalisation; the crossed
// in/transition term vanishes identically (orthogonal momentum support).
// Norm parts are reported in units of the in-state normalisation
// 8 E_q E^2 V^3.

#include <cmath>
#include <numbers>

#include "spectator/amplitude.hpp"
#include "spectator/complex_matrix.hpp"
#include "spectator/states.hpp"

namespace spectator {

struct Regulators {
  double volume = 1.0;  // V, MeV^-3
  double time = 1.0;    // T, MeV^-1

  Regulators(double v, double t) : volume(v), time(t) {
    if (volume <= 0.0 || time < 0.0) {
      throw std::invalid_argument("Regulators: V must be positive and T non-negative");
    }
  }

  // w = T P / (128 pi^2 E^3 V); dimensionless, E_q-free by construction.
  double mixing_weight(const KinematicSetup& kin) const {
    const double E = kin.beam_energy;
    return time * kin.muon_momentum() /
           (128.0 * std::numbers::pi * std::numbers::pi * E * E * E * volume);
  }

  // Regulators in the perturbative regime: V = volume and T fixed so that
  // max over E of w Tr R for the W state is `target`.  The maximum of
  // sqrt(x^2-1)(1+2x^2)/x^5 over x = E/m_mu sits at x^2 = (1+sqrt(21))/4.
  static Regulators perturbative(double m_mu = kDefaultMuonMassMeV,
                                 double alpha_em = kDefaultAlphaEm, double volume = 1.0,
                                 double target = 1e-3) {
    const double e2 = 4.0 * std::numbers::pi * alpha_em;
    const double x2 = 0.25 * (1.0 + std::sqrt(21.0));
    const double gmax = std::sqrt(x2 - 1.0) * (1.0 + 2.0 * x2) / (x2 * x2 * std::sqrt(x2));
    const double t = 72.0 * std::numbers::pi * m_mu * m_mu * volume * target / (gmax * e2 * e2);
    return Regulators(volume, t);
  }
};

struct OutStateSpinDensity {
  DensityMatrix rho_abc;  // dim 8, basis |r s c> in the ordering of states.hpp
  double norm_in;         // units of 8 E_q E^2 V^3; 1 for a normalised in state
  double norm_trans;      // w Tr R in the same units; >= 0
};

namespace detail {

// R for one pure component.  16 in-pair combinations feed every entry.
inline ComplexMatrix transition_block(const TripartiteSpinState& state,
                                      const AngularOverlapTable& table) {
  const auto& c = state.coefficients();
  ComplexMatrix r(8);
  for (int out = 0; out < 4; ++out) {        // 2*r + s
    for (int outp = 0; outp < 4; ++outp) {   // 2*r' + s'
      for (int cc = 0; cc < 2; ++cc) {
        for (int cp = 0; cp < 2; ++cp) {
          Complex acc = 0.0;
          for (int in = 0; in < 4; ++in) {      // 2*s1 + s2
            const Complex ci = c[static_cast<size_t>(2 * in + cc)];
            if (ci == Complex{}) continue;
            for (int inp = 0; inp < 4; ++inp) {
              const Complex cj = c[static_cast<size_t>(2 * inp + cp)];
              if (cj == Complex{}) continue;
              acc += ci * std::conj(cj) * table.o(4 * in + out, 4 * inp + outp);
            }
          }
          r(2 * out + cc, 2 * outp + cp) = acc;
        }
      }
    }
  }
  return r;
}

}  // namespace detail

inline OutStateSpinDensity assemble_out_abc(const SpinEnsemble& ensemble,
                                            const AngularOverlapTable& table,
                                            const Regulators& reg) {
  if (ensemble.components.empty()) {
    throw std::invalid_argument("assemble_out_abc: empty ensemble");
  }
  const double w = reg.mixing_weight(table.setup());

  ComplexMatrix acc(8);
  double norm_in = 0.0, norm_trans = 0.0;
  for (const auto& [weight, state] : ensemble.components) {
    ComplexMatrix part = state.projector();
    const ComplexMatrix r = detail::transition_block(state, table);
    part += w * r;
    acc += Complex{weight, 0.0} * part;
    norm_in += weight;
    norm_trans += weight * w * r.trace().real();
  }
  acc *= 1.0 / (norm_in + norm_trans);
  return {DensityMatrix(acc), norm_in, norm_trans};
}

inline OutStateSpinDensity assemble_out_abc(const TripartiteSpinState& state,
                                            const AngularOverlapTable& table,
                                            const Regulators& reg) {
  return assemble_out_abc(SpinEnsemble::pure(state), table, reg);
}

// Spectator reduced matrix of the in state (trace over A and B of |S><S|).
inline DensityMatrix rho_c_in(const SpinEnsemble& ensemble) {
  ComplexMatrix m(2);
  for (const auto& [weight, state] : ensemble.components) {
    const auto& c = state.coefficients();
    for (int cc = 0; cc < 2; ++cc) {
      for (int cp = 0; cp < 2; ++cp) {
        Complex acc = 0.0;
        for (int ab = 0; ab < 4; ++ab) {
          acc += c[static_cast<size_t>(2 * ab + cc)] * std::conj(c[static_cast<size_t>(2 * ab + cp)]);
        }
        m(cc, cp) += weight * acc;
      }
    }
  }
  return DensityMatrix(m);
}

inline DensityMatrix rho_c_in(const TripartiteSpinState& state) {
  return rho_c_in(SpinEnsemble::pure(state));
}

// Spectator reduced matrix after the scattering: trace of the full 8x8
// assembly over A and B.
inline DensityMatrix rho_c_out(const SpinEnsemble& ensemble, const AngularOverlapTable& table,
                               const Regulators& reg) {
  const auto out = assemble_out_abc(ensemble, table, reg);
  return partial_trace(out.rho_abc, {kSubsystemC});
}

inline DensityMatrix rho_c_out(const TripartiteSpinState& state, const AngularOverlapTable& table,
                               const Regulators& reg) {
  return rho_c_out(SpinEnsemble::pure(state), table, reg);
}

// ---------------------------------------------------------------------------
// 4x4 matrix on (A, C) assembled from the explicit per-element expressions
// (trace over B done by hand), restricted to real coefficient vectors.  The
// general 8x8 assembly is the authoritative path; this one is kept as an
// independently written regression surface and agrees with it entrywise.
// AC basis ordering: index 2*a + c, i.e. (uu, ud, du, dd).

inline DensityMatrix rho_ac_direct(const TripartiteSpinState& state,
                                   const AngularOverlapTable& table, const Regulators& reg) {
  if (!state.is_real()) {
    throw std::invalid_argument(
        "rho_ac_direct: the explicit element list assumes real coefficients; "
        "use assemble_out_abc for complex states");
  }
  std::array<double, 8> c{};
  for (int i = 0; i < 8; ++i) c[static_cast<size_t>(i)] = state.coeff(i).real();
  const auto& [c1, c2, c3, c4, c5, c6, c7, c8] = c;

  ComplexMatrix in(4);
  in(0, 0) = c1 * c1 + c3 * c3;
  in(0, 1) = c1 * c2 + c3 * c4;
  in(0, 2) = c1 * c5 + c3 * c7;
  in(0, 3) = c1 * c6 + c3 * c8;
  in(1, 1) = c2 * c2 + c4 * c4;
  in(1, 2) = c2 * c5 + c4 * c7;
  in(1, 3) = c2 * c6 + c4 * c8;
  in(2, 2) = c5 * c5 + c7 * c7;
  in(2, 3) = c5 * c6 + c7 * c8;
  in(3, 3) = c6 * c6 + c8 * c8;

  // integral dOmega of the element list, summed over the antimuon spin s.
  // Spin arguments of o(): (s1, s2, r, s | s1', s2', r', s').
  constexpr Spin U = Spin::Up, D = Spin::Down;
  ComplexMatrix tr(4);
  for (Spin s : kSpins) {
    tr(0, 0) += c1 * c1 * table.o(U, U, U, s, U, U, U, s) + c3 * c3 * table.o(U, D, U, s, U, D, U, s) +
                c5 * c5 * table.o(D, U, U, s, D, U, U, s) + c7 * c7 * table.o(D, D, U, s, D, D, U, s) +
                2.0 * c3 * c5 * table.o(U, D, U, s, D, U, U, s);
    tr(1, 1) += c2 * c2 * table.o(U, U, U, s, U, U, U, s) + c4 * c4 * table.o(U, D, U, s, U, D, U, s) +
                c6 * c6 * table.o(D, U, U, s, D, U, U, s) + c8 * c8 * table.o(D, D, U, s, D, D, U, s) +
                2.0 * c4 * c6 * table.o(U, D, U, s, D, U, U, s);
    tr(2, 2) += c1 * c1 * table.o(U, U, D, s, U, U, D, s) + c3 * c3 * table.o(U, D, D, s, U, D, D, s) +
                c5 * c5 * table.o(D, U, D, s, D, U, D, s) + c7 * c7 * table.o(D, D, D, s, D, D, D, s) +
                2.0 * c3 * c5 * table.o(U, D, D, s, D, U, D, s);
    tr(3, 3) += c2 * c2 * table.o(U, U, D, s, U, U, D, s) + c4 * c4 * table.o(U, D, D, s, U, D, D, s) +
                c6 * c6 * table.o(D, U, D, s, D, U, D, s) + c8 * c8 * table.o(D, D, D, s, D, D, D, s) +
                2.0 * c4 * c6 * table.o(U, D, D, s, D, U, D, s);
    tr(0, 1) += c1 * c2 * table.o(U, U, U, s, U, U, U, s) + c3 * c4 * table.o(U, D, U, s, U, D, U, s) +
                c5 * c6 * table.o(D, U, U, s, D, U, U, s) + c7 * c8 * table.o(D, D, U, s, D, D, U, s) +
                (c3 * c6 + c4 * c5) * table.o(U, D, U, s, D, U, U, s);
    tr(2, 3) += c1 * c2 * table.o(U, U, D, s, U, U, D, s) + c3 * c4 * table.o(U, D, D, s, U, D, D, s) +
                c5 * c6 * table.o(D, U, D, s, D, U, D, s) + c7 * c8 * table.o(D, D, D, s, D, D, D, s) +
                (c3 * c6 + c4 * c5) * table.o(U, D, D, s, D, U, D, s);
    tr(0, 2) += (c1 * c3 + c5 * c7) * table.o(U, U, U, s, U, D, D, s) +
                (c1 * c5 + c3 * c7) * table.o(U, U, U, s, D, U, D, s);
    tr(0, 3) += (c1 * c4 + c5 * c8) * table.o(U, U, U, s, U, D, D, s) +
                (c1 * c6 + c3 * c8) * table.o(U, U, U, s, D, U, D, s);
    tr(1, 2) += (c2 * c3 + c6 * c7) * table.o(U, U, U, s, U, D, D, s) +
                (c2 * c5 + c4 * c7) * table.o(U, U, U, s, D, U, D, s);
    tr(1, 3) += (c2 * c4 + c6 * c8) * table.o(U, U, U, s, U, D, D, s) +
                (c2 * c6 + c4 * c8) * table.o(U, U, U, s, D, U, D, s);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      in(i, j) = std::conj(in(j, i));
      tr(i, j) = std::conj(tr(j, i));
    }
  }

  const double w = reg.mixing_weight(table.setup());
  ComplexMatrix m = in;
  m += w * tr;
  m *= 1.0 / (1.0 + w * tr.trace().real());
  return DensityMatrix(m);
}

}  // namespace spectator
