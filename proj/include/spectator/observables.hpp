#pragma once

// Spectator observables: von Neumann entropies (nats), spin-expectation
// shifts, the closed-form spectator matrix elements for the W and Bell
// product in-states, and total cross sections.

#include <cmath>
#include <numbers>
#include <string>

#include "spectator/density.hpp"

namespace spectator {

// S = -Tr rho ln rho, natural log, 0*ln 0 = 0.  Result in [0, ln dim].
inline double entropy_vn(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lam : clipped_spectrum(rho)) {
    if (lam > 0.0) s -= lam * std::log(lam);
  }
  return std::max(s, 0.0);
}

enum class SpinAxis { X, Y, Z };

// <S_axis> = Tr[sigma_axis rho] / 2 for a qubit state (hbar = 1).
inline double spin_expectation(const DensityMatrix& rho, SpinAxis axis) {
  switch (axis) {
    case SpinAxis::X:
      return rho(0, 1).real();
    case SpinAxis::Y:
      return -rho(0, 1).imag();
    case SpinAxis::Z:
      return 0.5 * (rho(0, 0).real() - rho(1, 1).real());
  }
  return 0.0;
}

// Everything figure rows need about the spectator, computed in one pass.
struct SpectatorReport {
  double entropy_in, entropy_out;
  double d_entropy;
  double d_spin_x, d_spin_y, d_spin_z;
};

inline SpectatorReport spectator_report(const SpinEnsemble& ensemble,
                                        const AngularOverlapTable& table,
                                        const Regulators& reg) {
  const DensityMatrix in = rho_c_in(ensemble);
  const DensityMatrix out = rho_c_out(ensemble, table, reg);
  SpectatorReport r{};
  r.entropy_in = entropy_vn(in);
  r.entropy_out = entropy_vn(out);
  r.d_entropy = r.entropy_out - r.entropy_in;
  r.d_spin_x = spin_expectation(out, SpinAxis::X) - spin_expectation(in, SpinAxis::X);
  r.d_spin_y = spin_expectation(out, SpinAxis::Y) - spin_expectation(in, SpinAxis::Y);
  r.d_spin_z = spin_expectation(out, SpinAxis::Z) - spin_expectation(in, SpinAxis::Z);
  return r;
}

inline double delta_entropy_c(const SpinEnsemble& ensemble, const AngularOverlapTable& table,
                              const Regulators& reg) {
  return spectator_report(ensemble, table, reg).d_entropy;
}

inline double delta_entropy_c(const TripartiteSpinState& state, const AngularOverlapTable& table,
                              const Regulators& reg) {
  return delta_entropy_c(SpinEnsemble::pure(state), table, reg);
}

inline double delta_spin(const SpinEnsemble& ensemble, const AngularOverlapTable& table,
                         const Regulators& reg, SpinAxis axis) {
  const auto r = spectator_report(ensemble, table, reg);
  switch (axis) {
    case SpinAxis::X:
      return r.d_spin_x;
    case SpinAxis::Y:
      return r.d_spin_y;
    case SpinAxis::Z:
      return r.d_spin_z;
  }
  return 0.0;
}

inline double delta_spin(const TripartiteSpinState& state, const AngularOverlapTable& table,
                         const Regulators& reg, SpinAxis axis) {
  return delta_spin(SpinEnsemble::pure(state), table, reg, axis);
}

// ---------------------------------------------------------------------------
// Closed forms.  All are ratios of the form (in part + transition part) over
// the total normalisation, expressed through the transition scale
//   escr2 = e^4 T sqrt(E^2 - m_mu^2) (m_mu^2 + 2 E^2)   [MeV^2],
// and depend on the regulators only through escr2/V.

struct ClosedFormInputs {
  double beam_energy;  // E, MeV
  double m_e, m_mu;    // MeV
  double e_squared;
  double volume, time;

  static ClosedFormInputs from(const KinematicSetup& kin, const Regulators& reg) {
    return {kin.beam_energy, kin.m_e, kin.m_mu, kin.e_squared(), reg.volume, reg.time};
  }

  double transition_scale() const {  // escr2
    const double E = beam_energy;
    return e_squared * e_squared * time * std::sqrt(E * E - m_mu * m_mu) *
           (m_mu * m_mu + 2.0 * E * E);
  }
  double pow7() const {
    const double E = beam_energy;
    return E * E * E * E * E * E * E;
  }
};

// Spectator diagonal after scattering from the W state; f3 + f4 = 1.
struct WStateDiag {
  double f3, f4;
};

inline WStateDiag w_state_diag(const ClosedFormInputs& in) {
  const double es2 = in.transition_scale();
  const double ve7 = std::numbers::pi * in.volume * in.pow7();
  const double e2 = in.beam_energy * in.beam_energy;
  const double me2 = in.m_e * in.m_e;
  const double den = 72.0 * ve7 + (2.0 * me2 + e2) * es2;
  return {(24.0 * ve7 + e2 * es2) / den, (48.0 * ve7 + 2.0 * me2 * es2) / den};
}

// Spectator matrix elements after scattering from A^alpha x Psi/Phi with
// eta = pi/4 (sign +1) or 3 pi/4 (sign -1); g1 + g2 = 1 and the off-diagonal
// is sin(2 alpha) g3 / 2.  For the Phi states g1 and g2 swap places on the
// diagonal while g3 is unchanged.
struct BellDiag {
  double g1, g2, g3;
};

inline BellDiag bell_closed(const ClosedFormInputs& in, double alpha, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("bell_closed: sign must be +1 or -1");
  const double es2 = in.transition_scale();
  const double ve7 = std::numbers::pi * in.volume * in.pow7();
  const double e2 = in.beam_energy * in.beam_energy;
  const double me2 = in.m_e * in.m_e;
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double den = 96.0 * ve7 + (me2 + 2.0 * e2) * es2;
  return {(48.0 * ve7 + es2 * (me2 * ca * ca + 2.0 * e2 * sa * sa)) / den,
          (48.0 * ve7 + es2 * (me2 * sa * sa + 2.0 * e2 * ca * ca)) / den,
          sign * me2 * es2 / den};
}

// z-shift scale of the Bell product states: Delta<S_z> = +cos(2a) h3 / 2 for
// the Psi pair and -cos(2a) h3 / 2 for the Phi pair.  Equal to g1 - g2 at
// alpha = 0; negative above threshold.
inline double bell_h3(const ClosedFormInputs& in) {
  const double es2 = in.transition_scale();
  const double ve7 = std::numbers::pi * in.volume * in.pow7();
  const double e2 = in.beam_energy * in.beam_energy;
  const double me2 = in.m_e * in.m_e;
  return (me2 - 2.0 * e2) * es2 / (96.0 * ve7 + (me2 + 2.0 * e2) * es2);
}

// ---------------------------------------------------------------------------
// Cross sections (MeV^-2).
//
// Total-rate convention: every (electron, positron) spin configuration that
// carries weight in the in state contributes its full configuration cross
// section (final spins summed); configuration interference enters the spin
// observables but not this total.  For the W state this reproduces
// cross_section_w_closed.

inline double cross_section(const SpinEnsemble& ensemble, const KinematicSetup& kin,
                            const QuadratureGrid& grid) {
  std::array<bool, 4> present{};
  for (const auto& [weight, state] : ensemble.components) {
    for (int i = 0; i < 8; ++i) {
      if (std::norm(state.coeff(i)) > 1e-24) present[static_cast<size_t>(i / 2)] = true;
    }
  }

  const detail::LeptonCurrents lep(kin);
  const Complex integral = integrate_sphere(
      [&](double x, double phi) {
        const auto m = detail::amplitudes_at(kin, lep, std::acos(x), phi);
        double acc = 0.0;
        for (int in = 0; in < 4; ++in) {
          if (!present[static_cast<size_t>(in)]) continue;
          for (int out = 0; out < 4; ++out) acc += std::norm(m[4 * in + out]);
        }
        return Complex{acc, 0.0};
      },
      grid);

  const double flux = 64.0 * std::numbers::pi * std::numbers::pi * kin.mandelstam_s();
  return integral.real() / flux * kin.muon_momentum() / kin.electron_momentum();
}

inline double cross_section(const TripartiteSpinState& state, const KinematicSetup& kin,
                            const QuadratureGrid& grid) {
  return cross_section(SpinEnsemble::pure(state), kin, grid);
}

inline double cross_section_w_closed(const KinematicSetup& kin) {
  const double E = kin.beam_energy;
  const double e2 = kin.e_squared();
  const double me2 = kin.m_e * kin.m_e;
  const double mmu2 = kin.m_mu * kin.m_mu;
  const double e6 = E * E * E * E * E * E;
  return e2 * e2 * (me2 + E * E) * (mmu2 + 2.0 * E * E) /
         (48.0 * std::numbers::pi * e6) * std::sqrt((E * E - mmu2) / (E * E - me2));
}

// One sweep grid point.
struct ObservableRecord {
  double beam_energy = 0.0;  // MeV
  double sigma = 0.0;        // MeV^-2
  double d_entropy = 0.0;    // nats
  double d_spin_x = 0.0, d_spin_y = 0.0, d_spin_z = 0.0;
  double alpha = 0.0, eta = 0.0;  // radians
  std::string state_tag;
};

}  // namespace spectator
