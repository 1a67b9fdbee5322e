#pragma once

// Centre-of-mass kinematics for e+ e- -> mu+ mu- and the explicit Dirac
// spinors of the four external legs.
//
// Conventions used throughout:
//   * metric (+,-,-,-), Dirac-Pauli representation of the gamma matrices
//     (gamma^0 = diag(1,1,-1,-1), gamma^k off-diagonal Pauli blocks);
//   * spin labels are eigenstates of S_z in the beam frame, not helicity;
//   * the electron (momentum +z) and positron (-z) spinors carry no angle
//     dependence; the muon pair legs are parametrised by the muon polar
//     angles (theta, phi);
//   * relativistic normalisation u^dag u = v^dag v = 2E.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "spectator/complex_matrix.hpp"
#include "spectator/errors.hpp"

namespace spectator {

inline constexpr double kDefaultElectronMassMeV = 0.511;
inline constexpr double kDefaultMuonMassMeV = 105.7;
inline constexpr double kDefaultAlphaEm = 1.0 / 137.036;

struct KinematicSetup {
  double beam_energy;       // E, MeV per beam in the CM frame
  double m_e;               // MeV
  double m_mu;              // MeV
  double spectator_energy;  // E_q, MeV; cancels in every normalised observable
  double alpha_em;

  explicit KinematicSetup(double E, double electron_mass = kDefaultElectronMassMeV,
                          double muon_mass = kDefaultMuonMassMeV,
                          double eq = kDefaultElectronMassMeV,
                          double alpha = kDefaultAlphaEm)
      : beam_energy(E), m_e(electron_mass), m_mu(muon_mass), spectator_energy(eq),
        alpha_em(alpha) {
    if (m_e <= 0.0 || m_mu <= 0.0 || spectator_energy <= 0.0 || alpha_em <= 0.0) {
      throw std::invalid_argument("KinematicSetup: masses, E_q and alpha_em must be positive");
    }
    if (beam_energy <= m_e) {
      throw std::invalid_argument("KinematicSetup: beam energy must exceed the electron mass");
    }
    if (beam_energy < m_mu) {
      throw ThresholdError("KinematicSetup: beam energy below the muon pair threshold");
    }
  }

  double electron_momentum() const { return std::sqrt(beam_energy * beam_energy - m_e * m_e); }
  double muon_momentum() const { return std::sqrt(beam_energy * beam_energy - m_mu * m_mu); }
  double e_squared() const { return 4.0 * std::numbers::pi * alpha_em; }
  // evaluated as 4E^2 exactly, not from floating four-vector sums
  double mandelstam_s() const { return 4.0 * beam_energy * beam_energy; }
};

struct FourVector {
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;
  // Minkowski product, (+,-,-,-)
  double dot(const FourVector& o) const { return t * o.t - x * o.x - y * o.y - z * o.z; }
};

// p1 = electron, p2 = positron, p3 = muon at (theta, phi), p4 back to back.
inline std::array<FourVector, 4> four_momenta(const KinematicSetup& kin, double theta,
                                              double phi) {
  const double E = kin.beam_energy;
  const double p = kin.electron_momentum();
  const double P = kin.muon_momentum();
  const double sx = P * std::sin(theta) * std::cos(phi);
  const double sy = P * std::sin(theta) * std::sin(phi);
  const double sz = P * std::cos(theta);
  return {FourVector{E, 0.0, 0.0, p}, FourVector{E, 0.0, 0.0, -p},
          FourVector{E, sx, sy, sz}, FourVector{E, -sx, -sy, -sz}};
}

struct GammaSet {
  std::array<ComplexMatrix, 4> gamma;
  std::array<double, 4> metric{1.0, -1.0, -1.0, -1.0};

  static const GammaSet& dirac_pauli() {
    static const GammaSet g = build();
    return g;
  }

 private:
  static GammaSet build() {
    GammaSet g{{ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4)}, {}};
    g.metric = {1.0, -1.0, -1.0, -1.0};
    auto& [g0, g1, g2, g3] = g.gamma;
    g0(0, 0) = g0(1, 1) = 1.0;
    g0(2, 2) = g0(3, 3) = -1.0;
    // gamma^k = [[0, sigma_k], [-sigma_k, 0]]
    g1(0, 3) = g1(1, 2) = 1.0;
    g1(2, 1) = g1(3, 0) = -1.0;
    g2(0, 3) = Complex{0.0, -1.0};
    g2(1, 2) = Complex{0.0, 1.0};
    g2(2, 1) = Complex{0.0, 1.0};
    g2(3, 0) = Complex{0.0, -1.0};
    g3(0, 2) = 1.0;
    g3(1, 3) = -1.0;
    g3(2, 0) = -1.0;
    g3(3, 1) = 1.0;
    return g;
  }
};

enum class Spin : int { Up = 0, Down = 1 };

inline constexpr int index(Spin s) { return static_cast<int>(s); }
inline constexpr Spin flip(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }
inline constexpr std::array<Spin, 2> kSpins{Spin::Up, Spin::Down};

enum class SpinorSpecies {
  ElectronU,     // u_1, column
  PositronVBar,  // vbar_2, row (the gamma^0 factor is already applied)
  MuonUBar,      // ubar_3, row (idem)
  AntimuonV      // v_4, column
};

struct DiracSpinor {
  std::array<Complex, 4> components{};
  SpinorSpecies species{};
  Spin spin{};
  double theta = 0.0, phi = 0.0;

  bool is_row() const {
    return species == SpinorSpecies::PositronVBar || species == SpinorSpecies::MuonUBar;
  }
};

namespace detail {
inline std::array<Complex, 4> row_times_gamma0(const std::array<Complex, 4>& row) {
  const auto& g0 = GammaSet::dirac_pauli().gamma[0];
  std::array<Complex, 4> out{};
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) out[j] += row[i] * g0(i, j);
  }
  return out;
}
}  // namespace detail

// Explicit spinors of the process.  The barred legs (vbar_2, ubar_3) are
// stored as the full row including the gamma^0 factor, ready for bilinears.
inline DiracSpinor build_spinor(const KinematicSetup& kin, SpinorSpecies species, Spin spin,
                                double theta = 0.0, double phi = 0.0) {
  const double E = kin.beam_energy;
  const double n1 = std::sqrt(E + kin.m_e);
  const double n2 = std::sqrt(E + kin.m_mu);
  const double ke = kin.electron_momentum() / (E + kin.m_e);
  const double km = kin.muon_momentum() / (E + kin.m_mu);
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex em = std::exp(Complex{0.0, -phi});  // e^{-i phi}
  const Complex ep = std::exp(Complex{0.0, phi});

  DiracSpinor out;
  out.species = species;
  out.spin = spin;
  out.theta = theta;
  out.phi = phi;

  switch (species) {
    case SpinorSpecies::ElectronU:
      out.components = (spin == Spin::Up) ? std::array<Complex, 4>{n1, 0.0, n1 * ke, 0.0}
                                          : std::array<Complex, 4>{0.0, n1, 0.0, -n1 * ke};
      break;
    case SpinorSpecies::PositronVBar: {
      const auto row = (spin == Spin::Up) ? std::array<Complex, 4>{0.0, n1 * ke, 0.0, n1}
                                          : std::array<Complex, 4>{n1 * ke, 0.0, -n1, 0.0};
      out.components = detail::row_times_gamma0(row);
      break;
    }
    case SpinorSpecies::MuonUBar: {
      const auto row = (spin == Spin::Up)
                           ? std::array<Complex, 4>{n2, 0.0, n2 * km * c, n2 * km * s * em}
                           : std::array<Complex, 4>{0.0, n2, n2 * km * s * ep, -n2 * km * c};
      out.components = detail::row_times_gamma0(row);
      break;
    }
    case SpinorSpecies::AntimuonV:
      out.components = (spin == Spin::Up)
                           ? std::array<Complex, 4>{-n2 * km * s * em, n2 * km * c, 0.0, n2}
                           : std::array<Complex, 4>{n2 * km * c, n2 * km * s * ep, -n2, 0.0};
      break;
  }
  return out;
}

// Column form of any leg: barred rows are unwound through u = gamma^0 row^dag,
// which the spin-sum checks need.
inline std::array<Complex, 4> column_form(const DiracSpinor& sp) {
  if (!sp.is_row()) return sp.components;
  const auto& g0 = GammaSet::dirac_pauli().gamma[0];
  std::array<Complex, 4> out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[i] += g0(i, j) * std::conj(sp.components[j]);
  }
  return out;
}

// row . (M . col)
inline Complex bilinear(const std::array<Complex, 4>& row, const ComplexMatrix& m,
                        const std::array<Complex, 4>& col) {
  Complex acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    Complex mc = 0.0;
    for (int j = 0; j < 4; ++j) mc += m(i, j) * col[j];
    acc += row[i] * mc;
  }
  return acc;
}

}  // namespace spectator
