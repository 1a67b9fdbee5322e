#pragma once

// Tree-level s-channel amplitude M(s1 s2 -> r s; E, theta, phi) for
// e+ e- -> mu+ mu-, and the table of angular overlaps
//   O[a, b] = integral dOmega M_a conj(M_b)
// over all 16 x 16 spin-channel pairs.  Every density matrix downstream is a
// contraction of this table, so it is built once per energy and shared.

#include <array>
#include <complex>

#include "spectator/kinematics.hpp"
#include "spectator/quadrature.hpp"

namespace spectator {

// channel index: 8*s1 + 4*s2 + 2*r + s  (s1, s2 in; r, s out; Up = 0)
inline constexpr int channel_index(Spin s1, Spin s2, Spin r, Spin s) {
  return 8 * index(s1) + 4 * index(s2) + 2 * index(r) + index(s);
}

namespace detail {

// v_bar2 gamma^mu u_1 for the four (s1, s2) pairs; node independent.
struct LeptonCurrents {
  // currents[2*s1 + s2][mu]
  std::array<std::array<Complex, 4>, 4> currents{};

  explicit LeptonCurrents(const KinematicSetup& kin) {
    const auto& g = GammaSet::dirac_pauli();
    for (Spin s1 : kSpins) {
      const auto u1 = build_spinor(kin, SpinorSpecies::ElectronU, s1);
      for (Spin s2 : kSpins) {
        const auto vb2 = build_spinor(kin, SpinorSpecies::PositronVBar, s2);
        for (int mu = 0; mu < 4; ++mu) {
          currents[2 * index(s1) + index(s2)][mu] =
              bilinear(vb2.components, g.gamma[mu], u1.components);
        }
      }
    }
  }
};

// The 16 amplitudes at one (theta, phi) node.
inline std::array<Complex, 16> amplitudes_at(const KinematicSetup& kin,
                                             const LeptonCurrents& lep, double theta,
                                             double phi) {
  const auto& g = GammaSet::dirac_pauli();
  const double pref = kin.e_squared() / kin.mandelstam_s();

  std::array<std::array<Complex, 4>, 4> muon{};  // muon[2*r + s][mu]
  for (Spin r : kSpins) {
    const auto ub3 = build_spinor(kin, SpinorSpecies::MuonUBar, r, theta, phi);
    for (Spin s : kSpins) {
      const auto v4 = build_spinor(kin, SpinorSpecies::AntimuonV, s, theta, phi);
      for (int mu = 0; mu < 4; ++mu) {
        muon[2 * index(r) + index(s)][mu] = bilinear(ub3.components, g.gamma[mu], v4.components);
      }
    }
  }

  std::array<Complex, 16> m{};
  for (int in = 0; in < 4; ++in) {
    for (int out = 0; out < 4; ++out) {
      Complex acc = 0.0;
      for (int mu = 0; mu < 4; ++mu) acc += g.metric[mu] * muon[out][mu] * lep.currents[in][mu];
      m[4 * in + out] = pref * acc;
    }
  }
  return m;
}

}  // namespace detail

// M(s1 s2 -> r s) at the muon angles (theta, phi); dimensionless.
inline Complex amplitude(const KinematicSetup& kin, Spin s1, Spin s2, Spin r, Spin s,
                         double theta, double phi) {
  const detail::LeptonCurrents lep(kin);
  const auto m = detail::amplitudes_at(kin, lep, theta, phi);
  return m[channel_index(s1, s2, r, s)];
}

class AngularOverlapTable {
 public:
  AngularOverlapTable(const KinematicSetup& kin, const QuadratureGrid& grid)
      : setup_(kin), n_cos_(grid.n_cos()), n_phi_(grid.n_phi()) {
    const detail::LeptonCurrents lep(kin);
    for (int i = 0; i < grid.n_cos(); ++i) {
      const double theta = std::acos(grid.cos_nodes[i]);
      for (int j = 0; j < grid.n_phi(); ++j) {
        const double w = grid.cos_weights[i] * grid.phi_weight;
        const auto m = detail::amplitudes_at(kin, lep, theta, grid.phi_nodes[j]);
        for (int a = 0; a < 16; ++a) {
          const Complex wma = w * m[a];
          for (int b = 0; b < 16; ++b) o_[16 * a + b] += wma * std::conj(m[b]);
        }
      }
    }
  }

  const KinematicSetup& setup() const { return setup_; }
  int n_cos() const { return n_cos_; }
  int n_phi() const { return n_phi_; }

  Complex o(int a, int b) const { return o_[16 * a + b]; }
  Complex o(Spin s1, Spin s2, Spin r, Spin s, Spin s1p, Spin s2p, Spin rp, Spin sp) const {
    return o(channel_index(s1, s2, r, s), channel_index(s1p, s2p, rp, sp));
  }

  // integral dOmega Sum_{r,s} M(s1 s2 -> r s) conj(M(s1p s2p -> r s))
  Complex final_summed(Spin s1, Spin s2, Spin s1p, Spin s2p) const {
    Complex acc = 0.0;
    for (Spin r : kSpins) {
      for (Spin s : kSpins) acc += o(s1, s2, r, s, s1p, s2p, r, s);
    }
    return acc;
  }

 private:
  KinematicSetup setup_;
  int n_cos_, n_phi_;
  std::array<Complex, 256> o_{};
};

inline AngularOverlapTable overlap_table(const KinematicSetup& kin, const QuadratureGrid& grid) {
  return AngularOverlapTable(kin, grid);
}

}  // namespace spectator
