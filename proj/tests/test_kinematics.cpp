#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "spectator/kinematics.hpp"

using namespace spectator;
using Catch::Approx;

namespace {

// gamma^mu p_mu as a matrix
ComplexMatrix slash(const FourVector& p) {
  const auto& g = GammaSet::dirac_pauli();
  ComplexMatrix m(4);
  ComplexMatrix t = g.gamma[0];
  t *= p.t;
  m += t;
  const double sp[3] = {p.x, p.y, p.z};
  for (int k = 0; k < 3; ++k) {
    ComplexMatrix gk = g.gamma[static_cast<size_t>(k) + 1];
    gk *= -sp[k];
    m += gk;
  }
  return m;
}

std::array<Complex, 4> matvec(const ComplexMatrix& m, const std::array<Complex, 4>& v) {
  std::array<Complex, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[static_cast<size_t>(i)] += m(i, j) * v[static_cast<size_t>(j)];
  return out;
}

double max_abs(const std::array<Complex, 4>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("gamma matrices satisfy the Clifford algebra") {
  const auto& g = GammaSet::dirac_pauli();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      ComplexMatrix anti = g.gamma[static_cast<size_t>(mu)] * g.gamma[static_cast<size_t>(nu)];
      anti += g.gamma[static_cast<size_t>(nu)] * g.gamma[static_cast<size_t>(mu)];
      ComplexMatrix expect(4);
      if (mu == nu) {
        expect = ComplexMatrix::identity(4);
        expect *= 2.0 * g.metric[static_cast<size_t>(mu)];
      }
      CHECK(anti.max_abs_diff(expect) <= 1e-14);
    }
  }
}

TEST_CASE("gamma hermiticity pattern") {
  const auto& g = GammaSet::dirac_pauli();
  CHECK(g.gamma[0].adjoint().max_abs_diff(g.gamma[0]) <= 1e-15);
  for (int k = 1; k < 4; ++k) {
    ComplexMatrix minus = g.gamma[static_cast<size_t>(k)];
    minus *= -1.0;
    CHECK(g.gamma[static_cast<size_t>(k)].adjoint().max_abs_diff(minus) <= 1e-15);
  }
}

TEST_CASE("explicit spinor components") {
  const KinematicSetup kin(2.0 * kDefaultMuonMassMeV);
  const double n1 = std::sqrt(kin.beam_energy + kin.m_e);
  const double ke = kin.electron_momentum() / (kin.beam_energy + kin.m_e);

  const auto u1 = build_spinor(kin, SpinorSpecies::ElectronU, Spin::Up);
  CHECK(std::abs(u1.components[0] - n1) < 1e-12);
  CHECK(std::abs(u1.components[1]) == 0.0);
  CHECK(std::abs(u1.components[2] - n1 * ke) < 1e-12);
  CHECK(std::abs(u1.components[3]) == 0.0);

  // forward muon: the row collapses to N2 (1, 0, kappa, 0) gamma^0
  const double n2 = std::sqrt(kin.beam_energy + kin.m_mu);
  const double km = kin.muon_momentum() / (kin.beam_energy + kin.m_mu);
  const auto ub3 = build_spinor(kin, SpinorSpecies::MuonUBar, Spin::Up, 0.0, 0.0);
  CHECK(std::abs(ub3.components[0] - n2) < 1e-12);
  CHECK(std::abs(ub3.components[1]) < 1e-15);
  CHECK(std::abs(ub3.components[2] + n2 * km) < 1e-12);
  CHECK(std::abs(ub3.components[3]) < 1e-15);
}

TEST_CASE("relativistic normalisation u^dag u = 2E") {
  const KinematicSetup kin(2.0 * kDefaultMuonMassMeV);
  for (auto species : {SpinorSpecies::ElectronU, SpinorSpecies::PositronVBar,
                       SpinorSpecies::MuonUBar, SpinorSpecies::AntimuonV}) {
    for (Spin s : kSpins) {
      const auto sp = build_spinor(kin, species, s, 0.7, 1.3);
      const auto col = column_form(sp);
      double norm2 = 0.0;
      for (const auto& c : col) norm2 += std::norm(c);
      CHECK(norm2 == Approx(2.0 * kin.beam_energy).epsilon(1e-10));
    }
  }
}

TEST_CASE("four momenta: conservation, shells, invariant mass") {
  const KinematicSetup kin(1.7 * kDefaultMuonMassMeV);

  const auto fwd = four_momenta(kin, 0.0, 0.0);
  CHECK(fwd[2].t == kin.beam_energy);
  CHECK(fwd[2].x == 0.0);
  CHECK(fwd[2].y == 0.0);
  CHECK(fwd[2].z == Approx(kin.muon_momentum()).epsilon(1e-15));

  auto rng = testutil::make_rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double th = std::numbers::pi * u(rng);
    const double ph = 2.0 * std::numbers::pi * u(rng);
    const auto p = four_momenta(kin, th, ph);

    // exact componentwise conservation
    CHECK(p[0].t + p[1].t == p[2].t + p[3].t);
    CHECK(p[0].x + p[1].x == p[2].x + p[3].x);
    CHECK(p[0].y + p[1].y == p[2].y + p[3].y);
    CHECK(p[0].z + p[1].z == p[2].z + p[3].z);

    const double masses[4] = {kin.m_e, kin.m_e, kin.m_mu, kin.m_mu};
    for (int i = 0; i < 4; ++i) {
      CHECK(p[static_cast<size_t>(i)].dot(p[static_cast<size_t>(i)]) ==
            Approx(masses[i] * masses[i]).epsilon(1e-10));
    }

    const FourVector total{p[0].t + p[1].t, p[0].x + p[1].x, p[0].y + p[1].y, p[0].z + p[1].z};
    CHECK(total.dot(total) == Approx(kin.mandelstam_s()).epsilon(1e-12));
  }
}

TEST_CASE("Dirac equation residuals") {
  const KinematicSetup kin(2.3 * kDefaultMuonMassMeV);
  const double th = 1.1, ph = 2.4;
  const auto p = four_momenta(kin, th, ph);
  const double tol = 1e-8 * kin.beam_energy;

  for (Spin s : kSpins) {
    // (slash(p) - m) u = 0
    const auto u1 = column_form(build_spinor(kin, SpinorSpecies::ElectronU, s));
    ComplexMatrix d1 = slash(p[0]);
    d1 -= kin.m_e * ComplexMatrix::identity(4);
    CHECK(max_abs(matvec(d1, u1)) <= tol);

    const auto u3 = column_form(build_spinor(kin, SpinorSpecies::MuonUBar, s, th, ph));
    ComplexMatrix d3 = slash(p[2]);
    d3 -= kin.m_mu * ComplexMatrix::identity(4);
    CHECK(max_abs(matvec(d3, u3)) <= tol);

    // (slash(p) + m) v = 0
    const auto v2 = column_form(build_spinor(kin, SpinorSpecies::PositronVBar, s));
    ComplexMatrix d2 = slash(p[1]);
    d2 += kin.m_e * ComplexMatrix::identity(4);
    CHECK(max_abs(matvec(d2, v2)) <= tol);

    const auto v4 = column_form(build_spinor(kin, SpinorSpecies::AntimuonV, s, th, ph));
    ComplexMatrix d4 = slash(p[3]);
    d4 += kin.m_mu * ComplexMatrix::identity(4);
    CHECK(max_abs(matvec(d4, v4)) <= tol);
  }
}

TEST_CASE("spin sums fix the representation") {
  const KinematicSetup kin(1.4 * kDefaultMuonMassMeV);
  const double th = 0.6, ph = 5.1;
  const auto p = four_momenta(kin, th, ph);
  const auto& g0 = GammaSet::dirac_pauli().gamma[0];
  const double tol = 1e-8 * kin.beam_energy;

  auto spin_sum = [&](SpinorSpecies species) {
    ComplexMatrix sum(4);
    for (Spin s : kSpins) {
      const auto col = column_form(build_spinor(kin, species, s, th, ph));
      std::array<Complex, 4> bar{};
      for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) bar[static_cast<size_t>(j)] += std::conj(col[static_cast<size_t>(i)]) * g0(i, j);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sum(i, j) += col[static_cast<size_t>(i)] * bar[static_cast<size_t>(j)];
    }
    return sum;
  };

  // Sum_s u ubar = slash(p) + m
  ComplexMatrix want = slash(p[0]);
  want += kin.m_e * ComplexMatrix::identity(4);
  CHECK(spin_sum(SpinorSpecies::ElectronU).max_abs_diff(want) <= tol);

  want = slash(p[2]);
  want += kin.m_mu * ComplexMatrix::identity(4);
  CHECK(spin_sum(SpinorSpecies::MuonUBar).max_abs_diff(want) <= tol);

  // Sum_s v vbar = slash(p) - m
  want = slash(p[1]);
  want -= kin.m_e * ComplexMatrix::identity(4);
  CHECK(spin_sum(SpinorSpecies::PositronVBar).max_abs_diff(want) <= tol);

  want = slash(p[3]);
  want -= kin.m_mu * ComplexMatrix::identity(4);
  CHECK(spin_sum(SpinorSpecies::AntimuonV).max_abs_diff(want) <= tol);
}

TEST_CASE("setup validation") {
  CHECK_THROWS_AS(KinematicSetup(0.9 * kDefaultMuonMassMeV), ThresholdError);
  CHECK_THROWS_AS(KinematicSetup(0.4), std::invalid_argument);  // below m_e
  CHECK_THROWS_AS(KinematicSetup(200.0, 0.511, 105.7, -1.0), std::invalid_argument);
  CHECK_NOTHROW(KinematicSetup(kDefaultMuonMassMeV));  // threshold itself is fine
}
