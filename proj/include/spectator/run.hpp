#pragma once

// Sweep and figure-dataset engine behind the command line tool.  Everything
// here is deterministic: fixed grids, serial evaluation, shortest
// round-trip decimal output, so identical configurations give byte-identical
// CSV files.

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectator/observables.hpp"
#include "spectator/oracle.hpp"

namespace spectator {

// shortest decimal string that round-trips to the same double
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

struct RunConfig {
  double m_e = kDefaultElectronMassMeV;
  double m_mu = kDefaultMuonMassMeV;
  double alpha_em = kDefaultAlphaEm;
  double spectator_energy = kDefaultElectronMassMeV;  // E_q; cancels everywhere
  double volume = 1.0;                                // V, MeV^-3
  double time = 0.0;                                  // T, MeV^-1; 0 = perturbative default
  int n_cos_theta = 32;
  int n_phi = 32;
  double e_min = 1.01, e_max = 3.0;  // units of m_mu
  int e_steps = 200;
  double alpha_min = 0.0, alpha_max = std::numbers::pi;  // radians
  int alpha_steps = 1;
  std::string eta = "+";  // + -> pi/4, - -> 3 pi/4 (unless the state tag fixes it)
  std::string state = "w";
  std::string out = "sweep.csv";

  void validate() const {
    if (e_min < 1.0 || e_max < e_min) {
      throw std::invalid_argument("RunConfig: energy range must satisfy 1 <= e_min <= e_max (units of m_mu)");
    }
    if (e_steps < 1 || alpha_steps < 1) throw std::invalid_argument("RunConfig: steps must be positive");
    if (n_cos_theta < 1 || n_phi < 1) throw std::invalid_argument("RunConfig: quadrature orders must be positive");
    if (eta != "+" && eta != "-") throw std::invalid_argument("RunConfig: eta must be '+' or '-'");
    if (volume <= 0.0 || time < 0.0) throw std::invalid_argument("RunConfig: bad regulators");
    StateSpec::parse(state);
  }

  Regulators regulators() const {
    if (time > 0.0) return Regulators(volume, time);
    return Regulators::perturbative(m_mu, alpha_em, volume);
  }

  KinematicSetup setup_at(double e_over_mmu) const {
    return KinematicSetup(e_over_mmu * m_mu, m_e, m_mu, spectator_energy, alpha_em);
  }

  QuadratureGrid grid() const { return QuadratureGrid::sphere(n_cos_theta, n_phi); }

  double eta_value(const StateSpec& spec) const {
    if (spec.eta_fixed) return spec.eta;
    return eta == "+" ? std::numbers::pi / 4.0 : 3.0 * std::numbers::pi / 4.0;
  }

  void load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read config file '" + path + "'");
    nlohmann::json j;
    try {
      f >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("bad config file '" + path + "': " + e.what());
    }
    for (const auto& [key, val] : j.items()) {
      if (key == "m_e") m_e = val.get<double>();
      else if (key == "m_mu") m_mu = val.get<double>();
      else if (key == "alpha_em") alpha_em = val.get<double>();
      else if (key == "spectator_energy") spectator_energy = val.get<double>();
      else if (key == "volume") volume = val.get<double>();
      else if (key == "time") time = val.get<double>();
      else if (key == "n_cos_theta") n_cos_theta = val.get<int>();
      else if (key == "n_phi") n_phi = val.get<int>();
      else if (key == "e_min") e_min = val.get<double>();
      else if (key == "e_max") e_max = val.get<double>();
      else if (key == "e_steps") e_steps = val.get<int>();
      else if (key == "alpha_min") alpha_min = val.get<double>();
      else if (key == "alpha_max") alpha_max = val.get<double>();
      else if (key == "alpha_steps") alpha_steps = val.get<int>();
      else if (key == "eta") eta = val.get<std::string>();
      else if (key == "state") state = val.get<std::string>();
      else if (key == "out") out = val.get<std::string>();
      else throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }

  // "# key = value" comment lines; the regulator time is echoed resolved.
  std::vector<std::string> echo_lines() const {
    std::vector<std::string> ls;
    auto add = [&](const std::string& k, const std::string& v) { ls.push_back("# " + k + " = " + v); };
    add("m_e", format_double(m_e));
    add("m_mu", format_double(m_mu));
    add("alpha_em", format_double(alpha_em));
    add("spectator_energy", format_double(spectator_energy));
    add("volume", format_double(volume));
    add("time", format_double(regulators().time));
    add("n_cos_theta", std::to_string(n_cos_theta));
    add("n_phi", std::to_string(n_phi));
    add("e_min", format_double(e_min));
    add("e_max", format_double(e_max));
    add("e_steps", std::to_string(e_steps));
    add("alpha_min", format_double(alpha_min));
    add("alpha_max", format_double(alpha_max));
    add("alpha_steps", std::to_string(alpha_steps));
    add("eta", eta);
    add("state", state);
    return ls;
  }
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<size_t>(n));
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = lo + step * i;
  return v;
}

inline void write_row(std::ostream& os, const std::vector<double>& vals) {
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) os << ',';
    os << format_double(vals[i]);
  }
  os << '\n';
}

}  // namespace detail

// One ObservableRecord row per (E, alpha) grid point, E major.  Column sets
// by state family:
//   w                      E_over_mmu,sigma_mev2,dS_C,dSz,f3,f4
//   a-psi / a-phi          E_over_mmu,alpha_rad,sigma_mev2,dS_C,dSx,dSy,dSz,g1,g2,g3
//   ghz / general / bc-mixture
//                          E_over_mmu,sigma_mev2,dS_C,dSx,dSy,dSz
inline void run_sweep(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  const StateSpec spec = StateSpec::parse(cfg.state);
  const Regulators reg = cfg.regulators();
  const QuadratureGrid grid = cfg.grid();
  const double eta = cfg.eta_value(spec);

  for (const auto& line : cfg.echo_lines()) os << line << '\n';

  const bool bell = spec.uses_alpha();
  if (spec.kind == StateSpec::Kind::W) {
    os << "E_over_mmu,sigma_mev2,dS_C,dSz,f3,f4\n";
  } else if (bell) {
    os << "E_over_mmu,alpha_rad,sigma_mev2,dS_C,dSx,dSy,dSz,g1,g2,g3\n";
  } else {
    os << "E_over_mmu,sigma_mev2,dS_C,dSx,dSy,dSz\n";
  }

  const auto energies = detail::linspace(cfg.e_min, cfg.e_max, cfg.e_steps);
  const auto alphas = bell ? detail::linspace(cfg.alpha_min, cfg.alpha_max, cfg.alpha_steps)
                           : std::vector<double>{0.0};
  const int sign = eta < std::numbers::pi / 2.0 ? 1 : -1;

  for (double x : energies) {
    const KinematicSetup kin = cfg.setup_at(x);
    const AngularOverlapTable table(kin, grid);
    const ClosedFormInputs cf = ClosedFormInputs::from(kin, reg);
    for (double alpha : alphas) {
      StateSpec local = spec;
      local.eta = eta;
      const SpinEnsemble ens = local.realize(alpha);
      const auto rep = spectator_report(ens, table, reg);

      ObservableRecord rec;
      rec.beam_energy = kin.beam_energy;
      rec.sigma = cross_section(ens, kin, grid);
      rec.d_entropy = rep.d_entropy;
      rec.d_spin_x = rep.d_spin_x;
      rec.d_spin_y = rep.d_spin_y;
      rec.d_spin_z = rep.d_spin_z;
      rec.alpha = alpha;
      rec.eta = eta;
      rec.state_tag = cfg.state;

      if (spec.kind == StateSpec::Kind::W) {
        const auto f = w_state_diag(cf);
        detail::write_row(os, {x, rec.sigma, rec.d_entropy, rec.d_spin_z, f.f3, f.f4});
      } else if (bell) {
        const auto g = bell_closed(cf, rec.alpha, sign);
        detail::write_row(os, {x, rec.alpha, rec.sigma, rec.d_entropy, rec.d_spin_x,
                               rec.d_spin_y, rec.d_spin_z, g.g1, g.g2, g.g3});
      } else {
        detail::write_row(os, {x, rec.sigma, rec.d_entropy, rec.d_spin_x, rec.d_spin_y,
                               rec.d_spin_z});
      }
    }
  }
}

inline void run_sweep_to_file(const RunConfig& cfg, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write output file '" + path + "'");
  run_sweep(cfg, f);
  if (!f.good()) throw std::invalid_argument("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Figure datasets fig2.csv .. fig9.csv.  Grids are fixed; the configuration
// still controls masses, coupling, regulators and quadrature order.
//   fig2  W state: entropy and spin-z shifts and cross section vs E
//   fig3  W state: the same shifts parametrised by the cross section
//   fig4  Bell products: entropy shift surface over (E, alpha); one surface
//         covers Psi+-, Phi+- (their spectra coincide)
//   fig5  spin-x shift surface for Psi+/Phi+   fig6  idem for Psi-/Phi-
//   fig7  spin-z shift surface for Psi+-       fig8  idem for Phi+-
//   fig9  Bell products at alpha = 0: spin-z shifts vs closed cross section
inline void run_figures(const RunConfig& cfg, const std::string& outdir) {
  cfg.validate();
  const Regulators reg = cfg.regulators();
  const QuadratureGrid grid = cfg.grid();

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(outdir, ec);

  auto open = [&](const std::string& name, const std::string& columns,
                  const std::string& blurb) {
    auto f = std::make_unique<std::ofstream>(fs::path(outdir) / name, std::ios::binary);
    if (!*f) throw std::invalid_argument("cannot write '" + name + "' in '" + outdir + "'");
    (*f) << "# " << blurb << '\n';
    for (const auto& line : cfg.echo_lines()) (*f) << line << '\n';
    (*f) << columns << '\n';
    return f;
  };

  // curve grid, step 0.0125 in E/m_mu; fig3/fig9 start four bins later
  const auto curve = detail::linspace(1.0, 3.0, 161);
  constexpr int kTailStart = 4;  // E = 1.05 m_mu

  auto fig2 = open("fig2.csv", "E_over_mmu,dS_C,dSz,sigma_mev2",
                   "W state: spectator entropy and spin-z shifts, cross section");
  auto fig3 = open("fig3.csv", "E_over_mmu,sigma_mev2,dS_C,dSz",
                   "W state: shifts against the cross section");
  auto fig9 = open("fig9.csv", "E_over_mmu,sigma_mev2,dSz_psi,dSz_phi",
                   "Bell products at alpha = 0: spin-z shift against the closed cross section");

  const SpinEnsemble w_state = SpinEnsemble::pure(make_w());
  const double eta_p = std::numbers::pi / 4.0;
  for (size_t i = 0; i < curve.size(); ++i) {
    const double x = curve[i];
    const KinematicSetup kin = cfg.setup_at(x);
    const AngularOverlapTable table(kin, grid);
    const auto rep_w = spectator_report(w_state, table, reg);
    const double sigma_w = cross_section(w_state, kin, grid);
    detail::write_row(*fig2, {x, rep_w.d_entropy, rep_w.d_spin_z, sigma_w});
    if (i >= kTailStart) {
      detail::write_row(*fig3, {x, sigma_w, rep_w.d_entropy, rep_w.d_spin_z});
      const auto rep_psi =
          spectator_report(SpinEnsemble::pure(make_a_psi(0.0, eta_p)), table, reg);
      const auto rep_phi =
          spectator_report(SpinEnsemble::pure(make_a_phi(0.0, eta_p)), table, reg);
      detail::write_row(*fig9,
                        {x, cross_section_w_closed(kin), rep_psi.d_spin_z, rep_phi.d_spin_z});
    }
  }

  // (E, alpha) surfaces, shared table per energy
  auto fig4 = open("fig4.csv", "E_over_mmu,alpha_rad,dS_C",
                   "Bell products: spectator entropy shift surface");
  auto fig5 = open("fig5.csv", "E_over_mmu,alpha_rad,dSx",
                   "Psi+/Phi+ states: spectator spin-x shift surface");
  auto fig6 = open("fig6.csv", "E_over_mmu,alpha_rad,dSx",
                   "Psi-/Phi- states: spectator spin-x shift surface");
  auto fig7 = open("fig7.csv", "E_over_mmu,alpha_rad,dSz",
                   "Psi states: spectator spin-z shift surface");
  auto fig8 = open("fig8.csv", "E_over_mmu,alpha_rad,dSz",
                   "Phi states: spectator spin-z shift surface");

  const auto surf_e = detail::linspace(1.01, 2.5, 31);
  const auto surf_a = detail::linspace(0.0, std::numbers::pi, 25);
  const double eta_m = 3.0 * std::numbers::pi / 4.0;
  for (double x : surf_e) {
    const KinematicSetup kin = cfg.setup_at(x);
    const AngularOverlapTable table(kin, grid);
    for (double a : surf_a) {
      const auto psi_p = spectator_report(SpinEnsemble::pure(make_a_psi(a, eta_p)), table, reg);
      const auto psi_m = spectator_report(SpinEnsemble::pure(make_a_psi(a, eta_m)), table, reg);
      const auto phi_p = spectator_report(SpinEnsemble::pure(make_a_phi(a, eta_p)), table, reg);
      detail::write_row(*fig4, {x, a, psi_p.d_entropy});
      detail::write_row(*fig5, {x, a, psi_p.d_spin_x});
      detail::write_row(*fig6, {x, a, psi_m.d_spin_x});
      detail::write_row(*fig7, {x, a, psi_p.d_spin_z});
      detail::write_row(*fig8, {x, a, phi_p.d_spin_z});
    }
  }
}

// ---------------------------------------------------------------------------
// Operational self-test: dual-path agreement and the density-matrix
// contracts, with a fixed seed.  Returns 0 on success, 3 on any violation.
inline int run_check(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  bool ok = true;
  auto report = [&](bool pass, const std::string& what, double value) {
    os << (pass ? "ok  " : "FAIL") << "  " << what << "  (" << format_double(value) << ")\n";
    if (!pass) ok = false;
  };

  // spin sum against the trace theorem at random kinematic points
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const KinematicSetup kin = cfg.setup_at(1.0 + 3.0 * unif(rng));
    const double theta = std::numbers::pi * unif(rng);
    const double phi = 2.0 * std::numbers::pi * unif(rng);
    double ssum = 0.0;
    for (Spin s1 : kSpins)
      for (Spin s2 : kSpins)
        for (Spin r : kSpins)
          for (Spin s : kSpins) ssum += std::norm(amplitude(kin, s1, s2, r, s, theta, phi));
    const double tr = oracle::trace_theorem_spin_sum(kin, theta);
    worst = std::max(worst, std::abs(ssum - tr) / tr);
  }
  report(worst <= 1e-10, "spin sum vs trace theorem, 20 random points, rel err", worst);

  // full 8x8 assembly against the nested-loop rebuild at doubled grid order
  const Regulators reg = cfg.regulators();
  const QuadratureGrid grid = cfg.grid();
  worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const KinematicSetup kin = cfg.setup_at(1.02 + 0.4 * k / 8.0);
    const AngularOverlapTable table(kin, grid);
    std::array<Complex, 8> c{};
    for (auto& v : c) v = Complex{gauss(rng), gauss(rng)};
    const TripartiteSpinState state(c);
    const auto main_path = assemble_out_abc(state, table, reg);
    const auto naive = oracle::naive_out_density(state, kin, reg, 2 * cfg.n_cos_theta);
    worst = std::max(worst, main_path.rho_abc.matrix().max_abs_diff(naive.matrix()));
  }
  report(worst <= 1e-10, "assembly vs nested-loop rebuild, 8 random states, max diff", worst);

  // contracts: Hermiticity, unit trace, positivity of everything produced
  worst = 0.0;
  try {
    for (const char* tag : {"ghz", "w", "a-psi:+", "a-phi:-", "bc-mixture:0.6,0,0,0.8"}) {
      const StateSpec spec = StateSpec::parse(tag);
      for (double x : {1.01, 1.5, 2.5}) {
        const KinematicSetup kin = cfg.setup_at(x);
        const AngularOverlapTable table(kin, grid);
        const SpinEnsemble ens = spec.realize(0.3);
        const auto out = assemble_out_abc(ens, table, reg);
        out.rho_abc.validate();
        rho_c_out(ens, table, reg).validate();
        rho_c_in(ens).validate();
      }
    }
    report(true, "density-matrix contracts across states and energies", 0.0);
  } catch (const ContractError& e) {
    report(false, std::string("density-matrix contract: ") + e.what(), 0.0);
  }

  // regulator scaling (T, V) -> (2T, 2V) leaves normalised observables alone
  {
    const KinematicSetup kin = cfg.setup_at(1.3);
    const AngularOverlapTable table(kin, grid);
    const Regulators doubled(2.0 * reg.volume, 2.0 * reg.time);
    const auto a = rho_c_out(make_w(), table, reg);
    const auto b = rho_c_out(make_w(), table, doubled);
    const double d = a.matrix().max_abs_diff(b.matrix());
    report(d <= 1e-12, "regulator scale invariance, max diff", d);
  }

  return ok ? 0 : 3;
}

}  // namespace spectator
