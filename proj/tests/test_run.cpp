#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "helpers.hpp"
#include "spectator/run.hpp"

using namespace spectator;
using Catch::Approx;

namespace {

RunConfig fast_config() {
  RunConfig cfg;
  cfg.n_cos_theta = 16;  // still exact for these integrands
  cfg.n_phi = 16;
  return cfg;
}

std::string sweep_text(const RunConfig& cfg) {
  std::ostringstream os;
  run_sweep(cfg, os);
  return os.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("spectator_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("identical configs give byte-identical output") {
  RunConfig cfg = fast_config();
  cfg.state = "w";
  cfg.e_steps = 7;
  CHECK(sweep_text(cfg) == sweep_text(cfg));
}

TEST_CASE("config echo round-trips into the header") {
  RunConfig cfg = fast_config();
  cfg.state = "ghz";
  cfg.e_steps = 2;
  const auto text = sweep_text(cfg);
  CHECK(text.find("# state = ghz\n") != std::string::npos);
  CHECK(text.find("# volume = 1\n") != std::string::npos);
  CHECK(text.find("# n_cos_theta = 16\n") != std::string::npos);
  for (const auto& line : cfg.echo_lines()) {
    CHECK(text.find(line + "\n") != std::string::npos);
  }
}

TEST_CASE("w sweep column set and shared peak bin") {
  RunConfig cfg = fast_config();
  cfg.state = "w";
  cfg.e_min = 1.0;
  cfg.e_max = 3.0;
  cfg.e_steps = 400;
  const auto csv = testutil::parse_csv_text(sweep_text(cfg));
  REQUIRE(csv.columns ==
          std::vector<std::string>{"E_over_mmu", "sigma_mev2", "dS_C", "dSz", "f3", "f4"});
  REQUIRE(csv.rows.size() == 400);

  const auto e = csv.column("E_over_mmu");
  const auto sig = csv.column("sigma_mev2");
  const auto ds = csv.column("dS_C");
  size_t i_sig = 0, i_ds = 0;
  for (size_t i = 0; i < sig.size(); ++i) {
    if (sig[i] > sig[i_sig]) i_sig = i;
    if (ds[i] > ds[i_ds]) i_ds = i;
  }
  CHECK(std::abs(static_cast<long>(i_sig) - static_cast<long>(i_ds)) <= 1);
  CHECK(e[i_sig] > 1.17);
  CHECK(e[i_sig] < 1.19);

  // f columns satisfy the identity row by row
  const auto f3 = csv.column("f3");
  const auto f4 = csv.column("f4");
  for (size_t i = 0; i < f3.size(); ++i) CHECK(f3[i] + f4[i] == Approx(1.0).margin(1e-13));
}

TEST_CASE("ghz sweep reports no variations at all") {
  RunConfig cfg = fast_config();
  cfg.state = "ghz";
  cfg.e_steps = 6;
  const auto csv = testutil::parse_csv_text(sweep_text(cfg));
  REQUIRE(csv.columns == std::vector<std::string>{"E_over_mmu", "sigma_mev2", "dS_C", "dSx",
                                                  "dSy", "dSz"});
  for (const auto& name : {"dS_C", "dSx", "dSy", "dSz"}) {
    for (double v : csv.column(name)) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("bell sweep alpha grid has the sin(2 alpha) zeros") {
  RunConfig cfg = fast_config();
  cfg.state = "a-psi:+";
  cfg.e_min = cfg.e_max = 1.3;
  cfg.e_steps = 1;
  cfg.alpha_steps = 9;  // 0 .. pi in steps of pi/8
  const auto csv = testutil::parse_csv_text(sweep_text(cfg));
  REQUIRE(csv.columns == std::vector<std::string>{"E_over_mmu", "alpha_rad", "sigma_mev2", "dS_C",
                                                  "dSx", "dSy", "dSz", "g1", "g2", "g3"});
  REQUIRE(csv.rows.size() == 9);
  const auto alpha = csv.column("alpha_rad");
  const auto dsx = csv.column("dSx");
  for (size_t i = 0; i < alpha.size(); ++i) {
    const bool zero_slot = i == 0 || i == 4 || i == 8;  // alpha = 0, pi/2, pi
    if (zero_slot) CHECK(std::abs(dsx[i]) <= 1e-12);
  }
  // g columns obey their identities
  const auto g1 = csv.column("g1");
  const auto g2 = csv.column("g2");
  for (size_t i = 0; i < g1.size(); ++i) CHECK(g1[i] + g2[i] == Approx(1.0).margin(1e-13));
}

TEST_CASE("json config loading and overrides") {
  TempDir tmp;
  const auto cfg_path = (tmp.path / "cfg.json").string();
  {
    std::ofstream f(cfg_path);
    f << R"({"state": "a-phi:-", "e_min": 1.2, "e_max": 1.6, "e_steps": 3,
             "n_cos_theta": 16, "n_phi": 16, "volume": 2.5})";
  }
  RunConfig cfg;
  cfg.load_json(cfg_path);
  CHECK(cfg.state == "a-phi:-");
  CHECK(cfg.e_min == 1.2);
  CHECK(cfg.volume == 2.5);
  CHECK(cfg.e_steps == 3);
  cfg.validate();

  RunConfig bad;
  CHECK_THROWS_AS(bad.load_json((tmp.path / "missing.json").string()), std::invalid_argument);

  const auto bad_path = (tmp.path / "bad.json").string();
  {
    std::ofstream f(bad_path);
    f << R"({"no_such_key": 1})";
  }
  CHECK_THROWS_AS(bad.load_json(bad_path), std::invalid_argument);

  const auto broken_path = (tmp.path / "broken.json").string();
  {
    std::ofstream f(broken_path);
    f << "{ not json";
  }
  CHECK_THROWS_AS(bad.load_json(broken_path), std::invalid_argument);
}

TEST_CASE("config validation rejects bad ranges") {
  RunConfig cfg;
  cfg.e_min = 0.9;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.e_max = cfg.e_min - 0.1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.e_steps = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.eta = "x";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.state = "nope";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("figure datasets: structure, signs and proportionality") {
  TempDir tmp;
  RunConfig cfg = fast_config();
  run_figures(cfg, tmp.path.string());

  for (int k = 2; k <= 9; ++k) {
    CHECK(std::filesystem::exists(tmp.path / ("fig" + std::to_string(k) + ".csv")));
  }

  // fig3: straight line through the origin region, R^2 >= 0.999
  const auto fig3 = testutil::parse_csv_file((tmp.path / "fig3.csv").string());
  const auto fit_ds = testutil::linear_fit(fig3.column("sigma_mev2"), fig3.column("dS_C"));
  CHECK(fit_ds.r2 >= 0.999);
  const auto fit_dz = testutil::linear_fit(fig3.column("sigma_mev2"), fig3.column("dSz"));
  CHECK(fit_dz.r2 >= 0.999);

  // fig4: the Bell spectator only ever loses entropy
  const auto fig4 = testutil::parse_csv_file((tmp.path / "fig4.csv").string());
  for (double v : fig4.column("dS_C")) CHECK(v <= 1e-15);

  // fig7 and fig8 are global sign flips of each other
  const auto fig7 = testutil::parse_csv_file((tmp.path / "fig7.csv").string());
  const auto fig8 = testutil::parse_csv_file((tmp.path / "fig8.csv").string());
  const auto z7 = fig7.column("dSz");
  const auto z8 = fig8.column("dSz");
  REQUIRE(z7.size() == z8.size());
  double scale = 0.0;
  for (double v : z7) scale = std::max(scale, std::abs(v));
  for (size_t i = 0; i < z7.size(); ++i) CHECK(std::abs(z7[i] + z8[i]) <= 1e-12 * scale);

  // fig9: both Bell families give straight lines against the cross section
  const auto fig9 = testutil::parse_csv_file((tmp.path / "fig9.csv").string());
  const auto fit_psi = testutil::linear_fit(fig9.column("sigma_mev2"), fig9.column("dSz_psi"));
  const auto fit_phi = testutil::linear_fit(fig9.column("sigma_mev2"), fig9.column("dSz_phi"));
  CHECK(fit_psi.r2 >= 0.999);
  CHECK(fit_phi.r2 >= 0.999);
  CHECK(fit_psi.slope < 0.0);
  CHECK(fit_phi.slope > 0.0);
}

TEST_CASE("check subcommand engine returns success") {
  RunConfig cfg = fast_config();
  std::ostringstream os;
  CHECK(run_check(cfg, os) == 0);
  CHECK(os.str().find("FAIL") == std::string::npos);
}
