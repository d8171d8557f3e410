#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "support/cli_runner.hpp"
#include "tvqc/capacity.hpp"
#include "tvqc/curve_io.hpp"
#include "tvqc/montecarlo.hpp"
#include "tvqc/outage.hpp"

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  return lines;
}

tvqc::CurveFile read_curve(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return tvqc::read_curve_csv(in);
}

}  // namespace

TEST_CASE("capacity command writes the expected grid") {
  const std::string dir = cli::make_temp_dir();
  const auto result =
      cli::run(dir, "capacity --kind AD --grid 0:0.5:0.01 --out cap.csv");
  CHECK(result.exit_code == 0);

  const auto lines = split_lines(cli::read_file(dir + "/cap.csv"));
  REQUIRE(lines.size() == 52);  // header + 51 rows
  CHECK(lines[0] == "gamma,capacity");
  // Noiseless endpoint: gamma 0, capacity 1 (to the 1e-9 value contract).
  CHECK(lines[1].substr(0, 2) == "0,");
  CHECK(tvqc::parse_double(lines[1].substr(2)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const auto manifest = cli::parse_kv(cli::read_file(dir + "/cap.csv.manifest"));
  CHECK(manifest.at("command") == "capacity");
  CHECK(manifest.at("kind") == "AD");
  CHECK(manifest.at("grid") == "0:0.5:0.01");
  CHECK(manifest.at("output.0") == "cap.csv");
  CHECK(manifest.at("tool") == "tvqc");
}

TEST_CASE("capacity of ADCTA at its noise limit is the rate") {
  const std::string dir = cli::make_temp_dir();
  const auto result =
      cli::run(dir, "capacity --kind ADCTA --grid 0.3065 --out cap.csv");
  CHECK(result.exit_code == 0);
  const auto lines = split_lines(cli::read_file(dir + "/cap.csv"));
  REQUIRE(lines.size() == 2);
  const std::size_t comma = lines[1].find(',');
  const double capacity = tvqc::parse_double(lines[1].substr(comma + 1));
  CHECK(std::abs(capacity - 1.0 / 9.0) < 0.002);
}

TEST_CASE("capacity rows match the library byte for byte") {
  const std::string dir = cli::make_temp_dir();
  const auto result =
      cli::run(dir, "capacity --kind ADPTA --grid 0.2 --out cap.csv");
  CHECK(result.exit_code == 0);
  const auto lines = split_lines(cli::read_file(dir + "/cap.csv"));
  REQUIRE(lines.size() == 2);
  const std::string expected =
      "0.2," +
      tvqc::format_double(
          tvqc::channel_capacity(tvqc::ChannelKind::ADPTA, 0.2));
  CHECK(lines[1] == expected);
}

TEST_CASE("capacity rejects malformed and out-of-range grids") {
  const std::string dir = cli::make_temp_dir();
  auto result = cli::run(dir, "capacity --grid 0:x:1 --out cap.csv");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("grid") != std::string::npos);

  result = cli::run(dir, "capacity --grid 0.5,1.5 --out cap.csv");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("grid") != std::string::npos);
}

TEST_CASE("noise-limit prints six decimals and writes a manifest") {
  const std::string dir = cli::make_temp_dir();
  auto result = cli::run(dir, "noise-limit --kind AD --rate 1/9 --out nl.txt");
  CHECK(result.exit_code == 0);
  CHECK(result.out.substr(0, 11) == "gamma_star=");
  const double gamma_star = tvqc::parse_double(
      cli::parse_kv(result.out).at("gamma_star"));
  CHECK(std::abs(gamma_star - 0.432) < 0.001);
  // Six decimal places on the printed value.
  CHECK(cli::parse_kv(result.out).at("gamma_star").size() == 8);

  const auto manifest = cli::parse_kv(cli::read_file(dir + "/nl.txt.manifest"));
  CHECK(manifest.at("command") == "noise-limit");

  result = cli::run(dir, "noise-limit --kind ADPTA --rate 1/9 --out nl2.txt");
  CHECK(std::abs(tvqc::parse_double(cli::parse_kv(result.out).at("gamma_star")) -
                 0.3354) < 0.001);

  result = cli::run(dir, "noise-limit --kind AD --rate 0.999999 --out nl3.txt");
  CHECK(tvqc::parse_double(cli::parse_kv(result.out).at("gamma_star")) < 0.001);
}

TEST_CASE("noise-limit rejects unachievable rates") {
  const std::string dir = cli::make_temp_dir();
  const auto result = cli::run(dir, "noise-limit --kind AD --rate 1.5");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("rate") != std::string::npos);
}

TEST_CASE("outage defaults emit one curve per cv") {
  const std::string dir = cli::make_temp_dir();
  const auto result = cli::run(dir, "outage --grid logspace:0.001:0.6:50");
  CHECK(result.exit_code == 0);

  const auto manifest = cli::parse_kv(cli::read_file(dir + "/outage.manifest"));
  CHECK(manifest.at("kind") == "AD");
  CHECK(manifest.at("cv") == "0.01,0.1,0.15,0.2,0.25");
  CHECK(manifest.count("output.4") == 1);
  CHECK(manifest.count("output.5") == 0);

  for (const char* cv : {"0.01", "0.1", "0.15", "0.2", "0.25"}) {
    const std::string path =
        dir + "/outage.r0.111111.cv" + std::string(cv) + ".csv";
    const tvqc::CurveFile curve = read_curve(path);
    CHECK(curve.table.points.size() == 50);
    CHECK(curve.x_axis_explicit);
    for (const auto& point : curve.table.points) {
      CHECK(point.y >= 0.0);
      CHECK(point.y <= 1.0);
    }
  }
}

TEST_CASE("emitted outage points equal the library closed form exactly") {
  const std::string dir = cli::make_temp_dir();
  const auto result = cli::run(
      dir, "outage --kind ADCTA --rate 1/9 --cv 0.2 --grid 0.05:0.3:0.05");
  CHECK(result.exit_code == 0);
  const tvqc::CurveFile curve =
      read_curve(dir + "/outage.r0.111111.cv0.2.csv");
  REQUIRE(curve.table.points.size() == 6);
  for (const auto& point : curve.table.points) {
    const double expected = tvqc::outage_probability(
        {tvqc::ChannelKind::ADCTA, 1.0 / 9.0, 0.2, point.x});
    CHECK(point.y == expected);
  }
}

TEST_CASE("outage with cv = 0 emits the step curve") {
  const std::string dir = cli::make_temp_dir();
  const auto result =
      cli::run(dir, "outage --kind AD --rate 1/9 --cv 0 --grid 0.01:0.6:0.01");
  CHECK(result.exit_code == 0);
  const tvqc::CurveFile curve = read_curve(dir + "/outage.r0.111111.cv0.csv");
  const double gamma_star =
      tvqc::noise_limit(tvqc::ChannelKind::AD, 1.0 / 9.0).gamma_star;
  for (const auto& point : curve.table.points) {
    CHECK(point.y == (point.x >= gamma_star ? 1.0 : 0.0));
  }
}

TEST_CASE("outage rejects grids outside the validity range") {
  const std::string dir = cli::make_temp_dir();
  auto result = cli::run(dir, "outage --grid 0.1:0.7:0.1");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("gamma") != std::string::npos);

  result = cli::run(dir, "outage --grid 0.0001:0.5:0.1");
  CHECK(result.exit_code == 2);

  result = cli::run(dir, "outage --cv -0.1 --grid 0.1:0.5:0.1");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("cv") != std::string::npos);
}

TEST_CASE("outage supports the depolarizing axis") {
  const std::string dir = cli::make_temp_dir();
  const auto result = cli::run(dir,
                               "outage --kind ADCTA --rate 1/9 --cv 0.25 "
                               "--x-axis depolarizing_p --grid 0.05:0.3:0.05");
  CHECK(result.exit_code == 0);
  const tvqc::CurveFile curve =
      read_curve(dir + "/outage.r0.111111.cv0.25.csv");
  CHECK(curve.table.x_axis == tvqc::XAxis::depolarizing_p);
  for (const auto& point : curve.table.points) {
    const double gamma = tvqc::gamma_from_depolarizing(point.x);
    CHECK(point.y ==
          tvqc::outage_probability(
              {tvqc::ChannelKind::ADCTA, 1.0 / 9.0, 0.25, gamma}));
  }
}

TEST_CASE("mc-validate passes on the reference scenarios") {
  const std::string dir = cli::make_temp_dir();
  auto result = cli::run(dir,
                         "mc-validate --kind AD --rate 1/9 --cv 0.25 "
                         "--gamma 0.3 --n 1000000 --seed 42 --out mc.txt");
  CHECK(result.exit_code == 0);
  auto report = cli::parse_kv(cli::read_file(dir + "/mc.txt"));
  CHECK(report.at("result") == "PASS");
  CHECK(report.count("closed_form") == 1);
  CHECK(report.count("p_hat") == 1);
  CHECK(report.count("std_err") == 1);

  result = cli::run(dir,
                    "mc-validate --kind ADCTA --rate 1/9 --cv 0.22 "
                    "--gamma 0.25 --n 1000000 --seed 7 --out mc2.txt");
  CHECK(result.exit_code == 0);
  CHECK(cli::parse_kv(result.out).at("result") == "PASS");
}

TEST_CASE("mc-validate with a hundred samples reports a wide interval") {
  const std::string dir = cli::make_temp_dir();
  const auto result = cli::run(dir,
                               "mc-validate --kind AD --rate 1/9 --cv 0.25 "
                               "--gamma 0.43 --n 100 --seed 3 --out mc.txt");
  const auto report = cli::parse_kv(cli::read_file(dir + "/mc.txt"));
  const double std_err = tvqc::parse_double(report.at("std_err"));
  CHECK(std_err == doctest::Approx(0.05).epsilon(0.35));
  const double lo = tvqc::parse_double(report.at("confidence_low"));
  const double hi = tvqc::parse_double(report.at("confidence_high"));
  const double p_hat = tvqc::parse_double(report.at("p_hat"));
  CHECK(hi - lo == doctest::Approx(0.45 * p_hat).epsilon(1e-12));
}

TEST_CASE("mc-validate fails with exit code 1 on a 3-sigma exceedance") {
  // Find a seed whose 200-sample estimate deterministically misses the
  // closed form by more than three sigma, then expect the CLI to flag it.
  const tvqc::OutageQuery query{tvqc::ChannelKind::ADCTA, 1.0 / 9.0, 0.25,
                                0.3};
  const double closed = tvqc::outage_probability(query);
  const double sigma = std::sqrt(closed * (1.0 - closed) / 200.0);
  std::uint64_t bad_seed = 0;
  bool found = false;
  for (std::uint64_t seed = 1; seed <= 5000 && !found; ++seed) {
    const tvqc::McEstimate est = tvqc::empirical_outage(
        {seed, 200, 100.0, 0.25, tvqc::ChannelKind::ADCTA, 1.0 / 9.0, 0.3},
        1);
    if (std::abs(est.p_hat - closed) > 3.0 * sigma) {
      bad_seed = seed;
      found = true;
    }
  }
  REQUIRE(found);

  const std::string dir = cli::make_temp_dir();
  const auto result = cli::run(
      dir, "mc-validate --kind ADCTA --rate 1/9 --cv 0.25 --gamma 0.3 "
           "--n 200 --seed " + std::to_string(bad_seed) + " --out mc.txt");
  CHECK(result.exit_code == 1);
  CHECK(cli::parse_kv(result.out).at("result") == "FAIL");
}

TEST_CASE("mc-validate reports are bit-identical across reruns") {
  const std::string dir = cli::make_temp_dir();
  const std::string args =
      "mc-validate --kind ADPTA --rate 1/9 --cv 0.2 --gamma 0.25 "
      "--n 100000 --seed 11 --out ";
  CHECK(cli::run(dir, args + "a.txt").exit_code == 0);
  CHECK(cli::run(dir, args + "b.txt").exit_code == 0);
  CHECK(cli::read_file(dir + "/a.txt") == cli::read_file(dir + "/b.txt"));
}

TEST_CASE("mc-validate records the seed source") {
  const std::string dir = cli::make_temp_dir();
  auto result = cli::run(dir,
                         "mc-validate --n 1000 --cv 0.25 --gamma 0.3 "
                         "--out mc.txt",
                         "TVQC_SEED=987");
  CHECK(result.exit_code == 0);
  auto manifest = cli::parse_kv(cli::read_file(dir + "/mc.txt.manifest"));
  CHECK(manifest.at("seed") == "987");
  CHECK(manifest.at("seed_source") == "env");

  result = cli::run(dir,
                    "mc-validate --n 1000 --cv 0.25 --gamma 0.3 --seed 5 "
                    "--out mc.txt",
                    "TVQC_SEED=987");
  manifest = cli::parse_kv(cli::read_file(dir + "/mc.txt.manifest"));
  CHECK(manifest.at("seed") == "5");
  CHECK(manifest.at("seed_source") == "flag");

  result = cli::run(dir, "mc-validate --n 1000 --cv 0.25 --gamma 0.3 "
                         "--out mc.txt");
  manifest = cli::parse_kv(cli::read_file(dir + "/mc.txt.manifest"));
  CHECK(manifest.at("seed_source") == "default");
}

TEST_CASE("delta-out of a file with itself is zero dB") {
  const std::string dir = cli::make_temp_dir();
  CHECK(cli::run(dir, "outage --kind ADCTA --rate 1/9 --cv 0.22 "
                      "--grid logspace:0.05:0.6:120 --out curve")
            .exit_code == 0);
  const std::string file = "curve.r0.111111.cv0.22.csv";
  const auto result = cli::run(
      dir, "delta-out --code " + file + " --outage " + file + " --wer 1e-2");
  CHECK(result.exit_code == 0);
  CHECK(cli::parse_kv(result.out).at("delta_out_db") == "0.00");
}

TEST_CASE("delta-out of a ten-times-shifted curve is ten dB") {
  const std::string dir = cli::make_temp_dir();
  CHECK(cli::run(dir, "outage --kind ADCTA --rate 1/9 --cv 0.22 "
                      "--grid logspace:0.05:0.6:120 --out curve")
            .exit_code == 0);
  const std::string outage_file = dir + "/curve.r0.111111.cv0.22.csv";
  const tvqc::CurveFile curve = read_curve(outage_file);
  tvqc::CurveTable shifted = curve.table;
  for (auto& point : shifted.points) {
    point.x /= 10.0;
  }
  {
    std::ofstream out(dir + "/code.csv", std::ios::binary);
    tvqc::write_curve_csv(shifted, out);
  }
  const auto result = cli::run(
      dir, "delta-out --code code.csv --outage curve.r0.111111.cv0.22.csv "
           "--wer 1e-2 --out d.txt");
  CHECK(result.exit_code == 0);
  CHECK(cli::parse_kv(result.out).at("delta_out_db") == "10.00");
}

TEST_CASE("delta-out matches the library on two outage curves") {
  const std::string dir = cli::make_temp_dir();
  CHECK(cli::run(dir, "outage --kind ADCTA --rate 1/9 --cv 0.22,0.26 "
                      "--grid logspace:0.04:0.6:400 --out c")
            .exit_code == 0);
  const auto result = cli::run(
      dir, "delta-out --code c.r0.111111.cv0.22.csv --outage "
           "c.r0.111111.cv0.26.csv --wer 1e-3 --out d.txt");
  CHECK(result.exit_code == 0);

  const tvqc::CurveFile code = read_curve(dir + "/c.r0.111111.cv0.22.csv");
  const tvqc::CurveFile outage = read_curve(dir + "/c.r0.111111.cv0.26.csv");
  const double expected = tvqc::delta_out(code.table, outage.table, 1e-3);
  const double reported =
      tvqc::parse_double(cli::parse_kv(result.out).at("delta_out_db"));
  CHECK(std::abs(reported - expected) <= 0.01);
}

TEST_CASE("delta-out explains an unbracketed level") {
  const std::string dir = cli::make_temp_dir();
  CHECK(cli::run(dir, "outage --kind ADCTA --rate 1/9 --cv 0.22 "
                      "--grid logspace:0.05:0.6:60 --out curve")
            .exit_code == 0);
  const std::string file = "curve.r0.111111.cv0.22.csv";
  const auto result = cli::run(
      dir, "delta-out --code " + file + " --outage " + file + " --wer 1e-9");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("not bracketed") != std::string::npos);
  CHECK(result.err.find("y range") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags override") {
  const std::string dir = cli::make_temp_dir();
  {
    std::ofstream cfg(dir + "/tvqc.ini");
    cfg << "[outage]\n";
    cfg << "kind=ADCTA\n";
    cfg << "rate=0.25\n";
    cfg << "cv=0.1\n";
    cfg << "grid=0.05:0.25:0.05\n";
  }
  auto result = cli::run(dir, "--config tvqc.ini outage");
  CHECK(result.exit_code == 0);
  auto manifest = cli::parse_kv(cli::read_file(dir + "/outage.manifest"));
  CHECK(manifest.at("kind") == "ADCTA");
  CHECK(manifest.at("rate") == "0.25");
  CHECK(manifest.at("cv") == "0.1");

  result = cli::run(dir, "--config tvqc.ini outage --cv 0.15");
  CHECK(result.exit_code == 0);
  manifest = cli::parse_kv(cli::read_file(dir + "/outage.manifest"));
  CHECK(manifest.at("kind") == "ADCTA");
  CHECK(manifest.at("cv") == "0.15");
}

TEST_CASE("usage errors exit with code 2, help with 0") {
  const std::string dir = cli::make_temp_dir();
  CHECK(cli::run(dir, "frobnicate").exit_code == 2);
  CHECK(cli::run(dir, "").exit_code == 2);
  CHECK(cli::run(dir, "delta-out --wer 1e-2").exit_code == 2);  // missing files
  CHECK(cli::run(dir, "--help").exit_code == 0);
  CHECK(cli::run(dir, "outage --help").exit_code == 0);
  const auto version = cli::run(dir, "--version");
  CHECK(version.exit_code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);
}
