// tvqc: capacities, noise limits, outage probabilities and Monte Carlo
// validation for time-varying amplitude damping channels. Every command
// writes its outputs plus a flat key=value manifest that records the full
// parameter set needed to reproduce the run.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvqc/capacity.hpp"
#include "tvqc/channel.hpp"
#include "tvqc/curve_io.hpp"
#include "tvqc/errors.hpp"
#include "tvqc/montecarlo.hpp"
#include "tvqc/outage.hpp"
#include "tvqc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kDefaultSeed = 1;

// Signals a bad parameter; the message should name the offending one.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_rate(const std::string& text) {
  const std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return tvqc::parse_double(text);
    }
    const double num = tvqc::parse_double(text.substr(0, slash));
    const double den = tvqc::parse_double(text.substr(slash + 1));
    if (den == 0.0) {
      throw UsageError("rate: division by zero in '" + text + "'");
    }
    return num / den;
  } catch (const std::invalid_argument&) {
    throw UsageError("rate: cannot parse '" + text + "'");
  }
}

// Grid specs: "start:stop:step" (linear, inclusive), "logspace:start:stop:n"
// (geometric), or an explicit comma-separated list.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  try {
    if (spec.rfind("logspace:", 0) == 0) {
      const std::string rest = spec.substr(9);
      std::vector<std::string> parts;
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ':')) parts.push_back(item);
      if (parts.size() != 3) {
        throw UsageError("grid: logspace spec needs start:stop:n, got '" +
                         spec + "'");
      }
      const double start = tvqc::parse_double(parts[0]);
      const double stop = tvqc::parse_double(parts[1]);
      const long n = std::lround(tvqc::parse_double(parts[2]));
      if (!(start > 0.0) || !(stop > start) || n < 2) {
        throw UsageError(
            "grid: logspace needs 0 < start < stop and n >= 2, got '" + spec +
            "'");
      }
      const double log_step = std::log(stop / start) / static_cast<double>(n - 1);
      for (long i = 0; i < n; ++i) {
        grid.push_back(i == n - 1 ? stop : start * std::exp(log_step * i));
      }
      return grid;
    }
    if (spec.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(spec);
      std::string item;
      while (std::getline(ss, item, ':')) parts.push_back(item);
      if (parts.size() != 3) {
        throw UsageError("grid: linear spec needs start:stop:step, got '" +
                         spec + "'");
      }
      const double start = tvqc::parse_double(parts[0]);
      const double stop = tvqc::parse_double(parts[1]);
      const double step = tvqc::parse_double(parts[2]);
      if (!(step > 0.0) || stop < start) {
        throw UsageError("grid: linear spec needs step > 0 and stop >= start");
      }
      const long count = std::lround(std::floor((stop - start) / step + 1e-9));
      for (long i = 0; i <= count; ++i) {
        grid.push_back(start + step * static_cast<double>(i));
      }
      return grid;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      grid.push_back(tvqc::parse_double(item));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("grid: ") + e.what());
  }
  if (grid.empty()) {
    throw UsageError("grid: empty spec");
  }
  return grid;
}

tvqc::ChannelKind parse_kind(const std::string& name) {
  if (auto kind = tvqc::channel_kind_from_string(name)) {
    return *kind;
  }
  throw UsageError("kind: expected AD, ADPTA or ADCTA, got '" + name + "'");
}

tvqc::XAxis parse_axis(const std::string& name) {
  if (name == "gamma") return tvqc::XAxis::gamma;
  if (name == "depolarizing_p") return tvqc::XAxis::depolarizing_p;
  throw UsageError("x-axis: expected gamma or depolarizing_p, got '" + name +
                   "'");
}

std::string fmt_tag(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

// Manifest: ordered key=value lines, written next to the outputs.
class Manifest {
 public:
  explicit Manifest(std::string command) {
    add("tool", "tvqc");
    add("version", tvqc::kVersion);
    add("command", std::move(command));
  }

  void add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, double value) {
    add(std::move(key), tvqc::format_double(value));
  }
  void add(std::string key, std::uint64_t value) {
    add(std::move(key), std::to_string(value));
  }
  void add_output(const std::string& path) {
    add("output." + std::to_string(n_outputs_++), path);
  }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write manifest '" + path + "'");
    }
    for (const auto& [key, value] : entries_) {
      out << key << "=" << value << "\n";
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  int n_outputs_ = 0;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file '" + path + "'");
  }
  return out;
}

struct SeedChoice {
  std::uint64_t value;
  std::string source;  // "flag", "env" or "default"
};

SeedChoice resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value) {
  if (seed_opt->count() > 0) {
    return {flag_value, "flag"};
  }
  if (const char* env = std::getenv("TVQC_SEED")) {
    try {
      return {static_cast<std::uint64_t>(std::stoull(env)), "env"};
    } catch (const std::exception&) {
      throw UsageError(std::string("TVQC_SEED: cannot parse '") + env + "'");
    }
  }
  return {kDefaultSeed, "default"};
}

// ---------------------------------------------------------------------------
// capacity

struct CapacityArgs {
  std::string kind = "AD";
  std::string grid = "0:0.5:0.01";
  std::string out = "capacity.csv";
};

int run_capacity(const CapacityArgs& args) {
  const tvqc::ChannelKind kind = parse_kind(args.kind);
  const std::vector<double> grid = parse_grid(args.grid);
  for (double g : grid) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw UsageError("grid: gamma " + tvqc::format_double(g) +
                       " outside [0, 1]");
    }
  }

  auto out = open_output(args.out);
  out << "gamma,capacity\n";
  for (double g : grid) {
    out << tvqc::format_double(g) << ","
        << tvqc::format_double(tvqc::channel_capacity(kind, g)) << "\n";
  }

  Manifest manifest("capacity");
  manifest.add("kind", std::string(tvqc::to_string(kind)));
  manifest.add("grid", args.grid);
  manifest.add_output(args.out);
  manifest.write(args.out + ".manifest");
  std::cout << "wrote " << args.out << " (" << grid.size() << " rows)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// noise-limit

struct NoiseLimitArgs {
  std::string kind = "AD";
  std::string rate = "1/9";
  std::string out = "noise_limit.txt";
};

int run_noise_limit(const NoiseLimitArgs& args) {
  const tvqc::ChannelKind kind = parse_kind(args.kind);
  const double rate = parse_rate(args.rate);
  const tvqc::NoiseLimit limit = tvqc::noise_limit(kind, rate);

  char line[64];
  std::snprintf(line, sizeof(line), "gamma_star=%.6f", limit.gamma_star);
  std::cout << line << "\n";

  auto out = open_output(args.out);
  out << "kind=" << tvqc::to_string(kind) << "\n";
  out << "rate=" << tvqc::format_double(rate) << "\n";
  out << line << "\n";

  Manifest manifest("noise-limit");
  manifest.add("kind", std::string(tvqc::to_string(kind)));
  manifest.add("rate", rate);
  manifest.add("gamma_star", limit.gamma_star);
  manifest.add_output(args.out);
  manifest.write(args.out + ".manifest");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// outage

struct OutageArgs {
  std::string kind = "AD";
  std::vector<std::string> rates = {"1/9"};
  std::vector<double> cvs = {0.01, 0.10, 0.15, 0.20, 0.25};
  std::string x_axis = "gamma";
  std::string grid = "logspace:0.001:0.6:200";
  std::string out = "outage";
};

int run_outage(const OutageArgs& args) {
  const tvqc::ChannelKind kind = parse_kind(args.kind);
  const tvqc::XAxis axis = parse_axis(args.x_axis);
  const std::vector<double> grid = parse_grid(args.grid);

  for (double x : grid) {
    if (axis == tvqc::XAxis::gamma) {
      if (!(x >= 1e-3 && x <= tvqc::kGammaMax)) {
        throw UsageError("grid: gamma " + tvqc::format_double(x) +
                         " outside [0.001, " +
                         tvqc::format_double(tvqc::kGammaMax) + "]");
      }
    } else {
      bool in_range = x > 0.0;
      if (in_range) {
        try {
          in_range = tvqc::gamma_from_depolarizing(x) <= tvqc::kGammaMax;
        } catch (const tvqc::NoSolutionError&) {
          in_range = false;
        }
      }
      if (!in_range) {
        throw UsageError("grid: depolarizing probability " +
                         tvqc::format_double(x) +
                         " maps outside the valid gamma range");
      }
    }
  }
  for (double cv : args.cvs) {
    if (!(cv >= 0.0)) {
      throw UsageError("cv: must be nonnegative, got " +
                       tvqc::format_double(cv));
    }
  }

  std::vector<double> rates;
  rates.reserve(args.rates.size());
  for (const std::string& r : args.rates) {
    rates.push_back(parse_rate(r));
  }

  Manifest manifest("outage");
  manifest.add("kind", std::string(tvqc::to_string(kind)));
  {
    std::string joined;
    for (std::size_t i = 0; i < rates.size(); ++i) {
      joined += (i ? "," : "") + tvqc::format_double(rates[i]);
    }
    manifest.add("rate", joined);
    joined.clear();
    for (std::size_t i = 0; i < args.cvs.size(); ++i) {
      joined += (i ? "," : "") + tvqc::format_double(args.cvs[i]);
    }
    manifest.add("cv", joined);
  }
  manifest.add("x_axis", std::string(tvqc::to_string(axis)));
  manifest.add("grid", args.grid);

  for (double rate : rates) {
    for (double cv : args.cvs) {
      const tvqc::CurveTable table =
          tvqc::outage_curve(kind, rate, cv, axis, grid);
      const std::string path =
          args.out + ".r" + fmt_tag(rate) + ".cv" + fmt_tag(cv) + ".csv";
      auto out = open_output(path);
      tvqc::write_curve_csv(table, out);
      manifest.add_output(path);
      std::cout << "wrote " << path << "\n";
    }
  }
  manifest.write(args.out + ".manifest");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// mc-validate

struct McValidateArgs {
  std::string kind = "AD";
  std::string rate = "1/9";
  double cv = 0.25;
  double gamma = 0.3;
  std::uint64_t n = 1000000;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
  double mu_t1 = 100.0;
  std::string out = "mc_validate.txt";
};

int run_mc_validate(const McValidateArgs& args, const CLI::Option* seed_opt) {
  const tvqc::ChannelKind kind = parse_kind(args.kind);
  const double rate = parse_rate(args.rate);
  const SeedChoice seed = resolve_seed(seed_opt, args.seed);
  if (!(args.cv > 0.0)) {
    throw UsageError("cv: Monte Carlo validation needs cv > 0");
  }

  const double closed_form =
      tvqc::outage_probability({kind, rate, args.cv, args.gamma});
  const tvqc::McConfig cfg{seed.value, args.n,  args.mu_t1, args.cv,
                           kind,       rate,    args.gamma};
  const tvqc::McEstimate est = tvqc::empirical_outage(cfg, args.workers);

  // Test statistic uses the binomial deviation under the closed-form value;
  // the estimate's own std_err degenerates to 0 when no events occur.
  const double sigma = std::sqrt(closed_form * (1.0 - closed_form) /
                                 static_cast<double>(args.n));
  const double deviation = std::abs(est.p_hat - closed_form);
  const bool pass = sigma > 0.0 ? deviation <= 3.0 * sigma
                                : est.p_hat == closed_form;
  const auto [ci_low, ci_high] = tvqc::confidence_interval(est.p_hat);

  std::ostringstream report;
  report << "kind=" << tvqc::to_string(kind) << "\n";
  report << "rate=" << tvqc::format_double(rate) << "\n";
  report << "cv=" << tvqc::format_double(args.cv) << "\n";
  report << "gamma=" << tvqc::format_double(args.gamma) << "\n";
  report << "n=" << args.n << "\n";
  report << "seed=" << seed.value << "\n";
  report << "closed_form=" << tvqc::format_double(closed_form) << "\n";
  report << "p_hat=" << tvqc::format_double(est.p_hat) << "\n";
  report << "std_err=" << tvqc::format_double(est.std_err) << "\n";
  report << "sigma_closed=" << tvqc::format_double(sigma) << "\n";
  report << "deviation=" << tvqc::format_double(deviation) << "\n";
  report << "confidence_low=" << tvqc::format_double(ci_low) << "\n";
  report << "confidence_high=" << tvqc::format_double(ci_high) << "\n";
  report << "criterion=|p_hat-closed_form| <= 3*sigma_closed\n";
  report << "result=" << (pass ? "PASS" : "FAIL") << "\n";

  std::cout << report.str();
  auto out = open_output(args.out);
  out << report.str();

  Manifest manifest("mc-validate");
  manifest.add("kind", std::string(tvqc::to_string(kind)));
  manifest.add("rate", rate);
  manifest.add("cv", args.cv);
  manifest.add("gamma", args.gamma);
  manifest.add("n", args.n);
  manifest.add("seed", seed.value);
  manifest.add("seed_source", seed.source);
  manifest.add("workers", static_cast<std::uint64_t>(args.workers));
  manifest.add("mu_t1", args.mu_t1);
  manifest.add_output(args.out);
  manifest.write(args.out + ".manifest");

  return pass ? kExitOk : kExitValidationFailed;
}

// ---------------------------------------------------------------------------
// delta-out

struct DeltaOutArgs {
  std::string code_file;
  std::string outage_file;
  double wer = 1e-3;
  std::string out = "delta_out.txt";
};

tvqc::CurveFile read_curve_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot read curve file '" + path + "'");
  }
  try {
    return tvqc::read_curve_csv(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int run_delta_out(const DeltaOutArgs& args) {
  tvqc::CurveFile code = read_curve_file(args.code_file);
  tvqc::CurveFile outage = read_curve_file(args.outage_file);

  // Files without an explicit "# x_axis" metadata line adopt the axis of the
  // one that has it; the library rejects genuinely mismatched axes.
  if (code.x_axis_explicit && !outage.x_axis_explicit) {
    outage.table.x_axis = code.table.x_axis;
  } else if (outage.x_axis_explicit && !code.x_axis_explicit) {
    code.table.x_axis = outage.table.x_axis;
  }

  const double db = tvqc::delta_out(code.table, outage.table, args.wer);

  char line[64];
  std::snprintf(line, sizeof(line), "delta_out_db=%.2f", db);
  std::cout << line << "\n";

  auto out = open_output(args.out);
  out << "code=" << args.code_file << "\n";
  out << "outage=" << args.outage_file << "\n";
  out << "wer=" << tvqc::format_double(args.wer) << "\n";
  out << line << "\n";

  Manifest manifest("delta-out");
  manifest.add("code", args.code_file);
  manifest.add("outage", args.outage_file);
  manifest.add("wer", args.wer);
  manifest.add("delta_out_db", db);
  manifest.add_output(args.out);
  manifest.write(args.out + ".manifest");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tvqc: quantum capacities, noise limits and outage probabilities of "
      "time-varying amplitude damping channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tvqc::kVersion);
  app.set_config("--config", "",
                 "Key=value config file supplying defaults (sections per "
                 "subcommand); command-line flags override");

  CapacityArgs capacity_args;
  auto* capacity = app.add_subcommand(
      "capacity", "Tabulate channel capacity over a damping-parameter grid");
  capacity->add_option("--kind", capacity_args.kind,
                       "Channel kind: AD, ADPTA or ADCTA");
  capacity->add_option("--grid", capacity_args.grid,
                       "Gamma grid: start:stop:step, logspace:start:stop:n, "
                       "or comma list");
  capacity->add_option("--out", capacity_args.out, "Output CSV path");

  NoiseLimitArgs noise_args;
  auto* noise = app.add_subcommand(
      "noise-limit", "Damping parameter at which capacity equals the rate");
  noise->add_option("--kind", noise_args.kind, "Channel kind");
  noise->add_option("--rate", noise_args.rate,
                    "Quantum rate (decimal or fraction like 1/9)");
  noise->add_option("--out", noise_args.out, "Report path");

  OutageArgs outage_args;
  auto* outage = app.add_subcommand(
      "outage", "Closed-form outage probability curves, one CSV per cv");
  outage->add_option("--kind", outage_args.kind, "Channel kind");
  outage
      ->add_option("--rate", outage_args.rates,
                   "Quantum rate(s), decimal or fraction")
      ->delimiter(',');
  outage
      ->add_option("--cv", outage_args.cvs,
                   "Coefficient(s) of variation of T1")
      ->delimiter(',');
  outage->add_option("--x-axis", outage_args.x_axis,
                     "Curve abscissa: gamma or depolarizing_p");
  outage->add_option("--grid", outage_args.grid, "Abscissa grid spec");
  outage->add_option("--out", outage_args.out, "Output file prefix");

  McValidateArgs mc_args;
  auto* mc = app.add_subcommand(
      "mc-validate",
      "Check the closed form against the Monte Carlo outage estimator");
  mc->add_option("--kind", mc_args.kind, "Channel kind");
  mc->add_option("--rate", mc_args.rate, "Quantum rate");
  mc->add_option("--cv", mc_args.cv, "Coefficient of variation of T1 (> 0)");
  mc->add_option("--gamma", mc_args.gamma, "Damping parameter");
  mc->add_option("--n", mc_args.n, "Number of Monte Carlo samples");
  auto* seed_opt = mc->add_option(
      "--seed", mc_args.seed,
      "RNG seed (default from TVQC_SEED env var, then " +
          std::to_string(kDefaultSeed) + ")");
  mc->add_option("--workers", mc_args.workers,
                 "Worker threads (0 = hardware threads); does not affect "
                 "results");
  mc->add_option("--mu-t1", mc_args.mu_t1,
                 "Mean relaxation time in microseconds");
  mc->add_option("--out", mc_args.out, "Report path");

  DeltaOutArgs delta_args;
  auto* delta = app.add_subcommand(
      "delta-out", "Distance in dB between two curves at a WER level");
  delta->add_option("--code", delta_args.code_file, "Code WER curve CSV")
      ->required();
  delta->add_option("--outage", delta_args.outage_file, "Outage curve CSV")
      ->required();
  delta->add_option("--wer", delta_args.wer, "WER level to compare at");
  delta->add_option("--out", delta_args.out, "Report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (capacity->parsed()) return run_capacity(capacity_args);
    if (noise->parsed()) return run_noise_limit(noise_args);
    if (outage->parsed()) return run_outage(outage_args);
    if (mc->parsed()) return run_mc_validate(mc_args, seed_opt);
    if (delta->parsed()) return run_delta_out(delta_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
