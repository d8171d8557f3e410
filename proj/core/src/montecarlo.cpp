#include "tvqc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tvqc/capacity.hpp"
#include "tvqc/errors.hpp"
#include "tvqc/outage.hpp"
#include "tvqc/rng.hpp"
#include "tvqc/stats.hpp"

namespace tvqc {

namespace {

// Chunk size is part of the reproducibility contract: sample j of chunk c is
// always drawn from substream(seed, c), independent of worker count.
constexpr std::uint64_t kChunkSize = 1 << 16;

struct ChunkCounts {
  std::uint64_t capacity_events = 0;
  std::uint64_t threshold_events = 0;
};

void validate(const McConfig& cfg) {
  if (cfg.n_samples < 1) {
    throw std::domain_error("empirical_outage: n_samples must be >= 1");
  }
  if (!(cfg.mu_t1 > 0.0)) {
    throw std::domain_error("empirical_outage: mu_t1 must be positive");
  }
  if (cfg.cv == 0.0) {
    throw DegenerateDistributionError(
        "empirical_outage: cv == 0 is the static channel; the closed-form "
        "step function applies instead of sampling");
  }
  if (!(cfg.cv > 0.0)) {
    throw std::domain_error("empirical_outage: cv must be positive");
  }
  OutageQuery{cfg.kind, cfg.rate, cfg.cv, cfg.gamma}.validate();
}

}  // namespace

McEstimate empirical_outage(const McConfig& cfg, unsigned workers) {
  validate(cfg);

  const TruncatedGaussian t1_dist(cfg.mu_t1, cfg.cv * cfg.mu_t1);
  const double t_algo = t_algo_for_gamma(cfg.mu_t1, cfg.gamma);
  const double t1_critical =
      critical_t1_normalized(cfg.kind, cfg.rate, cfg.mu_t1, cfg.gamma);
  const ChannelKind kind = cfg.kind;
  const double rate = cfg.rate;

  const std::uint64_t n_chunks = (cfg.n_samples + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkCounts> counts(n_chunks);

  const auto run_chunk = [&](std::uint64_t chunk) {
    const std::uint64_t begin = chunk * kChunkSize;
    const std::uint64_t end = std::min(begin + kChunkSize, cfg.n_samples);
    Rng rng = Rng::substream(cfg.seed, chunk);
    ChunkCounts& c = counts[chunk];
    for (std::uint64_t i = begin; i < end; ++i) {
      const double t1 = t1_dist.sample(rng);
      const double gamma_realized = damping_from_t1(t_algo, t1);
      const bool capacity_event =
          channel_capacity(kind, gamma_realized) < rate;
      const bool threshold_event = t1 < t1_critical;
      c.capacity_events += capacity_event;
      c.threshold_events += threshold_event;
    }
  };

  unsigned n_workers = workers != 0 ? workers
                                     : std::max(1u, std::thread::hardware_concurrency());
  n_workers = static_cast<unsigned>(
      std::min<std::uint64_t>(n_workers, n_chunks));
  if (n_workers <= 1) {
    for (std::uint64_t chunk = 0; chunk < n_chunks; ++chunk) {
      run_chunk(chunk);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t chunk = w; chunk < n_chunks; chunk += n_workers) {
          run_chunk(chunk);
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  std::uint64_t capacity_events = 0;
  std::uint64_t threshold_events = 0;
  for (const ChunkCounts& c : counts) {
    capacity_events += c.capacity_events;
    threshold_events += c.threshold_events;
  }
  if (capacity_events != threshold_events) {
    // The monotonicity chain makes these the same event; a mismatch means a
    // capacity or inversion bug, not sampling noise.
    throw std::logic_error(
        "empirical_outage: capacity-comparison and T1-threshold event counts "
        "disagree");
  }

  const double n = static_cast<double>(cfg.n_samples);
  const double p_hat = static_cast<double>(capacity_events) / n;
  const double std_err = std::sqrt(p_hat * (1.0 - p_hat) / n);
  return McEstimate{p_hat, cfg.n_samples, std_err};
}

std::uint64_t blocks_for_wer(double wer) {
  if (!(wer > 0.0 && wer <= 1.0)) {
    throw std::domain_error("blocks_for_wer: wer must be in (0, 1]");
  }
  return static_cast<std::uint64_t>(std::ceil(100.0 / wer));
}

std::pair<double, double> confidence_interval(double p_hat) {
  if (!(p_hat >= 0.0 && p_hat <= 1.0)) {
    throw std::domain_error("confidence_interval: p_hat must be in [0, 1]");
  }
  return {0.8 * p_hat, 1.25 * p_hat};
}

}  // namespace tvqc
