#pragma once

#include <cstdint>
#include <utility>

#include "tvqc/channel.hpp"

namespace tvqc {

// One empirical-outage run: everything that determines the estimate,
// including the seed. Identical configs give bit-identical estimates
// regardless of how many workers execute the chunks.
struct McConfig {
  std::uint64_t seed;
  std::uint64_t n_samples;  // >= 1
  double mu_t1;             // mean relaxation time, > 0
  double cv;                // coefficient of variation, > 0 for sampling
  ChannelKind kind;
  double rate;   // quantum rate R_Q
  double gamma;  // static-channel damping parameter (normalization point)
};

struct McEstimate {
  double p_hat;
  std::uint64_t n_samples;
  double std_err;  // binomial standard error sqrt(p_hat (1-p_hat) / n)
};

// Empirical outage probability: draws T1 realizations from
// TruncatedGaussian(mu_t1, cv*mu_t1), maps each through
// gamma(w) = damping_from_t1(t_algo_for_gamma(mu_t1, gamma), t1(w)) and
// counts the event channel_capacity(kind, gamma(w)) < rate. The equivalent
// threshold event t1(w) < critical_t1_normalized(...) is counted alongside
// and the two counts are required to agree sample by sample.
//
// workers == 0 uses the hardware thread count. The sample stream is split
// into fixed-size chunks with per-chunk substreams, so the result does not
// depend on the worker count.
McEstimate empirical_outage(const McConfig& cfg, unsigned workers = 0);

// Monte Carlo block-count rule of thumb: ceil(100 / wer) transmitted blocks
// to estimate a word error rate around wer. Requires 0 < wer <= 1.
std::uint64_t blocks_for_wer(double wer);

// (0.8 p_hat, 1.25 p_hat): the interval that contains the true value with
// probability 0.95 when the estimate used the rule-of-thumb block count.
// The interval shape comes from word-error-rate estimation practice and is
// applied to outage estimates unchanged.
std::pair<double, double> confidence_interval(double p_hat);

}  // namespace tvqc
