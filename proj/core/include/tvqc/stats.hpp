#pragma once

#include <span>

#include "tvqc/rng.hpp"

namespace tvqc {

// Gaussian upper-tail probability Q(x) = P(N(0,1) > x), evaluated as
// 0.5*erfc(x/sqrt(2)). Relative accuracy better than 1e-12 for |x| <= 8,
// graceful underflow to 0 for large x. Throws std::domain_error on
// non-finite input.
double q_function(double x);

// Binary entropy H2(x) in bits, with 0*log2(0) == 0. Domain [0, 1].
double binary_entropy(double x);

// Shannon entropy -sum p_j log2 p_j of a probability vector. Components must
// be nonnegative and sum to 1 within 1e-12.
double discrete_entropy(std::span<const double> p);

// Relaxation-time model: a Gaussian N(mu, sigma^2) truncated to [0, inf),
// renormalized by 1/(1 - Q(mu/sigma)). sigma == 0 is the degenerate point
// mass at mu; pdf/cdf refuse it, sample returns mu exactly.
struct TruncatedGaussian {
  double mu;     // mean relaxation time, microseconds, > 0
  double sigma;  // standard deviation, microseconds, >= 0

  TruncatedGaussian(double mu, double sigma);

  double cv() const { return sigma / mu; }

  double pdf(double t) const;
  double cdf(double t) const;

  // Rejection sampling from the untruncated normal (redraw on t <= 0);
  // for cv <= 0.3 the acceptance rate exceeds 1 - 1e-10.
  double sample(Rng& rng) const;
};

}  // namespace tvqc
