#include "tvqc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tvqc/errors.hpp"

namespace tvqc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

}  // namespace

double q_function(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("q_function: input must be finite");
  }
  return 0.5 * std::erfc(x / kSqrt2);
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("binary_entropy: argument must be in [0, 1]");
  }
  if (x == 0.0 || x == 1.0) {
    return 0.0;
  }
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double discrete_entropy(std::span<const double> p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) {
      throw std::domain_error("discrete_entropy: negative component");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::domain_error("discrete_entropy: components must sum to 1");
  }
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) {
      h -= v * std::log2(v);
    }
  }
  return h;
}

TruncatedGaussian::TruncatedGaussian(double mu, double sigma)
    : mu(mu), sigma(sigma) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::domain_error("TruncatedGaussian: mu must be positive");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("TruncatedGaussian: sigma must be nonnegative");
  }
}

double TruncatedGaussian::pdf(double t) const {
  if (sigma == 0.0) {
    throw DegenerateDistributionError(
        "TruncatedGaussian::pdf: sigma == 0 is a point mass at mu");
  }
  if (t < 0.0) {
    return 0.0;
  }
  const double z = (t - mu) / sigma;
  const double normalization = 1.0 - q_function(mu / sigma);
  return std::exp(-0.5 * z * z) / (sigma * kSqrt2Pi * normalization);
}

double TruncatedGaussian::cdf(double t) const {
  if (sigma == 0.0) {
    throw DegenerateDistributionError(
        "TruncatedGaussian::cdf: sigma == 0 is a point mass at mu");
  }
  if (t <= 0.0) {
    return 0.0;
  }
  const double q_trunc = q_function(mu / sigma);
  const double value =
      (1.0 - q_function((t - mu) / sigma) - q_trunc) / (1.0 - q_trunc);
  return std::clamp(value, 0.0, 1.0);
}

double TruncatedGaussian::sample(Rng& rng) const {
  if (sigma == 0.0) {
    return mu;
  }
  double t;
  do {
    t = mu + sigma * rng.next_normal();
  } while (t <= 0.0);
  return t;
}

}  // namespace tvqc
