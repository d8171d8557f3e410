#include "tvqc/capacity.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "tvqc/stats.hpp"

namespace tvqc {

namespace {

// Golden-section search for the maximum of a unimodal function on [lo, hi].
// Returns the abscissa of the maximum to within xtol.
template <typename F>
double golden_section_max(F f, double lo, double hi, double xtol) {
  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

CapacityValue ad_capacity(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::domain_error("ad_capacity: gamma must be in [0, 1]");
  }
  if (gamma >= 0.5) {
    return CapacityValue{0.0, std::nullopt};
  }
  const auto coherent_info = [gamma](double xi) {
    return binary_entropy((1.0 - gamma) * xi) - binary_entropy(gamma * xi);
  };
  const double xi_star = golden_section_max(coherent_info, 0.0, 1.0, 1e-10);
  return CapacityValue{coherent_info(xi_star), xi_star};
}

CapacityValue hashing_bound(const PauliPmf& pmf) {
  const std::array<double, 4> p{pmf.p_i, pmf.p_x, pmf.p_y, pmf.p_z};
  return CapacityValue{1.0 - discrete_entropy(p), std::nullopt};
}

double channel_capacity(ChannelKind kind, double gamma) {
  switch (kind) {
    case ChannelKind::AD:
      return ad_capacity(gamma).value;
    case ChannelKind::ADPTA:
      return hashing_bound(pta_pmf(gamma)).value;
    case ChannelKind::ADCTA:
      return hashing_bound(cta_pmf(gamma)).value;
  }
  throw std::domain_error("channel_capacity: unknown channel kind");
}

double rayleigh_outage(double rate, double snr) {
  if (!(rate >= 0.0)) {
    throw std::domain_error("rayleigh_outage: rate must be nonnegative");
  }
  if (!(snr > 0.0)) {
    throw std::domain_error("rayleigh_outage: snr must be positive");
  }
  return -std::expm1(-(std::exp2(rate) - 1.0) / snr);
}

}  // namespace tvqc
