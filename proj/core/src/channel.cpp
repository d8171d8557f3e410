#include "tvqc/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tvqc {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AD:
      return "AD";
    case ChannelKind::ADPTA:
      return "ADPTA";
    case ChannelKind::ADCTA:
      return "ADCTA";
  }
  return "?";
}

std::optional<ChannelKind> channel_kind_from_string(std::string_view name) {
  if (name == "AD") return ChannelKind::AD;
  if (name == "ADPTA") return ChannelKind::ADPTA;
  if (name == "ADCTA") return ChannelKind::ADCTA;
  return std::nullopt;
}

double damping_from_t1(double t_algo, double t1) {
  if (!(t1 > 0.0)) {
    throw std::domain_error("damping_from_t1: t1 must be positive");
  }
  if (!(t_algo >= 0.0)) {
    throw std::domain_error("damping_from_t1: t_algo must be nonnegative");
  }
  return -std::expm1(-t_algo / t1);
}

double t_algo_for_gamma(double mu_t1, double gamma) {
  if (!(mu_t1 > 0.0)) {
    throw std::domain_error("t_algo_for_gamma: mu_t1 must be positive");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::domain_error("t_algo_for_gamma: gamma must be in [0, 1)");
  }
  return -mu_t1 * std::log1p(-gamma);
}

namespace {

void check_gamma(double gamma, const char* who) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::domain_error(std::string(who) + ": gamma must be in [0, 1]");
  }
}

}  // namespace

PauliPmf pta_pmf(double gamma) {
  check_gamma(gamma, "pta_pmf");
  const double p_x = gamma / 4.0;
  const double half_gap = 0.5 * (1.0 - std::sqrt(1.0 - gamma));
  const double p_z = half_gap * half_gap;
  return PauliPmf{1.0 - p_x - p_x - p_z, p_x, p_x, p_z};
}

PauliPmf cta_pmf(double gamma) {
  check_gamma(gamma, "cta_pmf");
  const double half_sum = 0.5 * (1.0 + std::sqrt(1.0 - gamma));
  const double p_i = half_sum * half_sum;
  const double p_k = (1.0 - p_i) / 3.0;
  return PauliPmf{p_i, p_k, p_k, p_k};
}

double asymmetry(const PauliPmf& pmf) {
  if (!(pmf.p_x > 0.0)) {
    throw std::domain_error("asymmetry: undefined for p_x == 0");
  }
  return pmf.p_z / pmf.p_x;
}

double depolarizing_probability(const PauliPmf& pmf) {
  return 1.0 - pmf.p_i;
}

}  // namespace tvqc
