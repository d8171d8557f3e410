#pragma once

#include <optional>
#include <string_view>

namespace tvqc {

// Which channel family a capacity / noise-limit / outage computation refers
// to: the amplitude damping channel itself, or its Pauli / Clifford twirl
// approximations.
enum class ChannelKind { AD, ADPTA, ADCTA };

std::string_view to_string(ChannelKind kind);
std::optional<ChannelKind> channel_kind_from_string(std::string_view name);

// Probability mass function of a Pauli channel.
struct PauliPmf {
  double p_i;
  double p_x;
  double p_y;
  double p_z;

  double sum() const { return p_i + p_x + p_y + p_z; }
};

// gamma = 1 - exp(-t_algo / t1). Requires t_algo >= 0, t1 > 0.
double damping_from_t1(double t_algo, double t1);

// Inverse of damping_from_t1 at t1 = mu_t1: the algorithm time that reaches
// damping gamma on the static channel, -mu_t1 * ln(1 - gamma).
double t_algo_for_gamma(double mu_t1, double gamma);

// Pauli twirl of the amplitude damping channel:
// p_x = p_y = gamma/4, p_z = ((1 - sqrt(1-gamma))/2)^2.
PauliPmf pta_pmf(double gamma);

// Clifford twirl (depolarizing): p_i = ((1 + sqrt(1-gamma))/2)^2,
// p_x = p_y = p_z = (1 - p_i)/3.
PauliPmf cta_pmf(double gamma);

// Asymmetry parameter alpha = p_z / p_x. Requires p_x > 0.
double asymmetry(const PauliPmf& pmf);

// Total non-identity probability p = 1 - p_i; for a depolarizing pmf this is
// 3 * p_x.
double depolarizing_probability(const PauliPmf& pmf);

}  // namespace tvqc
