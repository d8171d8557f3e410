#pragma once

#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "tvqc/channel.hpp"

namespace tvqc {

// Largest damping parameter for which the closed-form outage probability is
// valid: the algorithm time is capped at the mean relaxation time, which
// corresponds to gamma = 1 - 1/e.
inline constexpr double kGammaMax = 1.0 - 1.0 / std::numbers::e;

// Inputs of the closed-form outage probability. For kind == AD the result is
// the quantum outage probability; for the twirled kinds it is the hashing
// outage probability, an upper bound on the (unknown) quantum one.
struct OutageQuery {
  ChannelKind kind;
  double rate;   // quantum rate R_Q, in (0, 1)
  double cv;     // coefficient of variation of T1, >= 0
  double gamma;  // damping parameter, in [0, kGammaMax]

  void validate() const;  // throws std::domain_error on violation
};

// Damping parameter at which the channel capacity equals the code rate.
struct NoiseLimit {
  ChannelKind kind;
  double rate;
  double gamma_star;
};

enum class XAxis { gamma, depolarizing_p };

std::string_view to_string(XAxis axis);

struct CurvePoint {
  double x;
  double y;
};

// Sampled capacity/outage curve: x strictly increasing, y in [0, 1].
struct CurveTable {
  ChannelKind kind;
  double rate;
  double cv;
  XAxis x_axis;
  std::vector<CurvePoint> points;
};

// Inverts the strictly decreasing capacity map by bisection:
// channel_capacity(kind, gamma_star) == rate to better than 1e-9.
// Throws NoSolutionError if rate is not in (0, 1).
NoiseLimit noise_limit(ChannelKind kind, double rate);

// Critical relaxation time below which a realization is in outage,
// -t_algo / ln(1 - gamma_star), as a function of the algorithm time.
double critical_t1_from_talgo(ChannelKind kind, double rate, double t_algo);

// Critical relaxation time normalized to the damping parameter of the static
// channel with mean relaxation time mu_t1:
// mu_t1 * ln(1 - gamma) / ln(1 - gamma_star). Equals mu_t1 at gamma ==
// gamma_star.
double critical_t1_normalized(ChannelKind kind, double rate, double mu_t1,
                              double gamma);

// Closed-form outage probability,
//   1 - Q((1/cv) * [ln(1-gamma)/ln(1-gamma*) - 1]) / (1 - Q(1/cv)),
// with the kind-appropriate noise limit gamma*. cv == 0 is the static limit,
// the step function 1{gamma >= gamma*}.
double outage_probability(const OutageQuery& query);

// Damping parameter whose Clifford-twirled channel has the given
// depolarizing probability; bisection inverse of
// depolarizing_probability(cta_pmf(gamma)) on [0, 1].
double gamma_from_depolarizing(double p);

// Evaluates outage_probability over the grid. For x_axis ==
// depolarizing_p each grid value is converted to gamma through
// gamma_from_depolarizing first. The grid must be strictly increasing.
CurveTable outage_curve(ChannelKind kind, double rate, double cv, XAxis x_axis,
                        std::span<const double> grid);

// Distance in dB between two curves at the y-level wer_level:
// 10*log10(x_outage / x_code), crossings located by linear interpolation in
// (log10 x, log10 y). Requires matching x-axes and a single bracketing
// segment per curve; throws NotBracketedError when wer_level lies outside a
// curve's y-range.
double delta_out(const CurveTable& code_curve, const CurveTable& outage_curve,
                 double wer_level);

}  // namespace tvqc
