#include "tvqc/outage.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tvqc/capacity.hpp"
#include "tvqc/errors.hpp"
#include "tvqc/stats.hpp"

namespace tvqc {

namespace {

// Bisection solve of f(x) == 0 for monotone f with f(lo) and f(hi) of
// opposite sign; runs the bracket down to width xtol.
template <typename F>
double bisect(F f, double lo, double hi, double xtol) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw NoSolutionError("bisect: bracket does not contain a sign change");
  }
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_query_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= kGammaMax)) {
    std::ostringstream msg;
    msg << "outage: gamma must be in [0, " << kGammaMax
        << "] (algorithm time capped at the mean relaxation time), got "
        << gamma;
    throw std::domain_error(msg.str());
  }
}

}  // namespace

std::string_view to_string(XAxis axis) {
  return axis == XAxis::gamma ? "gamma" : "depolarizing_p";
}

void OutageQuery::validate() const {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw std::domain_error("outage: rate must be in (0, 1)");
  }
  if (!(cv >= 0.0) || !std::isfinite(cv)) {
    throw std::domain_error("outage: cv must be nonnegative and finite");
  }
  check_query_gamma(gamma);
}

NoiseLimit noise_limit(ChannelKind kind, double rate) {
  if (!(rate > 0.0 && rate < 1.0)) {
    std::ostringstream msg;
    msg << "noise_limit: no solution for rate " << rate
        << "; achievable rates are in (0, 1)";
    throw NoSolutionError(msg.str());
  }
  // Capacity is 1 at gamma == 0 for every kind and crosses below any rate in
  // (0, 1) before the bracket end: the AD capacity is 0 at 1/2, the hashing
  // bound is -1 at 1.
  const double hi = kind == ChannelKind::AD ? 0.5 : 1.0;
  const double gamma_star = bisect(
      [kind, rate](double g) { return channel_capacity(kind, g) - rate; }, 0.0,
      hi, 1e-13);
  return NoiseLimit{kind, rate, gamma_star};
}

double critical_t1_from_talgo(ChannelKind kind, double rate, double t_algo) {
  if (!(t_algo > 0.0)) {
    throw std::domain_error("critical_t1_from_talgo: t_algo must be positive");
  }
  return -t_algo / std::log1p(-noise_limit(kind, rate).gamma_star);
}

double critical_t1_normalized(ChannelKind kind, double rate, double mu_t1,
                              double gamma) {
  if (!(mu_t1 > 0.0)) {
    throw std::domain_error("critical_t1_normalized: mu_t1 must be positive");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::domain_error("critical_t1_normalized: gamma must be in [0, 1)");
  }
  const double gamma_star = noise_limit(kind, rate).gamma_star;
  return mu_t1 * std::log1p(-gamma) / std::log1p(-gamma_star);
}

namespace {

double closed_form_outage(double gamma, double cv, double gamma_star) {
  if (cv == 0.0) {
    // Static channel: T1 is deterministic, the outage event is all-or-nothing.
    return gamma >= gamma_star ? 1.0 : 0.0;
  }
  const double ratio = std::log1p(-gamma) / std::log1p(-gamma_star);
  const double inv_cv = 1.0 / cv;
  const double p =
      1.0 - q_function(inv_cv * (ratio - 1.0)) / (1.0 - q_function(inv_cv));
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double outage_probability(const OutageQuery& query) {
  query.validate();
  const double gamma_star = noise_limit(query.kind, query.rate).gamma_star;
  return closed_form_outage(query.gamma, query.cv, gamma_star);
}

double gamma_from_depolarizing(double p) {
  // depolarizing_probability(cta_pmf(gamma)) increases from 0 to 3/4 on
  // [0, 1].
  if (!(p >= 0.0 && p <= 0.75)) {
    std::ostringstream msg;
    msg << "gamma_from_depolarizing: no solution for p " << p
        << "; Clifford-twirled depolarizing probabilities lie in [0, 0.75]";
    throw NoSolutionError(msg.str());
  }
  if (p == 0.0) return 0.0;
  return bisect(
      [p](double g) { return depolarizing_probability(cta_pmf(g)) - p; }, 0.0,
      1.0, 1e-13);
}

CurveTable outage_curve(ChannelKind kind, double rate, double cv, XAxis x_axis,
                        std::span<const double> grid) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::domain_error("outage_curve: grid must be strictly increasing");
    }
  }
  // One noise-limit inversion serves the whole curve; the per-point value is
  // bit-identical to a standalone outage_probability call.
  const double gamma_star = noise_limit(kind, rate).gamma_star;
  CurveTable table{kind, rate, cv, x_axis, {}};
  table.points.reserve(grid.size());
  for (double x : grid) {
    const double gamma =
        x_axis == XAxis::gamma ? x : gamma_from_depolarizing(x);
    OutageQuery{kind, rate, cv, gamma}.validate();
    table.points.push_back(
        CurvePoint{x, closed_form_outage(gamma, cv, gamma_star)});
  }
  return table;
}

namespace {

// Abscissa where the sampled curve crosses the level, by linear
// interpolation in (log10 x, log10 y) on the unique bracketing segment.
double curve_x_at_level(const CurveTable& curve, double level,
                        const char* label) {
  if (!(level > 0.0)) {
    throw std::domain_error("delta_out: level must be positive");
  }
  if (curve.points.size() < 2) {
    throw std::domain_error("delta_out: curve needs at least two points");
  }

  double y_min = curve.points.front().y;
  double y_max = y_min;
  long segment = -1;
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const CurvePoint a = curve.points[i];
    const CurvePoint b = curve.points[i + 1];
    y_min = std::min(y_min, std::min(a.y, b.y));
    y_max = std::max(y_max, std::max(a.y, b.y));
    const bool brackets = (a.y <= level && level <= b.y) ||
                          (b.y <= level && level <= a.y);
    if (!brackets || a.y == b.y) {
      continue;
    }
    if (segment >= 0 && static_cast<std::size_t>(segment) + 1 != i) {
      throw std::domain_error(
          std::string("delta_out: ") + label +
          " curve is not monotone around the requested level");
    }
    // Adjacent segments can both report the crossing when a sample sits
    // exactly on the level; keep the first.
    if (segment < 0) {
      segment = static_cast<long>(i);
    }
  }
  if (segment < 0) {
    std::ostringstream msg;
    msg << "delta_out: level " << level << " is not bracketed by the " << label
        << " curve (y ranges over [" << y_min << ", " << y_max << "])";
    throw NotBracketedError(msg.str());
  }

  const CurvePoint a = curve.points[static_cast<std::size_t>(segment)];
  const CurvePoint b = curve.points[static_cast<std::size_t>(segment) + 1];
  if (a.y == level) return a.x;
  if (b.y == level) return b.x;
  if (!(a.x > 0.0 && b.x > 0.0 && a.y > 0.0 && b.y > 0.0)) {
    throw std::domain_error(
        std::string("delta_out: ") + label +
        " curve has a nonpositive sample at the bracketing segment; cannot "
        "interpolate on log axes");
  }
  const double t = (std::log10(level) - std::log10(a.y)) /
                   (std::log10(b.y) - std::log10(a.y));
  return std::pow(10.0, std::log10(a.x) + t * (std::log10(b.x) - std::log10(a.x)));
}

}  // namespace

double delta_out(const CurveTable& code_curve, const CurveTable& outage_curve,
                 double wer_level) {
  if (code_curve.x_axis != outage_curve.x_axis) {
    throw std::domain_error("delta_out: curves use different x axes");
  }
  const double x_out = curve_x_at_level(outage_curve, wer_level, "outage");
  const double x_code = curve_x_at_level(code_curve, wer_level, "code");
  return 10.0 * (std::log10(x_out) - std::log10(x_code));
}

}  // namespace tvqc
