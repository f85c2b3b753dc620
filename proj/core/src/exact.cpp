#include "tropica/exact.hpp"

#include <algorithm>
#include <cmath>

#include "tropica/dynamics.hpp"

namespace tropica::exact {

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw UndefinedOperation("to_rational: value is not finite");
  int exponent = 0;
  const double mantissa = std::frexp(v, &exponent);
  // mantissa * 2^53 is an integer for every double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational r(scaled);
  const int shift = exponent - 53;
  Rational power(1);
  const Rational two(2);
  for (int i = 0; i < std::abs(shift); ++i) power *= two;
  return shift >= 0 ? r * power : r / power;
}

namespace {

BasicDerivedParams<Rational> exact_params(const TrafficConfig& config) {
  const auto violations = validate(config);
  if (!violations.empty()) throw InvalidConfig("invalid config: " + violations.front().message);
  return derive_as<Rational>(config, to_rational);
}

}  // namespace

ExactEigenpair eigenpair(const TrafficConfig& config, Regime regime) {
  const auto p = exact_params(config);
  if (!regime_applies(p, regime)) {
    throw RegimeNotApplicable("regime " + std::string(to_string(regime)) +
                              " does not apply at the exact density");
  }
  ExactEigenpair out;
  out.regime = regime;
  out.lambda = regime_lambda(p, regime);
  out.x = interior_closed_form(p, out.lambda, regime_vector(p, regime, out.lambda));
  return out;
}

Rational residual_EV(const TrafficConfig& config, const ExactEigenpair& pair) {
  return detail::residual_ev<Rational>(exact_params(config), pair.lambda, pair.x);
}

Rational residual_SS(const TrafficConfig& config, const ExactEigenpair& pair) {
  return detail::residual_ss<Rational>(exact_params(config), pair.lambda, pair.x);
}

Rational residual_S(const TrafficConfig& config, const ExactEigenpair& pair) {
  const std::size_t n = config.n;
  const std::size_t big = config.size();
  return detail::residual_junction<Rational>(
      exact_params(config), pair.lambda,
      detail::Reduced<Rational>{pair.x[0], pair.x[n - 1], pair.x[n], pair.x[big - 1]});
}

Rational linearity_deviation(const TrafficConfig& config, Regime regime, std::size_t steps) {
  if (config.convention != Convention::EV) {
    throw PreconditionViolated("linearity_deviation requires the EV junction convention");
  }
  const auto p = exact_params(config);
  const ExactEigenpair pair = eigenpair(config, regime);
  std::vector<Rational> state = pair.x;
  Rational worst(0);
  Rational shift(0);
  for (std::size_t k = 1; k <= steps; ++k) {
    state = step_values<Rational>(p, Convention::EV, state);
    shift += pair.lambda;
    for (std::size_t i = 0; i < state.size(); ++i) {
      worst = std::max(worst, detail::abs_of(Rational(state[i] - (pair.x[i] + shift))));
    }
  }
  return worst;
}

}  // namespace tropica::exact
