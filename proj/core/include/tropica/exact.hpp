#pragma once

// Exact rational evaluation of the eigen-constructions and the dynamics.
//
// Arc values given as doubles are dyadic rationals, so every closed-form
// quantity (lambda, the reduced vector, interiors, residuals, trajectories) is
// representable exactly. Used where double rounding is amplified: some
// eigenvectors are unstable fixed points of the non-monotone dynamics, and a
// 1e-16 residual can grow by many orders of magnitude over a hundred steps.

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tropica/spectral.hpp"
#include "tropica/traffic_model.hpp"

namespace tropica::exact {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

// Exact value of a finite double.
Rational to_rational(double v);

struct ExactEigenpair {
  Rational lambda;
  std::vector<Rational> x;  // x_1 .. x_{n+m}
  Regime regime = Regime::R1;
};

// Throws RegimeNotApplicable, evaluated on the exact density.
ExactEigenpair eigenpair(const TrafficConfig& config, Regime regime);

Rational residual_EV(const TrafficConfig& config, const ExactEigenpair& pair);
Rational residual_SS(const TrafficConfig& config, const ExactEigenpair& pair);
Rational residual_S(const TrafficConfig& config, const ExactEigenpair& pair);

// max_{k <= steps, i} |x_i^k - (x_i + k lambda)| simulated in exact arithmetic
// from the exact eigenvector of the regime. Requires the EV convention.
Rational linearity_deviation(const TrafficConfig& config, Regime regime, std::size_t steps);

}  // namespace tropica::exact
