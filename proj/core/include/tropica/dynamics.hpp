#pragma once

// Discrete-event dynamics of the junction. The update is implicit in x_n but
// triangular: x_{n+m}^{k+1} is computed from x^k first, then x_n^{k+1} uses it.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "tropica/spectral.hpp"
#include "tropica/traffic_model.hpp"

namespace tropica {

struct StateVector {
  std::vector<double> x;  // x_1 .. x_{n+m}
  std::size_t k = 0;

  friend bool operator==(const StateVector&, const StateVector&) = default;
};

struct Trajectory {
  TrafficConfig config;
  std::vector<StateVector> states;  // consecutive steps, oldest first
};

// One application of the dynamics to x, in any scalar type.
template <typename Real>
std::vector<Real> step_values(const BasicDerivedParams<Real>& p, Convention convention,
                              std::span<const Real> x) {
  const std::size_t n = p.n;
  const std::size_t big = p.n + p.m;
  auto X = [&](std::size_t i) -> const Real& { return x[i - 1]; };
  std::vector<Real> next(big);
  auto Y = [&](std::size_t i) -> Real& { return next[i - 1]; };

  detail::for_each_interior(p.n, p.m, [&](std::size_t q) {
    Y(q) = std::min(Real(p.arc(q - 1) + X(q - 1)), Real(p.arc_bar(q) + X(q + 1)));
  });
  const Real cross = X(1) + X(n + 1);
  Y(big) = std::min(Real(p.arc_bar(big) + cross - X(n)), Real(p.arc(big - 1) + X(big - 1)));
  Y(n) = std::min(Real(p.arc_bar(n) + cross - Y(big)), Real(p.arc(n - 1) + X(n - 1)));
  const Real mid = (X(n) + X(big)) / Real(2);
  const bool ev = convention == Convention::EV;
  const Real& coef_1 = ev ? p.arc(n) : p.arc(big);
  const Real& coef_n1 = ev ? p.arc(big) : p.arc(n);
  Y(1) = std::min(Real(coef_1 + mid), Real(p.arc_bar(1) + X(2)));
  Y(n + 1) = std::min(Real(coef_n1 + mid), Real(p.arc_bar(n + 1) + X(n + 2)));
  return next;
}

StateVector step(const TrafficConfig& config, const StateVector& state);

// Trajectory of steps+1 states starting at x0. keep_last > 0 retains only the
// final keep_last states.
Trajectory simulate(const TrafficConfig& config, const StateVector& x0, std::size_t steps,
                    std::size_t keep_last = 0);

// Streams every state (including x0) to visit without storing the trajectory.
void simulate_each(const TrafficConfig& config, const StateVector& x0, std::size_t steps,
                   const std::function<void(const StateVector&)>& visit);

struct GrowthEstimate {
  std::vector<double> per_coordinate;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

// (x^k - x^{k-window}) / window at the last state. Throws WindowTooLarge.
GrowthEstimate growth_rate(const Trajectory& trajectory, std::size_t window);

// max_{k <= steps, i} |x_i^k - (x_i + k lambda)| starting from pair.x.
// Requires the EV convention (PreconditionViolated otherwise).
double linearity_check(const TrafficConfig& config, const FullEigenpair& pair, std::size_t steps);

void write_trajectory_csv_header(std::ostream& out, std::size_t size);
void write_trajectory_csv_row(std::ostream& out, const StateVector& state);
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace tropica
