#include "tropica/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>

#include "tropica/format.hpp"

namespace tropica {

namespace {

void require_state(const TrafficConfig& config, const StateVector& state) {
  if (state.x.size() != config.size()) {
    throw DimensionMismatch("state has " + std::to_string(state.x.size()) + " entries, expected " +
                            std::to_string(config.size()));
  }
}

}  // namespace

StateVector step(const TrafficConfig& config, const StateVector& state) {
  require_state(config, state);
  const DerivedParams params = derive(config);
  return {step_values<double>(params, config.convention, state.x), state.k + 1};
}

void simulate_each(const TrafficConfig& config, const StateVector& x0, std::size_t steps,
                   const std::function<void(const StateVector&)>& visit) {
  require_state(config, x0);
  const DerivedParams params = derive(config);
  StateVector current = x0;
  visit(current);
  for (std::size_t s = 0; s < steps; ++s) {
    current.x = step_values<double>(params, config.convention, current.x);
    ++current.k;
    visit(current);
  }
}

Trajectory simulate(const TrafficConfig& config, const StateVector& x0, std::size_t steps,
                    std::size_t keep_last) {
  Trajectory traj{config, {}};
  std::deque<StateVector> tail;
  simulate_each(config, x0, steps, [&](const StateVector& s) {
    tail.push_back(s);
    if (keep_last > 0 && tail.size() > keep_last) tail.pop_front();
  });
  traj.states.assign(std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
  return traj;
}

GrowthEstimate growth_rate(const Trajectory& trajectory, std::size_t window) {
  const auto& states = trajectory.states;
  if (window == 0 || window >= states.size()) {
    throw WindowTooLarge("window " + std::to_string(window) + " needs a trajectory longer than " +
                         std::to_string(states.size()) + " states");
  }
  const StateVector& last = states.back();
  const StateVector& first = states[states.size() - 1 - window];
  GrowthEstimate g;
  g.per_coordinate.resize(last.x.size());
  const double span = static_cast<double>(last.k - first.k);
  for (std::size_t i = 0; i < last.x.size(); ++i) {
    g.per_coordinate[i] = (last.x[i] - first.x[i]) / span;
  }
  const auto [lo, hi] = std::minmax_element(g.per_coordinate.begin(), g.per_coordinate.end());
  g.min = *lo;
  g.max = *hi;
  g.mean = std::accumulate(g.per_coordinate.begin(), g.per_coordinate.end(), 0.0) /
           static_cast<double>(g.per_coordinate.size());
  return g;
}

double linearity_check(const TrafficConfig& config, const FullEigenpair& pair, std::size_t steps) {
  if (config.convention != Convention::EV) {
    throw PreconditionViolated("linearity_check requires the EV junction convention");
  }
  double worst = 0.0;
  simulate_each(config, StateVector{pair.x, 0}, steps, [&](const StateVector& s) {
    const double shift = static_cast<double>(s.k) * pair.lambda;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      worst = std::max(worst, std::abs(s.x[i] - (pair.x[i] + shift)));
    }
  });
  return worst;
}

void write_trajectory_csv_header(std::ostream& out, std::size_t size) {
  out << 'k';
  for (std::size_t i = 1; i <= size; ++i) out << ",x_" << i;
  out << '\n';
}

void write_trajectory_csv_row(std::ostream& out, const StateVector& state) {
  out << state.k;
  for (double v : state.x) out << ',' << format_number(v);
  out << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  write_trajectory_csv_header(out, trajectory.config.size());
  for (const StateVector& s : trajectory.states) write_trajectory_csv_row(out, s);
}

}  // namespace tropica
