#pragma once

// Verification machinery that does not share code paths with the closed-form
// constructions it checks.

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "tropica/minplus.hpp"
#include "tropica/spectral.hpp"
#include "tropica/traffic_model.hpp"

namespace tropica::oracle {

struct RootSet {
  std::vector<double> points;                         // sorted ascending
  std::vector<std::pair<double, double>> intervals;  // segments where F vanishes identically
};

// Every root of the piecewise-linear characteristic function, found by
// scanning the segments between breakpoints of its four affine pieces.
RootSet scalar_roots(const DerivedParams& params);

// Iterates S <- I + A S from I until stationary. Throws NoConvergence.
MinPlusMatrix star_fixed_point(const MinPlusMatrix& a, std::size_t max_iters = 10000);

using SystemResidual =
    std::function<double(const DerivedParams&, double lambda, std::span<const double> x)>;

// For n = m = 2 the eigenproblem and the simplified system are the same four
// equations: compares their residuals on random (lambda, x) samples and returns
// whether the largest discrepancy is <= 1e-12. Throws WrongSize.
bool ev_ss_coincide_base(const TrafficConfig& config, std::size_t samples = 1000,
                         std::uint64_t seed = 0x5eed, const SystemResidual& ss = {});

struct ConfiguredEigenpair {
  TrafficConfig config;
  FullEigenpair pair;
};

// True iff every lambda <= 1/4 + 1e-12. Each pair must solve the eigenproblem
// to within tolerance (PreconditionViolated otherwise).
bool lambda_bound_check(std::span<const ConfiguredEigenpair> pairs,
                        double tolerance = kDefaultTolerance);

}  // namespace tropica::oracle
