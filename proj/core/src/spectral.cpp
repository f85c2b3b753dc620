#include "tropica/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tropica {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::R1: return "R1";
    case Regime::R2: return "R2";
    case Regime::R3: return "R3";
    case Regime::R4: return "R4";
  }
  return "?";
}

std::string_view to_string(Region r) {
  static constexpr std::array<std::string_view, 6> kNames{"A", "B", "C", "D", "E", "F"};
  return kNames[static_cast<std::size_t>(r)];
}

CharacteristicPieces characteristic_pieces(const DerivedParams& p) {
  return {
      {p.d, -(1.0 + p.rho)},
      {0.25, -1.0},
      {p.r - p.d, -(2.0 * p.r - 1.0 + p.rho)},
      {0.0, -1.0},
  };
}

double characteristic(double lambda, const DerivedParams& params) {
  return characteristic_as(lambda, params);
}

std::vector<Regime> applicable_regimes(const DerivedParams& params) {
  std::vector<Regime> out;
  for (Regime r : kAllRegimes)
    if (regime_applies(params, r)) out.push_back(r);
  return out;
}

std::vector<EigenValue> eigen_set(const DerivedParams& params) {
  constexpr double kRootTolerance = 1e-12;
  constexpr double kDedupSpacing = 1e-9;
  std::vector<EigenValue> out;
  for (Regime regime : applicable_regimes(params)) {
    const double lambda = regime_lambda(params, regime);
    if (std::abs(characteristic(lambda, params)) > kRootTolerance) {
      std::ostringstream os;
      os << "eigen_set: regime " << to_string(regime) << " produced lambda = " << lambda
         << " with F(lambda) = " << characteristic(lambda, params);
      throw std::logic_error(os.str());
    }
    const bool seen = std::any_of(out.begin(), out.end(), [&](const EigenValue& e) {
      return std::abs(e.lambda - lambda) <= kDedupSpacing;
    });
    if (!seen) out.push_back({lambda, regime});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const EigenValue& a, const EigenValue& b) { return a.lambda > b.lambda; });
  return out;
}

std::array<RegionLabel, 6> region_intervals(const DerivedParams& p) {
  const double lo_bd = std::min(p.d1, p.r);
  const double hi_de = std::max(p.d2, p.r);
  return {{
      {Region::A, 0.0, lo_bd},
      {Region::B, lo_bd, p.d1},
      {Region::C, p.d1, std::min(p.d2, p.r)},
      {Region::D, std::max(p.d1, p.r), p.d2},
      {Region::E, p.d2, hi_de},
      {Region::F, hi_de, 1.0},
  }};
}

RegionLabel classify_region(const DerivedParams& params) {
  const auto regions = region_intervals(params);
  for (const RegionLabel& region : regions) {
    if (region.label == Region::F) break;
    if (region.lo <= params.d && params.d < region.hi) return region;
  }
  return regions.back();
}

ReducedEigenpair reduced_eigenvector(const DerivedParams& params, Regime regime) {
  if (!regime_applies(params, regime)) {
    std::ostringstream os;
    os << "regime " << to_string(regime) << " does not apply at d = " << params.d << " (n = "
       << params.n << ", m = " << params.m << ")";
    throw RegimeNotApplicable(os.str());
  }
  const double lambda = regime_lambda(params, regime);
  const auto v = regime_vector(params, regime, lambda);
  return {lambda, v.x1, v.xn, v.xn1, v.xnm, regime};
}

InteriorSystem interior_system(const DerivedParams& p, const ReducedEigenpair& pair) {
  const std::size_t n = p.n;
  const std::size_t big = p.n + p.m;
  InteriorSystem sys;
  detail::for_each_interior(p.n, p.m, [&](std::size_t i) { sys.positions.push_back(i); });
  const std::size_t size = sys.positions.size();
  sys.matrix = MinPlusMatrix(size, size);
  sys.rhs.assign(size, kZero);

  auto boundary_value = [&](std::size_t pos) -> double {
    if (pos == 1) return pair.x1;
    if (pos == n) return pair.xn;
    if (pos == n + 1) return pair.xn1;
    return pair.xnm;  // pos == big
  };
  auto is_boundary = [&](std::size_t pos) {
    return pos == 1 || pos == n || pos == n + 1 || pos == big;
  };
  const MinPlusScalar shift(-pair.lambda);

  for (std::size_t row = 0; row < size; ++row) {
    const std::size_t i = sys.positions[row];
    const MinPlusScalar from_left = otimes(MinPlusScalar(p.arc(i - 1)), shift);
    const MinPlusScalar from_right = otimes(MinPlusScalar(p.arc_bar(i)), shift);
    if (is_boundary(i - 1)) {
      sys.rhs[row] = oplus(sys.rhs[row], otimes(from_left, MinPlusScalar(boundary_value(i - 1))));
    } else {
      sys.matrix(row, row - 1) = from_left;
    }
    if (is_boundary(i + 1)) {
      sys.rhs[row] = oplus(sys.rhs[row], otimes(from_right, MinPlusScalar(boundary_value(i + 1))));
    } else {
      sys.matrix(row, row + 1) = from_right;
    }
  }
  return sys;
}

FullEigenpair extend_full(const DerivedParams& params, const ReducedEigenpair& pair) {
  const std::size_t n = params.n;
  const std::size_t big = params.n + params.m;
  FullEigenpair full{pair.lambda, std::vector<double>(big)};
  full.x[0] = pair.x1;
  full.x[n - 1] = pair.xn;
  full.x[n] = pair.xn1;
  full.x[big - 1] = pair.xnm;
  const InteriorSystem sys = interior_system(params, pair);
  if (sys.positions.empty()) return full;
  const MinPlusVector interior = affine_solve(sys.matrix, sys.rhs);
  for (std::size_t k = 0; k < interior.size(); ++k) {
    full.x[sys.positions[k] - 1] = interior[k].value();
  }
  return full;
}

FullEigenpair extend_full(const TrafficConfig& config, const ReducedEigenpair& pair) {
  return extend_full(derive(config), pair);
}

namespace {

void require_full_length(const DerivedParams& p, std::span<const double> x) {
  if (x.size() != p.n + p.m) {
    throw DimensionMismatch("expected " + std::to_string(p.n + p.m) + " entries, got " +
                            std::to_string(x.size()));
  }
}

detail::Reduced<double> as_reduced(const ReducedEigenpair& pair) {
  return {pair.x1, pair.xn, pair.xn1, pair.xnm};
}

}  // namespace

double residual_EV(const DerivedParams& params, double lambda, std::span<const double> x) {
  require_full_length(params, x);
  return detail::residual_ev(params, lambda, x);
}

double residual_SS(const DerivedParams& params, double lambda, std::span<const double> x) {
  require_full_length(params, x);
  return detail::residual_ss(params, lambda, x);
}

double residual_S(const DerivedParams& params, const ReducedEigenpair& pair) {
  return detail::residual_junction(params, pair.lambda, as_reduced(pair));
}

double residual_EV(const TrafficConfig& config, double lambda, std::span<const double> x) {
  return residual_EV(derive(config), lambda, x);
}

double residual_SS(const TrafficConfig& config, double lambda, std::span<const double> x) {
  return residual_SS(derive(config), lambda, x);
}

double residual_S(const TrafficConfig& config, const ReducedEigenpair& pair) {
  return residual_S(derive(config), pair);
}

ZTransform z_transform(const ReducedEigenpair& pair, std::size_t m) {
  const double shift = static_cast<double>(m - 1) * pair.lambda;
  ZTransform t;
  t.z.z1 = pair.x1 + shift;
  t.z.zn = pair.xn;
  t.z.zn1 = pair.xn1 + shift;
  t.z.znm = pair.xnm + 2.0 * shift;
  t.lambda_positive = pair.lambda > 0.0;
  return t;
}

double residual_SZ(const DerivedParams& params, double lambda, const ZVector& z) {
  return detail::residual_sz(params, lambda, detail::Reduced<double>{z.z1, z.zn, z.zn1, z.znm});
}

namespace {

double positive_branch_min(const DerivedParams& p) {
  return std::min({p.d / (1.0 + p.rho), 0.25, (p.r - p.d) / (2.0 * p.r - 1.0 + p.rho)});
}

}  // namespace

double lambda_nonneg(const DerivedParams& params) {
  if (params.r < 0.5) {
    throw RNotApplicable("lambda_nonneg requires r >= 1/2 (r = " + std::to_string(params.r) + ")");
  }
  return std::max(positive_branch_min(params), 0.0);
}

double lambda_asymptotic(double d, double r) {
  return std::max(std::min({d, 0.25, (r - d) / (2.0 * r - 1.0)}), 0.0);
}

double assert_unique_positive(const DerivedParams& params) {
  if (!(params.r > 0.5 && params.d > 0.0 && params.d < params.r)) {
    std::ostringstream os;
    os << "uniqueness needs r > 1/2 and 0 < d < r (r = " << params.r << ", d = " << params.d << ")";
    throw HypothesisViolated(os.str());
  }
  std::vector<double> positive;
  for (const EigenValue& e : eigen_set(params))
    if (e.lambda > 0.0) positive.push_back(e.lambda);
  if (positive.size() != 1) {
    throw UniquenessViolated("expected one positive eigenvalue, found " +
                             std::to_string(positive.size()));
  }
  const double expected = positive_branch_min(params);
  if (std::abs(positive.front() - expected) > 1e-12) {
    std::ostringstream os;
    os << "positive eigenvalue " << positive.front() << " differs from " << expected;
    throw UniquenessViolated(os.str());
  }
  return positive.front();
}

}  // namespace tropica
