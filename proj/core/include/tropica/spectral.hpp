#pragma once

// Additive eigenvalues and eigenvectors of the junction dynamics in closed
// form, with residual checks for the full eigenproblem (EV), the simplified
// system (SS), the four-variable system (S) and its z-form (SZ).
//
// Density regimes and their eigenvalues:
//   R1  d <= d1              lambda = d / (1 + rho)
//   R2  d1 <= d <= d2        lambda = 1/4
//   R3  d between r and d2   lambda = (r - d) / (2r - 1 + rho)   (m != n+2)
//   R4  d >= r               lambda = 0

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tropica/detail/residuals.hpp"
#include "tropica/error.hpp"
#include "tropica/minplus.hpp"
#include "tropica/traffic_model.hpp"

namespace tropica {

inline constexpr double kDefaultTolerance = 1e-9;

enum class Regime { R1, R2, R3, R4 };
inline constexpr std::array<Regime, 4> kAllRegimes{Regime::R1, Regime::R2, Regime::R3, Regime::R4};
std::string_view to_string(Regime r);

enum class Region { A, B, C, D, E, F };
std::string_view to_string(Region r);

// lambda -> intercept + slope * lambda
struct AffinePiece {
  double intercept = 0.0;
  double slope = 0.0;
  double operator()(double lambda) const { return intercept + slope * lambda; }
};

// F(lambda) = max(min(g1, g2, g3), g4).
struct CharacteristicPieces {
  AffinePiece g1;  // d - (1 + rho) lambda
  AffinePiece g2;  // 1/4 - lambda
  AffinePiece g3;  // r - d - (2r - 1 + rho) lambda
  AffinePiece g4;  // -lambda
};

CharacteristicPieces characteristic_pieces(const DerivedParams& params);
double characteristic(double lambda, const DerivedParams& params);

struct EigenValue {
  double lambda = 0.0;
  Regime regime = Regime::R1;
};

struct ReducedEigenpair {
  double lambda = 0.0;
  double x1 = 0.0;   // x_1
  double xn = 0.0;   // x_n
  double xn1 = 0.0;  // x_{n+1}
  double xnm = 0.0;  // x_{n+m}
  Regime regime = Regime::R1;
};

struct FullEigenpair {
  double lambda = 0.0;
  std::vector<double> x;  // x_1 .. x_{n+m}
};

struct RegionLabel {
  Region label = Region::A;
  double lo = 0.0;
  double hi = 0.0;  // [lo, hi), except F which is [lo, 1]
  bool empty() const { return !(lo < hi) && label != Region::F; }
};

struct ZVector {
  double z1 = 0.0, zn = 0.0, zn1 = 0.0, znm = 0.0;
};

struct ZTransform {
  ZVector z;
  // Equivalence of (S) and (SZ) only holds for lambda > 0.
  bool lambda_positive = false;
};

// Closed-form eigenvalue of a regime. Generic so it can run exactly.
template <typename Real>
Real regime_lambda(const BasicDerivedParams<Real>& p, Regime regime) {
  switch (regime) {
    case Regime::R1:
      return p.d / (Real(1) + p.rho);
    case Regime::R2:
      return Real(1) / Real(4);
    case Regime::R3:
      return (p.r - p.d) / (Real(2) * p.r - Real(1) + p.rho);
    case Regime::R4:
      return Real(0);
  }
  return Real(0);
}

// Regime conditions on closed density intervals.
template <typename Real>
bool regime_applies(const BasicDerivedParams<Real>& p, Regime regime) {
  switch (regime) {
    case Regime::R1:
      return p.d <= p.d1;
    case Regime::R2:
      return p.d1 <= p.d && p.d <= p.d2;
    case Regime::R3:
      if (p.m == p.n + 2) return false;
      return std::min(p.r, p.d2) <= p.d && p.d <= std::max(p.r, p.d2);
    case Regime::R4:
      return p.d >= p.r;
  }
  return false;
}

// Boundary values (x_1, x_n, x_{n+1}, x_{n+m}) of the regime's eigenvector,
// normalised to x_1 = 0.
template <typename Real>
detail::Reduced<Real> regime_vector(const BasicDerivedParams<Real>& p, Regime regime,
                                    const Real& lambda) {
  using detail::count;
  const std::size_t n = p.n;
  const std::size_t m = p.m;
  const Real an = p.arc(n);
  const Real anm = p.arc(n + m);
  const Real sn = Real(static_cast<long long>(n));
  const Real sm = Real(static_cast<long long>(m));
  detail::Reduced<Real> v;
  v.x1 = Real(0);
  switch (regime) {
    case Regime::R1:
      v.xn = p.b_n - (sn - Real(1)) * lambda;
      v.xnm = (sn + Real(1)) * lambda - Real(2) * an - p.b_n;
      v.xn1 = anm - an;
      break;
    case Regime::R2:
      v.xn = (sm - Real(3)) * lambda + p.arc_bar(n) - p.b_m;
      v.xnm = p.b_m + anm - an - (sm - Real(1)) * lambda;
      v.xn1 = anm - an;
      break;
    case Regime::R3:
      v.xn = (sn - Real(1)) * lambda - p.bbar_n;
      v.xnm = Real(2) * p.b_m + Real(2) * anm - p.bbar_n - (Real(2) * sm - sn + Real(1)) * lambda;
      v.xn1 = p.b_m + Real(2) * anm - p.bbar_n - (sm - sn + Real(2)) * lambda;
      break;
    case Regime::R4:
      v.xn = -p.bbar_n;
      v.xnm = (sn + Real(1)) - Real(2) * an - p.b_n;
      v.xn1 = Real(1) + anm - an;
      break;
  }
  return v;
}

// Interior values in closed form: with every circuit of the interior graph of
// weight 1 - 2 lambda > 0, the cheapest path to x_i runs straight in from one
// of the two boundaries of its road.
template <typename Real>
std::vector<Real> interior_closed_form(const BasicDerivedParams<Real>& p, const Real& lambda,
                                       const detail::Reduced<Real>& v) {
  const std::size_t n = p.n;
  const std::size_t big = p.n + p.m;
  std::vector<Real> x(big);
  x[0] = v.x1;
  x[n - 1] = v.xn;
  x[n] = v.xn1;
  x[big - 1] = v.xnm;
  auto fill = [&](std::size_t first, std::size_t last) {
    // first, last: 1-based boundary positions of one road.
    if (last <= first + 1) return;
    std::vector<Real> from_left(last + 1), from_right(last + 1);
    from_left[first] = x[first - 1];
    for (std::size_t i = first + 1; i < last; ++i)
      from_left[i] = from_left[i - 1] + p.arc(i - 1) - lambda;
    from_right[last] = x[last - 1];
    for (std::size_t i = last - 1; i > first; --i)
      from_right[i] = from_right[i + 1] + p.arc_bar(i) - lambda;
    for (std::size_t i = first + 1; i < last; ++i) x[i - 1] = std::min(from_left[i], from_right[i]);
  };
  fill(1, n);
  fill(n + 1, big);
  return x;
}

// max(min(g1, g2, g3), g4) evaluated in any scalar type.
template <typename Real>
Real characteristic_as(const Real& lambda, const BasicDerivedParams<Real>& p) {
  const Real g1 = p.d - (Real(1) + p.rho) * lambda;
  const Real g2 = Real(1) / Real(4) - lambda;
  const Real g3 = p.r - p.d - (Real(2) * p.r - Real(1) + p.rho) * lambda;
  return std::max(std::min({g1, g2, g3}), Real(-lambda));
}

std::vector<Regime> applicable_regimes(const DerivedParams& params);

// Eigenvalues constructed by the four regimes, deduplicated (first regime
// wins) and sorted descending. Each satisfies characteristic(lambda) = 0.
std::vector<EigenValue> eigen_set(const DerivedParams& params);

// The six density intervals A..F, in label order; some may be empty.
std::array<RegionLabel, 6> region_intervals(const DerivedParams& params);
RegionLabel classify_region(const DerivedParams& params);

// Throws RegimeNotApplicable when the density is outside the regime.
ReducedEigenpair reduced_eigenvector(const DerivedParams& params, Regime regime);

// Interior fixed-point system x = A x + b over x_2..x_{n-1}, x_{n+2}..x_{n+m-1}.
struct InteriorSystem {
  MinPlusMatrix matrix;
  MinPlusVector rhs;
  std::vector<std::size_t> positions;  // 1-based position of each unknown
};

InteriorSystem interior_system(const DerivedParams& params, const ReducedEigenpair& pair);

// Completes a reduced eigenpair with the interior values A* b.
FullEigenpair extend_full(const TrafficConfig& config, const ReducedEigenpair& pair);
FullEigenpair extend_full(const DerivedParams& params, const ReducedEigenpair& pair);

double residual_EV(const TrafficConfig& config, double lambda, std::span<const double> x);
double residual_SS(const TrafficConfig& config, double lambda, std::span<const double> x);
double residual_S(const TrafficConfig& config, const ReducedEigenpair& pair);
double residual_EV(const DerivedParams& params, double lambda, std::span<const double> x);
double residual_SS(const DerivedParams& params, double lambda, std::span<const double> x);
double residual_S(const DerivedParams& params, const ReducedEigenpair& pair);

ZTransform z_transform(const ReducedEigenpair& pair, std::size_t m);
double residual_SZ(const DerivedParams& params, double lambda, const ZVector& z);

// max(min(d/(1+rho), 1/4, (r-d)/(2r-1+rho)), 0). Throws RNotApplicable if r < 1/2.
double lambda_nonneg(const DerivedParams& params);

// Large-system limit: max(min(d, 1/4, (r-d)/(2r-1)), 0).
double lambda_asymptotic(double d, double r);

// For r > 1/2 and 0 < d < r the positive part of eigen_set is a single value
// equal to min(d/(1+rho), 1/4, (r-d)/(2r-1+rho)); returns it.
// Throws HypothesisViolated or UniquenessViolated.
double assert_unique_positive(const DerivedParams& params);

}  // namespace tropica
