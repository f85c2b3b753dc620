#include "tropica/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace tropica::oracle {

namespace {

constexpr double kZeroTolerance = 1e-12;
constexpr double kDedupSpacing = 1e-9;

}  // namespace

RootSet scalar_roots(const DerivedParams& params) {
  const CharacteristicPieces pieces = characteristic_pieces(params);
  const std::array<AffinePiece, 4> lines{pieces.g1, pieces.g2, pieces.g3, pieces.g4};
  auto f = [&](double lambda) {
    return std::max(std::min({lines[0](lambda), lines[1](lambda), lines[2](lambda)}),
                    lines[3](lambda));
  };

  // F > 0 for lambda < 0 and F < 0 for lambda > 1/4; scan a wider window anyway.
  constexpr double kLo = -1.0;
  constexpr double kHi = 1.0;
  std::vector<double> breaks{kLo, 0.0, 0.25, kHi};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double ds = lines[i].slope - lines[j].slope;
      if (ds == 0.0) continue;
      const double x = (lines[j].intercept - lines[i].intercept) / ds;
      if (x > kLo && x < kHi) breaks.push_back(x);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  RootSet roots;
  std::vector<double> candidates;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double p = breaks[s];
    const double q = breaks[s + 1];
    const double fp = f(p);
    const double fq = f(q);
    const bool zp = std::abs(fp) <= kZeroTolerance;
    const bool zq = std::abs(fq) <= kZeroTolerance;
    if (zp && zq && std::abs(f(0.5 * (p + q))) <= kZeroTolerance) {
      if (!roots.intervals.empty() && roots.intervals.back().second == p) {
        roots.intervals.back().second = q;
      } else {
        roots.intervals.emplace_back(p, q);
      }
      continue;
    }
    if (zp) candidates.push_back(p);
    if (zq) candidates.push_back(q);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      candidates.push_back(p + (q - p) * fp / (fp - fq));
    }
  }

  std::sort(candidates.begin(), candidates.end());
  for (double c : candidates) {
    const bool inside = std::any_of(roots.intervals.begin(), roots.intervals.end(), [&](const auto& iv) {
      return c >= iv.first - kDedupSpacing && c <= iv.second + kDedupSpacing;
    });
    if (inside) continue;
    if (!roots.points.empty() && c - roots.points.back() <= kDedupSpacing) continue;
    roots.points.push_back(c);
  }
  return roots;
}

MinPlusMatrix star_fixed_point(const MinPlusMatrix& a, std::size_t max_iters) {
  if (!a.square()) throw DimensionMismatch("star_fixed_point: matrix not square");
  const MinPlusMatrix identity = MinPlusMatrix::identity(a.rows());
  MinPlusMatrix current = identity;
  for (std::size_t it = 0; it < max_iters; ++it) {
    MinPlusMatrix next = mat_oplus(identity, mat_mul(a, current));
    if (next == current) return current;
    current = std::move(next);
  }
  throw NoConvergence("star_fixed_point: no fixed point after " + std::to_string(max_iters) +
                      " iterations");
}

bool ev_ss_coincide_base(const TrafficConfig& config, std::size_t samples, std::uint64_t seed,
                         const SystemResidual& ss) {
  if (config.n != 2 || config.m != 2) {
    throw WrongSize("ev_ss_coincide_base needs n = m = 2 (got n = " + std::to_string(config.n) +
                    ", m = " + std::to_string(config.m) + ")");
  }
  const DerivedParams params = derive(config);
  const SystemResidual simplified =
      ss ? ss : [](const DerivedParams& p, double l, std::span<const double> x) {
        return residual_SS(p, l, x);
      };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lambda_dist(0.0, 0.25);
  std::uniform_real_distribution<double> x_dist(-1.0, 1.0);
  double worst = 0.0;
  std::vector<double> x(4);
  for (std::size_t s = 0; s < samples; ++s) {
    const double lambda = lambda_dist(rng);
    for (double& v : x) v = x_dist(rng);
    worst = std::max(worst, std::abs(residual_EV(params, lambda, x) - simplified(params, lambda, x)));
  }
  return worst <= kZeroTolerance;
}

bool lambda_bound_check(std::span<const ConfiguredEigenpair> pairs, double tolerance) {
  bool ok = true;
  for (const auto& [config, pair] : pairs) {
    const double residual = residual_EV(config, pair.lambda, pair.x);
    if (!(residual <= tolerance)) {
      std::ostringstream os;
      os << "lambda_bound_check: pair with lambda = " << pair.lambda << " has residual " << residual;
      throw PreconditionViolated(os.str());
    }
    if (pair.lambda > 0.25 + kZeroTolerance) ok = false;
  }
  return ok;
}

}  // namespace tropica::oracle
