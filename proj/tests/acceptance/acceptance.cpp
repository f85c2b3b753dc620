// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/sampling.hpp"
#include "tropica/diagram.hpp"
#include "tropica/dynamics.hpp"
#include "tropica/exact.hpp"
#include "tropica/oracle.hpp"
#include "tropica/spectral.hpp"

namespace {

using namespace tropica;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-44s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Shared by criteria 2, 3, 4 and 9.
struct SuitePair {
  TrafficConfig config;
  ReducedEigenpair reduced;
  FullEigenpair full;
};

struct Suite {
  std::size_t configs = 0;
  std::vector<SuitePair> pairs;
  double worst_s = 0, worst_ev = 0, worst_ss = 0;
  double seconds = 0;
};

Suite build_suite() {
  const auto start = Clock::now();
  Suite suite;
  std::mt19937_64 rng(20240601);
  constexpr std::size_t kDraws = 200;
  for (std::size_t draw = 0; draw < kDraws; ++draw) {
    const std::size_t n = testing::uniform_size(rng, 2, 10);
    const std::size_t m = testing::uniform_size(rng, 2, 10);
    for (Regime target : kAllRegimes) {
      const auto interval = testing::regime_interval(n, m, target);
      if (!interval) continue;
      const double d = testing::uniform(rng, interval->first, interval->second);
      const TrafficConfig config = testing::random_config(n, m, d, rng);
      const DerivedParams p = derive(config);
      ++suite.configs;
      for (Regime regime : applicable_regimes(p)) {
        SuitePair sp{config, reduced_eigenvector(p, regime), {}};
        sp.full = extend_full(p, sp.reduced);
        suite.worst_s = std::max(suite.worst_s, residual_S(p, sp.reduced));
        suite.worst_ev = std::max(suite.worst_ev, residual_EV(p, sp.full.lambda, sp.full.x));
        suite.worst_ss = std::max(suite.worst_ss, residual_SS(p, sp.full.lambda, sp.full.x));
        suite.pairs.push_back(std::move(sp));
      }
    }
  }
  suite.seconds = seconds_since(start);
  return suite;
}

double expected_four_three(double d) {
  if (d <= 7.0 / 24) return d * 6 / 7;
  if (d <= 13.0 / 24) return 0.25;
  if (d <= 2.0 / 3) return (2.0 / 3 - d) / 0.5;
  return 0.0;
}

Outcome criterion1() {
  const auto start = Clock::now();
  double worst = 0, worst_oracle = 0;
  for (int k = 0; k <= 200; ++k) {
    const double d = k / 200.0;
    const DerivedParams p = derive(allocate(4, 3, d));
    const auto values = eigen_set(p);
    // at d = r both the congested and jammed branches give 0
    if (values.size() != 1) return {false, "d=" + fmt(d) + " has " + std::to_string(values.size()) + " eigenvalues"};
    worst = std::max(worst, std::abs(values[0].lambda - expected_four_three(d)));
    const oracle::RootSet roots = oracle::scalar_roots(p);
    if (roots.points.size() != 1 || !roots.intervals.empty()) {
      return {false, "scalar_roots disagrees at d=" + fmt(d)};
    }
    worst_oracle = std::max(worst_oracle, std::abs(roots.points[0] - values[0].lambda));
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-12 && worst_oracle <= 1e-9 && secs < 1.0,
          "201 points, max |err|=" + fmt(worst) + ", oracle gap=" + fmt(worst_oracle)};
}

Outcome criterion2(const Suite& s) {
  const bool ok = s.configs >= 500 && s.worst_s <= 1e-9 && s.worst_ev <= 1e-9 &&
                  s.worst_ss <= 1e-9 && s.seconds < 30;
  return {ok, std::to_string(s.configs) + " configs, " + std::to_string(s.pairs.size()) +
                  " pairs, max S=" + fmt(s.worst_s) + " EV=" + fmt(s.worst_ev) +
                  " SS=" + fmt(s.worst_ss) + ", built in " + fmt(s.seconds) + "s"};
}

Outcome criterion3(const Suite& s) {
  std::vector<oracle::ConfiguredEigenpair> pairs;
  double top = 0;
  for (const SuitePair& sp : s.pairs) {
    pairs.push_back({sp.config, sp.full});
    top = std::max(top, sp.full.lambda);
  }
  return {oracle::lambda_bound_check(pairs), "max lambda=" + fmt(top)};
}

Outcome criterion4(const Suite& s) {
  // Checked in exact rational arithmetic. Double precision is reported only:
  // the congested eigenvectors are unstable fixed points, and rounding in the
  // last bit grows by orders of magnitude over 100 steps.
  const auto start = Clock::now();
  exact::Rational worst_exact = 0;
  double worst_double = 0, worst_double_stable = 0;
  std::size_t checked = 0, skipped = 0;
  for (const SuitePair& sp : s.pairs) {
    try {
      worst_exact = std::max(worst_exact, exact::linearity_deviation(sp.config, sp.reduced.regime, 100));
    } catch (const RegimeNotApplicable&) {
      ++skipped;  // density within rounding of the regime edge in exact terms
      continue;
    }
    ++checked;
    const double dev = linearity_check(sp.config, sp.full, 100);
    worst_double = std::max(worst_double, dev);
    if (sp.reduced.regime != Regime::R3) worst_double_stable = std::max(worst_double_stable, dev);
  }
  const double secs = seconds_since(start);
  const double exact_dev = worst_exact.convert_to<double>();
  return {exact_dev <= 1e-9 && secs < 30 && skipped == 0,
          std::to_string(checked) + " trajectories, exact max dev=" + fmt(exact_dev) +
              " (double: " + fmt(worst_double) + " overall, " + fmt(worst_double_stable) +
              " outside R3" + (skipped ? ", skipped " + std::to_string(skipped) : "") + ")"};
}

Outcome criterion5() {
  const DerivedParams p = derive(allocate(2, 7, 0.27));
  const auto values = eigen_set(p);
  const std::vector<double> want{0.24, 0.16 / 3, 0.0};
  if (values.size() != 3) return {false, std::to_string(values.size()) + " eigenvalues"};
  double worst = 0;
  for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(values[i].lambda - want[i]));
  const oracle::RootSet roots = oracle::scalar_roots(p);
  if (roots.points.size() != 3 || !roots.intervals.empty()) {
    return {false, "scalar_roots found " + std::to_string(roots.points.size()) + " points"};
  }
  double worst_roots = 0;
  for (std::size_t i = 0; i < 3; ++i)
    worst_roots = std::max(worst_roots, std::abs(roots.points[i] - want[2 - i]));
  return {worst <= 1e-9 && worst_roots <= 1e-9,
          "{0.24, 0.0533, 0} err=" + fmt(worst) + ", roots err=" + fmt(worst_roots)};
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  double worst = 0;
  int done = 0;
  while (done < 200) {
    const std::size_t n = testing::uniform_size(rng, 2, 12);
    const std::size_t m = testing::uniform_size(rng, 2, 12);
    const double r = static_cast<double>(n) / static_cast<double>(n + m - 1);
    if (!(r > 0.5)) continue;
    const DerivedParams p = derive(testing::random_config(n, m, testing::uniform(rng, 0, r), rng));
    if (!(p.d > 0 && p.d < p.r)) continue;
    std::vector<double> positive;
    for (const EigenValue& e : eigen_set(p))
      if (e.lambda > 0) positive.push_back(e.lambda);
    const double want = std::min({p.d / (1 + p.rho), 0.25, (p.r - p.d) / (2 * p.r - 1 + p.rho)});
    if (positive.size() != 1) return {false, "non-singleton positive set at d=" + fmt(p.d)};
    worst = std::max(worst, std::abs(positive[0] - want));
    worst = std::max(worst, std::abs(assert_unique_positive(p) - want));
    ++done;
  }
  return {worst <= 1e-12, "200 configs, max |err|=" + fmt(worst)};
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  double worst = 0;
  std::size_t groups = 0;
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{4, 3}, {2, 7}, {6, 6}, {9, 4}}) {
    for (int g = 0; g < 5; ++g, ++groups) {
      const double d = testing::uniform(rng, 0.02, 0.98);
      const auto reference = eigen_set(derive(allocate(n, m, d)));
      for (int t = 0; t < 100; ++t) {
        TrafficConfig c = allocate(n, m, d);
        testing::scramble(c, rng, 6 * c.size());
        if (!validate(c).empty()) continue;
        const auto values = eigen_set(derive(c));
        if (values.size() != reference.size()) {
          return {false, "eigenvalue count changed at (" + std::to_string(n) + "," +
                             std::to_string(m) + ") d=" + fmt(d)};
        }
        for (std::size_t i = 0; i < values.size(); ++i)
          worst = std::max(worst, std::abs(values[i].lambda - reference[i].lambda));
      }
    }
  }
  return {worst <= 1e-12,
          std::to_string(groups) + " totals x 100 redistributions, max |diff|=" + fmt(worst)};
}

Outcome criterion8() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> cost(0.001, 1.0);
  std::uniform_real_distribution<double> potential(-3.0, 3.0);
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t size = 1 + trial % 12;
    const double density = testing::uniform(rng, 0.1, 0.9);
    std::vector<double> p(size);
    for (double& v : p) v = potential(rng);
    MinPlusMatrix a(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        if (testing::uniform(rng, 0, 1) < density) a(i, j) = MinPlusScalar(cost(rng) + p[i] - p[j]);
    worst = std::max(worst, max_abs_difference(kleene_star(a), oracle::star_fixed_point(a)));
  }
  int raised = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t size = 1 + trial % 12;
    MinPlusMatrix a(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        if (testing::uniform(rng, 0, 1) < 0.3) a(i, j) = MinPlusScalar(cost(rng));
    // plant a circuit of non-positive weight through `len` distinct nodes
    std::vector<std::size_t> nodes(size);
    for (std::size_t i = 0; i < size; ++i) nodes[i] = i;
    std::shuffle(nodes.begin(), nodes.end(), rng);
    const std::size_t len = testing::uniform_size(rng, 1, size);
    double total = 0;
    for (std::size_t k = 0; k + 1 < len; ++k) {
      const double w = cost(rng) - 0.5;
      a(nodes[k], nodes[k + 1]) = MinPlusScalar(w);
      total += w;
    }
    const double closing = trial % 10 == 0 ? -total : -total - cost(rng);
    a(nodes[len - 1], nodes[0]) = MinPlusScalar(closing);
    try {
      kleene_star(a);
    } catch (const NonPositiveCircuit&) {
      ++raised;
    }
  }
  return {worst <= 1e-12 && raised == 100,
          "500 matrices max |diff|=" + fmt(worst) + ", " + std::to_string(raised) +
              "/100 non-positive circuits raised"};
}

Outcome criterion9(const Suite& s) {
  double worst = 0;
  std::size_t count = 0;
  for (const SuitePair& sp : s.pairs) {
    const ZTransform zt = z_transform(sp.reduced, sp.config.m);
    if (!zt.lambda_positive) continue;
    ++count;
    worst = std::max(worst, residual_SZ(derive(sp.config), sp.reduced.lambda, zt.z));
  }
  return {worst <= 1e-9 && count > 0, std::to_string(count) + " pairs with lambda > 0, max SZ=" + fmt(worst)};
}

Outcome criterion10() {
  const std::vector<std::pair<std::size_t, std::size_t>> sizes{{4, 3}, {8, 5}, {16, 9}, {32, 17}, {64, 33}};
  std::vector<std::vector<double>> gaps;
  std::ostringstream detail;
  bool ok = true;
  for (auto [n, m] : sizes) {
    const double r = static_cast<double>(n) / static_cast<double>(n + m - 1);
    if (std::abs(r - 2.0 / 3) > 1e-15) return {false, "r drifted"};
    const double rho = 1.0 / static_cast<double>(n + m - 1);
    std::vector<double> row;
    for (int k = 0; k <= 20; ++k) {
      const double d = k / 20.0;
      const double gap = std::abs(lambda_nonneg(derive(allocate(n, m, d))) - lambda_asymptotic(d, r));
      ok = ok && gap <= 2 * rho + 1e-15;
      row.push_back(gap);
    }
    gaps.push_back(row);
    detail << (gaps.size() > 1 ? " " : "") << "(" << n << "," << m << "):" << fmt(*std::max_element(row.begin(), row.end()));
  }
  for (std::size_t s = 1; s < gaps.size(); ++s) {
    const double prev = *std::max_element(gaps[s - 1].begin(), gaps[s - 1].end());
    const double cur = *std::max_element(gaps[s].begin(), gaps[s].end());
    ok = ok && cur < prev;
    for (std::size_t k = 0; k < gaps[s].size(); ++k) ok = ok && gaps[s][k] <= gaps[s - 1][k] + 1e-15;
  }
  return {ok, "max gaps " + detail.str()};
}

Outcome figure_regions() {
  // Expected non-empty regions in density order for the three orderings of r
  // against d1 and d2.
  struct Case {
    std::size_t n, m;
    std::vector<Region> order;
  };
  const std::vector<Case> cases{{2, 7, {Region::A, Region::B, Region::D, Region::F}},
                                {3, 6, {Region::A, Region::C, Region::D, Region::F}},
                                {4, 3, {Region::A, Region::C, Region::E, Region::F}}};
  std::ostringstream detail;
  for (const Case& c : cases) {
    const auto rows = sweep(c.n, c.m, 2001);
    std::vector<Region> seen;
    for (const DiagramPoint& row : rows) {
      if (seen.empty() || seen.back() != row.region.label) seen.push_back(row.region.label);
      const bool inside = row.d >= row.region.lo &&
                          (row.region.label == Region::F ? row.d <= 1.0 : row.d < row.region.hi);
      if (!inside) return {false, "d=" + fmt(row.d) + " outside its region"};
    }
    if (seen != c.order) {
      std::string got;
      for (Region r : seen) got += to_string(r);
      return {false, "(" + std::to_string(c.n) + "," + std::to_string(c.m) + ") regions " + got};
    }
    detail << "(" << c.n << "," << c.m << ")";
    for (Region r : seen) detail << to_string(r);
    detail << " ";
  }
  return {true, detail.str()};
}

}  // namespace

int main() {
  std::printf("tropica acceptance suite\n");
  report(1, "closed-form eigenvalue curve (4,3)", criterion1);
  const Suite suite = build_suite();
  report(2, "residual suite S / EV / SS", [&] { return criterion2(suite); });
  report(3, "eigenvalue bound lambda <= 1/4", [&] { return criterion3(suite); });
  report(4, "eigenvector trajectories are linear", [&] { return criterion4(suite); });
  report(5, "three eigenvalues in region B", criterion5);
  report(6, "unique positive eigenvalue for r > 1/2", criterion6);
  report(7, "invariance under redistribution", criterion7);
  report(8, "Kleene star vs fixed-point iteration", criterion8);
  report(9, "z-form residuals for lambda > 0", [&] { return criterion9(suite); });
  report(10, "large-system limit of the eigenvalue", criterion10);
  report(11, "diagram region labels for three orderings", figure_regions);
  std::printf("%s: %d failing\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
