#pragma once

// Residual kernels for the eigenproblem and its reductions, generic over the
// scalar type so the same equations can be evaluated exactly. Vectors are
// 0-based storage of x_1 .. x_{n+m}.

#include <algorithm>
#include <cstddef>
#include <span>

#include "tropica/traffic_model.hpp"

namespace tropica::detail {

template <typename Real>
struct Reduced {
  Real x1{}, xn{}, xn1{}, xnm{};
};

template <typename Real>
Real abs_of(const Real& v) {
  return v < Real(0) ? -v : v;
}

template <typename Real>
Real count(std::size_t k) {
  return Real(static_cast<long long>(k));
}

// Interior positions 2..n-1 and n+2..n+m-1 (1-based).
template <typename F>
void for_each_interior(std::size_t n, std::size_t m, F&& f) {
  for (std::size_t i = 2; i + 1 <= n; ++i) f(i);
  for (std::size_t i = n + 2; i + 1 <= n + m; ++i) f(i);
}

// max_i |lambda + x_i - rhs_i| over the n+m equations of the eigenproblem.
template <typename Real>
Real residual_ev(const BasicDerivedParams<Real>& p, const Real& lambda,
                 std::span<const Real> x) {
  const std::size_t n = p.n;
  const std::size_t big = p.n + p.m;
  auto X = [&](std::size_t i) -> const Real& { return x[i - 1]; };
  Real worst(0);
  auto take = [&](const Real& lhs, const Real& rhs) { worst = std::max(worst, abs_of(Real(lhs - rhs))); };

  for_each_interior(p.n, p.m, [&](std::size_t i) {
    take(lambda + X(i), std::min(Real(p.arc(i - 1) + X(i - 1)), Real(p.arc_bar(i) + X(i + 1))));
  });
  const Real cross = X(1) + X(n + 1);
  take(lambda + X(n), std::min(Real(p.arc_bar(n) + cross - (lambda + X(big))),
                               Real(p.arc(n - 1) + X(n - 1))));
  take(lambda + X(big), std::min(Real(p.arc_bar(big) + cross - X(n)),
                                 Real(p.arc(big - 1) + X(big - 1))));
  const Real mid = (X(n) + X(big)) / Real(2);
  take(lambda + X(1), std::min(Real(p.arc(n) + mid), Real(p.arc_bar(1) + X(2))));
  take(lambda + X(n + 1), std::min(Real(p.arc(big) + mid), Real(p.arc_bar(n + 1) + X(n + 2))));
  return worst;
}

// Residual of the four junction equations shared by the simplified system and
// the four-variable system.
template <typename Real>
Real residual_junction(const BasicDerivedParams<Real>& p, const Real& lambda,
                       const Reduced<Real>& v) {
  const std::size_t n = p.n;
  const std::size_t big = p.n + p.m;
  const Real n_1 = count<Real>(p.n - 1);
  const Real m_1 = count<Real>(p.m - 1);
  const Real mid = (v.xn + v.xnm) / Real(2);
  const Real cross = v.x1 + v.xn1;
  Real worst(0);
  auto take = [&](const Real& lhs, const Real& rhs) { worst = std::max(worst, abs_of(Real(lhs - rhs))); };
  take(v.xn, std::min(Real(p.arc_bar(n) - Real(2) * lambda + cross - v.xnm),
                      Real(p.b_n - n_1 * lambda + v.x1)));
  take(v.xnm, std::min(Real(p.arc_bar(big) - lambda + cross - v.xn),
                       Real(p.b_m - m_1 * lambda + v.xn1)));
  take(v.x1, std::min(Real(p.arc(n) - lambda + mid), Real(p.bbar_n - n_1 * lambda + v.xn)));
  take(v.xn1, std::min(Real(p.arc(big) - lambda + mid), Real(p.bbar_m - m_1 * lambda + v.xnm)));
  return worst;
}

template <typename Real>
Real residual_ss(const BasicDerivedParams<Real>& p, const Real& lambda,
                 std::span<const Real> x) {
  auto X = [&](std::size_t i) -> const Real& { return x[i - 1]; };
  Real worst(0);
  for_each_interior(p.n, p.m, [&](std::size_t i) {
    const Real rhs = std::min(Real(p.arc(i - 1) - lambda + X(i - 1)),
                              Real(p.arc_bar(i) - lambda + X(i + 1)));
    worst = std::max(worst, abs_of(Real(X(i) - rhs)));
  });
  const Reduced<Real> v{X(1), X(p.n), X(p.n + 1), X(p.n + p.m)};
  return std::max(worst, residual_junction(p, lambda, v));
}

// z-variables: z_1 = x_1 + (m-1)lambda, z_n = x_n, z_{n+1} = x_{n+1} + (m-1)lambda,
// z_{n+m} = x_{n+m} + (2m-2)lambda.
template <typename Real>
Real residual_sz(const BasicDerivedParams<Real>& p, const Real& lambda, const Reduced<Real>& z) {
  const std::size_t n = p.n;
  const std::size_t big = p.n + p.m;
  const Real n_m = Real(static_cast<long long>(p.n) - static_cast<long long>(p.m));
  const Real mid = (z.xn + z.xnm) / Real(2);
  Real worst(0);
  auto take = [&](const Real& lhs, const Real& rhs) { worst = std::max(worst, abs_of(Real(lhs - rhs))); };
  take(z.xn, std::min(Real(p.arc_bar(n) - p.b_m - Real(2) * lambda + z.x1),
                      Real(p.b_n - count<Real>(p.n + p.m - 2) * lambda + z.x1)));
  take(z.xnm, p.b_m + z.xn1);
  take(z.x1, std::min(Real(p.arc(n) - lambda + mid), Real(p.bbar_n - n_m * lambda + z.xn)));
  take(z.xn1, std::min(Real(p.arc(big) - lambda + mid),
                       Real(p.bbar_m - count<Real>(2 * p.m - 2) * lambda + z.xnm)));
  return worst;
}

}  // namespace tropica::detail
