#pragma once

// Two circular roads sharing one junction. Road 1 holds positions 1..n, road 2
// holds n+1..n+m; positions n and n+m feed the junction. Everything user-facing
// is 1-based; storage is 0-based.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tropica {

// Which junction coefficient feeds which road exit in the dynamics.
//   EV: x_1 uses a_n and x_{n+1} uses a_{n+m} (matches the eigenproblem).
//   DS: x_1 uses a_{n+m} and x_{n+1} uses a_n.
enum class Convention { EV, DS };

std::string_view to_string(Convention c);
Convention convention_from_string(std::string_view s);

struct TrafficConfig {
  std::size_t n = 2;
  std::size_t m = 2;
  std::vector<double> a;  // a_1 .. a_{n+m}
  Convention convention = Convention::EV;

  std::size_t size() const { return n + m; }
  // 1-based arc value a_i.
  double arc(std::size_t i) const { return a.at(i - 1); }

  friend bool operator==(const TrafficConfig&, const TrafficConfig&) = default;
};

struct Violation {
  std::string message;
  std::size_t index = 0;  // 1-based position, 0 when not tied to one arc

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Empty result means the configuration is valid.
std::vector<Violation> validate(const TrafficConfig& config);

template <typename Real>
struct BasicDerivedParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Real> a;     // a_1 .. a_{n+m}
  std::vector<Real> abar;  // complements; abar_n = abar_{n+m} = 1 - (a_n + a_{n+m})
  Real d{};                // density
  Real r{};                // n / (n+m-1)
  Real rho{};              // 1 / (n+m-1)
  Real b_n{}, bbar_n{};    // sums of a_i, abar_i over i = 1..n-1
  Real b_m{}, bbar_m{};    // sums over i = n+1..n+m-1
  Real d1{}, d2{};         // phase boundaries

  std::size_t size() const { return n + m; }
  const Real& arc(std::size_t i) const { return a[i - 1]; }
  const Real& arc_bar(std::size_t i) const { return abar[i - 1]; }
};

using DerivedParams = BasicDerivedParams<double>;

// Derives every quantity in the scalar type Real, converting each arc value
// with to_real. Does not validate.
template <typename Real, typename ToReal>
BasicDerivedParams<Real> derive_as(const TrafficConfig& config, ToReal&& to_real) {
  BasicDerivedParams<Real> p;
  const std::size_t n = config.n;
  const std::size_t m = config.m;
  const std::size_t size = n + m;
  p.n = n;
  p.m = m;
  p.a.reserve(size);
  for (double v : config.a) p.a.push_back(to_real(v));
  p.abar.reserve(size);
  for (std::size_t i = 1; i <= size; ++i) p.abar.push_back(Real(1) - p.arc(i));
  const Real junction = Real(1) - (p.arc(n) + p.arc(size));
  p.abar[n - 1] = junction;
  p.abar[size - 1] = junction;

  Real total(0);
  for (const Real& v : p.a) total += v;
  const Real denom = Real(static_cast<long long>(size) - 1);
  p.d = total / denom;
  p.r = Real(static_cast<long long>(n)) / denom;
  p.rho = Real(1) / denom;

  p.b_n = Real(0);
  p.bbar_n = Real(0);
  for (std::size_t i = 1; i < n; ++i) {
    p.b_n += p.arc(i);
    p.bbar_n += p.arc_bar(i);
  }
  p.b_m = Real(0);
  p.bbar_m = Real(0);
  for (std::size_t i = n + 1; i < size; ++i) {
    p.b_m += p.arc(i);
    p.bbar_m += p.arc_bar(i);
  }
  p.d1 = Real(static_cast<long long>(size)) / (Real(4) * denom);
  p.d2 = Real(3 * static_cast<long long>(n) + static_cast<long long>(m) - 2) /
         (Real(4) * denom);
  return p;
}

template <typename Real>
BasicDerivedParams<Real> derive_as(const TrafficConfig& config) {
  return derive_as<Real>(config, [](double v) { return Real(v); });
}

// Validates, then derives in double precision. Throws InvalidConfig.
DerivedParams derive(const TrafficConfig& config);

// A valid configuration of density exactly d. With s = d (n+m-1): every arc
// gets s/(n+m) while that stays <= 1/2; beyond that a_n = a_{n+m} = 1/2 and
// the other n+m-2 arcs share s - 1 evenly. Throws DensityOutOfRange.
TrafficConfig allocate(std::size_t n, std::size_t m, double d,
                       Convention convention = Convention::EV);

// JSON document: {"n": int, "m": int, "a": [...] | "density": x,
// "convention": "EV" | "DS"}. Throws ParseError (MissingField) or InvalidConfig.
TrafficConfig parse_config(std::string_view text);
// Same document rules, but constraint violations are left for validate().
TrafficConfig parse_config_unvalidated(std::string_view text);
std::string serialize_config(const TrafficConfig& config);
TrafficConfig load_config(const std::string& path);
TrafficConfig load_config_unvalidated(const std::string& path);

}  // namespace tropica
