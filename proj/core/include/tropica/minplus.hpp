#pragma once

// Min-plus semiring: scalars over R u {+inf} with min as addition and + as
// multiplication, and dense matrices over them.

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "tropica/error.hpp"

namespace tropica {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class MinPlusScalar {
 public:
  // Default-constructed scalars are the semiring zero (epsilon).
  constexpr MinPlusScalar() = default;

  // +inf maps to epsilon. NaN and -inf are rejected.
  explicit MinPlusScalar(double value);

  static constexpr MinPlusScalar zero() { return MinPlusScalar(); }
  static constexpr MinPlusScalar unit() { return Raw(0.0); }

  constexpr double value() const { return value_; }
  constexpr bool is_zero() const { return value_ == kInfinity; }
  constexpr bool is_finite() const { return value_ != kInfinity; }

  friend constexpr bool operator==(MinPlusScalar, MinPlusScalar) = default;

 private:
  static constexpr MinPlusScalar Raw(double v) {
    MinPlusScalar s;
    s.value_ = v;
    return s;
  }

  friend constexpr MinPlusScalar oplus(MinPlusScalar a, MinPlusScalar b);
  friend constexpr MinPlusScalar otimes(MinPlusScalar a, MinPlusScalar b);
  friend MinPlusScalar residuate(MinPlusScalar a, MinPlusScalar b);
  friend constexpr MinPlusScalar half(MinPlusScalar a);
  friend MinPlusScalar scale(MinPlusScalar a, double k);

  double value_ = kInfinity;
};

inline constexpr MinPlusScalar kZero = MinPlusScalar::zero();
inline constexpr MinPlusScalar kUnit = MinPlusScalar::unit();

constexpr MinPlusScalar oplus(MinPlusScalar a, MinPlusScalar b) {
  return a.value_ <= b.value_ ? a : b;
}

constexpr MinPlusScalar otimes(MinPlusScalar a, MinPlusScalar b) {
  if (a.is_zero() || b.is_zero()) return kZero;
  return MinPlusScalar::Raw(a.value_ + b.value_);
}

// a - b. Throws UndefinedOperation when b is epsilon.
MinPlusScalar residuate(MinPlusScalar a, MinPlusScalar b);

constexpr MinPlusScalar half(MinPlusScalar a) {
  return a.is_zero() ? a : MinPlusScalar::Raw(a.value_ / 2.0);
}

// Min-plus power a^k, i.e. k * a. scale(a, 0) is the unit; scale(eps, k < 0)
// throws UndefinedOperation.
MinPlusScalar scale(MinPlusScalar a, double k);

using MinPlusVector = std::vector<MinPlusScalar>;

class MinPlusMatrix {
 public:
  MinPlusMatrix() = default;
  // rows x cols, every entry epsilon.
  MinPlusMatrix(std::size_t rows, std::size_t cols);
  // Row-major literal; kInfinity entries become epsilon.
  MinPlusMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static MinPlusMatrix identity(std::size_t size);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  MinPlusScalar operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  MinPlusScalar& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  friend bool operator==(const MinPlusMatrix&, const MinPlusMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MinPlusScalar> entries_;
};

MinPlusMatrix mat_oplus(const MinPlusMatrix& a, const MinPlusMatrix& b);
MinPlusMatrix mat_mul(const MinPlusMatrix& a, const MinPlusMatrix& b);
MinPlusVector mat_vec(const MinPlusMatrix& a, std::span<const MinPlusScalar> x);
MinPlusVector vec_oplus(std::span<const MinPlusScalar> x,
                        std::span<const MinPlusScalar> y);

// Largest entrywise |a - b|; 0 where both are epsilon, +inf where exactly one is.
double max_abs_difference(const MinPlusMatrix& a, const MinPlusMatrix& b);
double max_abs_difference(std::span<const MinPlusScalar> a,
                          std::span<const MinPlusScalar> b);

struct CircuitCheck {
  bool all_positive = true;
  // Minimum weight of a circuit found; +inf when the graph is acyclic.
  double min_weight = kInfinity;
};

// Floyd-Warshall relaxation (one pass per pivot) with the diagonal seeded from
// the self-loops, then a detection pass over the diagonal.
CircuitCheck check_circuits_positive(const MinPlusMatrix& a);

// I + A + ... + A^k computed by explicit powers.
MinPlusMatrix power_sum(const MinPlusMatrix& a, std::size_t k);

// A* = I + A + ... + A^(size-1). Throws NonPositiveCircuit before summing if
// some circuit of A has weight <= 0.
MinPlusMatrix kleene_star(const MinPlusMatrix& a);

// Unique solution x = A* b of x = A x + b.
MinPlusVector affine_solve(const MinPlusMatrix& a, std::span<const MinPlusScalar> b);

}  // namespace tropica
