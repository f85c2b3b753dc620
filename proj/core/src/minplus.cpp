#include "tropica/minplus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tropica {

MinPlusScalar::MinPlusScalar(double value) {
  if (std::isnan(value)) throw UndefinedOperation("NaN is not a min-plus scalar");
  if (value == -kInfinity) throw UndefinedOperation("-inf is not a min-plus scalar");
  value_ = value;
}

MinPlusScalar residuate(MinPlusScalar a, MinPlusScalar b) {
  if (b.is_zero()) throw UndefinedOperation("residuation by epsilon is undefined");
  if (a.is_zero()) return kZero;
  return MinPlusScalar::Raw(a.value_ - b.value_);
}

MinPlusScalar scale(MinPlusScalar a, double k) {
  if (!std::isfinite(k)) throw UndefinedOperation("non-finite exponent");
  if (k == 0.0) return kUnit;
  if (a.is_zero()) {
    if (k < 0.0) throw UndefinedOperation("negative power of epsilon");
    return kZero;
  }
  return MinPlusScalar::Raw(k * a.value_);
}

MinPlusMatrix::MinPlusMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

MinPlusMatrix::MinPlusMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    for (double v : row) entries_.emplace_back(v);
  }
}

MinPlusMatrix MinPlusMatrix::identity(std::size_t size) {
  MinPlusMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = kUnit;
  return m;
}

MinPlusMatrix mat_oplus(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("mat_oplus: shapes differ");
  }
  MinPlusMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = oplus(a(i, j), b(i, j));
  return out;
}

MinPlusMatrix mat_mul(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  MinPlusMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const MinPlusScalar aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) = oplus(out(i, j), otimes(aik, b(k, j)));
      }
    }
  }
  return out;
}

MinPlusVector mat_vec(const MinPlusMatrix& a, std::span<const MinPlusScalar> x) {
  if (a.cols() != x.size()) throw DimensionMismatch("mat_vec: size mismatch");
  MinPlusVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = oplus(out[i], otimes(a(i, j), x[j]));
  return out;
}

MinPlusVector vec_oplus(std::span<const MinPlusScalar> x,
                        std::span<const MinPlusScalar> y) {
  if (x.size() != y.size()) throw DimensionMismatch("vec_oplus: size mismatch");
  MinPlusVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = oplus(x[i], y[i]);
  return out;
}

namespace {

double entry_gap(MinPlusScalar a, MinPlusScalar b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  if (a.is_zero() || b.is_zero()) return kInfinity;
  return std::abs(a.value() - b.value());
}

}  // namespace

double max_abs_difference(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_difference: shapes differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, entry_gap(a(i, j), b(i, j)));
  return worst;
}

double max_abs_difference(std::span<const MinPlusScalar> a,
                          std::span<const MinPlusScalar> b) {
  if (a.size() != b.size()) throw DimensionMismatch("max_abs_difference: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, entry_gap(a[i], b[i]));
  return worst;
}

CircuitCheck check_circuits_positive(const MinPlusMatrix& a) {
  if (!a.square()) throw DimensionMismatch("check_circuits_positive: matrix not square");
  const std::size_t size = a.rows();
  // dist(i, j): lightest nonempty walk i -> j through pivots processed so far.
  MinPlusMatrix dist = a;
  CircuitCheck result;
  auto negative = [&](std::size_t k) {
    return dist(k, k).is_finite() && dist(k, k).value() < 0.0;
  };
  for (std::size_t k = 0; k < size; ++k) {
    // Relaxing through a pivot that already closes a negative circuit would
    // wrap around it again; its diagonal is still the weight of one circuit.
    if (negative(k)) {
      result.all_positive = false;
      result.min_weight = dist(k, k).value();
      return result;
    }
    for (std::size_t i = 0; i < size; ++i) {
      const MinPlusScalar dik = dist(i, k);
      if (dik.is_zero()) continue;
      for (std::size_t j = 0; j < size; ++j) {
        dist(i, j) = oplus(dist(i, j), otimes(dik, dist(k, j)));
      }
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    result.min_weight = std::min(result.min_weight, dist(i, i).value());
  }
  result.all_positive = !(result.min_weight <= 0.0);
  return result;
}

MinPlusMatrix power_sum(const MinPlusMatrix& a, std::size_t k) {
  if (!a.square()) throw DimensionMismatch("power_sum: matrix not square");
  MinPlusMatrix sum = MinPlusMatrix::identity(a.rows());
  MinPlusMatrix power = sum;
  for (std::size_t p = 1; p <= k; ++p) {
    power = mat_mul(power, a);
    sum = mat_oplus(sum, power);
  }
  return sum;
}

MinPlusMatrix kleene_star(const MinPlusMatrix& a) {
  if (!a.square()) throw DimensionMismatch("kleene_star: matrix not square");
  const CircuitCheck check = check_circuits_positive(a);
  if (!check.all_positive) {
    throw NonPositiveCircuit("kleene_star: circuit of weight " +
                                 std::to_string(check.min_weight) + " <= 0",
                             check.min_weight);
  }
  const std::size_t size = a.rows();
  MinPlusMatrix closure = MinPlusMatrix::identity(size);
  if (size <= 1) return closure;
  // (I + A)^k = I + A + ... + A^k; squaring past size-1 adds only walks that
  // contain a positive circuit, which never win the min.
  closure = mat_oplus(closure, a);
  for (std::size_t covered = 1; covered < size - 1; covered *= 2) {
    closure = mat_mul(closure, closure);
  }
  return closure;
}

MinPlusVector affine_solve(const MinPlusMatrix& a, std::span<const MinPlusScalar> b) {
  if (a.rows() != b.size()) throw DimensionMismatch("affine_solve: size mismatch");
  return mat_vec(kleene_star(a), b);
}

}  // namespace tropica
