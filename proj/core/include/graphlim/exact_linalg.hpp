#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "graphlim/rational.hpp"

namespace graphlim {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  bool is_symmetric() const;
  /// x^T A x.
  Rational quadratic_form(const std::vector<Rational>& x) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct PsdTestResult {
  bool psd = false;
  /// When not PSD: z with z^T A z = witness_value < 0.
  std::vector<Rational> witness;
  Rational witness_value;
  /// Pivots accepted by the factorization, in elimination order.
  std::vector<Rational> pivots;
};

/// Exact PSD decision by symmetric LDL^T with largest-diagonal pivoting.
/// A negative pivot, or a zero pivot with a nonzero remaining row, is
/// turned into an explicit witness vector.
PsdTestResult exact_psd_test(const RationalMatrix& a);

/// One rank-one term d * l l^T of a factorization.
struct RankOneTerm {
  Rational weight;
  std::vector<Rational> vector;
};

struct ClippedLdl {
  std::vector<RankOneTerm> terms;
  /// Number of trailing pivots dropped because they fell at or below the floor.
  std::size_t dropped = 0;
};

/// LDL^T with largest-diagonal pivoting that stops as soon as the largest
/// remaining pivot is <= pivot_floor; the remaining Schur complement is
/// discarded. sum_i d_i l_i l_i^T then equals the input exactly whenever
/// nothing was dropped.
ClippedLdl ldlt_clipped(const RationalMatrix& a, const Rational& pivot_floor);

}  // namespace graphlim
