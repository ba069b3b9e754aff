#include "graphlim/exact_linalg.hpp"

#include <algorithm>

#include "graphlim/error.hpp"

namespace graphlim {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Rational RationalMatrix::quadratic_form(const std::vector<Rational>& x) const {
  if (rows_ != cols_ || x.size() != rows_) throw DomainError("quadratic form size mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (x[j] != 0) row += (*this)(i, j) * x[j];
    total += x[i] * row;
  }
  return total;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product size mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

namespace {

// Elimination state shared by the PSD test and the clipped factorization.
// `work` holds the Schur complement on the indices not yet eliminated.
struct Elimination {
  RationalMatrix work;
  std::vector<bool> done;
  std::vector<std::size_t> eliminated;
  std::vector<std::vector<Rational>> columns;  // l vectors, full length

  explicit Elimination(const RationalMatrix& a) : work(a), done(a.rows(), false) {}

  std::optional<std::size_t> largest_pivot() const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < work.rows(); ++i)
      if (!done[i] && (!best || work(i, i) > work(*best, *best))) best = i;
    return best;
  }

  void eliminate(std::size_t p) {
    const std::size_t n = work.rows();
    const Rational d = work(p, p);
    std::vector<Rational> l(n);
    l[p] = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && i != p && work(i, p) != 0) l[i] = work(i, p) / d;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || i == p || l[i] == 0) continue;
      const Rational scale = l[i] * d;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || j == p || l[j] == 0) continue;
        work(i, j) -= scale * l[j];
      }
    }
    done[p] = true;
    eliminated.push_back(p);
    columns.push_back(std::move(l));
  }

  // Lift a vector supported on the remaining indices to a full vector z with
  // z^T A z equal to its Schur-complement quadratic form: back-substitute
  // through the eliminated columns in reverse order.
  std::vector<Rational> lift(std::vector<Rational> z) const {
    for (std::size_t k = eliminated.size(); k-- > 0;) {
      const std::size_t p = eliminated[k];
      const auto& l = columns[k];
      Rational acc = 0;
      for (std::size_t i = 0; i < z.size(); ++i)
        if (i != p && l[i] != 0 && z[i] != 0) acc += l[i] * z[i];
      z[p] = -acc;
    }
    return z;
  }
};

}  // namespace

PsdTestResult exact_psd_test(const RationalMatrix& a) {
  if (!a.is_symmetric()) throw DomainError("PSD test requires a symmetric matrix");
  const std::size_t n = a.rows();
  Elimination elim(a);
  PsdTestResult result;
  while (auto p = elim.largest_pivot()) {
    const Rational d = elim.work(*p, *p);
    if (d > 0) {
      result.pivots.push_back(d);
      elim.eliminate(*p);
      continue;
    }
    std::vector<Rational> z(n);
    if (d < 0) {
      z[*p] = 1;
    } else {
      // The largest remaining diagonal is zero: a negative diagonal is a
      // witness on its own, otherwise any nonzero off-diagonal entry gives
      // a negative direction e_i - sign(s_ij) e_j.
      bool found = false;
      for (std::size_t i = 0; i < n && !found; ++i)
        if (!elim.done[i] && elim.work(i, i) < 0) {
          z[i] = 1;
          found = true;
        }
      for (std::size_t i = 0; i < n && !found; ++i)
        for (std::size_t j = 0; j < n && !found; ++j)
          if (!elim.done[i] && !elim.done[j] && i != j && elim.work(i, j) != 0) {
            z[i] = 1;
            z[j] = elim.work(i, j) > 0 ? -1 : 1;
            found = true;
          }
      if (!found) break;
    }
    result.psd = false;
    result.witness = elim.lift(std::move(z));
    result.witness_value = a.quadratic_form(result.witness);
    return result;
  }
  result.psd = true;
  return result;
}

ClippedLdl ldlt_clipped(const RationalMatrix& a, const Rational& pivot_floor) {
  if (!a.is_symmetric()) throw DomainError("LDL^T requires a symmetric matrix");
  Elimination elim(a);
  ClippedLdl out;
  while (auto p = elim.largest_pivot()) {
    const Rational d = elim.work(*p, *p);
    if (d <= pivot_floor) break;
    elim.eliminate(*p);
    out.terms.push_back({d, elim.columns.back()});
  }
  out.dropped = a.rows() - out.terms.size();
  return out;
}

}  // namespace graphlim
