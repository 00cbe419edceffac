#include "fembed/linalg.hpp"

#include <stdexcept>

namespace fembed {

QMatrix QMatrix::transposed() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("QMatrix::*: shape mismatch");
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Rational& okj = o.at(k, j);
        if (okj != 0) r.at(i, j) += aik * okj;
      }
    }
  return r;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("QMatrix::apply: size mismatch");
  std::vector<Rational> y(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
  return y;
}

std::size_t matrix_rank(QMatrix m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(rank, j), m.at(pivot, j));
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (m.at(i, col) == 0) continue;
      Rational f = m.at(i, col) / m.at(rank, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

RrefSolver::RrefSolver(const QMatrix& a) : a_(a), r_(a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  // Track the row operations so any right-hand side can be reduced later.
  row_ops_.assign(rows, std::vector<Rational>(rows, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) row_ops_[i][i] = Rational(1);

  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t pivot = lead;
    while (pivot < rows && r_.at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(row_ops_[lead], row_ops_[pivot]);
    for (std::size_t j = 0; j < cols; ++j) std::swap(r_.at(lead, j), r_.at(pivot, j));
    Rational inv = Rational(1) / r_.at(lead, col);
    for (std::size_t j = 0; j < cols; ++j) r_.at(lead, j) *= inv;
    for (auto& v : row_ops_[lead]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead || r_.at(i, col) == 0) continue;
      Rational f = r_.at(i, col);
      for (std::size_t j = 0; j < cols; ++j) r_.at(i, j) -= f * r_.at(lead, j);
      for (std::size_t k = 0; k < rows; ++k) row_ops_[i][k] -= f * row_ops_[lead][k];
    }
    pivot_cols_.push_back(col);
    ++lead;
  }

  // Null space basis: one vector per free column.
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols_) is_pivot[c] = true;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = Rational(1);
    for (std::size_t p = 0; p < pivot_cols_.size(); ++p) v[pivot_cols_[p]] = -r_.at(p, free_col);
    null_basis_.push_back(std::move(v));
  }
}

SolveOutcome RrefSolver::solve(const std::vector<Rational>& b) const {
  const std::size_t rows = a_.rows(), cols = a_.cols();
  if (b.size() != rows) throw std::invalid_argument("RrefSolver::solve: rhs size mismatch");
  // Reduced right-hand side under the recorded row operations.
  std::vector<Rational> rb(rows, Rational(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rows; ++k)
      if (row_ops_[i][k] != 0 && b[k] != 0) rb[i] += row_ops_[i][k] * b[k];
  for (std::size_t i = pivot_cols_.size(); i < rows; ++i)
    if (rb[i] != 0) return {};  // inconsistent row 0 = nonzero
  SolveOutcome out;
  out.feasible = true;
  out.x.assign(cols, Rational(0));
  for (std::size_t p = 0; p < pivot_cols_.size(); ++p) out.x[pivot_cols_[p]] = rb[p];
  return out;
}

SolveOutcome RrefSolver::solve_min_norm(const std::vector<Rational>& b) const {
  SolveOutcome part = solve(b);
  if (!part.feasible) return part;
  if (null_basis_.empty()) return part;
  // Minimize |x0 + N c|^2 over c: (N^T N) c = -N^T x0. N^T N is positive
  // definite (basis columns are independent), so the inner solve always
  // succeeds.
  const std::size_t k = null_basis_.size();
  QMatrix ntn(k, k);
  std::vector<Rational> rhs(k, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) ntn.at(i, j) = dot(null_basis_[i], null_basis_[j]);
    rhs[i] = -dot(null_basis_[i], part.x);
  }
  SolveOutcome c = solve_any(ntn, rhs);
  if (!c.feasible) throw std::logic_error("RrefSolver::solve_min_norm: Gram system unsolvable");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < part.x.size(); ++j) part.x[j] += c.x[i] * null_basis_[i][j];
  return part;
}

std::vector<Rational> RrefSolver::solve_least_squares(const std::vector<Rational>& b) const {
  QMatrix at = a_.transposed();
  QMatrix normal = at * a_;
  std::vector<Rational> rhs = at.apply(b);
  SolveOutcome out = solve_any(normal, rhs);
  if (!out.feasible) throw std::logic_error("RrefSolver::solve_least_squares: normal equations unsolvable");
  return out.x;
}

SolveOutcome solve_any(const QMatrix& a, const std::vector<Rational>& b) {
  return RrefSolver(a).solve(b);
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

Rational norm_sq(const std::vector<Rational>& v) { return dot(v, v); }

}  // namespace fembed
