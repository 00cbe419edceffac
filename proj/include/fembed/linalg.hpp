#pragma once

#include "fembed/rational.hpp"

#include <cstddef>
#include <vector>

namespace fembed {

// Dense matrix over exact rationals, row major.
class QMatrix {
 public:
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  QMatrix transposed() const;
  QMatrix operator*(const QMatrix& o) const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

std::size_t matrix_rank(QMatrix m);

struct SolveOutcome {
  bool feasible = false;
  std::vector<Rational> x;  // defined when feasible
};

// Any exact solution of Ax = b (free variables set to zero);
// feasible = false when the system is inconsistent.
SolveOutcome solve_any(const QMatrix& a, const std::vector<Rational>& b);

// Precomputed reduced row echelon form of A, reusable across right-hand
// sides. Pivot choice is the first nonzero entry in column order, so the
// result is deterministic.
class RrefSolver {
 public:
  explicit RrefSolver(const QMatrix& a);

  std::size_t rank() const { return pivot_cols_.size(); }

  // Any solution (free vars zero); feasible=false if inconsistent.
  SolveOutcome solve(const std::vector<Rational>& b) const;

  // The unique minimum-Euclidean-norm solution of a consistent system:
  // particular solution, projected parallel to the null space. The norm is
  // minimized exactly over the rationals (the minimizer of a rational
  // quadratic is rational). feasible=false if the system is inconsistent.
  SolveOutcome solve_min_norm(const std::vector<Rational>& b) const;

  // Least-squares solution via the normal equations (always defined);
  // used to quantify how far an inconsistent right-hand side lies from the
  // column space.
  std::vector<Rational> solve_least_squares(const std::vector<Rational>& b) const;

  const QMatrix& matrix() const { return a_; }

 private:
  QMatrix a_;             // original
  QMatrix r_;             // RREF of a_
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::vector<Rational>> row_ops_;  // r_ = row_ops_ * a_ (per row, length rows)
  std::vector<std::vector<Rational>> null_basis_;  // null space basis vectors (length cols)
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);
Rational norm_sq(const std::vector<Rational>& v);

}  // namespace fembed
