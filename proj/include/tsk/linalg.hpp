#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tsk/rational.hpp"

namespace tsk {

/// Reduced row echelon form of a matrix over an exact field.
template <typename Scalar>
struct RowEchelon {
  MatrixX<Scalar> reduced;
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

template <typename Scalar>
RowEchelon<Scalar> row_echelon(MatrixX<Scalar> m) {
  RowEchelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(row).swap(m.row(pivot));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename Scalar>
Eigen::Index rank(const MatrixX<Scalar>& m) {
  return static_cast<Eigen::Index>(row_echelon(m).pivots.size());
}

/// Rank of a list of vectors of equal length.
template <typename Scalar>
Eigen::Index rank(const std::vector<VectorX<Scalar>>& rows, Eigen::Index dim) {
  MatrixX<Scalar> m(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return rank(m);
}

/// Kernel basis read off the reduced echelon form; each vector is scaled so
/// its first nonzero entry is 1.
template <typename Scalar>
std::vector<VectorX<Scalar>> nullspace(const MatrixX<Scalar>& m) {
  const RowEchelon<Scalar> e = row_echelon(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<VectorX<Scalar>> basis;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    VectorX<Scalar> v = zeros<Scalar>(m.cols());
    v(free) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v(e.pivots[r]) = -e.reduced(static_cast<Eigen::Index>(r), free);
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v(i) != 0) {
        const Scalar lead = v(i);
        v /= lead;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename Scalar>
struct LinearSolution {
  VectorX<Scalar> particular;
  std::vector<VectorX<Scalar>> nullspace_basis;
};

/// Exact solution set of A x = b: a particular solution (free variables set
/// to zero) and a kernel basis, or nullopt when the system is inconsistent.
template <typename Scalar>
std::optional<LinearSolution<Scalar>> solve_linear(const MatrixX<Scalar>& a,
                                                   const VectorX<Scalar>& b) {
  if (a.rows() != b.size())
    throw std::invalid_argument("solve_linear: matrix has " + std::to_string(a.rows()) +
                                " rows but right-hand side has " + std::to_string(b.size()));
  MatrixX<Scalar> augmented(a.rows(), a.cols() + 1);
  augmented.leftCols(a.cols()) = a;
  augmented.col(a.cols()) = b;
  const RowEchelon<Scalar> e = row_echelon(std::move(augmented));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  LinearSolution<Scalar> sol;
  sol.particular = zeros<Scalar>(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    sol.particular(e.pivots[r]) = e.reduced(static_cast<Eigen::Index>(r), a.cols());
  sol.nullspace_basis = nullspace<Scalar>(a);
  return sol;
}

/// Inverse of a square nonsingular matrix via Gauss-Jordan.
template <typename Scalar>
MatrixX<Scalar> inverse(const MatrixX<Scalar>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const Eigen::Index n = m.rows();
  MatrixX<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = MatrixX<Scalar>::Identity(n, n);
  const RowEchelon<Scalar> e = row_echelon(std::move(aug));
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    throw std::domain_error("inverse: matrix is singular");
  return e.reduced.rightCols(n);
}

}  // namespace tsk
