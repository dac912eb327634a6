#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tsk/linalg.hpp"

namespace tsk {

/// ⟨normal, x⟩ ≥ rhs (or = rhs when used as an equality).
template <typename Scalar>
struct LinearConstraint {
  VectorX<Scalar> normal;
  Scalar rhs;

  friend bool operator==(const LinearConstraint& a, const LinearConstraint& b) {
    return a.normal.size() == b.normal.size() && a.normal == b.normal && a.rhs == b.rhs;
  }
};

enum class LPStatus { optimal, unbounded, infeasible };
enum class Sense { minimize, maximize };

template <typename Scalar>
struct LPResult {
  LPStatus status = LPStatus::infeasible;
  std::optional<VectorX<Scalar>> point;
  std::optional<Scalar> value;
};

namespace detail {

/// Dense two-phase tableau simplex on the standard form obtained by splitting
/// free variables and adding surplus and artificial columns. Bland's rule is
/// used in both phases.
template <typename Scalar>
class Tableau {
 public:
  Tableau(std::span<const LinearConstraint<Scalar>> inequalities,
          std::span<const LinearConstraint<Scalar>> equalities, Eigen::Index num_vars)
      : n_(num_vars),
        m_(static_cast<Eigen::Index>(inequalities.size() + equalities.size())),
        num_ineq_(static_cast<Eigen::Index>(inequalities.size())) {
    cols_ = 2 * n_ + num_ineq_ + m_;
    t_ = MatrixX<Scalar>::Constant(m_, cols_ + 1, Scalar(0));
    basis_.resize(static_cast<std::size_t>(m_));
    Eigen::Index r = 0;
    auto fill = [&](const LinearConstraint<Scalar>& c, bool is_inequality) {
      if (c.normal.size() != n_) throw std::invalid_argument("lp_solve: constraint dimension mismatch");
      for (Eigen::Index j = 0; j < n_; ++j) {
        t_(r, j) = c.normal(j);
        t_(r, n_ + j) = -c.normal(j);
      }
      if (is_inequality) t_(r, 2 * n_ + r) = -1;
      t_(r, cols_) = c.rhs;
      if (c.rhs < 0) t_.row(r) *= Scalar(-1);
      t_(r, artificial(r)) = 1;
      basis_[static_cast<std::size_t>(r)] = artificial(r);
      ++r;
    };
    for (const auto& c : inequalities) fill(c, true);
    for (const auto& c : equalities) fill(c, false);
    allowed_.assign(static_cast<std::size_t>(cols_), true);
  }

  /// Returns false when the constraints are infeasible.
  bool phase_one() {
    VectorX<Scalar> cost = zeros<Scalar>(cols_);
    for (Eigen::Index r = 0; r < m_; ++r) cost(artificial(r)) = 1;
    set_cost(cost);
    if (!iterate()) throw std::logic_error("lp_solve: phase one cannot be unbounded");
    if (objective_value() != 0) return false;
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[static_cast<std::size_t>(r)])) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < first_artificial(); ++j)
        if (t_(r, j) != 0) {
          col = j;
          break;
        }
      if (col >= 0) pivot(r, col);
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index r = 0; r < m_; ++r)
      if (!is_artificial(basis_[static_cast<std::size_t>(r)])) keep.push_back(r);
    if (static_cast<Eigen::Index>(keep.size()) != m_) {
      MatrixX<Scalar> reduced(static_cast<Eigen::Index>(keep.size()), t_.cols());
      std::vector<Eigen::Index> new_basis;
      for (std::size_t i = 0; i < keep.size(); ++i) {
        reduced.row(static_cast<Eigen::Index>(i)) = t_.row(keep[i]);
        new_basis.push_back(basis_[static_cast<std::size_t>(keep[i])]);
      }
      t_ = std::move(reduced);
      basis_ = std::move(new_basis);
      m_ = static_cast<Eigen::Index>(keep.size());
    }
    for (Eigen::Index j = first_artificial(); j < cols_; ++j) allowed_[static_cast<std::size_t>(j)] = false;
    return true;
  }

  /// Minimizes c·x; returns false when unbounded.
  bool phase_two(const VectorX<Scalar>& c) {
    VectorX<Scalar> cost = zeros<Scalar>(cols_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      cost(j) = c(j);
      cost(n_ + j) = -c(j);
    }
    set_cost(cost);
    return iterate();
  }

  VectorX<Scalar> solution() const {
    VectorX<Scalar> x = zeros<Scalar>(n_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(r)];
      if (b < n_) x(b) += t_(r, cols_);
      else if (b < 2 * n_) x(b - n_) -= t_(r, cols_);
    }
    return x;
  }

 private:
  Eigen::Index first_artificial() const { return 2 * n_ + num_ineq_; }
  Eigen::Index artificial(Eigen::Index row) const { return first_artificial() + row; }
  bool is_artificial(Eigen::Index col) const { return col >= first_artificial(); }

  Scalar objective_value() const {
    Scalar v = 0;
    for (Eigen::Index r = 0; r < m_; ++r) v += cost_(basis_[static_cast<std::size_t>(r)]) * t_(r, cols_);
    return v;
  }

  void set_cost(const VectorX<Scalar>& cost) {
    cost_ = cost;
    reduced_ = cost;
    for (Eigen::Index r = 0; r < m_; ++r) {
      const Scalar cb = cost(basis_[static_cast<std::size_t>(r)]);
      if (cb == 0) continue;
      for (Eigen::Index j = 0; j < cols_; ++j)
        if (t_(r, j) != 0) reduced_(j) -= cb * t_(r, j);
    }
  }

  bool iterate() {
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < cols_; ++j)
        if (allowed_[static_cast<std::size_t>(j)] && reduced_(j) < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Scalar best;
      for (Eigen::Index r = 0; r < m_; ++r) {
        if (t_(r, enter) <= 0) continue;
        Scalar ratio = t_(r, cols_) / t_(r, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Scalar inv = Scalar(1) / t_(row, col);
    for (Eigen::Index j = 0; j <= cols_; ++j)
      if (t_(row, j) != 0) t_(row, j) *= inv;
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (r == row || t_(r, col) == 0) continue;
      const Scalar f = t_(r, col);
      for (Eigen::Index j = 0; j <= cols_; ++j)
        if (t_(row, j) != 0) t_(r, j) -= f * t_(row, j);
    }
    if (reduced_.size() == cols_ && reduced_(col) != 0) {
      const Scalar f = reduced_(col);
      for (Eigen::Index j = 0; j < cols_; ++j)
        if (t_(row, j) != 0) reduced_(j) -= f * t_(row, j);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Eigen::Index n_;
  Eigen::Index m_;
  Eigen::Index num_ineq_;
  Eigen::Index cols_ = 0;
  MatrixX<Scalar> t_;
  VectorX<Scalar> cost_;
  VectorX<Scalar> reduced_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> allowed_;
};

}  // namespace detail

/// Exact linear program over ⟨a,x⟩ ≥ b constraints (plus optional equalities)
/// with free variables. Deterministic: Bland's rule throughout.
template <typename Scalar>
LPResult<Scalar> lp_solve(std::span<const LinearConstraint<Scalar>> inequalities,
                          const VectorX<Scalar>& objective, Sense sense,
                          std::span<const LinearConstraint<Scalar>> equalities = {}) {
  const Eigen::Index n = objective.size();
  detail::Tableau<Scalar> tableau(inequalities, equalities, n);
  LPResult<Scalar> result;
  if (!tableau.phase_one()) {
    result.status = LPStatus::infeasible;
    return result;
  }
  const VectorX<Scalar> c = sense == Sense::minimize ? objective : VectorX<Scalar>(-objective);
  if (!tableau.phase_two(c)) {
    result.status = LPStatus::unbounded;
    return result;
  }
  result.status = LPStatus::optimal;
  result.point = tableau.solution();
  result.value = objective.dot(*result.point);
  return result;
}

template <typename Scalar>
LPResult<Scalar> lp_solve(const std::vector<LinearConstraint<Scalar>>& inequalities,
                          const VectorX<Scalar>& objective, Sense sense,
                          const std::vector<LinearConstraint<Scalar>>& equalities = {}) {
  return lp_solve<Scalar>(std::span<const LinearConstraint<Scalar>>(inequalities), objective, sense,
                          std::span<const LinearConstraint<Scalar>>(equalities));
}

/// Primal simplex that walks the vertices of a pointed polyhedron
/// {x : A x ≥ b}, keeping the inverse of the active basis between solves so
/// a sequence of objectives can be minimized with warm starts. Bland's rule:
/// leave the active constraint of smallest index with a negative multiplier,
/// enter the blocking constraint of smallest index.
template <typename Scalar>
class VertexSimplex {
 public:
  /// `feasible` must satisfy all constraints; it is moved to a vertex first.
  VertexSimplex(MatrixX<Scalar> a, VectorX<Scalar> b, VectorX<Scalar> feasible)
      : a_(std::move(a)), b_(std::move(b)), x_(std::move(feasible)) {
    if (a_.rows() != b_.size() || a_.cols() != x_.size())
      throw std::invalid_argument("VertexSimplex: dimension mismatch");
    slack_ = a_ * x_ - b_;
    if (!is_nonnegative(slack_)) throw std::domain_error("VertexSimplex: starting point infeasible");
    rows_.resize(static_cast<std::size_t>(a_.rows()));
    for (Eigen::Index i = 0; i < a_.rows(); ++i)
      for (Eigen::Index j = 0; j < a_.cols(); ++j)
        if (a_(i, j) != 0) rows_[static_cast<std::size_t>(i)].emplace_back(j, a_(i, j));
    move_to_vertex();
  }

  const VectorX<Scalar>& vertex() const { return x_; }

  LPResult<Scalar> minimize(const VectorX<Scalar>& c) {
    const Eigen::Index n = a_.cols();
    const Eigen::Index m = a_.rows();
    if (c.size() != n) throw std::invalid_argument("VertexSimplex: objective dimension mismatch");
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < n; ++i)
      if (c(i) != 0) support.push_back(i);
    VectorX<Scalar> y(n), d(n), ad(m);
    Scalar t;
    for (;;) {
      // y = B^{-T} c over the support of c.
      for (Eigen::Index j = 0; j < n; ++j) {
        y(j) = 0;
        for (const Eigen::Index i : support) {
          if (binv_(i, j) == 0) continue;
          t = binv_(i, j);
          t *= c(i);
          y(j) += t;
        }
      }
      Eigen::Index k = -1;
      for (Eigen::Index j = 0; j < n; ++j)
        if (y(j) < 0 && (k < 0 || basis_[static_cast<std::size_t>(j)] < basis_[static_cast<std::size_t>(k)])) k = j;
      if (k < 0) break;
      d = binv_.col(k);
      Eigen::Index enter = -1;
      Scalar step;
      for (Eigen::Index i = 0; i < m; ++i) {
        ad(i) = 0;
        for (const auto& [j, v] : rows_[static_cast<std::size_t>(i)]) {
          if (d(j) == 0) continue;
          t = v;
          t *= d(j);
          ad(i) += t;
        }
        if (ad(i) >= 0) continue;
        Scalar s = slack_(i) / -ad(i);
        if (enter < 0 || s < step) {
          enter = i;
          step = std::move(s);
        }
      }
      if (enter < 0) return {LPStatus::unbounded, std::nullopt, std::nullopt};
      if (step != 0) {
        for (Eigen::Index j = 0; j < n; ++j)
          if (d(j) != 0) x_(j) += step * d(j);
        for (Eigen::Index i = 0; i < m; ++i)
          if (ad(i) != 0) slack_(i) += step * ad(i);
      }
      // Rank-one update for replacing row basis_[k] by row enter.
      const Eigen::Index leave = basis_[static_cast<std::size_t>(k)];
      VectorX<Scalar> u = VectorX<Scalar>::Zero(n);
      for (const auto& [j, v] : rows_[static_cast<std::size_t>(enter)])
        for (Eigen::Index l = 0; l < n; ++l)
          if (binv_(j, l) != 0) u(l) += v * binv_(j, l);
      for (const auto& [j, v] : rows_[static_cast<std::size_t>(leave)])
        for (Eigen::Index l = 0; l < n; ++l)
          if (binv_(j, l) != 0) u(l) -= v * binv_(j, l);
      const Scalar denom = ad(enter);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (d(i) == 0) continue;
        const Scalar f = d(i) / denom;
        for (Eigen::Index l = 0; l < n; ++l) {
          if (u(l) == 0) continue;
          t = f;
          t *= u(l);
          binv_(i, l) -= t;
        }
      }
      basis_[static_cast<std::size_t>(k)] = enter;
    }
    return {LPStatus::optimal, x_, c.dot(x_)};
  }

 private:
  void move_to_vertex() {
    const Eigen::Index n = a_.cols();
    for (;;) {
      std::vector<VectorX<Scalar>> tight;
      for (Eigen::Index i = 0; i < a_.rows(); ++i)
        if (slack_(i) == 0) tight.push_back(a_.row(i).transpose());
      MatrixX<Scalar> t(static_cast<Eigen::Index>(tight.size()), n);
      for (std::size_t i = 0; i < tight.size(); ++i) t.row(static_cast<Eigen::Index>(i)) = tight[i].transpose();
      const auto kernel = nullspace<Scalar>(t);
      if (kernel.empty()) break;
      VectorX<Scalar> d = kernel.front();
      VectorX<Scalar> ad = a_ * d;
      if (is_nonnegative(ad)) {
        d = -d;
        ad = -ad;
        if (is_nonnegative(ad)) throw std::domain_error("VertexSimplex: polyhedron is not pointed");
      }
      Eigen::Index block = -1;
      Scalar step;
      for (Eigen::Index i = 0; i < a_.rows(); ++i) {
        if (ad(i) >= 0) continue;
        Scalar s = slack_(i) / -ad(i);
        if (block < 0 || s < step) {
          block = i;
          step = std::move(s);
        }
      }
      x_ += step * d;
      slack_ += step * ad;
      slack_(block) = 0;
    }
    // Lowest-index independent tight rows form the starting basis.
    MatrixX<Scalar> acc(0, n);
    for (Eigen::Index i = 0; i < a_.rows() && static_cast<Eigen::Index>(basis_.size()) < n; ++i) {
      if (slack_(i) != 0) continue;
      MatrixX<Scalar> trial(acc.rows() + 1, n);
      trial.topRows(acc.rows()) = acc;
      trial.row(acc.rows()) = a_.row(i);
      if (rank(trial) == trial.rows()) {
        acc = std::move(trial);
        basis_.push_back(i);
      }
    }
    binv_ = inverse(acc);
  }

  MatrixX<Scalar> a_;
  VectorX<Scalar> b_;
  VectorX<Scalar> x_;
  VectorX<Scalar> slack_;
  std::vector<Eigen::Index> basis_;
  MatrixX<Scalar> binv_;
  std::vector<std::vector<std::pair<Eigen::Index, Scalar>>> rows_;  // nonzeros of a_
};

}  // namespace tsk
