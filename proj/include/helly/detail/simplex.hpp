#ifndef HELLY_DETAIL_SIMPLEX_HPP
#define HELLY_DETAIL_SIMPLEX_HPP

#include "helly/exact.hpp"

#include <optional>
#include <vector>

namespace helly::detail {

/// Dense two-phase simplex over an exact scalar, standard form
///   A y = b, y >= 0, b >= 0.
/// Pivoting follows Bland's rule in both phases, so degenerate problems
/// terminate. Columns [0, num_structural) are the caller's variables;
/// artificial columns are appended internally.
template <typename Scalar>
class Tableau {
 public:
  enum class Status { Optimal, Infeasible, Unbounded };

  /// `initial_basis[r]` may name a structural column that is a unit column
  /// in row r (a slack); rows without one get an artificial.
  Tableau(const MatrixX<Scalar>& a, const VectorX<Scalar>& b,
          const std::vector<std::optional<Eigen::Index>>& initial_basis)
      : rows_(a.rows()), structural_(a.cols()) {
    std::vector<Eigen::Index> needs_artificial;
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (!initial_basis[static_cast<std::size_t>(r)]) needs_artificial.push_back(r);
    cols_ = structural_ + static_cast<Eigen::Index>(needs_artificial.size());
    t_ = MatrixX<Scalar>::Zero(rows_, cols_ + 1);
    t_.block(0, 0, rows_, structural_) = a;
    t_.col(cols_) = b;
    basis_.resize(static_cast<std::size_t>(rows_));
    Eigen::Index next = structural_;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const auto& init = initial_basis[static_cast<std::size_t>(r)];
      if (init) {
        basis_[static_cast<std::size_t>(r)] = *init;
      } else {
        t_(r, next) = 1;
        basis_[static_cast<std::size_t>(r)] = next++;
      }
    }
  }

  /// Phase 1. Returns false when the system has no nonnegative solution.
  bool find_feasible() {
    if (cols_ == structural_) return true;
    VectorX<Scalar> cost = VectorX<Scalar>::Zero(cols_);
    for (Eigen::Index j = structural_; j < cols_; ++j) cost(j) = 1;
    run(cost, cols_);
    Scalar infeasibility = 0;
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (basis_[static_cast<std::size_t>(r)] >= structural_) infeasibility += t_(r, cols_);
    if (infeasibility != 0) return false;
    drive_out_artificials();
    return true;
  }

  /// Phase 2 over structural columns. Call after find_feasible() succeeded.
  Status minimize(const VectorX<Scalar>& structural_cost) {
    VectorX<Scalar> cost = VectorX<Scalar>::Zero(cols_);
    cost.head(structural_) = structural_cost;
    return run(cost, structural_) ? Status::Optimal : Status::Unbounded;
  }

  /// Current basic solution restricted to structural columns.
  VectorX<Scalar> solution() const {
    VectorX<Scalar> y = VectorX<Scalar>::Zero(structural_);
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const Eigen::Index j = basis_[static_cast<std::size_t>(r)];
      if (j < structural_) y(j) = t_(r, cols_);
    }
    return y;
  }

 private:
  // Minimizes cost·y with entering columns restricted to [0, enter_limit).
  // Returns false on unboundedness.
  bool run(const VectorX<Scalar>& cost, Eigen::Index enter_limit) {
    for (;;) {
      // Reduced costs, computed fresh each iteration: c_j - c_B^T T_j.
      std::optional<Eigen::Index> entering;
      for (Eigen::Index j = 0; j < enter_limit && !entering; ++j) {
        if (is_basic(j)) continue;
        Scalar reduced = cost(j);
        for (Eigen::Index r = 0; r < rows_; ++r) {
          const Scalar& cb = cost(basis_[static_cast<std::size_t>(r)]);
          if (cb != 0 && t_(r, j) != 0) reduced -= cb * t_(r, j);
        }
        if (reduced < 0) entering = j;
      }
      if (!entering) return true;
      const Eigen::Index col = *entering;

      std::optional<Eigen::Index> leaving;
      Scalar best_ratio;
      for (Eigen::Index r = 0; r < rows_; ++r) {
        if (t_(r, col) <= 0) continue;
        Scalar ratio = t_(r, cols_) / t_(r, col);
        if (!leaving || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(r)] <
                                        basis_[static_cast<std::size_t>(*leaving)])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return false;
      pivot(*leaving, col);
    }
  }

  void drive_out_artificials() {
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < structural_) continue;
      for (Eigen::Index j = 0; j < structural_; ++j) {
        if (t_(r, j) != 0 && !is_basic(j)) {
          pivot(r, j);
          break;
        }
      }
      // A row with no structural entry is redundant; its artificial stays
      // basic at level zero and can never re-enter.
    }
  }

  bool is_basic(Eigen::Index j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  void pivot(Eigen::Index p, Eigen::Index col) {
    const Scalar inv = Scalar(1) / t_(p, col);
    std::vector<Eigen::Index> nonzero;
    for (Eigen::Index j = 0; j <= cols_; ++j) {
      if (t_(p, j) == 0) continue;
      t_(p, j) *= inv;
      nonzero.push_back(j);
    }
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (r == p || t_(r, col) == 0) continue;
      const Scalar factor = t_(r, col);
      for (auto j : nonzero) t_(r, j) -= factor * t_(p, j);
    }
    basis_[static_cast<std::size_t>(p)] = col;
  }

  Eigen::Index rows_;
  Eigen::Index structural_;
  Eigen::Index cols_ = 0;
  MatrixX<Scalar> t_;
  std::vector<Eigen::Index> basis_;
};

/// Gaussian elimination; any consistent solution with free variables at zero.
template <typename Scalar>
std::optional<VectorX<Scalar>> solve_linear(MatrixX<Scalar> a, VectorX<Scalar> b) {
  const Eigen::Index m = a.rows(), n = a.cols();
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < m; ++col) {
    Eigen::Index sel = row;
    while (sel < m && a(sel, col) == 0) ++sel;
    if (sel == m) continue;
    a.row(row).swap(a.row(sel));
    std::swap(b(row), b(sel));
    const Scalar inv = Scalar(1) / a(row, col);
    a.row(row) *= inv;
    b(row) *= inv;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Scalar f = a(r, col);
      a.row(r) -= f * a.row(row);
      b(r) -= f * b(row);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (Eigen::Index r = row; r < m; ++r)
    if (b(r) != 0) return std::nullopt;
  VectorX<Scalar> x = VectorX<Scalar>::Zero(n);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i)
    x(pivot_cols[i]) = b(static_cast<Eigen::Index>(i));
  return x;
}

}  // namespace helly::detail

#endif  // HELLY_DETAIL_SIMPLEX_HPP
