#ifndef HELLY_LP_HPP
#define HELLY_LP_HPP

#include "helly/exact.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace helly {

enum class Relation { LessEqual, Equal };

struct Constraint {
  Point coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs = 0;
};

/// Conjunction of linear constraints over `dim` variables. Variables listed in
/// `nonneg_vars` are additionally constrained to be >= 0; all others are free.
struct LinearSystem {
  Eigen::Index dim = 0;
  std::vector<Constraint> constraints;
  std::vector<Eigen::Index> nonneg_vars;

  /// Throws MalformedInput when a row length or a nonneg index is out of shape.
  void validate() const;

  /// Exact check of every constraint (and sign restriction) at `x`.
  bool satisfied_by(const Point& x) const;
};

struct LpResult {
  bool feasible = false;
  std::optional<Point> witness;
};

/// Phase-1 simplex with Bland's rule. The witness is a basic solution and
/// satisfies every constraint exactly.
LpResult lp_feasible(const LinearSystem& sys);

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOptimum {
  LpStatus status = LpStatus::Infeasible;
  Point solution;  // set when Optimal
  Rational value = 0;
};

/// Minimizes objective·x over the system. Only used internally (height
/// queries when lifting projected points); not a general optimization API.
LpOptimum lp_minimize(const LinearSystem& sys, const Point& objective);

/// Exact solution of mat·x = rhs, free variables set to zero. std::nullopt if
/// the system is inconsistent.
std::optional<Point> solve_linear(const Matrix& mat, const Point& rhs);

/// Incremental construction of a LinearSystem from sparse rows, so that
/// callers can allocate auxiliary variable blocks (convex/conic multipliers)
/// as they go.
class SystemBuilder {
 public:
  using Term = std::pair<Eigen::Index, Rational>;

  SystemBuilder() = default;
  explicit SystemBuilder(Eigen::Index free_vars) { add_variables(free_vars, false); }

  /// Returns the index of the first new variable.
  Eigen::Index add_variables(Eigen::Index count, bool nonneg);
  Eigen::Index add_variable(bool nonneg) { return add_variables(1, nonneg); }

  void add_row(std::vector<Term> terms, Relation relation, Rational rhs);

  Eigen::Index num_variables() const { return num_vars_; }
  LinearSystem build() const;

 private:
  struct SparseRow {
    std::vector<Term> terms;
    Relation relation;
    Rational rhs;
  };
  Eigen::Index num_vars_ = 0;
  std::vector<Eigen::Index> nonneg_;
  std::vector<SparseRow> rows_;
};

}  // namespace helly

#endif  // HELLY_LP_HPP
