#include "helly/lp.hpp"

#include "helly/detail/simplex.hpp"

#include <algorithm>
#include <sstream>

namespace helly {

Rational parse_rational(std::string_view text) {
  auto bad = [&](const char* why) {
    return MalformedInput("invalid rational '" + std::string(text) + "': " + why);
  };
  if (text.empty()) throw bad("empty");
  auto valid_integer = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer(text, true)) throw bad("not an integer");
    std::string s(text);
    if (s.front() == '+') s.erase(0, 1);
    return Rational(Integer(s));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) throw bad("not p/q");
  std::string ns(num);
  if (ns.front() == '+') ns.erase(0, 1);
  Integer d{std::string(den)};
  if (d == 0) throw bad("zero denominator");
  return Rational(Integer(ns), d);
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(const Point& point) {
  std::ostringstream out;
  out << '(';
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    if (i) out << ", ";
    out << to_string(point(i));
  }
  out << ')';
  return out.str();
}

void LinearSystem::validate() const {
  if (dim < 0) throw MalformedInput("negative system dimension");
  for (const auto& c : constraints)
    if (c.coeffs.size() != dim)
      throw MalformedInput("constraint has " + std::to_string(c.coeffs.size()) +
                           " coefficients, system dimension is " + std::to_string(dim));
  for (auto v : nonneg_vars)
    if (v < 0 || v >= dim) throw MalformedInput("nonnegative variable index out of range");
}

bool LinearSystem::satisfied_by(const Point& x) const {
  if (x.size() != dim) return false;
  for (auto v : nonneg_vars)
    if (x(v) < 0) return false;
  for (const auto& c : constraints) {
    const Rational lhs = dot(c.coeffs, x);
    if (c.relation == Relation::Equal ? lhs != c.rhs : lhs > c.rhs) return false;
  }
  return true;
}

namespace {

// Standard-form image of a LinearSystem: y >= 0 with A y = b, b >= 0.
// Free variable j becomes y[plus[j]] - y[minus[j]].
struct StandardForm {
  Matrix a;
  Point b;
  std::vector<std::optional<Eigen::Index>> basis;
  std::vector<Eigen::Index> plus;
  std::vector<std::optional<Eigen::Index>> minus;
  Eigen::Index structural = 0;
  bool trivially_infeasible = false;

  Point recover(const Point& y, Eigen::Index dim) const {
    Point x(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      x(j) = y(plus[static_cast<std::size_t>(j)]);
      if (const auto& m = minus[static_cast<std::size_t>(j)]) x(j) -= y(*m);
    }
    return x;
  }
};

StandardForm to_standard_form(const LinearSystem& sys) {
  StandardForm sf;
  std::vector<bool> nonneg(static_cast<std::size_t>(sys.dim), false);
  for (auto v : sys.nonneg_vars) nonneg[static_cast<std::size_t>(v)] = true;

  Eigen::Index col = 0;
  sf.plus.resize(static_cast<std::size_t>(sys.dim));
  sf.minus.resize(static_cast<std::size_t>(sys.dim));
  for (Eigen::Index j = 0; j < sys.dim; ++j) {
    sf.plus[static_cast<std::size_t>(j)] = col++;
    if (!nonneg[static_cast<std::size_t>(j)]) sf.minus[static_cast<std::size_t>(j)] = col++;
  }

  // Rows with an all-zero left side are decided immediately.
  std::vector<const Constraint*> rows;
  for (const auto& c : sys.constraints) {
    if (is_zero(c.coeffs)) {
      const bool ok = c.relation == Relation::Equal ? c.rhs == 0 : c.rhs >= 0;
      if (!ok) sf.trivially_infeasible = true;
      continue;
    }
    rows.push_back(&c);
  }
  Eigen::Index slack_count = 0;
  for (const auto* c : rows)
    if (c->relation == Relation::LessEqual) ++slack_count;

  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  sf.structural = col + slack_count;
  sf.a = Matrix::Zero(m, sf.structural);
  sf.b = Point::Zero(m);
  sf.basis.assign(static_cast<std::size_t>(m), std::nullopt);

  Eigen::Index slack = col;
  for (Eigen::Index r = 0; r < m; ++r) {
    const Constraint& c = *rows[static_cast<std::size_t>(r)];
    const bool flip = c.rhs < 0;
    const Rational sign = flip ? -1 : 1;
    for (Eigen::Index j = 0; j < sys.dim; ++j) {
      if (c.coeffs(j) == 0) continue;
      sf.a(r, sf.plus[static_cast<std::size_t>(j)]) = sign * c.coeffs(j);
      if (const auto& mj = sf.minus[static_cast<std::size_t>(j)]) sf.a(r, *mj) = -sign * c.coeffs(j);
    }
    sf.b(r) = sign * c.rhs;
    if (c.relation == Relation::LessEqual) {
      sf.a(r, slack) = sign;
      if (!flip) sf.basis[static_cast<std::size_t>(r)] = slack;
      ++slack;
    }
  }
  return sf;
}

}  // namespace

LpResult lp_feasible(const LinearSystem& sys) {
  sys.validate();
  const StandardForm sf = to_standard_form(sys);
  if (sf.trivially_infeasible) return {};
  if (sf.a.rows() == 0) return {true, zero_point(sys.dim)};
  detail::Tableau<Rational> tableau(sf.a, sf.b, sf.basis);
  if (!tableau.find_feasible()) return {};
  return {true, sf.recover(tableau.solution(), sys.dim)};
}

LpOptimum lp_minimize(const LinearSystem& sys, const Point& objective) {
  sys.validate();
  if (objective.size() != sys.dim) throw MalformedInput("objective dimension mismatch");
  const StandardForm sf = to_standard_form(sys);
  LpOptimum out;
  if (sf.trivially_infeasible) return out;

  Point cost = Point::Zero(sf.structural);
  for (Eigen::Index j = 0; j < sys.dim; ++j) {
    cost(sf.plus[static_cast<std::size_t>(j)]) = objective(j);
    if (const auto& mj = sf.minus[static_cast<std::size_t>(j)]) cost(*mj) = -objective(j);
  }
  if (sf.a.rows() == 0) {
    // Unconstrained apart from signs: bounded only if no improving direction.
    for (Eigen::Index j = 0; j < sf.structural; ++j)
      if (cost(j) < 0) {
        out.status = LpStatus::Unbounded;
        return out;
      }
    out.status = LpStatus::Optimal;
    out.solution = zero_point(sys.dim);
    return out;
  }
  detail::Tableau<Rational> tableau(sf.a, sf.b, sf.basis);
  if (!tableau.find_feasible()) return out;
  if (tableau.minimize(cost) == detail::Tableau<Rational>::Status::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.solution = sf.recover(tableau.solution(), sys.dim);
  out.value = dot(objective, out.solution);
  return out;
}

std::optional<Point> solve_linear(const Matrix& mat, const Point& rhs) {
  if (rhs.size() != mat.rows())
    throw MalformedInput("right-hand side length does not match row count");
  return detail::solve_linear<Rational>(mat, rhs);
}

Eigen::Index SystemBuilder::add_variables(Eigen::Index count, bool nonneg) {
  const Eigen::Index first = num_vars_;
  for (Eigen::Index i = 0; i < count; ++i) {
    if (nonneg) nonneg_.push_back(num_vars_);
    ++num_vars_;
  }
  return first;
}

void SystemBuilder::add_row(std::vector<Term> terms, Relation relation, Rational rhs) {
  for (const auto& [idx, _] : terms)
    if (idx < 0 || idx >= num_vars_) throw MalformedInput("row references unknown variable");
  rows_.push_back({std::move(terms), relation, std::move(rhs)});
}

LinearSystem SystemBuilder::build() const {
  LinearSystem sys;
  sys.dim = num_vars_;
  sys.nonneg_vars = nonneg_;
  sys.constraints.reserve(rows_.size());
  for (const auto& row : rows_) {
    Constraint c;
    c.coeffs = zero_point(num_vars_);
    for (const auto& [idx, value] : row.terms) c.coeffs(idx) += value;
    c.relation = row.relation;
    c.rhs = row.rhs;
    sys.constraints.push_back(std::move(c));
  }
  return sys;
}

}  // namespace helly
