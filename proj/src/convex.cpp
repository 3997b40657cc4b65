#include "helly/convex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace helly {

namespace {

void check_dim(const Point& p, Eigen::Index dim, const std::string& what) {
  if (p.size() != dim)
    throw MalformedInput(what + " has dimension " + std::to_string(p.size()) + ", expected " +
                         std::to_string(dim));
}

std::vector<Eigen::Index> iota_vars(Eigen::Index first, Eigen::Index count) {
  std::vector<Eigen::Index> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), first);
  return v;
}

// Rescale so the first nonzero normal coordinate has absolute value 1.
Halfspace normalized(Halfspace h) {
  for (Eigen::Index i = 0; i < h.normal.size(); ++i) {
    if (h.normal(i) != 0) {
      const Rational scale = abs(h.normal(i));
      h.normal /= scale;
      h.offset /= scale;
      break;
    }
  }
  return h;
}

bool halfspace_less(const Halfspace& a, const Halfspace& b) {
  if (lex_less(a.normal, b.normal)) return true;
  if (lex_less(b.normal, a.normal)) return false;
  return a.offset < b.offset;
}

std::vector<Point> dedupe_points(std::vector<Point> pts) {
  std::vector<Point> out;
  for (auto& p : pts) {
    bool seen = false;
    for (const auto& q : out)
      if (equal(p, q)) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

ConvexSet ConvexSet::from_halfspaces(std::string label, Eigen::Index dim,
                                     std::vector<Halfspace> halfspaces) {
  if (dim < 1) throw MalformedInput("set dimension must be positive");
  for (const auto& h : halfspaces) {
    check_dim(h.normal, dim, "halfspace normal of '" + label + "'");
    if (is_zero(h.normal) && h.offset < 0)
      throw MalformedInput("halfspace with zero normal and negative offset in '" + label + "'");
  }
  return ConvexSet(std::move(label), dim, HRep{std::move(halfspaces)});
}

ConvexSet ConvexSet::from_generators(std::string label, Eigen::Index dim, std::vector<Point> points,
                                     std::vector<Point> rays) {
  if (dim < 1) throw MalformedInput("set dimension must be positive");
  if (points.empty()) throw MalformedInput("generator set '" + label + "' has no points");
  for (const auto& p : points) check_dim(p, dim, "point of '" + label + "'");
  for (const auto& r : rays) check_dim(r, dim, "ray of '" + label + "'");
  return ConvexSet(std::move(label), dim, VRep{std::move(points), std::move(rays)});
}

ConvexSet ConvexSet::box(std::string label, const Point& lo, const Point& hi) {
  if (lo.size() != hi.size()) throw MalformedInput("box corners differ in dimension");
  const Eigen::Index d = lo.size();
  std::vector<Point> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Point c(d);
    for (Eigen::Index i = 0; i < d; ++i) c(i) = (mask >> i) & 1U ? hi(i) : lo(i);
    corners.push_back(std::move(c));
  }
  return from_generators(std::move(label), d, dedupe_points(std::move(corners)));
}

ConvexSet ConvexSet::box_halfspaces(std::string label, const Point& lo, const Point& hi) {
  if (lo.size() != hi.size()) throw MalformedInput("box corners differ in dimension");
  const Eigen::Index d = lo.size();
  std::vector<Halfspace> hs;
  for (Eigen::Index i = 0; i < d; ++i) {
    hs.push_back({unit_point(d, i), hi(i)});
    hs.push_back({-unit_point(d, i), -lo(i)});
  }
  return from_halfspaces(std::move(label), d, std::move(hs));
}

IndexSet all_indices(std::size_t n) {
  IndexSet idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

Family::Family(Eigen::Index d, std::vector<ConvexSet> members) : dim(d) {
  for (auto& s : members) add(std::move(s));
}

void Family::add(ConvexSet s) {
  if (s.dim() != dim)
    throw MalformedInput("member '" + s.label() + "' has dimension " + std::to_string(s.dim()) +
                         ", family dimension is " + std::to_string(dim));
  for (const auto& t : sets)
    if (t.label() == s.label()) throw MalformedInput("duplicate label '" + s.label() + "'");
  sets.push_back(std::move(s));
}

void Family::validate() const {
  if (dim < 1) throw MalformedInput("family dimension must be positive");
  std::set<std::string> labels;
  for (const auto& s : sets) {
    if (s.dim() != dim) throw MalformedInput("member '" + s.label() + "' has wrong dimension");
    if (!labels.insert(s.label()).second)
      throw MalformedInput("duplicate label '" + s.label() + "'");
  }
}

Family Family::subfamily(const IndexSet& indices) const {
  Family out;
  out.dim = dim;
  for (auto i : indices) out.sets.push_back(sets.at(i));
  return out;
}

SetRefs refs(const Family& fam, const IndexSet& indices) {
  SetRefs out;
  out.reserve(indices.size());
  for (auto i : indices) {
    if (i >= fam.size()) throw MalformedInput("index " + std::to_string(i) + " out of range");
    out.push_back(&fam.sets[i]);
  }
  return out;
}

void encode_membership(SystemBuilder& builder, std::span<const Eigen::Index> coords,
                       const ConvexSet& s) {
  if (static_cast<Eigen::Index>(coords.size()) != s.dim())
    throw MalformedInput("membership encoding dimension mismatch for '" + s.label() + "'");
  const Eigen::Index d = s.dim();
  if (s.is_hrep()) {
    for (const auto& h : s.hrep().halfspaces) {
      std::vector<SystemBuilder::Term> terms;
      for (Eigen::Index i = 0; i < d; ++i)
        if (h.normal(i) != 0) terms.emplace_back(coords[static_cast<std::size_t>(i)], h.normal(i));
      builder.add_row(std::move(terms), Relation::LessEqual, h.offset);
    }
    return;
  }
  const VRep& v = s.vrep();
  if (v.points.size() == 1 && v.rays.empty()) {
    for (Eigen::Index i = 0; i < d; ++i)
      builder.add_row({{coords[static_cast<std::size_t>(i)], 1}}, Relation::Equal, v.points[0](i));
    return;
  }
  const auto np = static_cast<Eigen::Index>(v.points.size());
  const auto nr = static_cast<Eigen::Index>(v.rays.size());
  const Eigen::Index lambda = builder.add_variables(np, true);
  const Eigen::Index mu = builder.add_variables(nr, true);
  std::vector<SystemBuilder::Term> sum;
  for (Eigen::Index k = 0; k < np; ++k) sum.emplace_back(lambda + k, 1);
  builder.add_row(std::move(sum), Relation::Equal, 1);
  for (Eigen::Index i = 0; i < d; ++i) {
    std::vector<SystemBuilder::Term> terms{{coords[static_cast<std::size_t>(i)], 1}};
    for (Eigen::Index k = 0; k < np; ++k)
      if (v.points[static_cast<std::size_t>(k)](i) != 0)
        terms.emplace_back(lambda + k, -v.points[static_cast<std::size_t>(k)](i));
    for (Eigen::Index k = 0; k < nr; ++k)
      if (v.rays[static_cast<std::size_t>(k)](i) != 0)
        terms.emplace_back(mu + k, -v.rays[static_cast<std::size_t>(k)](i));
    builder.add_row(std::move(terms), Relation::Equal, 0);
  }
}

void encode_recession(SystemBuilder& builder, std::span<const Eigen::Index> dir,
                      const ConvexSet& s) {
  if (static_cast<Eigen::Index>(dir.size()) != s.dim())
    throw MalformedInput("recession encoding dimension mismatch for '" + s.label() + "'");
  const Eigen::Index d = s.dim();
  if (s.is_hrep()) {
    for (const auto& h : s.hrep().halfspaces) {
      std::vector<SystemBuilder::Term> terms;
      for (Eigen::Index i = 0; i < d; ++i)
        if (h.normal(i) != 0) terms.emplace_back(dir[static_cast<std::size_t>(i)], h.normal(i));
      builder.add_row(std::move(terms), Relation::LessEqual, 0);
    }
    return;
  }
  const auto& rays = s.vrep().rays;
  const auto nr = static_cast<Eigen::Index>(rays.size());
  const Eigen::Index mu = builder.add_variables(nr, true);
  for (Eigen::Index i = 0; i < d; ++i) {
    std::vector<SystemBuilder::Term> terms{{dir[static_cast<std::size_t>(i)], 1}};
    for (Eigen::Index k = 0; k < nr; ++k)
      if (rays[static_cast<std::size_t>(k)](i) != 0)
        terms.emplace_back(mu + k, -rays[static_cast<std::size_t>(k)](i));
    builder.add_row(std::move(terms), Relation::Equal, 0);
  }
}

bool contains_point(const ConvexSet& s, const Point& x) {
  check_dim(x, s.dim(), "query point");
  if (s.is_hrep()) {
    for (const auto& h : s.hrep().halfspaces)
      if (!h.contains(x)) return false;
    return true;
  }
  const VRep& v = s.vrep();
  for (const auto& p : v.points)
    if (equal(p, x)) return true;
  if (v.rays.empty() && v.points.size() == 1) return false;
  // Multipliers only; x enters as the right-hand side.
  SystemBuilder b;
  const auto np = static_cast<Eigen::Index>(v.points.size());
  const auto nr = static_cast<Eigen::Index>(v.rays.size());
  const Eigen::Index lambda = b.add_variables(np, true);
  const Eigen::Index mu = b.add_variables(nr, true);
  std::vector<SystemBuilder::Term> sum;
  for (Eigen::Index k = 0; k < np; ++k) sum.emplace_back(lambda + k, 1);
  b.add_row(std::move(sum), Relation::Equal, 1);
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    std::vector<SystemBuilder::Term> terms;
    for (Eigen::Index k = 0; k < np; ++k)
      if (v.points[static_cast<std::size_t>(k)](i) != 0)
        terms.emplace_back(lambda + k, v.points[static_cast<std::size_t>(k)](i));
    for (Eigen::Index k = 0; k < nr; ++k)
      if (v.rays[static_cast<std::size_t>(k)](i) != 0)
        terms.emplace_back(mu + k, v.rays[static_cast<std::size_t>(k)](i));
    b.add_row(std::move(terms), Relation::Equal, x(i));
  }
  return lp_feasible(b.build()).feasible;
}

IntersectionResult intersect_sets(const SetRefs& sets) {
  if (sets.empty()) throw MalformedInput("intersection over an empty index set");
  const Eigen::Index d = sets.front()->dim();
  for (const auto* s : sets)
    if (s->dim() != d) throw MalformedInput("intersection of sets of different dimensions");
  if (sets.size() == 1 && sets.front()->is_vrep())
    return {true, sets.front()->vrep().points.front()};

  SystemBuilder b(d);
  const auto coords = iota_vars(0, d);
  for (const auto* s : sets) encode_membership(b, coords, *s);
  const LinearSystem sys = b.build();
  const LpResult r = lp_feasible(sys);
  if (!r.feasible) return {};
  // The full solution (point and multipliers) is an exact certificate.
  if (!sys.satisfied_by(*r.witness))
    throw std::logic_error("intersection witness fails its own certificate");
  return {true, Point(r.witness->head(d))};
}

IntersectionResult intersect_nonempty(const Family& fam, const IndexSet& indices) {
  if (indices.empty()) throw MalformedInput("intersection over an empty index set");
  return intersect_sets(refs(fam, indices));
}

bool is_empty(const ConvexSet& s) {
  if (s.is_vrep()) return false;
  return !intersect_sets({&s}).nonempty;
}

ConvexSet recession_cone(const ConvexSet& s) {
  const Eigen::Index d = s.dim();
  if (s.is_hrep()) {
    if (is_empty(s)) throw EmptySetError("recession cone of empty set '" + s.label() + "'");
    std::vector<Halfspace> hs;
    for (const auto& h : s.hrep().halfspaces)
      if (!is_zero(h.normal)) hs.push_back({h.normal, 0});
    return ConvexSet::from_halfspaces("rec(" + s.label() + ")", d, std::move(hs));
  }
  std::vector<Point> rays;
  for (const auto& r : s.vrep().rays)
    if (!is_zero(r)) rays.push_back(r);
  return ConvexSet::from_generators("rec(" + s.label() + ")", d, {zero_point(d)}, std::move(rays));
}

bool is_cone(const ConvexSet& s) {
  if (s.is_hrep()) {
    for (const auto& h : s.hrep().halfspaces)
      if (h.offset != 0) return false;
    return true;
  }
  const auto& pts = s.vrep().points;
  return pts.size() == 1 && is_zero(pts.front());
}

std::optional<Point> common_recession_direction(const SetRefs& sets) {
  if (sets.empty()) return std::nullopt;
  const Eigen::Index d = sets.front()->dim();
  for (const auto* s : sets)
    if (s->dim() != d) throw MalformedInput("recession query over mixed dimensions");
  SystemBuilder base(d);
  const auto dir = iota_vars(0, d);
  for (const auto* s : sets) encode_recession(base, dir, *s);

  for (Eigen::Index i = 0; i < d; ++i) {
    for (int sign : {1, -1}) {
      SystemBuilder probe = base;
      probe.add_row({{i, Rational(sign)}}, Relation::Equal, 1);
      const LinearSystem sys = probe.build();
      const LpResult r = lp_feasible(sys);
      if (!r.feasible) continue;
      if (!sys.satisfied_by(*r.witness))
        throw std::logic_error("recession direction fails its own certificate");
      return Point(r.witness->head(d));
    }
  }
  return std::nullopt;
}

std::optional<Point> common_recession_direction(const Family& fam) {
  return common_recession_direction(refs(fam, all_indices(fam.size())));
}

bool is_bounded(const ConvexSet& s) {
  if (s.is_vrep()) {
    for (const auto& r : s.vrep().rays)
      if (!is_zero(r)) return false;
    return true;
  }
  return !common_recession_direction(SetRefs{&s}).has_value();
}

ConvexSet project_drop_last(const ConvexSet& s, ProjectionOptions options) {
  const Eigen::Index d = s.dim();
  if (d < 2) throw MalformedInput("cannot project a set of dimension 1");
  const std::string label = "proj(" + s.label() + ")";
  if (s.is_vrep()) {
    std::vector<Point> pts, rays;
    for (const auto& p : s.vrep().points) pts.emplace_back(p.head(d - 1));
    for (const auto& r : s.vrep().rays) {
      Point pr = r.head(d - 1);
      if (!is_zero(pr)) rays.push_back(std::move(pr));
    }
    return ConvexSet::from_generators(label, d - 1, dedupe_points(std::move(pts)),
                                      dedupe_points(std::move(rays)));
  }

  // Fourier–Motzkin on the last coordinate.
  std::vector<Halfspace> keep, upper, lower;
  for (const auto& h : s.hrep().halfspaces) {
    const Rational c = h.normal(d - 1);
    Halfspace reduced{Point(h.normal.head(d - 1)), h.offset};
    if (c == 0) {
      keep.push_back(std::move(reduced));
    } else {
      const Rational scale = abs(c);
      reduced.normal /= scale;
      reduced.offset /= scale;
      (c > 0 ? upper : lower).push_back(std::move(reduced));
    }
  }
  for (const auto& u : upper)
    for (const auto& l : lower) keep.push_back({u.normal + l.normal, u.offset + l.offset});

  bool infeasible = false;
  std::vector<Halfspace> rows;
  for (auto& h : keep) {
    if (is_zero(h.normal)) {
      if (h.offset < 0) infeasible = true;
      continue;
    }
    rows.push_back(normalized(std::move(h)));
  }
  if (infeasible) {
    // Canonical empty set: x1 <= -1 and x1 >= 0.
    return ConvexSet::from_halfspaces(
        label, d - 1, {{unit_point(d - 1, 0), -1}, {-unit_point(d - 1, 0), 0}});
  }
  std::sort(rows.begin(), rows.end(), halfspace_less);
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const Halfspace& a, const Halfspace& b) {
                           return equal(a.normal, b.normal) && a.offset == b.offset;
                         }),
             rows.end());
  // Same normal, larger offset is implied by the smaller one.
  std::vector<Halfspace> tight;
  for (auto& h : rows) {
    if (!tight.empty() && equal(tight.back().normal, h.normal)) continue;
    tight.push_back(std::move(h));
  }

  if (options.remove_redundant) {
    std::vector<Halfspace> needed = tight;
    for (std::size_t i = 0; i < needed.size();) {
      std::vector<Halfspace> others = needed;
      others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
      LinearSystem sys;
      sys.dim = d - 1;
      for (const auto& h : others) sys.constraints.push_back({h.normal, Relation::LessEqual, h.offset});
      const LpOptimum opt = lp_minimize(sys, -needed[i].normal);
      const bool redundant = opt.status == LpStatus::Optimal && -opt.value <= needed[i].offset;
      if (redundant) {
        needed = std::move(others);
      } else {
        ++i;
      }
    }
    tight = std::move(needed);
  }
  return ConvexSet::from_halfspaces(label, d - 1, std::move(tight));
}

IntersectionResult lifted_projection_intersect(const Family& fam, const IndexSet& indices,
                                               const ConvexSet& box) {
  if (indices.empty()) throw MalformedInput("intersection over an empty index set");
  if (box.dim() != fam.dim) throw MalformedInput("box dimension differs from family");
  if (!box.is_vrep() || !is_bounded(box))
    throw MalformedInput("box must be a compact generator set (no rays)");
  const Eigen::Index d = fam.dim;
  SystemBuilder b(d - 1);
  for (auto i : indices) {
    const ConvexSet& member = fam.sets.at(i);
    std::vector<Eigen::Index> coords = iota_vars(0, d - 1);
    coords.push_back(b.add_variable(false));
    encode_membership(b, coords, member);
    encode_membership(b, coords, box);
  }
  const LinearSystem sys = b.build();
  const LpResult r = lp_feasible(sys);
  if (!r.feasible) return {};
  if (!sys.satisfied_by(*r.witness))
    throw std::logic_error("projection witness fails its own certificate");
  return {true, Point(r.witness->head(d - 1))};
}

ConvexSet convex_hull_union(const Family& fam, const IndexSet& indices, std::string label) {
  if (indices.empty()) throw MalformedInput("hull over an empty index set");
  std::vector<Point> pts, rays;
  for (auto i : indices) {
    const ConvexSet& s = fam.sets.at(i);
    if (!s.is_vrep())
      throw MalformedInput("hull requires generator sets; '" + s.label() + "' is halfspace-given");
    pts.insert(pts.end(), s.vrep().points.begin(), s.vrep().points.end());
    rays.insert(rays.end(), s.vrep().rays.begin(), s.vrep().rays.end());
  }
  return ConvexSet::from_generators(std::move(label), fam.dim, dedupe_points(std::move(pts)),
                                    dedupe_points(std::move(rays)));
}

std::optional<Rational> lowest_height(const SetRefs& sets, const Point& prefix) {
  if (sets.empty()) throw MalformedInput("height query over no sets");
  const Eigen::Index d = sets.front()->dim();
  check_dim(prefix, d - 1, "lift prefix");
  SystemBuilder b(d);
  for (Eigen::Index i = 0; i + 1 < d; ++i) b.add_row({{i, 1}}, Relation::Equal, prefix(i));
  const auto coords = iota_vars(0, d);
  for (const auto* s : sets) encode_membership(b, coords, *s);
  const LinearSystem sys = b.build();
  const LpOptimum opt = lp_minimize(sys, unit_point(sys.dim, d - 1));
  switch (opt.status) {
    case LpStatus::Infeasible: return std::nullopt;
    case LpStatus::Unbounded: throw std::domain_error("height unbounded below");
    case LpStatus::Optimal: break;
  }
  return opt.value;
}

BasisChange basis_with_last(const Point& direction) {
  if (is_zero(direction)) throw MalformedInput("basis completion of the zero vector");
  const Eigen::Index d = direction.size();
  Eigen::Index pivot = d - 1;
  while (direction(pivot) == 0) --pivot;
  BasisChange out;
  out.basis = Matrix::Zero(d, d);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    if (i != pivot) out.basis(i, col++) = 1;
  out.basis.col(d - 1) = direction;
  out.inverse = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    auto column = solve_linear(out.basis, unit_point(d, j));
    if (!column) throw std::logic_error("basis completion is singular");
    out.inverse.col(j) = *column;
  }
  return out;
}

ConvexSet transform(const ConvexSet& s, const BasisChange& change) {
  if (change.basis.rows() != s.dim()) throw MalformedInput("basis change dimension mismatch");
  if (s.is_vrep()) {
    std::vector<Point> pts, rays;
    for (const auto& p : s.vrep().points) pts.push_back(change.to_new(p));
    for (const auto& r : s.vrep().rays) rays.push_back(change.to_new(r));
    return ConvexSet::from_generators(s.label(), s.dim(), std::move(pts), std::move(rays));
  }
  std::vector<Halfspace> hs;
  for (const auto& h : s.hrep().halfspaces)
    hs.push_back({Point(change.basis.transpose() * h.normal), h.offset});
  return ConvexSet::from_halfspaces(s.label(), s.dim(), std::move(hs));
}

Family transform(const Family& fam, const BasisChange& change) {
  Family out;
  out.dim = fam.dim;
  for (const auto& s : fam.sets) out.sets.push_back(transform(s, change));
  return out;
}

}  // namespace helly
