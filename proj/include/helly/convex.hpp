#ifndef HELLY_CONVEX_HPP
#define HELLY_CONVEX_HPP

#include "helly/exact.hpp"
#include "helly/lp.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace helly {

/// {x : normal·x <= offset}
struct Halfspace {
  Point normal;
  Rational offset = 0;

  bool contains(const Point& x) const { return dot(normal, x) <= offset; }
};

struct HRep {
  std::vector<Halfspace> halfspaces;
};

/// conv(points) + cone(rays)
struct VRep {
  std::vector<Point> points;
  std::vector<Point> rays;
};

class EmptySetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A closed convex polyhedron in R^dim, given either by halfspaces or by
/// generators. Construction validates shapes; emptiness of an HRep is only
/// discovered by LP.
class ConvexSet {
 public:
  static ConvexSet from_halfspaces(std::string label, Eigen::Index dim,
                                   std::vector<Halfspace> halfspaces);
  static ConvexSet from_generators(std::string label, Eigen::Index dim, std::vector<Point> points,
                                   std::vector<Point> rays = {});
  /// Axis-aligned box [lo, hi] in VRep form (2^dim vertices, duplicates merged).
  static ConvexSet box(std::string label, const Point& lo, const Point& hi);
  /// Axis-aligned box [lo, hi] in HRep form.
  static ConvexSet box_halfspaces(std::string label, const Point& lo, const Point& hi);

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  Eigen::Index dim() const { return dim_; }

  bool is_hrep() const { return std::holds_alternative<HRep>(rep_); }
  bool is_vrep() const { return std::holds_alternative<VRep>(rep_); }
  const HRep& hrep() const { return std::get<HRep>(rep_); }
  const VRep& vrep() const { return std::get<VRep>(rep_); }

 private:
  ConvexSet(std::string label, Eigen::Index dim, std::variant<HRep, VRep> rep)
      : label_(std::move(label)), dim_(dim), rep_(std::move(rep)) {}

  std::string label_;
  Eigen::Index dim_ = 0;
  std::variant<HRep, VRep> rep_;
};

/// Sorted, duplicate-free list of member positions.
using IndexSet = std::vector<std::size_t>;

IndexSet all_indices(std::size_t n);

/// Ordered family of sets in a common ambient dimension, labels unique.
struct Family {
  Eigen::Index dim = 0;
  std::vector<ConvexSet> sets;

  Family() = default;
  Family(Eigen::Index d, std::vector<ConvexSet> members);

  std::size_t size() const { return sets.size(); }
  const ConvexSet& operator[](std::size_t i) const { return sets[i]; }

  /// Appends, enforcing dimension and label uniqueness.
  void add(ConvexSet s);
  void validate() const;
  Family subfamily(const IndexSet& indices) const;
};

using SetRefs = std::vector<const ConvexSet*>;
SetRefs refs(const Family& fam, const IndexSet& indices);

struct IntersectionResult {
  bool nonempty = false;
  std::optional<Point> witness;
};

// --- LP encodings shared by every oracle ---------------------------------

/// Adds rows (and auxiliary multiplier variables for generator sets) forcing
/// the builder variables `coords` to be a point of `s`.
void encode_membership(SystemBuilder& builder, std::span<const Eigen::Index> coords,
                       const ConvexSet& s);

/// Adds rows forcing `dir` into the recession cone of `s`.
void encode_recession(SystemBuilder& builder, std::span<const Eigen::Index> dir,
                      const ConvexSet& s);

// --- operations -----------------------------------------------------------

bool contains_point(const ConvexSet& s, const Point& x);

/// One joint LP over the ambient point and each member's multiplier block.
IntersectionResult intersect_nonempty(const Family& fam, const IndexSet& indices);
IntersectionResult intersect_sets(const SetRefs& sets);

bool is_empty(const ConvexSet& s);

/// HRep input yields {v : normal·v <= 0}; VRep input yields cone(rays).
/// Throws EmptySetError for an empty HRep set.
ConvexSet recession_cone(const ConvexSet& s);

/// True when the set is a cone with apex at the origin as represented.
bool is_cone(const ConvexSet& s);

/// Nonzero direction common to every recession cone, or nullopt. Probes the
/// signed coordinate functionals in order e1, -e1, e2, -e2, ...
std::optional<Point> common_recession_direction(const Family& fam);
std::optional<Point> common_recession_direction(const SetRefs& sets);

bool is_bounded(const ConvexSet& s);

struct ProjectionOptions {
  /// Drop rows implied by the others (one LP per row). Off by default.
  bool remove_redundant = false;
};

/// Orthogonal projection forgetting the last coordinate.
ConvexSet project_drop_last(const ConvexSet& s, ProjectionOptions options = {});

/// Whether the projections of {A ∩ box : A indexed} share a point, decided by
/// one LP with a shared prefix and an independent last coordinate per member.
/// The witness, when present, lives in R^{dim-1} (empty for dim 1).
IntersectionResult lifted_projection_intersect(const Family& fam, const IndexSet& indices,
                                               const ConvexSet& box);

/// conv of the union of the indexed generator sets.
ConvexSet convex_hull_union(const Family& fam, const IndexSet& indices,
                            std::string label = "hull");

/// min { t : (prefix, t) ∈ every set }, nullopt when no such t exists.
/// Throws std::domain_error when unbounded below.
std::optional<Rational> lowest_height(const SetRefs& sets, const Point& prefix);

/// Linear coordinate change x = basis·y whose last basis vector is a given
/// direction, so that direction becomes e_d in y-coordinates.
struct BasisChange {
  Matrix basis;
  Matrix inverse;

  Point to_new(const Point& x) const { return inverse * x; }
  Point to_old(const Point& y) const { return basis * y; }
};

/// Completes `direction` to a basis by standard unit vectors (exact).
BasisChange basis_with_last(const Point& direction);

ConvexSet transform(const ConvexSet& s, const BasisChange& change);
Family transform(const Family& fam, const BasisChange& change);

}  // namespace helly

#endif  // HELLY_CONVEX_HPP
