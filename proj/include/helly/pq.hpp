#ifndef HELLY_PQ_HPP
#define HELLY_PQ_HPP

#include "helly/convex.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace helly {

/// Raised when an oracle exceeds its LP-call budget.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LP-call allowance shared by every oracle of one run.
class LpBudget {
 public:
  explicit LpBudget(std::size_t limit) : limit_(limit) {}

  /// Counts one LP call; throws BudgetExhausted past the limit.
  void charge();
  std::size_t used() const { return used_.load(); }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
  std::atomic<std::size_t> used_{0};
};

/// Memoized "do these members share a point?" oracle over at most 64 members.
///
/// Results are closed under inclusion before any LP runs: a subset of a known
/// intersecting set inherits its witness, a superset of a known empty set is
/// empty. Safe for concurrent queries; the memo only ever grows, and answers
/// do not depend on the interleaving.
class IntersectionOracle {
 public:
  using Mask = std::uint64_t;
  using Query = std::function<IntersectionResult(const IndexSet&)>;
  static constexpr std::size_t kMaxMembers = 64;

  IntersectionOracle(std::size_t members, Query query, std::shared_ptr<LpBudget> budget = nullptr);

  /// Oracle over fam members; queries also intersect with `extra` when given.
  static IntersectionOracle for_family(const Family& fam, std::shared_ptr<LpBudget> budget = nullptr,
                                       const ConvexSet* extra = nullptr);

  IntersectionResult query(const IndexSet& indices);
  bool intersects(const IndexSet& indices) { return query(indices).nonempty; }

  std::size_t members() const { return members_; }
  std::size_t lp_calls() const { return lp_calls_.load(); }

  static Mask mask_of(const IndexSet& indices);

 private:
  std::optional<IntersectionResult> lookup(Mask m) const;
  void record(Mask m, const IntersectionResult& r);

  std::size_t members_;
  Query query_;
  std::shared_ptr<LpBudget> budget_;
  std::atomic<std::size_t> lp_calls_{0};

  mutable std::shared_mutex mutex_;
  std::unordered_map<Mask, IntersectionResult> exact_;
  std::vector<std::pair<Mask, Point>> maximal_intersecting_;
  std::vector<Mask> minimal_empty_;
};

/// Calls `visit` on every k-subset of {0..n-1} in lexicographic order until
/// it returns false.
void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const IndexSet&)>& visit);

/// Same, over k-subsets of `pool` (which must be sorted).
void for_each_subset_of(const IndexSet& pool, std::size_t k,
                        const std::function<bool(const IndexSet&)>& visit);

struct Hypergraph {
  std::size_t n_vertices = 0;
  std::vector<IndexSet> edges;
  std::optional<std::size_t> arity;

  /// Sorts each edge, removes duplicate edges, and checks the invariants.
  static Hypergraph make(std::size_t n, std::vector<IndexSet> edges,
                         std::optional<std::size_t> arity = {});
  void validate() const;
  /// Edges lying entirely inside `vertices`, relabelled 0..|vertices|-1.
  Hypergraph induced(const IndexSet& vertices) const;
};

struct TupleRecord {
  IndexSet tuple;
  std::optional<IndexSet> intersecting;  // first intersecting q-subset found
};

struct PqReport {
  std::size_t p = 0;
  std::size_t q = 0;
  bool holds = true;
  std::optional<IndexSet> violating_tuple;
  std::size_t checked_tuples = 0;
  std::vector<TupleRecord> tuples;  // filled when PqOptions::record_tuples
};

struct PqOptions {
  unsigned jobs = 1;
  bool record_tuples = false;
  /// Keep scanning after the first violation (only useful with record_tuples).
  bool exhaustive = false;
};

/// Exhaustive (p,q)-property check; first violation in lexicographic order.
PqReport has_pq_property(const Family& fam, std::size_t p, std::size_t q, PqOptions options = {});
PqReport has_pq_property(IntersectionOracle& oracle, std::size_t p, std::size_t q,
                         PqOptions options = {});

struct PiercingSolution {
  std::vector<Point> points;
  std::vector<std::size_t> assignment;  // member index -> point index
  bool optimal = true;

  std::size_t size() const { return points.size(); }
};

/// Exact piercing number as the minimum partition into intersecting parts,
/// branch and bound over member-indexed partitions. With `limit`, a search
/// that cannot reach <= limit parts returns its best partition marked
/// non-optimal. Every assignment is re-verified with contains_point.
PiercingSolution piercing_number(const Family& fam, std::optional<std::size_t> limit = {});
/// Oracle form; point verification is left to the caller.
PiercingSolution piercing_number(IntersectionOracle& oracle, std::optional<std::size_t> limit = {});

/// (d+1)-uniform hypergraph whose edges are the (d+1)-subsets with empty
/// intersection.
Hypergraph build_gf(const Family& fam, std::size_t d, unsigned jobs = 1);
Hypergraph build_gf(IntersectionOracle& oracle, std::size_t d, unsigned jobs = 1);

struct TransversalResult {
  std::size_t beta = 0;
  IndexSet cover;
  bool optimal = true;
};

/// Minimum vertex cover; branches on the vertices of a smallest uncovered edge.
TransversalResult transversal_number(const Hypergraph& h, std::optional<std::size_t> limit = {});

/// Every indexed member bounded and no (m+1) of them sharing a point.
bool is_m_free(const Family& fam, const IndexSet& indices, std::size_t m);
bool is_m_free(const Family& fam, const IndexSet& indices, std::size_t m,
               IntersectionOracle& oracle, std::optional<IndexSet>* intersecting_tuple);

}  // namespace helly

#endif  // HELLY_PQ_HPP
