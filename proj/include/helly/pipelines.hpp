#ifndef HELLY_PIPELINES_HPP
#define HELLY_PIPELINES_HPP

#include "helly/catalog.hpp"
#include "helly/constructions.hpp"
#include "helly/pq.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace helly {

struct CheckWitness {
  std::optional<IndexSet> indices;
  std::optional<Point> point;
  std::string note;
};

struct HypothesisCheck {
  std::string description;
  bool passed = false;
  CheckWitness witness;
};

struct BoundClaim {
  std::string formula;
  std::optional<std::int64_t> value;  // numeric only when every constant is cataloged
  std::string provenance;
};

/// How one group of members was pierced in a pipeline run.
struct PartRecord {
  IndexSet members;
  std::string route;  // "direct", "hull", "projection", "transversal", "compact"
  std::string note;
  std::vector<std::size_t> points;  // indices into the report's piercing points
};

/// Classification of one checked tuple in the counterexample run.
struct CaseRecord {
  std::size_t k = 0;
  IndexSet tuple;
  std::size_t a_count = 0;
  int case_number = 0;
  IndexSet predicted;
  bool matches = false;
};

struct PipelineReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<HypothesisCheck> hypothesis_checks;
  std::optional<PiercingSolution> piercing;
  std::vector<std::string> member_labels;  // for the piercing assignment
  std::vector<PartRecord> parts;
  std::vector<CaseRecord> cases;
  std::optional<std::size_t> exact_piercing;  // when PipelineOptions::compute_exact
  BoundClaim bound_claim;
  std::string conclusion;
  bool exhaustive = true;
  bool budget_exhausted = false;

  bool all_passed() const;
  void check(std::string description, bool passed, CheckWitness witness = {});
};

struct PipelineOptions {
  std::shared_ptr<LpBudget> budget;
  unsigned jobs = 1;
  /// Also compute the exact piercing number of the input for comparison.
  bool compute_exact = false;
  std::size_t n_cap = 1000;
  /// Candidate piercing sets for the counterexample's escape certificate;
  /// empty means "use the exact piercing points of the A truncation".
  std::vector<std::vector<Point>> candidates;
};

/// Exhaustive (d+1+2k, d+1+k)-property check of A ∪ B for k = 0..k_max,
/// per-tuple replay of the three-case argument, and escape certificates.
PipelineReport verify_counterexample(const CounterexampleSpec& spec, std::size_t k_max,
                                     const PipelineOptions& options = {});

/// (p, p-t)-property + t+1 bounded members: transversal of G_F of size <= t,
/// one point for the rest, one point per transversal member.
PipelineReport pierce_via_s1(const Family& fam, std::size_t t, std::size_t p,
                             const PipelineOptions& options = {});

/// (p,q)-property with a (q-d)-free subfamily of size p-d: each intersecting
/// part of the rest meets the hull of the free sets; the free sets are pierced
/// with at most p-q+1 points.
PipelineReport pierce_via_s2(const Family& fam, const IndexSet& free_indices, std::size_t p,
                             std::size_t q, const PipelineOptions& options = {});

/// (p,q)-property with p-q+1 compact members and q >= p-q+d+1. Parts of the
/// rest whose common points all avoid the hull B of the compacts are pierced
/// inside B through a common recession direction, projection to R^(d-1),
/// exact piercing there, and lifting.
PipelineReport pierce_via_main(const Family& fam, const IndexSet& compact_indices, std::size_t p,
                               std::size_t q, const PipelineOptions& options = {});

/// For every subset of size <= max_subset: ⋂(A ∩ box) ≠ ∅ iff the
/// projections along e_d of the A ∩ box share a point. Needs e_d in every
/// member's recession cone.
PipelineReport verify_corollary52(const Family& fam, const ConvexSet& box, std::size_t max_subset,
                                  const PipelineOptions& options = {});

/// Whether `direction` lies in the recession cone of every set.
bool in_all_recession_cones(const SetRefs& sets, const Point& direction);

}  // namespace helly

#endif  // HELLY_PIPELINES_HPP
