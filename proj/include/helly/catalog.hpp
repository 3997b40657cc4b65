#ifndef HELLY_CATALOG_HPP
#define HELLY_CATALOG_HPP

#include "helly/pq.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace helly {

enum class BoundKind { Exact, UpperBound };

std::string_view to_string(BoundKind kind);

struct CatalogEntry {
  std::string name;
  std::vector<std::int64_t> args;
  std::int64_t value = 0;
  BoundKind kind = BoundKind::Exact;
  std::string provenance;
};

/// Known values and bounds for the (p,q)-theorem constants xi(p,q,d), the
/// Erdős–Gallai numbers eta(lambda,k), and a few published piercing bounds for
/// plane families. Never fabricates: unknown arguments are a normal miss.
///
/// Names: "xi" [p,q,d], "eta" [lambda,k], "plane_pierce" [p,q,bounded].
class BoundCatalog {
 public:
  static const BoundCatalog& standard();

  std::optional<CatalogEntry> lookup(std::string_view name,
                                     std::span<const std::int64_t> args) const;

  /// Point entries plus one representative per formula rule, for audits.
  const std::vector<CatalogEntry>& entries() const { return entries_; }

 private:
  BoundCatalog();
  std::vector<CatalogEntry> entries_;
};

std::optional<CatalogEntry> catalog_lookup(std::string_view name,
                                           std::span<const std::int64_t> args);

/// Tuza's bound eta(lambda,k) < C(lambda+k-1, lambda-1) + C(lambda+k-2, lambda-1),
/// returned inclusively (minus one).
std::int64_t eta_tuza_bound(std::int64_t lambda, std::int64_t k);

/// Erdős–Gallai bound for k = 2: eta(lambda,2) <= floor(((lambda+2)/2)^2).
std::int64_t eta_erdos_gallai_bound(std::int64_t lambda);

class CatalogMiss : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EgCheck {
  bool consistent = true;
  std::size_t beta = 0;              // transversal number of the whole graph
  std::size_t local_beta = 0;        // max over induced subgraphs on <= eta vertices
  std::optional<IndexSet> counterwitness;  // vertex set of an offending subgraph
  std::size_t subgraphs_checked = 0;
};

/// Checks "beta(h) <= k iff beta(H) <= k for all subgraphs on <= eta
/// vertices" on `h`. eta_value must match an exact catalog entry eta(lambda,k+1).
EgCheck verify_eg_equivalence(const Hypergraph& h, std::size_t k, std::int64_t eta_value);

}  // namespace helly

#endif  // HELLY_CATALOG_HPP
