#include "helly/catalog.hpp"

#include <algorithm>

namespace helly {

std::string_view to_string(BoundKind kind) {
  return kind == BoundKind::Exact ? "exact" : "upper-bound";
}

namespace {

constexpr const char* kHadwigerDebrunner =
    "Hadwiger-Debrunner (statement 78): xi(p,q,1) = p-q+1 on the line";
constexpr const char* kKleitmanGyarfasToth =
    "Kleitman-Gyarfas-Toth: xi(4,3,2) <= 13 for plane families";
constexpr const char* kErdosGallaiExact = "Erdos-Gallai theory: eta(3,2) = 6";
constexpr const char* kTuza =
    "Tuza (1989): eta(d+1,t+1) < C(d+t+1,d) + C(d+t,d)";
constexpr const char* kErdosGallaiTwo =
    "Erdos-Gallai (1961): eta(lambda,2) <= floor(((lambda+2)/2)^2)";

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::int64_t eta_tuza_bound(std::int64_t lambda, std::int64_t k) {
  if (lambda < 2 || k < 1) throw MalformedInput("Tuza bound needs lambda >= 2 and k >= 1");
  return binomial(lambda + k - 1, lambda - 1) + binomial(lambda + k - 2, lambda - 1) - 1;
}

std::int64_t eta_erdos_gallai_bound(std::int64_t lambda) {
  if (lambda < 2) throw MalformedInput("Erdos-Gallai bound needs lambda >= 2");
  return (lambda + 2) * (lambda + 2) / 4;
}

BoundCatalog::BoundCatalog() {
  entries_ = {
      {"xi", {4, 3, 2}, 13, BoundKind::UpperBound, kKleitmanGyarfasToth},
      {"eta", {3, 2}, 6, BoundKind::Exact, kErdosGallaiExact},
      {"eta", {3, 3}, 15, BoundKind::UpperBound, kTuza},
      {"plane_pierce", {4, 3, 2}, 13, BoundKind::UpperBound,
       "Mueller (2013): (4,3)-property plus two disjoint bounded sets gives pi <= xi(4,3,2) <= 13"},
      {"plane_pierce", {5, 4, 2}, 28, BoundKind::UpperBound,
       "(5,4)-property plus two bounded sets gives pi <= 28 (stated bound, not recomputed)"},
      {"plane_pierce", {6, 5, 2}, 2, BoundKind::UpperBound,
       "(6,5)-property plus two bounded sets gives pi <= 2 (transversal argument with eta(3,2) = 6)"},
      {"plane_pierce", {15, 13, 3}, 3, BoundKind::UpperBound,
       "(15,13)-property plus three bounded sets gives pi <= 3 (transversal argument with eta(3,3) <= 15)"},
      // Formula rules, listed with a representative argument for audits.
      {"xi", {2, 2, 1}, 1, BoundKind::Exact, kHadwigerDebrunner},
      {"eta", {2, 2}, 4, BoundKind::UpperBound, kErdosGallaiTwo},
      {"eta", {4, 3}, eta_tuza_bound(4, 3), BoundKind::UpperBound, kTuza},
  };
}

const BoundCatalog& BoundCatalog::standard() {
  static const BoundCatalog catalog;
  return catalog;
}

std::optional<CatalogEntry> BoundCatalog::lookup(std::string_view name,
                                                 std::span<const std::int64_t> args) const {
  const std::vector<std::int64_t> key(args.begin(), args.end());
  // Exact point entries take precedence over formula rules.
  for (const auto& e : entries_)
    if (e.name == name && e.args == key && e.kind == BoundKind::Exact) return e;

  if (name == "xi" && key.size() == 3 && key[2] == 1 && key[0] >= key[1] && key[1] >= 2)
    return CatalogEntry{"xi", key, key[0] - key[1] + 1, BoundKind::Exact, kHadwigerDebrunner};

  if (name == "eta" && key.size() == 2 && key[0] >= 2 && key[1] >= 1) {
    // Best of the published upper bounds that apply.
    std::optional<CatalogEntry> best;
    auto offer = [&](std::int64_t value, const char* prov) {
      if (!best || value < best->value)
        best = CatalogEntry{"eta", key, value, BoundKind::UpperBound, prov};
    };
    offer(eta_tuza_bound(key[0], key[1]), kTuza);
    if (key[1] == 2) offer(eta_erdos_gallai_bound(key[0]), kErdosGallaiTwo);
    for (const auto& e : entries_)
      if (e.name == name && e.args == key) offer(e.value, e.provenance.c_str());
    return best;
  }

  for (const auto& e : entries_)
    if (e.name == name && e.args == key) return e;
  return std::nullopt;
}

std::optional<CatalogEntry> catalog_lookup(std::string_view name,
                                           std::span<const std::int64_t> args) {
  return BoundCatalog::standard().lookup(name, args);
}

EgCheck verify_eg_equivalence(const Hypergraph& h, std::size_t k, std::int64_t eta_value) {
  h.validate();
  if (!h.arity) throw MalformedInput("Erdos-Gallai check needs a uniform hypergraph");
  const std::int64_t key[] = {static_cast<std::int64_t>(*h.arity), static_cast<std::int64_t>(k) + 1};
  const auto entry = catalog_lookup("eta", key);
  if (!entry || entry->kind != BoundKind::Exact)
    throw CatalogMiss("no exact catalog value for eta(" + std::to_string(key[0]) + "," +
                      std::to_string(key[1]) + ")");
  if (entry->value != eta_value)
    throw CatalogMiss("eta value " + std::to_string(eta_value) + " disagrees with catalog value " +
                      std::to_string(entry->value));

  EgCheck check;
  check.beta = transversal_number(h).beta;
  // Transversal numbers only grow under taking induced supersets, so the
  // largest admissible vertex sets are the decisive ones.
  const std::size_t size = std::min<std::size_t>(h.n_vertices, static_cast<std::size_t>(eta_value));
  for_each_subset(h.n_vertices, size, [&](const IndexSet& vertices) {
    ++check.subgraphs_checked;
    const std::size_t b = transversal_number(h.induced(vertices)).beta;
    if (b > check.local_beta) {
      check.local_beta = b;
      if (b > k && !check.counterwitness) check.counterwitness = vertices;
    }
    return true;
  });
  const bool global = check.beta <= k;
  const bool local = check.local_beta <= k;
  check.consistent = global == local;
  if (check.consistent) check.counterwitness.reset();
  else if (!check.counterwitness) check.counterwitness = all_indices(h.n_vertices);
  return check;
}

}  // namespace helly
