#include "helly/pq.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <thread>

namespace helly {

void LpBudget::charge() {
  if (++used_ > limit_)
    throw BudgetExhausted("LP budget of " + std::to_string(limit_) + " calls exhausted");
}

IntersectionOracle::IntersectionOracle(std::size_t members, Query query,
                                       std::shared_ptr<LpBudget> budget)
    : members_(members), query_(std::move(query)), budget_(std::move(budget)) {
  if (members > kMaxMembers)
    throw MalformedInput("combinatorial routines support at most 64 members, got " +
                         std::to_string(members));
}

IntersectionOracle IntersectionOracle::for_family(const Family& fam,
                                                  std::shared_ptr<LpBudget> budget,
                                                  const ConvexSet* extra) {
  return IntersectionOracle(
      fam.size(),
      [&fam, extra](const IndexSet& idx) {
        SetRefs sets = refs(fam, idx);
        if (extra) sets.push_back(extra);
        return intersect_sets(sets);
      },
      std::move(budget));
}

IntersectionOracle::Mask IntersectionOracle::mask_of(const IndexSet& indices) {
  Mask m = 0;
  for (auto i : indices) {
    if (i >= kMaxMembers) throw MalformedInput("member index beyond oracle capacity");
    m |= Mask{1} << i;
  }
  return m;
}

std::optional<IntersectionResult> IntersectionOracle::lookup(Mask m) const {
  std::shared_lock lock(mutex_);
  if (auto it = exact_.find(m); it != exact_.end()) return it->second;
  for (const auto& [sup, witness] : maximal_intersecting_)
    if ((m & ~sup) == 0) return IntersectionResult{true, witness};
  for (Mask e : minimal_empty_)
    if ((e & ~m) == 0) return IntersectionResult{};
  return std::nullopt;
}

void IntersectionOracle::record(Mask m, const IntersectionResult& r) {
  std::unique_lock lock(mutex_);
  if (!exact_.emplace(m, r).second) return;
  if (r.nonempty) {
    for (const auto& [sup, _] : maximal_intersecting_)
      if ((m & ~sup) == 0) return;
    std::erase_if(maximal_intersecting_, [m](const auto& e) { return (e.first & ~m) == 0; });
    maximal_intersecting_.emplace_back(m, *r.witness);
  } else {
    for (Mask e : minimal_empty_)
      if ((e & ~m) == 0) return;
    std::erase_if(minimal_empty_, [m](Mask e) { return (m & ~e) == 0; });
    minimal_empty_.push_back(m);
  }
}

IntersectionResult IntersectionOracle::query(const IndexSet& indices) {
  if (indices.empty()) throw MalformedInput("intersection over an empty index set");
  for (auto i : indices)
    if (i >= members_) throw MalformedInput("index " + std::to_string(i) + " out of range");
  const Mask m = mask_of(indices);
  if (auto hit = lookup(m)) return *hit;
  if (budget_) budget_->charge();
  ++lp_calls_;
  IntersectionResult r = query_(indices);
  record(m, r);
  return r;
}

namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(const IndexSet&)>& visit) {
  if (k > n) return;
  IndexSet c(k);
  std::iota(c.begin(), c.end(), std::size_t{0});
  do {
    if (!visit(c)) return;
  } while (k > 0 && next_combination(c, n));
}

void for_each_subset_of(const IndexSet& pool, std::size_t k,
                        const std::function<bool(const IndexSet&)>& visit) {
  IndexSet mapped(k);
  for_each_subset(pool.size(), k, [&](const IndexSet& pos) {
    for (std::size_t i = 0; i < k; ++i) mapped[i] = pool[pos[i]];
    return visit(mapped);
  });
}

Hypergraph Hypergraph::make(std::size_t n, std::vector<IndexSet> edges,
                            std::optional<std::size_t> arity) {
  Hypergraph h;
  h.n_vertices = n;
  h.arity = arity;
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw MalformedInput("edge with repeated vertex");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  h.edges = std::move(edges);
  h.validate();
  return h;
}

void Hypergraph::validate() const {
  for (const auto& e : edges) {
    if (e.empty()) throw MalformedInput("empty hyperedge");
    if (!std::is_sorted(e.begin(), e.end()) || std::adjacent_find(e.begin(), e.end()) != e.end())
      throw MalformedInput("hyperedge is not a sorted vertex set");
    if (e.back() >= n_vertices) throw MalformedInput("hyperedge vertex out of range");
    if (arity && e.size() != *arity) throw MalformedInput("hyperedge size differs from arity");
  }
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1]) throw MalformedInput("duplicate hyperedge");
}

Hypergraph Hypergraph::induced(const IndexSet& vertices) const {
  std::vector<std::size_t> position(n_vertices, n_vertices);
  for (std::size_t i = 0; i < vertices.size(); ++i) position[vertices[i]] = i;
  std::vector<IndexSet> kept;
  for (const auto& e : edges) {
    IndexSet mapped;
    for (auto v : e) {
      if (position[v] == n_vertices) break;
      mapped.push_back(position[v]);
    }
    if (mapped.size() == e.size()) kept.push_back(std::move(mapped));
  }
  return make(vertices.size(), std::move(kept), arity);
}

// ---------------------------------------------------------------------------
// (p,q)-property

namespace {

std::optional<IndexSet> find_intersecting_subset(IntersectionOracle& oracle, const IndexSet& tuple,
                                                 std::size_t q) {
  std::optional<IndexSet> found;
  for_each_subset_of(tuple, q, [&](const IndexSet& sub) {
    if (oracle.intersects(sub)) {
      found = sub;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace

PqReport has_pq_property(IntersectionOracle& oracle, std::size_t p, std::size_t q,
                         PqOptions options) {
  if (q < 1 || q > p) throw MalformedInput("(p,q)-property needs p >= q >= 1");
  if (p > oracle.members())
    throw MalformedInput("p = " + std::to_string(p) + " exceeds family size " +
                         std::to_string(oracle.members()));
  PqReport report;
  report.p = p;
  report.q = q;
  const unsigned jobs = std::max(1U, options.jobs);

  // Tuples are processed in blocks; within a block workers take strided
  // slots, then results are consumed in index order.
  constexpr std::size_t kBlock = 2048;
  std::vector<IndexSet> block;
  block.reserve(kBlock);
  bool stop = false;

  auto flush = [&] {
    std::vector<std::optional<IndexSet>> found(block.size());
    if (jobs == 1 || block.size() < 2) {
      for (std::size_t i = 0; i < block.size(); ++i) {
        found[i] = find_intersecting_subset(oracle, block[i], q);
        if (!found[i] && !options.exhaustive) {
          found.resize(i + 1);
          break;
        }
      }
    } else {
      std::vector<std::thread> workers;
      std::exception_ptr failure;
      std::mutex failure_mutex;
      for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < block.size(); i += jobs)
              found[i] = find_intersecting_subset(oracle, block[i], q);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        });
      }
      for (auto& t : workers) t.join();
      if (failure) std::rethrow_exception(failure);
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
      ++report.checked_tuples;
      if (options.record_tuples) report.tuples.push_back({block[i], found[i]});
      if (!found[i] && report.holds) {
        report.holds = false;
        report.violating_tuple = block[i];
        if (!options.exhaustive) {
          stop = true;
          break;
        }
      }
    }
    block.clear();
  };

  for_each_subset(oracle.members(), p, [&](const IndexSet& tuple) {
    block.push_back(tuple);
    if (block.size() == kBlock) flush();
    return !stop;
  });
  if (!stop) flush();
  return report;
}

PqReport has_pq_property(const Family& fam, std::size_t p, std::size_t q, PqOptions options) {
  auto oracle = IntersectionOracle::for_family(fam);
  return has_pq_property(oracle, p, q, options);
}

// ---------------------------------------------------------------------------
// Exact piercing

namespace {

class PartitionSearch {
 public:
  PartitionSearch(IntersectionOracle& oracle, std::size_t bound)
      : oracle_(oracle), n_(oracle.members()), bound_(bound) {}

  // Best partition with fewer than `bound` parts, if any.
  std::optional<std::vector<IndexSet>> run() {
    std::vector<IndexSet> parts;
    descend(0, parts);
    return best_;
  }

 private:
  void descend(std::size_t i, std::vector<IndexSet>& parts) {
    if (parts.size() >= bound_) return;
    if (i == n_) {
      best_ = parts;
      bound_ = parts.size();
      return;
    }
    for (std::size_t k = 0; k < parts.size(); ++k) {
      IndexSet extended = parts[k];
      extended.push_back(i);
      if (!oracle_.intersects(extended)) continue;
      parts[k].push_back(i);
      descend(i + 1, parts);
      parts[k].pop_back();
      if (bound_ <= parts.size()) return;
    }
    if (parts.size() + 1 < bound_) {
      parts.push_back({i});
      descend(i + 1, parts);
      parts.pop_back();
    }
  }

  IntersectionOracle& oracle_;
  std::size_t n_;
  std::size_t bound_;
  std::optional<std::vector<IndexSet>> best_;
};

std::vector<IndexSet> first_fit(IntersectionOracle& oracle) {
  std::vector<IndexSet> parts;
  for (std::size_t i = 0; i < oracle.members(); ++i) {
    bool placed = false;
    for (auto& part : parts) {
      IndexSet extended = part;
      extended.push_back(i);
      if (oracle.intersects(extended)) {
        part = std::move(extended);
        placed = true;
        break;
      }
    }
    if (!placed) parts.push_back({i});
  }
  return parts;
}

}  // namespace

PiercingSolution piercing_number(IntersectionOracle& oracle, std::optional<std::size_t> limit) {
  const std::size_t n = oracle.members();
  for (std::size_t i = 0; i < n; ++i)
    if (!oracle.intersects({i}))
      throw EmptySetError("member " + std::to_string(i) + " is empty and cannot be pierced");

  std::vector<IndexSet> parts = first_fit(oracle);
  bool optimal = true;
  std::size_t bound = parts.size();
  if (limit && *limit + 1 < bound) bound = *limit + 1;
  if (auto better = PartitionSearch(oracle, bound).run()) {
    parts = std::move(*better);
  } else if (bound < parts.size()) {
    optimal = false;  // nothing within the limit; keep first-fit
  }

  PiercingSolution sol;
  sol.optimal = optimal;
  sol.assignment.assign(n, 0);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    sol.points.push_back(*oracle.query(parts[k]).witness);
    for (auto i : parts[k]) sol.assignment[i] = k;
  }
  return sol;
}

PiercingSolution piercing_number(const Family& fam, std::optional<std::size_t> limit) {
  auto oracle = IntersectionOracle::for_family(fam);
  PiercingSolution sol = piercing_number(oracle, limit);
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (!contains_point(fam[i], sol.points[sol.assignment[i]]))
      throw std::logic_error("piercing point misses member '" + fam[i].label() + "'");
  return sol;
}

// ---------------------------------------------------------------------------
// G_F

Hypergraph build_gf(IntersectionOracle& oracle, std::size_t d, unsigned jobs) {
  const std::size_t n = oracle.members();
  std::vector<IndexSet> subsets;
  for_each_subset(n, d + 1, [&](const IndexSet& s) {
    subsets.push_back(s);
    return true;
  });
  std::vector<char> empty(subsets.size(), 0);
  jobs = std::max(1U, jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < subsets.size(); ++i) empty[i] = !oracle.intersects(subsets[i]);
  } else {
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < subsets.size(); i += jobs)
            empty[i] = !oracle.intersects(subsets[i]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<IndexSet> edges;
  for (std::size_t i = 0; i < subsets.size(); ++i)
    if (empty[i]) edges.push_back(subsets[i]);
  return Hypergraph::make(n, std::move(edges), d + 1);
}

Hypergraph build_gf(const Family& fam, std::size_t d, unsigned jobs) {
  if (static_cast<Eigen::Index>(d) != fam.dim)
    throw MalformedInput("G_F dimension differs from family dimension");
  auto oracle = IntersectionOracle::for_family(fam);
  return build_gf(oracle, d, jobs);
}

// ---------------------------------------------------------------------------
// Transversals

namespace {

class CoverSearch {
 public:
  CoverSearch(const Hypergraph& h, std::size_t bound) : h_(h), bound_(bound) {}

  std::optional<IndexSet> run() {
    chosen_.assign(h_.n_vertices, false);
    IndexSet current;
    descend(current);
    return best_;
  }

 private:
  bool covered(const IndexSet& e) const {
    return std::any_of(e.begin(), e.end(), [&](std::size_t v) { return chosen_[v]; });
  }

  // Greedy packing of pairwise disjoint uncovered edges: a lower bound on the
  // number of vertices still needed.
  std::size_t packing_bound(const IndexSet** smallest) const {
    std::vector<bool> used(h_.n_vertices, false);
    std::size_t count = 0;
    *smallest = nullptr;
    for (const auto& e : h_.edges) {
      if (covered(e)) continue;
      if (!*smallest || e.size() < (*smallest)->size()) *smallest = &e;
      if (std::none_of(e.begin(), e.end(), [&](std::size_t v) { return used[v]; })) {
        for (auto v : e) used[v] = true;
        ++count;
      }
    }
    return count;
  }

  void descend(IndexSet& current) {
    const IndexSet* edge = nullptr;
    const std::size_t need = packing_bound(&edge);
    if (current.size() + need >= bound_) return;
    if (!edge) {
      best_ = current;
      std::sort(best_->begin(), best_->end());
      bound_ = current.size();
      return;
    }
    const IndexSet branch = *edge;
    for (auto v : branch) {
      chosen_[v] = true;
      current.push_back(v);
      descend(current);
      current.pop_back();
      chosen_[v] = false;
    }
  }

  const Hypergraph& h_;
  std::size_t bound_;
  std::vector<bool> chosen_;
  std::optional<IndexSet> best_;
};

}  // namespace

TransversalResult transversal_number(const Hypergraph& h, std::optional<std::size_t> limit) {
  h.validate();
  // Baseline: every vertex touched by an edge.
  IndexSet all;
  {
    std::vector<bool> touched(h.n_vertices, false);
    for (const auto& e : h.edges)
      for (auto v : e) touched[v] = true;
    for (std::size_t v = 0; v < h.n_vertices; ++v)
      if (touched[v]) all.push_back(v);
  }
  std::size_t bound = all.size() + 1;
  if (limit && *limit + 1 < bound) bound = *limit + 1;
  TransversalResult out;
  if (auto best = CoverSearch(h, bound).run()) {
    out.cover = std::move(*best);
  } else {
    out.cover = all;
    out.optimal = false;
  }
  out.beta = out.cover.size();
  return out;
}

// ---------------------------------------------------------------------------

bool is_m_free(const Family& fam, const IndexSet& indices, std::size_t m,
               IntersectionOracle& oracle, std::optional<IndexSet>* intersecting_tuple) {
  if (m < 1) throw MalformedInput("m-freeness needs m >= 1");
  for (auto i : indices)
    if (!is_bounded(fam.sets.at(i))) return false;
  bool free = true;
  for_each_subset_of(indices, m + 1, [&](const IndexSet& sub) {
    if (oracle.intersects(sub)) {
      free = false;
      if (intersecting_tuple) *intersecting_tuple = sub;
      return false;
    }
    return true;
  });
  return free;
}

bool is_m_free(const Family& fam, const IndexSet& indices, std::size_t m) {
  auto oracle = IntersectionOracle::for_family(fam);
  return is_m_free(fam, indices, m, oracle, nullptr);
}

}  // namespace helly
