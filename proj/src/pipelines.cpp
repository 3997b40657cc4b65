#include "helly/pipelines.hpp"

#include <algorithm>
#include <limits>

namespace helly {

bool PipelineReport::all_passed() const {
  return std::all_of(hypothesis_checks.begin(), hypothesis_checks.end(),
                     [](const HypothesisCheck& c) { return c.passed; });
}

void PipelineReport::check(std::string description, bool passed, CheckWitness witness) {
  hypothesis_checks.push_back({std::move(description), passed, std::move(witness)});
}

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

std::string str(std::size_t v) { return std::to_string(v); }

std::string join(const IndexSet& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + "}";
}

void check_indices(const IndexSet& idx, std::size_t n, const std::string& what) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= n) throw MalformedInput(what + ": index " + str(idx[i]) + " out of range");
    if (i && idx[i] <= idx[i - 1]) throw MalformedInput(what + ": indices must be sorted and distinct");
  }
}

IndexSet complement(const IndexSet& idx, std::size_t n) {
  IndexSet out;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(idx.begin(), idx.end(), i)) out.push_back(i);
  return out;
}

std::vector<std::string> labels_of(const Family& fam) {
  std::vector<std::string> out;
  for (const auto& s : fam.sets) out.push_back(s.label());
  return out;
}

std::optional<std::int64_t> catalog_value(std::string_view name, std::vector<std::int64_t> args) {
  if (auto e = catalog_lookup(name, args)) return e->value;
  return std::nullopt;
}

std::string catalog_note(std::string_view name, std::vector<std::int64_t> args) {
  std::string key = std::string(name) + "(";
  for (std::size_t i = 0; i < args.size(); ++i) key += (i ? "," : "") + std::to_string(args[i]);
  key += ")";
  if (auto e = catalog_lookup(name, args))
    return key + " " + std::string(to_string(e->kind)) + " " + std::to_string(e->value) + " [" +
           e->provenance + "]";
  return key + " not cataloged";
}

/// Collects piercing points and the member assignment while a pipeline runs.
struct PointCollector {
  std::vector<Point> points;
  std::vector<std::size_t> assignment;

  explicit PointCollector(std::size_t n) : assignment(n, kUnassigned) {}

  std::size_t add(const Point& x) {
    for (std::size_t k = 0; k < points.size(); ++k)
      if (equal(points[k], x)) return k;
    points.push_back(x);
    return points.size() - 1;
  }
};

/// Membership certificate for every assignment; sets the report's piercing.
void finish_piercing(PipelineReport& report, const Family& fam, PointCollector pc) {
  std::optional<std::size_t> missing;
  std::optional<std::size_t> miss;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (pc.assignment[i] == kUnassigned) {
      if (!missing) missing = i;
      continue;
    }
    if (!miss && !contains_point(fam[i], pc.points[pc.assignment[i]])) miss = i;
  }
  CheckWitness w;
  if (missing) w = {IndexSet{*missing}, std::nullopt, "member left unassigned"};
  if (miss) w = {IndexSet{*miss}, pc.points[pc.assignment[*miss]], "assigned point outside member"};
  report.check("every member contains its assigned point (exact membership)", !missing && !miss,
               std::move(w));
  PiercingSolution sol;
  sol.points = std::move(pc.points);
  sol.assignment = std::move(pc.assignment);
  sol.optimal = false;
  report.piercing = std::move(sol);
}

void compare_exact(PipelineReport& report, const Family& fam, const PipelineOptions& options) {
  if (!options.compute_exact || !report.piercing) return;
  auto oracle = IntersectionOracle::for_family(fam, options.budget);
  const PiercingSolution exact = piercing_number(oracle);
  report.exact_piercing = exact.size();
  report.check("pipeline count " + str(report.piercing->size()) + " >= exact piercing number " +
                   str(exact.size()),
               report.piercing->size() >= exact.size());
}

void conclude(PipelineReport& report, const std::string& success) {
  if (report.budget_exhausted) {
    report.piercing.reset();
    report.conclusion = "LP budget exhausted; report is partial";
    return;
  }
  if (!report.all_passed()) {
    report.piercing.reset();
    report.conclusion = "hypothesis failed; no piercing produced";
    return;
  }
  report.conclusion = success;
}

/// Runs the (p,q) check and records it; false when it fails.
bool check_pq(PipelineReport& report, IntersectionOracle& oracle, std::size_t p, std::size_t q,
              const PipelineOptions& options) {
  PqOptions po;
  po.jobs = options.jobs;
  const PqReport r = has_pq_property(oracle, p, q, po);
  CheckWitness w;
  if (!r.holds) w = {r.violating_tuple, std::nullopt, "no " + str(q) + " of these share a point"};
  else w.note = str(r.checked_tuples) + " tuples checked";
  report.check("(" + str(p) + "," + str(q) + ")-property", r.holds, std::move(w));
  return r.holds;
}

bool size_check(PipelineReport& report, const Family& fam, std::size_t p) {
  const bool ok = fam.size() >= p;
  report.check("family has at least p = " + str(p) + " members", ok,
               {std::nullopt, std::nullopt, str(fam.size()) + " members"});
  return ok;
}

/// Exact piercing of the indexed members; points go into the collector.
std::size_t pierce_members(const Family& fam, const IndexSet& idx, PointCollector& pc,
                           PipelineReport& report, const std::string& route,
                           const PipelineOptions& options) {
  const Family sub = fam.subfamily(idx);
  auto oracle = IntersectionOracle::for_family(sub, options.budget);
  const PiercingSolution sol = piercing_number(oracle);
  std::vector<PartRecord> parts(sol.size());
  for (std::size_t k = 0; k < sol.size(); ++k) {
    parts[k].route = route;
    parts[k].points.push_back(pc.add(sol.points[k]));
  }
  for (std::size_t j = 0; j < idx.size(); ++j) {
    auto& part = parts[sol.assignment[j]];
    part.members.push_back(idx[j]);
    pc.assignment[idx[j]] = part.points.front();
  }
  for (auto& part : parts) report.parts.push_back(std::move(part));
  return sol.size();
}

/// Minimum partition of the indexed members into intersecting parts, as
/// index sets into `fam`.
std::vector<IndexSet> minimum_partition(const Family& fam, const IndexSet& idx,
                                        const PipelineOptions& options) {
  const Family sub = fam.subfamily(idx);
  auto oracle = IntersectionOracle::for_family(sub, options.budget);
  const PiercingSolution sol = piercing_number(oracle);
  std::vector<IndexSet> parts(sol.size());
  for (std::size_t j = 0; j < idx.size(); ++j) parts[sol.assignment[j]].push_back(idx[j]);
  return parts;
}

void require_generators(const Family& fam, const IndexSet& idx, const std::string& what) {
  for (auto i : idx)
    if (!fam[i].is_vrep())
      throw MalformedInput(what + " member '" + fam[i].label() + "' must be given by generators");
}

}  // namespace

bool in_all_recession_cones(const SetRefs& sets, const Point& direction) {
  for (const auto* s : sets) {
    if (s->dim() != direction.size()) throw MalformedInput("direction dimension mismatch");
    if (is_empty(*s)) return false;
    if (!contains_point(recession_cone(*s), direction)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

PipelineReport verify_counterexample(const CounterexampleSpec& spec, std::size_t k_max,
                                     const PipelineOptions& options) {
  spec.validate();
  PipelineReport report;
  report.name = "counterexample";
  report.inputs = {{"d", std::to_string(spec.d)},
                   {"n_max", str(spec.n_max)},
                   {"n_bounded", str(spec.n_bounded)},
                   {"bounded_margin", to_string(spec.bounded_margin)},
                   {"k_max", str(k_max)},
                   {"n_cap", str(options.n_cap)}};
  report.bound_claim = {"pi(A) = infinity", std::nullopt,
                        "every finite candidate set is avoided by some A_n (escape witness)"};

  const Family fam = counterexample_family(spec);
  report.member_labels = labels_of(fam);
  const std::size_t n_a = spec.n_max - 1;
  const auto d = static_cast<std::size_t>(spec.d);

  Point axis = zero_point(spec.d + 1);
  axis(0) = Rational(static_cast<long long>(spec.n_max));

  try {
    auto oracle = IntersectionOracle::for_family(fam, options.budget);
    std::vector<bool> on_axis(n_a);
    for (std::size_t i = 0; i < n_a; ++i) on_axis[i] = contains_point(fam[i], axis);

    for (std::size_t k = 0; k <= k_max; ++k) {
      const std::size_t p = d + 1 + 2 * k, q = d + 1 + k;
      if (p > fam.size()) {
        report.check("k = " + str(k) + ": truncation has at least p = " + str(p) + " members",
                     false, {std::nullopt, std::nullopt, str(fam.size()) + " members"});
        continue;
      }
      PqOptions po;
      po.jobs = options.jobs;
      po.record_tuples = true;
      po.exhaustive = true;
      const PqReport r = has_pq_property(oracle, p, q, po);
      CheckWitness w{r.violating_tuple, std::nullopt, str(r.checked_tuples) + " tuples checked"};
      report.check("k = " + str(k) + ": (" + str(p) + "," + str(q) + ")-property of A u B",
                   r.holds, std::move(w));

      std::size_t counts[4] = {0, 0, 0, 0};
      std::optional<IndexSet> mismatch;
      for (const auto& t : r.tuples) {
        CaseRecord c;
        c.k = k;
        c.tuple = t.tuple;
        IndexSet as, bs;
        for (auto i : t.tuple) (i < n_a ? as : bs).push_back(i);
        c.a_count = as.size();
        if (c.a_count <= d) {
          c.case_number = 1;
          c.predicted = t.tuple;
        } else if (c.a_count <= d + k) {
          c.case_number = 2;
          c.predicted.assign(as.begin(), as.begin() + static_cast<std::ptrdiff_t>(d));
          c.predicted.insert(c.predicted.end(), bs.begin(), bs.end());
        } else {
          c.case_number = 3;
          c.predicted = as;
        }
        if (c.predicted.size() >= q) {
          if (c.case_number == 3)
            c.matches = std::all_of(as.begin(), as.end(), [&](std::size_t i) { return on_axis[i]; });
          else
            c.matches = oracle.intersects(c.predicted);
        }
        ++counts[c.case_number];
        if (!c.matches && !mismatch) mismatch = c.tuple;
        report.cases.push_back(std::move(c));
      }
      report.check("k = " + str(k) + ": predicted intersecting subfamily confirmed for every tuple",
                   !mismatch,
                   {mismatch, std::nullopt,
                    "cases 1/2/3: " + str(counts[1]) + "/" + str(counts[2]) + "/" + str(counts[3])});
    }

    std::vector<std::vector<Point>> candidates = options.candidates;
    if (candidates.empty()) {
      auto fresh = IntersectionOracle::for_family(fam, options.budget);
      const PiercingSolution sol = piercing_number(fresh);
      candidates.push_back(sol.points);
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const auto& cand = candidates[c];
      const auto n = escape_witness(spec, cand, options.n_cap);
      bool certified = false;
      CheckWitness w;
      if (n) {
        const ConvexSet a = member_a(spec.d, *n);
        certified = std::none_of(cand.begin(), cand.end(),
                                 [&](const Point& x) { return contains_point(a, x); });
        w.note = "A_" + str(*n) + " avoids all " + str(cand.size()) + " candidate points";
      } else {
        w.note = "no escape index up to n_cap = " + str(options.n_cap);
      }
      report.check("candidate set " + str(c) + " escapes", certified, std::move(w));
    }
  } catch (const BudgetExhausted&) {
    report.budget_exhausted = true;
    report.exhaustive = false;
  }
  conclude(report, "A u B truncation has every checked property and no candidate pierces A");
  return report;
}

// ---------------------------------------------------------------------------

PipelineReport pierce_via_s1(const Family& fam, std::size_t t, std::size_t p,
                             const PipelineOptions& options) {
  fam.validate();
  PipelineReport report;
  report.name = "s1";
  report.inputs = {{"d", std::to_string(fam.dim)},
                   {"members", str(fam.size())},
                   {"t", str(t)},
                   {"p", str(p)}};
  report.member_labels = labels_of(fam);
  const auto d = static_cast<std::size_t>(fam.dim);
  report.bound_claim = {"t+1", static_cast<std::int64_t>(t + 1),
                        "transversal of G_F by the Erdos-Gallai theorem, plus one common point"};

  const bool gap_ok = p >= t + d + 1;
  report.check("p - t >= d + 1", gap_ok);

  IndexSet bounded;
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (is_bounded(fam[i])) bounded.push_back(i);
  report.check("at least t+1 = " + str(t + 1) + " bounded members", bounded.size() >= t + 1,
               {bounded, std::nullopt, ""});

  const std::vector<std::int64_t> eta_key = {static_cast<std::int64_t>(d + 1),
                                             static_cast<std::int64_t>(t + 1)};
  const auto eta = catalog_value("eta", eta_key);
  report.check("p >= eta(d+1,t+1)", eta && static_cast<std::int64_t>(p) >= *eta,
               {std::nullopt, std::nullopt, catalog_note("eta", eta_key)});

  if (!gap_ok || !size_check(report, fam, p)) {
    conclude(report, "");
    return report;
  }

  try {
    auto oracle = IntersectionOracle::for_family(fam, options.budget);
    if (!check_pq(report, oracle, p, p - t, options)) {
      conclude(report, "");
      return report;
    }
    const Hypergraph gf = build_gf(oracle, d, options.jobs);
    const TransversalResult tr = transversal_number(gf, t);
    const bool small = tr.optimal && tr.beta <= t;
    report.check("G_F has a transversal of size <= t", small,
                 {tr.cover, std::nullopt,
                  str(gf.edges.size()) + " edges, beta " + (tr.optimal ? "= " : "> ") +
                      str(tr.optimal ? tr.beta : t)});
    if (!small) {
      conclude(report, "");
      return report;
    }

    const IndexSet rest = complement(tr.cover, fam.size());
    const IntersectionResult common = intersect_nonempty(fam, rest);
    report.check("members outside the transversal share a point", common.nonempty,
                 {rest, common.witness, ""});
    if (!common.nonempty) {
      conclude(report, "");
      return report;
    }

    PointCollector pc(fam.size());
    const std::size_t c = pc.add(*common.witness);
    report.parts.push_back({rest, "direct", "common point of the rest", {c}});
    for (auto i : rest) pc.assignment[i] = c;
    for (auto i : tr.cover) {
      if (contains_point(fam[i], *common.witness)) {
        pc.assignment[i] = c;
        report.parts.back().members.push_back(i);
        continue;
      }
      const IntersectionResult own = intersect_nonempty(fam, {i});
      if (!own.nonempty) throw EmptySetError("member '" + fam[i].label() + "' is empty");
      const std::size_t k = pc.add(*own.witness);
      pc.assignment[i] = k;
      report.parts.push_back({{i}, "transversal", "point of the member itself", {k}});
    }
    std::sort(report.parts.front().members.begin(), report.parts.front().members.end());
    finish_piercing(report, fam, std::move(pc));
    report.check("at most t+1 points", report.piercing->size() <= t + 1);
    compare_exact(report, fam, options);
  } catch (const BudgetExhausted&) {
    report.budget_exhausted = true;
    report.exhaustive = false;
  }
  conclude(report, "pierced with " + (report.piercing ? str(report.piercing->size()) : "0") +
                       " points, within t+1 = " + str(t + 1));
  return report;
}

// ---------------------------------------------------------------------------

PipelineReport pierce_via_s2(const Family& fam, const IndexSet& free_indices, std::size_t p,
                             std::size_t q, const PipelineOptions& options) {
  fam.validate();
  check_indices(free_indices, fam.size(), "free subfamily");
  PipelineReport report;
  report.name = "s2";
  report.inputs = {{"d", std::to_string(fam.dim)},
                   {"members", str(fam.size())},
                   {"free", join(free_indices)},
                   {"p", str(p)},
                   {"q", str(q)}};
  report.member_labels = labels_of(fam);
  const auto d = static_cast<std::size_t>(fam.dim);

  std::vector<std::int64_t> xi_key = {static_cast<std::int64_t>(p), static_cast<std::int64_t>(q),
                                      static_cast<std::int64_t>(d)};
  report.bound_claim.formula = "xi(p,q,d)+p-q+1";
  report.bound_claim.provenance = catalog_note("xi", xi_key);
  if (p >= q)
    if (auto xi = catalog_value("xi", xi_key))
      report.bound_claim.value = *xi + static_cast<std::int64_t>(p - q + 1);

  const bool shape_ok = p >= q && q >= d + 1;
  report.check("p >= q >= d + 1", shape_ok);
  const bool count_ok = shape_ok && free_indices.size() == p - d;
  report.check("free subfamily has p - d members", count_ok,
               {free_indices, std::nullopt, str(free_indices.size()) + " given"});
  if (!count_ok || !size_check(report, fam, p)) {
    conclude(report, "");
    return report;
  }

  try {
    auto oracle = IntersectionOracle::for_family(fam, options.budget);
    std::optional<IndexSet> tuple;
    const bool free_ok = is_m_free(fam, free_indices, q - d, oracle, &tuple);
    report.check("free subfamily is (q-d)-free", free_ok,
                 {tuple, std::nullopt,
                  tuple ? "these members share a point" : free_ok ? "" : "a member is unbounded"});
    if (!check_pq(report, oracle, p, q, options) || !free_ok) {
      conclude(report, "");
      return report;
    }
    require_generators(fam, free_indices, "free subfamily");
    const ConvexSet hull = convex_hull_union(fam, free_indices, "hull(B)");

    PointCollector pc(fam.size());
    const IndexSet rest = complement(free_indices, fam.size());
    std::size_t n_parts = 0;
    if (!rest.empty()) {
      for (const auto& part : minimum_partition(fam, rest, options)) {
        SetRefs sets = refs(fam, part);
        sets.push_back(&hull);
        const IntersectionResult r = intersect_sets(sets);
        report.check("part " + join(part) + " meets the hull of the free sets", r.nonempty,
                     {part, r.witness, ""});
        if (!r.nonempty) continue;
        const std::size_t k = pc.add(*r.witness);
        for (auto i : part) pc.assignment[i] = k;
        report.parts.push_back({part, "hull", "joint point with hull(B)", {k}});
        ++n_parts;
      }
    }
    const std::size_t free_points =
        pierce_members(fam, free_indices, pc, report, "compact", options);
    report.check("free subfamily pierced with <= p-q+1 = " + str(p - q + 1) + " points",
                 free_points <= p - q + 1,
                 {std::nullopt, std::nullopt, str(free_points) + " points"});
    finish_piercing(report, fam, std::move(pc));
    report.inputs.emplace_back("parts", str(n_parts));
    if (report.bound_claim.value)
      report.check("count within the numeric bound",
                   static_cast<std::int64_t>(report.piercing->size()) <= *report.bound_claim.value);
    compare_exact(report, fam, options);
  } catch (const BudgetExhausted&) {
    report.budget_exhausted = true;
    report.exhaustive = false;
  }
  conclude(report, "pierced with " + (report.piercing ? str(report.piercing->size()) : "0") +
                       " points");
  return report;
}

// ---------------------------------------------------------------------------

namespace {

/// Pierces one part inside the hull through a common recession direction.
/// Returns false (with a note) when the route does not apply.
bool pierce_by_projection(const Family& fam, const IndexSet& part, const ConvexSet& hull,
                          std::size_t q, PointCollector& pc, PipelineReport& report,
                          const PipelineOptions& options, std::string& why_not) {
  const std::size_t d = static_cast<std::size_t>(fam.dim);
  const SetRefs sets = refs(fam, part);
  const auto v = common_recession_direction(sets);
  if (!v) {
    why_not = "no common recession direction";
    return false;
  }
  for (auto i : part)
    if (!intersect_sets({&fam[i], &hull}).nonempty) {
      why_not = "member " + str(i) + " misses the hull";
      return false;
    }

  const BasisChange change = basis_with_last(*v);
  const Family rotated = transform(fam.subfamily(part), change);
  const ConvexSet box = transform(hull, change);

  if (part.size() >= q - 1) {
    auto within = IntersectionOracle::for_family(rotated, options.budget, &box);
    PqOptions po;
    po.jobs = options.jobs;
    const PqReport r = has_pq_property(within, q - 1, d, po);
    std::optional<IndexSet> witness;
    if (r.violating_tuple) {
      witness = IndexSet{};
      for (auto j : *r.violating_tuple) witness->push_back(part[j]);
    }
    report.check("part " + join(part) + " cut by the hull has the (" + str(q - 1) + "," + str(d) +
                     ")-property",
                 r.holds, {witness, std::nullopt, ""});
  }

  IntersectionOracle projected(
      rotated.size(),
      [&rotated, &box](const IndexSet& idx) { return lifted_projection_intersect(rotated, idx, box); },
      options.budget);
  const PiercingSolution sol = piercing_number(projected);

  PartRecord record{part, "projection",
                    "direction " + to_string(*v) + ", " + str(sol.size()) + " projected points",
                    {}};
  for (std::size_t k = 0; k < sol.size(); ++k) {
    const Point& y = sol.points[k];
    Rational height;
    bool first = true;
    for (std::size_t j = 0; j < rotated.size(); ++j) {
      if (sol.assignment[j] != k) continue;
      const auto h = lowest_height({&rotated[j], &box}, y);
      if (!h) throw std::logic_error("projected point has no lift in a member");
      if (first || *h > height) height = *h;
      first = false;
    }
    Point lifted(static_cast<Eigen::Index>(d));
    for (Eigen::Index c = 0; c + 1 < lifted.size(); ++c) lifted(c) = y(c);
    lifted(lifted.size() - 1) = height;
    const std::size_t idx = pc.add(change.to_old(lifted));
    record.points.push_back(idx);
    for (std::size_t j = 0; j < rotated.size(); ++j)
      if (sol.assignment[j] == k) pc.assignment[part[j]] = idx;
  }
  report.parts.push_back(std::move(record));
  return true;
}

}  // namespace

PipelineReport pierce_via_main(const Family& fam, const IndexSet& compact_indices, std::size_t p,
                               std::size_t q, const PipelineOptions& options) {
  fam.validate();
  check_indices(compact_indices, fam.size(), "compact subfamily");
  PipelineReport report;
  report.name = "main";
  report.inputs = {{"d", std::to_string(fam.dim)},
                   {"members", str(fam.size())},
                   {"compact", join(compact_indices)},
                   {"p", str(p)},
                   {"q", str(q)}};
  report.member_labels = labels_of(fam);
  const auto d = static_cast<std::size_t>(fam.dim);

  report.bound_claim.formula = "xi(q-1,d,d-1)*xi(p,q,d)+p-q+1";
  if (p >= q && q >= 1) {
    const std::vector<std::int64_t> inner = {static_cast<std::int64_t>(q - 1),
                                             static_cast<std::int64_t>(d),
                                             static_cast<std::int64_t>(d) - 1};
    const std::vector<std::int64_t> outer = {static_cast<std::int64_t>(p),
                                             static_cast<std::int64_t>(q),
                                             static_cast<std::int64_t>(d)};
    report.bound_claim.provenance = catalog_note("xi", inner) + "; " + catalog_note("xi", outer);
    const auto a = catalog_value("xi", inner), b = catalog_value("xi", outer);
    if (a && b) report.bound_claim.value = *a * *b + static_cast<std::int64_t>(p - q + 1);
  }

  const bool shape_ok = p >= q && q >= d + 1 && q >= p - q + d + 1;
  report.check("p >= q >= d + 1 and q >= p - q + d + 1", shape_ok);
  const bool count_ok = shape_ok && compact_indices.size() == p - q + 1;
  report.check("p - q + 1 compact members given", count_ok,
               {compact_indices, std::nullopt, str(compact_indices.size()) + " given"});
  std::optional<std::size_t> unbounded;
  for (auto i : compact_indices)
    if (!unbounded && !is_bounded(fam[i])) unbounded = i;
  report.check("given compact members are bounded", !unbounded,
               {unbounded ? std::optional<IndexSet>(IndexSet{*unbounded}) : std::nullopt,
                std::nullopt, ""});
  if (!count_ok || unbounded || !size_check(report, fam, p)) {
    conclude(report, "");
    return report;
  }

  try {
    auto oracle = IntersectionOracle::for_family(fam, options.budget);
    if (!check_pq(report, oracle, p, q, options)) {
      conclude(report, "");
      return report;
    }
    require_generators(fam, compact_indices, "compact subfamily");
    const ConvexSet hull = convex_hull_union(fam, compact_indices, "hull(B)");

    PointCollector pc(fam.size());
    const IndexSet rest = complement(compact_indices, fam.size());
    if (!rest.empty()) {
      for (const auto& part : minimum_partition(fam, rest, options)) {
        SetRefs sets = refs(fam, part);
        sets.push_back(&hull);
        const IntersectionResult inside = intersect_sets(sets);
        if (inside.nonempty) {
          const std::size_t k = pc.add(*inside.witness);
          for (auto i : part) pc.assignment[i] = k;
          report.parts.push_back({part, "direct", "common point inside hull(B)", {k}});
          continue;
        }
        std::string why_not;
        if (pierce_by_projection(fam, part, hull, q, pc, report, options, why_not))
          continue;
        const IntersectionResult r = intersect_nonempty(fam, part);
        const std::size_t k = pc.add(*r.witness);
        for (auto i : part) pc.assignment[i] = k;
        report.parts.push_back({part, "direct", "common point outside hull(B); " + why_not, {k}});
      }
    }
    const std::size_t compact_points =
        pierce_members(fam, compact_indices, pc, report, "compact", options);
    report.check("compact members pierced with <= p-q+1 = " + str(p - q + 1) + " points",
                 compact_points <= p - q + 1,
                 {std::nullopt, std::nullopt, str(compact_points) + " points"});
    finish_piercing(report, fam, std::move(pc));
    if (report.bound_claim.value)
      report.check("count within the numeric bound",
                   static_cast<std::int64_t>(report.piercing->size()) <= *report.bound_claim.value);
    compare_exact(report, fam, options);
  } catch (const BudgetExhausted&) {
    report.budget_exhausted = true;
    report.exhaustive = false;
  }
  conclude(report, "pierced with " + (report.piercing ? str(report.piercing->size()) : "0") +
                       " points");
  return report;
}

// ---------------------------------------------------------------------------

PipelineReport verify_corollary52(const Family& fam, const ConvexSet& box, std::size_t max_subset,
                                  const PipelineOptions& options) {
  fam.validate();
  if (box.dim() != fam.dim) throw MalformedInput("box dimension differs from family");
  if (!box.is_vrep() || !is_bounded(box))
    throw MalformedInput("box must be a compact generator set (no rays)");
  PipelineReport report;
  report.name = "corollary52";
  report.inputs = {{"d", std::to_string(fam.dim)},
                   {"members", str(fam.size())},
                   {"box", box.label()},
                   {"max_subset", str(max_subset)}};
  report.member_labels = labels_of(fam);
  report.bound_claim = {"intersection inside the box iff projections intersect", std::nullopt,
                        "recession direction e_d shared by every member"};

  const Point ed = unit_point(fam.dim, fam.dim - 1);
  std::optional<std::size_t> outside;
  for (std::size_t i = 0; i < fam.size() && !outside; ++i)
    if (!in_all_recession_cones({&fam[i]}, ed)) outside = i;
  report.check("e_d lies in every recession cone", !outside,
               {outside ? std::optional<IndexSet>(IndexSet{*outside}) : std::nullopt, ed, ""});
  if (outside) {
    conclude(report, "");
    return report;
  }

  try {
    auto joint = IntersectionOracle::for_family(fam, options.budget, &box);
    IntersectionOracle projected(
        fam.size(),
        [&fam, &box](const IndexSet& idx) { return lifted_projection_intersect(fam, idx, box); },
        options.budget);
    std::size_t checked = 0, intersecting = 0;
    std::optional<IndexSet> mismatch;
    const std::size_t top = std::min(max_subset, fam.size());
    for (std::size_t k = 1; k <= top; ++k)
      for_each_subset(fam.size(), k, [&](const IndexSet& idx) {
        ++checked;
        const bool a = joint.intersects(idx);
        const bool b = projected.intersects(idx);
        if (a) ++intersecting;
        if (a != b && !mismatch) mismatch = idx;
        return true;
      });
    report.check("both intersection tests agree on every subset of size <= " + str(max_subset),
                 !mismatch,
                 {mismatch, std::nullopt,
                  str(checked) + " subsets, " + str(intersecting) + " intersecting inside the box"});
  } catch (const BudgetExhausted&) {
    report.budget_exhausted = true;
    report.exhaustive = false;
  }
  conclude(report, "equivalence holds on every checked subset");
  return report;
}

}  // namespace helly
