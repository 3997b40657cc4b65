#include "support.hpp"

#include "helly/catalog.hpp"

#include <doctest.h>

using namespace helly;
using helly::test::r;

namespace {

ConvexSet square(std::string label, const Rational& x, const Rational& y) {
  return ConvexSet::box(std::move(label), make_point({x, y}), make_point({x + 1, y + 1}));
}

ConvexSet segment(std::string label, const Point& a, const Point& b) {
  return ConvexSet::from_generators(std::move(label), a.size(), {a, b});
}

Family triangle_sides() {
  const Point a = make_point({0, 0}), b = make_point({4, 0}), c = make_point({0, 4});
  return Family(2, {segment("AB", a, b), segment("BC", b, c), segment("CA", c, a)});
}

bool violation_is_genuine(const Family& fam, const IndexSet& tuple, std::size_t q) {
  bool genuine = true;
  for_each_subset_of(tuple, q, [&](const IndexSet& sub) {
    if (intersect_nonempty(fam, sub).nonempty) genuine = false;
    return genuine;
  });
  return genuine;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  std::int64_t v = 1;
  for (std::int64_t i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

}  // namespace

TEST_CASE("subset enumeration") {
  std::vector<IndexSet> seen;
  for_each_subset(5, 3, [&](const IndexSet& s) {
    seen.push_back(s);
    return true;
  });
  CHECK(seen.size() == 10);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  CHECK(seen.front() == IndexSet{0, 1, 2});
  CHECK(seen.back() == IndexSet{2, 3, 4});

  std::size_t count = 0;
  for_each_subset(6, 2, [&](const IndexSet&) { return ++count < 4; });
  CHECK(count == 4);

  seen.clear();
  for_each_subset_of({1, 4, 7}, 2, [&](const IndexSet& s) {
    seen.push_back(s);
    return true;
  });
  CHECK(seen == std::vector<IndexSet>{{1, 4}, {1, 7}, {4, 7}});
}

TEST_CASE("oracle closure avoids repeated LPs") {
  std::size_t calls = 0;
  const Family fam(2, {square("P", 0, 0), square("Q", r(1, 2), 0), square("R", 5, 5)});
  IntersectionOracle oracle(fam.size(), [&](const IndexSet& idx) {
    ++calls;
    return intersect_nonempty(fam, idx);
  });
  CHECK(oracle.intersects({0, 1}));
  CHECK(calls == 1);
  CHECK(oracle.intersects({0}));
  CHECK(oracle.intersects({1}));
  CHECK(calls == 1);
  CHECK_FALSE(oracle.intersects({1, 2}));
  const std::size_t after = calls;
  CHECK_FALSE(oracle.intersects({0, 1, 2}));
  CHECK(calls == after);
  CHECK(oracle.lp_calls() == calls);
  const auto w = oracle.query({0});
  REQUIRE(w.witness);
  CHECK(contains_point(fam[0], *w.witness));
}

TEST_CASE("oracle budget") {
  const Family fam(2, {square("P", 0, 0), square("Q", 3, 0), square("R", 6, 0)});
  auto budget = std::make_shared<LpBudget>(2);
  auto oracle = IntersectionOracle::for_family(fam, budget);
  oracle.intersects({0, 1});
  oracle.intersects({1, 2});
  CHECK_THROWS_AS(oracle.intersects({0, 2}), BudgetExhausted);
  CHECK(budget->used() >= 2);
}

TEST_CASE("oracle rejects more than 64 members") {
  CHECK_THROWS(IntersectionOracle(65, [](const IndexSet&) { return IntersectionResult{}; }));
}

TEST_CASE("hypergraph validation") {
  const Hypergraph h = Hypergraph::make(4, {{2, 1}, {1, 2}, {0, 3}}, 2);
  CHECK(h.edges.size() == 2);
  CHECK(h.edges.front() == IndexSet{0, 3});
  CHECK_THROWS_AS(Hypergraph::make(3, {{0, 3}}), MalformedInput);
  CHECK_THROWS_AS(Hypergraph::make(3, {{0, 1, 2}}, 2), MalformedInput);
  CHECK_THROWS_AS(Hypergraph::make(3, {{1, 1}}), MalformedInput);
  const Hypergraph sub = Hypergraph::make(5, {{0, 1}, {1, 4}, {2, 3}}, 2).induced({1, 3, 4});
  CHECK(sub.n_vertices == 3);
  CHECK(sub.edges == std::vector<IndexSet>{{0, 2}});
}

TEST_CASE("(p,q) examples") {
  SUBCASE("identical squares") {
    Family fam;
    fam.dim = 2;
    for (int i = 0; i < 4; ++i) fam.add(square("U" + std::to_string(i), 0, 0));
    const PqReport rep = has_pq_property(fam, 4, 4);
    CHECK(rep.holds);
    CHECK(rep.checked_tuples == 1);
  }
  SUBCASE("Gruenbaum truncation") {
    const PqReport rep = has_pq_property(gruenbaum_line(5, 1), 4, 3);
    CHECK(rep.holds);
    CHECK_FALSE(rep.violating_tuple);
    CHECK(rep.checked_tuples == 15);
  }
  SUBCASE("two copies of the point") {
    const Family fam = gruenbaum_line(3, 2);
    const PqReport rep = has_pq_property(fam, 4, 3);
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.violating_tuple);
    CHECK(*rep.violating_tuple == IndexSet{0, 1, 2, 3});
    CHECK(violation_is_genuine(fam, *rep.violating_tuple, 3));
  }
  SUBCASE("bad arguments") {
    const Family fam = gruenbaum_line(2, 1);
    CHECK_THROWS_AS(has_pq_property(fam, 4, 3), MalformedInput);
    CHECK_THROWS_AS(has_pq_property(fam, 2, 3), MalformedInput);
    CHECK_THROWS_AS(has_pq_property(fam, 2, 0), MalformedInput);
  }
}

TEST_CASE("(p,q) reports are genuine, downward closed, and independent of jobs") {
  Rng rng(31);
  int holds = 0, fails = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(4, 7));
    const Family fam = test::random_plane_family(rng, n);
    const std::size_t q = static_cast<std::size_t>(rng.integer(2, 3));
    const std::size_t p = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(q), static_cast<std::int64_t>(n) - 1));
    const PqReport rep = has_pq_property(fam, p, q);
    CHECK(rep.holds == !rep.violating_tuple.has_value());
    if (rep.holds) {
      ++holds;
      CHECK(has_pq_property(fam, p + 1, q).holds);
    } else {
      ++fails;
      CHECK(rep.violating_tuple->size() == p);
      CHECK(violation_is_genuine(fam, *rep.violating_tuple, q));
    }
    PqOptions par;
    par.jobs = 4;
    const PqReport rep4 = has_pq_property(fam, p, q, par);
    CHECK(rep4.holds == rep.holds);
    CHECK(rep4.violating_tuple == rep.violating_tuple);
  }
  CHECK(holds > 0);
  CHECK(fails > 0);
}

TEST_CASE("recorded tuples carry intersecting witnesses") {
  const Family fam = gruenbaum_line(5, 1);
  PqOptions opts;
  opts.record_tuples = true;
  const PqReport rep = has_pq_property(fam, 4, 3, opts);
  CHECK(rep.tuples.size() == 15);
  for (const auto& t : rep.tuples) {
    REQUIRE(t.intersecting);
    CHECK(t.intersecting->size() == 3);
    CHECK(intersect_nonempty(fam, *t.intersecting).nonempty);
    CHECK(std::includes(t.tuple.begin(), t.tuple.end(), t.intersecting->begin(), t.intersecting->end()));
  }
}

TEST_CASE("piercing examples") {
  SUBCASE("common point") {
    const Family fam(2, {square("P", 0, 0), square("Q", r(1, 2), r(1, 2)), square("R", r(3, 4), 0)});
    const PiercingSolution sol = piercing_number(fam);
    CHECK(sol.size() == 1);
    CHECK(sol.optimal);
  }
  SUBCASE("sides of a triangle") {
    const Family fam = triangle_sides();
    const PiercingSolution sol = piercing_number(fam);
    CHECK(sol.size() == 2);
    CHECK(test::brute_force_piercing(fam) == 2);
    for (std::size_t i = 0; i < fam.size(); ++i) CHECK(contains_point(fam[i], sol.points[sol.assignment[i]]));
  }
  SUBCASE("counterexample truncation shares the far axis") {
    CounterexampleSpec spec;
    spec.d = 1;
    spec.n_max = 10;
    spec.n_bounded = 0;
    const Family fam = family_a(spec);
    CHECK(fam.size() == 9);
    const PiercingSolution sol = piercing_number(fam);
    REQUIRE(sol.size() == 1);
    CHECK(contains_point(member_a(1, 10), sol.points[0]));
    CHECK(contains_point(fam[0], make_point({10, 0})));
    for (std::size_t i = 0; i < fam.size(); ++i) CHECK(contains_point(fam[i], make_point({10, 0})));
  }
  SUBCASE("limit marks non-optimal answers") {
    Family fam;
    fam.dim = 2;
    for (int i = 0; i < 4; ++i) fam.add(square("S" + std::to_string(i), 3 * i, 0));
    const PiercingSolution sol = piercing_number(fam, 2);
    CHECK_FALSE(sol.optimal);
    const PiercingSolution full = piercing_number(fam);
    CHECK(full.optimal);
    CHECK(full.size() == 4);
  }
  SUBCASE("empty member") {
    const ConvexSet empty =
        ConvexSet::from_halfspaces("E", 2, {{make_point({1, 0}), -1}, {make_point({-1, 0}), 0}});
    const Family fam(2, {square("P", 0, 0), empty});
    CHECK_THROWS_AS(piercing_number(fam), EmptySetError);
  }
}

TEST_CASE("piercing equals the brute-force partition minimum") {
  Rng rng(32);
  for (int trial = 0; trial < 80; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 7));
    const Family fam = test::random_plane_family(rng, n);
    const PiercingSolution sol = piercing_number(fam);
    CHECK(sol.optimal);
    CHECK(sol.size() == test::brute_force_piercing(fam));
    REQUIRE(sol.assignment.size() == n);
    std::vector<bool> used(sol.size(), false);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(contains_point(fam[i], sol.points[sol.assignment[i]]));
      used[sol.assignment[i]] = true;
    }
    CHECK(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("piercing is monotone under adding members") {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Family fam = test::random_plane_family(rng, static_cast<std::size_t>(rng.integer(2, 6)));
    Family smaller(2, {});
    for (std::size_t i = 0; i + 1 < fam.size(); ++i) smaller.add(fam[i]);
    CHECK(piercing_number(smaller).size() <= piercing_number(fam).size());
  }
}

TEST_CASE("G_F examples") {
  const Family shared(2, {square("P", 0, 0), square("Q", r(1, 2), r(1, 2)), square("R", r(3, 4), 0)});
  CHECK(build_gf(shared, 2).edges.empty());

  const Hypergraph g = build_gf(gruenbaum_line(3, 1), 1);
  CHECK(g.arity == std::optional<std::size_t>(2));
  CHECK(g.edges == std::vector<IndexSet>{{0, 1}, {0, 2}, {0, 3}});
  const TransversalResult t = transversal_number(g);
  CHECK(t.beta == 1);
  CHECK(t.cover == IndexSet{0});

  const Hypergraph tri = build_gf(triangle_sides(), 2);
  CHECK(tri.edges == std::vector<IndexSet>{{0, 1, 2}});
}

TEST_CASE("G_F edges are the empty (d+1)-subsets") {
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const Family fam = test::random_plane_family(rng, static_cast<std::size_t>(rng.integer(3, 8)));
    const Hypergraph g = build_gf(fam, 2, trial % 2 ? 3 : 1);
    std::vector<IndexSet> expected;
    for_each_subset(fam.size(), 3, [&](const IndexSet& s) {
      if (!intersect_nonempty(fam, s).nonempty) expected.push_back(s);
      return true;
    });
    CHECK(g.edges == expected);
  }
}

TEST_CASE("transversal examples") {
  CHECK(transversal_number(Hypergraph::make(4, {})).beta == 0);
  const TransversalResult tri = transversal_number(Hypergraph::make(3, {{0, 1}, {1, 2}, {0, 2}}, 2));
  CHECK(tri.beta == 2);
  CHECK(tri.optimal);
  const TransversalResult lim = transversal_number(Hypergraph::make(4, {{0, 1}, {2, 3}}, 2), 1);
  CHECK_FALSE(lim.optimal);
}

TEST_CASE("transversal equals exhaustive search") {
  Rng rng(35);
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(3, 12));
    const auto arity = static_cast<std::size_t>(rng.integer(2, std::min<std::int64_t>(4, static_cast<std::int64_t>(n))));
    const auto edges = static_cast<std::size_t>(rng.integer(0, 14));
    const Hypergraph h = test::random_hypergraph(rng, n, arity, edges);
    const TransversalResult t = transversal_number(h);
    CHECK(t.beta == test::brute_force_transversal(h));
    CHECK(t.cover.size() == t.beta);
    for (const auto& e : h.edges) {
      bool hit = false;
      for (auto v : e) hit = hit || std::find(t.cover.begin(), t.cover.end(), v) != t.cover.end();
      CHECK(hit);
    }
  }
}

TEST_CASE("m-free examples") {
  const Family two(2, {square("P", 0, 0), square("Q", 3, 0), square("R", r(1, 2), 0)});
  CHECK(is_m_free(two, {0, 1}, 1));
  CHECK_FALSE(is_m_free(two, {0, 2}, 1));
  const Family with_ray(2, {square("P", 0, 0), member_a(1, 5)});
  CHECK_FALSE(is_m_free(with_ray, {0, 1}, 1));
  const Family flats = free_flats_family(2, 2, 4, 10, 7);
  CHECK(is_m_free(flats, all_indices(4), 2));
  CHECK_FALSE(is_m_free(flats, all_indices(4), 1));
}

TEST_CASE("catalog values") {
  auto xi = [](std::int64_t p, std::int64_t q, std::int64_t d) {
    const std::int64_t key[] = {p, q, d};
    return catalog_lookup("xi", key);
  };
  auto e = xi(5, 4, 1);
  REQUIRE(e);
  CHECK(e->value == 2);
  CHECK(e->kind == BoundKind::Exact);
  e = xi(4, 3, 2);
  REQUIRE(e);
  CHECK(e->value == 13);
  CHECK(e->kind == BoundKind::UpperBound);
  CHECK_FALSE(xi(7, 4, 3));

  const std::int64_t eta32[] = {3, 2};
  e = catalog_lookup("eta", eta32);
  REQUIRE(e);
  CHECK(e->value == 6);
  CHECK(e->kind == BoundKind::Exact);
  const std::int64_t eta33[] = {3, 3};
  e = catalog_lookup("eta", eta33);
  REQUIRE(e);
  CHECK(e->value == 15);
  CHECK(e->kind == BoundKind::UpperBound);
  CHECK_FALSE(catalog_lookup("zeta", eta32));

  for (const auto& entry : BoundCatalog::standard().entries()) {
    CHECK_FALSE(entry.provenance.empty());
    CHECK(entry.value > 0);
  }
}

TEST_CASE("eta bound formulas") {
  CHECK(eta_tuza_bound(3, 3) == 15);
  CHECK(eta_tuza_bound(3, 2) == 8);
  for (std::int64_t lam = 2; lam <= 6; ++lam)
    for (std::int64_t k = 1; k <= 4; ++k)
      CHECK(eta_tuza_bound(lam, k) == binomial(lam + k - 1, lam - 1) + binomial(lam + k - 2, lam - 1) - 1);
  // Both published k = 2 bounds hold at the one exact value.
  CHECK(eta_erdos_gallai_bound(3) >= 6);
  CHECK(eta_tuza_bound(3, 2) >= 6);
  CHECK(eta_erdos_gallai_bound(3) == 6);
  CHECK(eta_erdos_gallai_bound(4) == 9);
  CHECK(eta_erdos_gallai_bound(2) == 4);
}

TEST_CASE("Erdos-Gallai equivalence") {
  SUBCASE("edgeless") {
    const EgCheck c = verify_eg_equivalence(Hypergraph::make(5, {}, 3), 1, 6);
    CHECK(c.consistent);
    CHECK(c.beta == 0);
  }
  SUBCASE("random 3-uniform hypergraphs, both sides brute-forced") {
    Rng rng(36);
    for (int trial = 0; trial < 40; ++trial) {
      const auto n = static_cast<std::size_t>(rng.integer(3, 8));
      const Hypergraph h = test::random_hypergraph(rng, n, 3, static_cast<std::size_t>(rng.integer(0, 6)));
      const EgCheck c = verify_eg_equivalence(h, 1, 6);
      CHECK(c.consistent);
      const bool global = test::brute_force_transversal(h) <= 1;
      bool local = true;
      for (std::size_t size = 1; size <= std::min<std::size_t>(n, 6); ++size)
        for_each_subset(n, size, [&](const IndexSet& vs) {
          local = local && test::brute_force_transversal(h.induced(vs)) <= 1;
          return local;
        });
      CHECK(global == local);
      CHECK((c.beta <= 1) == global);
    }
  }
  SUBCASE("catalog misses") {
    const Hypergraph tri = Hypergraph::make(3, {{0, 1}, {1, 2}, {0, 2}}, 2);
    CHECK_THROWS_AS(verify_eg_equivalence(tri, 1, 4), CatalogMiss);
    CHECK_THROWS_AS(verify_eg_equivalence(Hypergraph::make(5, {}, 3), 1, 7), CatalogMiss);
    CHECK_THROWS_AS(verify_eg_equivalence(Hypergraph::make(5, {}), 1, 6), MalformedInput);
  }
}
