#include "support.hpp"

#include <doctest.h>

using namespace helly;
using helly::test::r;

namespace {

CounterexampleSpec spec_of(Eigen::Index d, std::size_t n_max, std::size_t n_bounded) {
  CounterexampleSpec spec;
  spec.d = d;
  spec.n_max = n_max;
  spec.n_bounded = n_bounded;
  return spec;
}

std::optional<std::size_t> escape(const CounterexampleSpec& spec, const std::vector<Point>& pts,
                                  std::size_t cap = 1000) {
  return escape_witness(spec, pts, cap);
}

// x1 = 0 as a pair of halfspaces in R^(d+1).
ConvexSet base_hyperplane(Eigen::Index dim) {
  return ConvexSet::from_halfspaces("H0", dim, {{unit_point(dim, 0), 0}, {Point(-unit_point(dim, 0)), 0}});
}

}  // namespace

TEST_CASE("seeded generator") {
  Rng a(5), b(5), c(6);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    const auto x = a.integer(-10, 10);
    CHECK(x == b.integer(-10, 10));
    CHECK(x >= -10);
    CHECK(x <= 10);
    differs = differs || x != c.integer(-10, 10);
  }
  CHECK(differs);
  for (int i = 0; i < 200; ++i) {
    const Rational q = a.rational(r(-1, 2), 3, 7);
    CHECK(q >= r(-1, 2));
    CHECK(q <= 3);
    CHECK(boost::multiprecision::denominator(q) <= 7);
    const Rational u = a.open_unit(10);
    CHECK(u > 0);
    CHECK(u < 1);
  }
  CHECK_THROWS_AS(a.integer(3, 2), MalformedInput);
}

TEST_CASE("simplex examples") {
  const ConvexSet s = simplex_s({r(1, 2), 2});
  REQUIRE(s.is_vrep());
  CHECK(s.vrep().points.size() == 2);
  CHECK(equal(s.vrep().points[0], make_point({r(1, 2), 0})));
  CHECK(equal(s.vrep().points[1], make_point({1, r(1, 2)})));
  CHECK(s.vrep().rays.empty());

  const ConvexSet one = simplex_s({1, 3});
  CHECK(equal(one.vrep().points[0], make_point({1, 0, 0})));
  CHECK(equal(one.vrep().points[1], make_point({1, 1, 0})));
  CHECK(equal(one.vrep().points[2], make_point({1, 1, 1})));

  const ConvexSet third = simplex_s({r(1, 3), 2});
  CHECK(equal(third.vrep().points[1], make_point({1, r(1, 3)})));

  const Matrix m = simplex_matrix(r(1, 5), 4);
  for (Eigen::Index k = 0; k < 4; ++k)
    for (Eigen::Index j = 0; j < 4; ++j) CHECK(m(k, j) == (j < k ? Rational(1) : j == k ? r(1, 5) : Rational(0)));

  CHECK_THROWS_AS(simplex_s({0, 2}), MalformedInput);
  CHECK_THROWS_AS(simplex_s({r(3, 2), 2}), MalformedInput);
  CHECK_THROWS_AS(simplex_s({r(1, 2), 0}), MalformedInput);
}

TEST_CASE("Poisson-binomial coefficients") {
  const std::vector<Rational> one{r(1, 3)};
  CHECK(poisson_binomial_coeffs(one, 1) == std::vector<Rational>{r(2, 3), r(1, 3)});
  const std::vector<Rational> coins{r(1, 2), r(1, 2)};
  CHECK(poisson_binomial_coeffs(coins, 2) == std::vector<Rational>{r(1, 4), r(1, 2), r(1, 4)});
  CHECK(poisson_binomial_coeffs(std::vector<Rational>{}, 0) == std::vector<Rational>{1});
  const std::vector<Rational> bad{r(1, 2), 1};
  CHECK_THROWS_AS(poisson_binomial_coeffs(bad, 2), MalformedInput);
  CHECK_THROWS_AS(poisson_binomial_coeffs(one, 2), MalformedInput);

  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto alphas = random_sorted_alphas(rng, static_cast<std::size_t>(rng.integer(1, 6)), 50);
    const auto c = poisson_binomial_coeffs(alphas, alphas.size());
    Rational sum = 0;
    for (const auto& x : c) {
      CHECK(x >= 0);
      sum += x;
    }
    CHECK(sum == 1);
    const auto at_least = test::at_least_by_enumeration(alphas);
    for (std::size_t i = 1; i <= alphas.size(); ++i) {
      Rational tail = 0;
      for (std::size_t k = i; k < c.size(); ++k) tail += c[k];
      CHECK(tail == at_least[i - 1]);
    }
  }
}

TEST_CASE("common point examples") {
  const std::vector<Rational> a{r(1, 3), r(1, 2)};
  CHECK(equal(simplex_common_point(a), make_point({r(2, 3), r(1, 6)})));
  const std::vector<Rational> coins{r(1, 2), r(1, 2)};
  CHECK(equal(simplex_common_point(coins), make_point({r(3, 4), r(1, 4)})));
  const std::vector<Rational> same{r(2, 7), r(2, 7), r(2, 7)};
  const Point x = simplex_common_point(same);
  CHECK(contains_point(simplex_s({r(2, 7), 3}), x));
  const std::vector<Rational> unsorted{r(1, 2), r(1, 3)};
  CHECK_THROWS_AS(simplex_common_point(unsorted), MalformedInput);
  const std::vector<Rational> edge{r(1, 2), 1};
  CHECK_THROWS_AS(simplex_common_point(edge), MalformedInput);
}

TEST_CASE("common point lies in every simplex and matches the coefficient form") {
  Rng rng(42);
  for (Eigen::Index d = 1; d <= 5; ++d)
    for (int trial = 0; trial < 40; ++trial) {
      const auto alphas = random_sorted_alphas(rng, static_cast<std::size_t>(d));
      CHECK(std::is_sorted(alphas.begin(), alphas.end()));
      const Point x = simplex_common_point(alphas);
      for (const auto& a : alphas) {
        CHECK(contains_point(simplex_s({a, d}), x));
        CHECK(test::in_simplex_by_barycentrics(simplex_matrix(a, d), x));
      }
      const std::vector<Rational> first(alphas.begin(), alphas.end() - 1);
      const auto c = poisson_binomial_coeffs(first, first.size());
      Point coeffs(d);
      for (Eigen::Index k = 0; k < d; ++k) coeffs(k) = c[static_cast<std::size_t>(k)];
      const Point combo = simplex_matrix(alphas.back(), d).transpose() * coeffs;
      const auto at_least = test::at_least_by_enumeration(alphas);
      for (Eigen::Index i = 0; i < d; ++i) {
        CHECK(combo(i) == at_least[static_cast<std::size_t>(i)]);
        CHECK(x(i) == at_least[static_cast<std::size_t>(i)]);
      }
    }
}

TEST_CASE("family A examples") {
  const ConvexSet a2 = member_a(1, 2);
  REQUIRE(a2.is_vrep());
  CHECK(a2.label() == "A_2");
  CHECK(a2.vrep().points.size() == 2);
  CHECK(equal(a2.vrep().points[0], make_point({0, r(1, 2)})));
  CHECK(equal(a2.vrep().points[1], make_point({2, 0})));
  REQUIRE(a2.vrep().rays.size() == 1);
  CHECK(equal(a2.vrep().rays[0], make_point({1, 0})));

  const ConvexSet a3 = member_a(1, 3);
  CHECK(contains_point(a3, make_point({0, r(1, 3)})));
  CHECK_FALSE(contains_point(a3, make_point({0, r(1, 2)})));
  for (std::size_t n = 2; n <= 6; ++n) {
    const ConvexSet a = member_a(2, n);
    for (const Rational& t : {Rational(n), Rational(n) + r(1, 2), Rational(100)})
      CHECK(contains_point(a, Point(t * unit_point(3, 0))));
    CHECK_FALSE(contains_point(a, Point((Rational(n) - r(1, 2)) * unit_point(3, 0))));
  }
  CHECK_THROWS_AS(member_a(1, 1), MalformedInput);
}

TEST_CASE("family A pairs and d-subsets intersect") {
  for (Eigen::Index d = 1; d <= 3; ++d) {
    const Family as = family_a(spec_of(d, 7, 0));
    CHECK(as.size() == 6);
    for (std::size_t i = 0; i < as.size(); ++i)
      for (std::size_t j = i + 1; j < as.size(); ++j)
        CHECK(contains_point(as[j], Point(Rational(static_cast<long>(j + 2)) * unit_point(d + 1, 0))));
    const ConvexSet h0 = base_hyperplane(d + 1);
    for_each_subset(as.size(), static_cast<std::size_t>(d), [&](const IndexSet& idx) {
      SetRefs sets = refs(as, idx);
      sets.push_back(&h0);
      CHECK(intersect_sets(sets).nonempty);
      return true;
    });
  }
  // d+1 members never meet in the base hyperplane.
  const Family as = family_a(spec_of(1, 6, 0));
  const ConvexSet h0 = base_hyperplane(2);
  CHECK_FALSE(intersect_sets({&as[0], &as[1], &h0}).nonempty);
}

TEST_CASE("family B") {
  const CounterexampleSpec spec = spec_of(2, 3, 4);
  const Family bs = family_b(spec);
  CHECK(bs.size() == 4);
  for (std::size_t i = 0; i < bs.size(); ++i) {
    CHECK(is_bounded(bs[i]));
    CHECK(contains_point(bs[i], make_point({0, 0, 0})));
    CHECK(contains_point(bs[i], make_point({0, 1, 1})));
    CHECK(contains_point(bs[i], make_point({0, 1, 0})));
    for (std::size_t j = i + 1; j < bs.size(); ++j) CHECK(bs[i].label() != bs[j].label());
  }
  CHECK_FALSE(contains_point(bs[0], make_point({0, 3, 0})));
  CHECK(contains_point(bs[3], make_point({0, 3, 0})));
  CHECK(intersect_nonempty(bs, all_indices(4)).nonempty);

  const Family all = counterexample_family(spec_of(1, 12, 5));
  CHECK(all.size() == 16);
  CHECK(all[0].label() == "A_2");
  CHECK(all[10].label() == "A_12");
  CHECK(is_bounded(all[11]));
  CHECK_FALSE(is_bounded(all[10]));
}

TEST_CASE("Gruenbaum line") {
  const Family g = gruenbaum_line(3, 1);
  CHECK(g.size() == 4);
  CHECK(g.dim == 1);
  CHECK(contains_point(g[0], make_point({0})));
  CHECK_FALSE(contains_point(g[0], make_point({r(1, 2)})));
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(contains_point(g[n], make_point({Rational(static_cast<long>(n))})));
    CHECK(contains_point(g[n], make_point({1000})));
    CHECK_FALSE(contains_point(g[n], make_point({Rational(static_cast<long>(n)) - r(1, 3)})));
  }
  const Family g2 = gruenbaum_line(3, 2);
  CHECK(g2.size() == 5);
  CHECK(equal(g2[1].vrep().points[0], make_point({0})));
  CHECK_THROWS_AS(gruenbaum_line(0, 1), MalformedInput);
}

TEST_CASE("free flats") {
  const Family pts = free_flats_family(2, 1, 3, 10, 1);
  CHECK(pts.size() == 3);
  CHECK(is_m_free(pts, all_indices(3), 1));
  for (std::size_t i = 0; i < 3; ++i) CHECK(is_bounded(pts[i]));

  const Family segs = free_flats_family(2, 2, 4, 10, 2);
  CHECK(is_m_free(segs, all_indices(4), 2));
  const Family segs3 = free_flats_family(3, 2, 5, 10, 3);
  CHECK(segs3.dim == 3);
  CHECK(is_m_free(segs3, all_indices(5), 2));

  const Family again = free_flats_family(2, 2, 4, 10, 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(again[i].vrep().points.size() == segs[i].vrep().points.size());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < segs[i].vrep().points.size(); ++k)
      CHECK(equal(again[i].vrep().points[k], segs[i].vrep().points[k]));

  CHECK_THROWS_AS(free_flats_family(1, 2, 3, 10, 1), MalformedInput);
  CHECK_THROWS_AS(free_flats_family(2, 1, 0, 10, 1), MalformedInput);
}

TEST_CASE("escape examples") {
  const CounterexampleSpec spec = spec_of(1, 12, 0);
  CHECK(escape(spec, {make_point({0, r(1, 2)})}) == std::optional<std::size_t>(3));
  CHECK(escape(spec, {make_point({5, 0})}) == std::optional<std::size_t>(6));
  CHECK(escape(spec, {}) == std::optional<std::size_t>(2));
  CHECK_FALSE(escape(spec, {make_point({50, 0})}, 10));
  CHECK_THROWS_AS(escape(spec, {make_point({1, 2, 3})}), MalformedInput);
}

TEST_CASE("escape on the axis is floor(t) + 1") {
  const CounterexampleSpec spec = spec_of(1, 12, 0);
  const std::vector<std::pair<Rational, std::size_t>> cases{{2, 3}, {r(5, 2), 3}, {3, 4}, {7, 8}, {r(29, 4), 8}};
  for (const auto& [t, expected] : cases) {
    const auto n = escape(spec, {make_point({t, 0})});
    REQUIRE(n);
    CHECK(*n == expected);
    // Brute-force sweep: the witness is the first n whose member misses the point.
    std::size_t first = 0;
    for (std::size_t m = 2; m <= 20 && first == 0; ++m)
      if (!contains_point(member_a(1, m), make_point({t, 0}))) first = m;
    CHECK(*n == first);
  }
}

TEST_CASE("escape witnesses are minimal and grow with the candidate set") {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index d = rng.integer(1, 2);
    const CounterexampleSpec spec = spec_of(d, 2, 0);
    std::vector<Point> pts;
    std::optional<std::size_t> prev = 2;
    for (int k = 0; k < 4; ++k) {
      Point p(d + 1);
      p(0) = rng.rational(-2, 12, 4);
      for (Eigen::Index c = 1; c <= d; ++c) p(c) = rng.rational(-1, 1, 6);
      pts.push_back(p);
      const auto n = escape(spec, pts);
      REQUIRE(n);
      CHECK(*n >= *prev);
      for (const auto& q : pts) CHECK_FALSE(contains_point(member_a(d, *n), q));
      if (*n > 2) {
        bool caught = false;
        for (const auto& q : pts) caught = caught || contains_point(member_a(d, *n - 1), q);
        CHECK(caught);
      }
      prev = n;
    }
  }
}
