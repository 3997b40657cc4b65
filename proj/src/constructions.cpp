#include "helly/constructions.hpp"

#include "helly/pq.hpp"

#include <algorithm>

namespace helly {

namespace {

Integer floor_of(const Rational& r) {
  Integer q = numerator(r) / denominator(r);  // truncates toward zero
  if (q * denominator(r) > numerator(r)) --q;
  return q;
}

Integer ceil_of(const Rational& r) { return -floor_of(-r); }

}  // namespace

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw MalformedInput("empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

Rational Rng::rational(const Rational& lo, const Rational& hi, std::int64_t max_den) {
  const std::int64_t den = integer(1, max_den);
  // Smallest and largest numerators keeping num/den inside [lo, hi].
  const Integer num_lo = ceil_of(lo * den);
  const Integer num_hi = floor_of(hi * den);
  if (num_hi < num_lo) return lo;
  const auto width = Integer(num_hi - num_lo).convert_to<std::int64_t>();
  return Rational(Integer(num_lo + integer(0, width)), Integer(den));
}

Rational Rng::open_unit(std::int64_t max_den) {
  if (max_den < 2) throw MalformedInput("open_unit needs max_den >= 2");
  const std::int64_t den = integer(2, max_den);
  return Rational(integer(1, den - 1), den);
}

Matrix simplex_matrix(const Rational& alpha, Eigen::Index d) {
  if (d < 1) throw MalformedInput("simplex dimension must be positive");
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index j = 0; j < k; ++j) m(k, j) = 1;
    m(k, k) = alpha;
  }
  return m;
}

ConvexSet simplex_s(const SimplexSpec& spec) {
  if (spec.alpha <= 0 || spec.alpha > 1) throw MalformedInput("alpha must lie in (0,1]");
  const Matrix m = simplex_matrix(spec.alpha, spec.d);
  std::vector<Point> vertices;
  for (Eigen::Index k = 0; k < spec.d; ++k) vertices.emplace_back(m.row(k).transpose());
  return ConvexSet::from_generators("S_" + to_string(spec.alpha), spec.d, std::move(vertices));
}

std::vector<Rational> poisson_binomial_coeffs(std::span<const Rational> alphas, std::size_t upto) {
  if (upto > alphas.size()) throw MalformedInput("upto exceeds the number of events");
  for (const auto& a : alphas)
    if (a <= 0 || a >= 1) throw MalformedInput("event probability must lie in (0,1)");
  std::vector<Rational> dist{Rational(1)};
  for (const auto& a : alphas) {
    std::vector<Rational> next(dist.size() + 1, Rational(0));
    for (std::size_t k = 0; k < dist.size(); ++k) {
      next[k] += dist[k] * (1 - a);
      next[k + 1] += dist[k] * a;
    }
    dist = std::move(next);
  }
  dist.resize(upto + 1);
  return dist;
}

Point simplex_common_point(std::span<const Rational> alphas) {
  if (alphas.empty()) throw MalformedInput("need at least one alpha");
  if (!std::is_sorted(alphas.begin(), alphas.end()))
    throw MalformedInput("alphas must be sorted ascending");
  const std::vector<Rational> exactly = poisson_binomial_coeffs(alphas, alphas.size());
  const auto d = static_cast<Eigen::Index>(alphas.size());
  Point x(d);
  Rational tail = 0;
  for (Eigen::Index i = d; i >= 1; --i) {
    tail += exactly[static_cast<std::size_t>(i)];
    x(i - 1) = tail;
  }
  return x;
}

std::vector<Rational> random_sorted_alphas(Rng& rng, std::size_t d, std::int64_t max_den) {
  std::vector<Rational> alphas;
  alphas.reserve(d);
  for (std::size_t i = 0; i < d; ++i) alphas.push_back(rng.open_unit(max_den));
  std::sort(alphas.begin(), alphas.end());
  return alphas;
}

void CounterexampleSpec::validate() const {
  if (d < 1) throw MalformedInput("counterexample needs d >= 1");
  if (n_max < 2) throw MalformedInput("counterexample needs n_max >= 2");
  if (bounded_margin < 0) throw MalformedInput("bounded margin must be nonnegative");
}

ConvexSet member_a(Eigen::Index d, std::size_t n) {
  if (n < 2) throw MalformedInput("A_n is defined for n >= 2");
  const Matrix m = simplex_matrix(Rational(1, n), d);
  std::vector<Point> points;
  for (Eigen::Index k = 0; k < d; ++k) {
    Point p = zero_point(d + 1);
    p.tail(d) = m.row(k).transpose();
    points.push_back(std::move(p));
  }
  Point apex = zero_point(d + 1);
  apex(0) = static_cast<long>(n);
  points.push_back(std::move(apex));
  return ConvexSet::from_generators("A_" + std::to_string(n), d + 1, std::move(points),
                                    {unit_point(d + 1, 0)});
}

Family family_a(const CounterexampleSpec& spec) {
  spec.validate();
  Family fam;
  fam.dim = spec.d + 1;
  for (std::size_t n = 2; n <= spec.n_max; ++n) fam.add(member_a(spec.d, n));
  return fam;
}

Family family_b(const CounterexampleSpec& spec) {
  spec.validate();
  Family fam;
  fam.dim = spec.d + 1;
  for (std::size_t i = 1; i <= spec.n_bounded; ++i) {
    const Rational margin = spec.bounded_margin * static_cast<long>(i);
    Point lo = Point::Constant(spec.d + 1, -margin);
    Point hi = Point::Constant(spec.d + 1, 1 + margin);
    lo(0) = 0;
    hi(0) = 0;
    fam.add(ConvexSet::box("B_" + std::to_string(i), lo, hi));
  }
  return fam;
}

Family counterexample_family(const CounterexampleSpec& spec) {
  Family fam = family_a(spec);
  for (auto& s : family_b(spec).sets) fam.add(std::move(s));
  return fam;
}

Family gruenbaum_line(std::size_t n_max, std::size_t copies_of_f0) {
  if (n_max < 1 || copies_of_f0 < 1) throw MalformedInput("need n_max >= 1 and copies >= 1");
  Family fam;
  fam.dim = 1;
  for (std::size_t c = 0; c < copies_of_f0; ++c)
    fam.add(ConvexSet::from_generators("F0" + std::string(c, '\''), 1, {make_point({0})}));
  for (std::size_t n = 1; n <= n_max; ++n)
    fam.add(ConvexSet::from_generators("F" + std::to_string(n), 1,
                                       {make_point({static_cast<long>(n)})}, {make_point({1})}));
  return fam;
}

Family free_flats_family(Eigen::Index d, Eigen::Index k, std::size_t count, const Rational& radius,
                         std::uint64_t seed) {
  if (k < 1 || d < k) throw MalformedInput("free flats need d >= k >= 1");
  if (count < 1) throw MalformedInput("free flats need count >= 1");
  if (radius <= 0) throw MalformedInput("radius must be positive");
  Rng rng(seed);
  // Flats are centred well inside the box and spanned by short generic
  // directions so every generator stays within [-radius, radius].
  const Rational centre_extent = radius / 2;
  const Rational direction_extent = radius / (2 * std::max<Eigen::Index>(1, k - 1));
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Family fam;
    fam.dim = d;
    for (std::size_t c = 0; c < count; ++c) {
      Point base(d);
      for (Eigen::Index i = 0; i < d; ++i) base(i) = rng.rational(-centre_extent, centre_extent, 97);
      std::vector<Point> dirs;
      for (Eigen::Index j = 0; j + 1 < k; ++j) {
        Point u(d);
        for (Eigen::Index i = 0; i < d; ++i)
          u(i) = rng.rational(-direction_extent, direction_extent, 89);
        dirs.push_back(std::move(u));
      }
      std::vector<Point> vertices;
      for (std::size_t mask = 0; mask < (std::size_t{1} << dirs.size()); ++mask) {
        Point v = base;
        for (std::size_t j = 0; j < dirs.size(); ++j)
          v += ((mask >> j) & 1U ? Rational(1) : Rational(-1)) * dirs[j];
        vertices.push_back(std::move(v));
      }
      fam.add(ConvexSet::from_generators("flat_" + std::to_string(c + 1), d, std::move(vertices)));
    }
    if (is_m_free(fam, all_indices(count), static_cast<std::size_t>(k))) return fam;
  }
  throw std::runtime_error("could not draw a free family in 1000 attempts");
}

std::optional<std::size_t> escape_witness(const CounterexampleSpec& spec,
                                          std::span<const Point> candidates, std::size_t n_cap) {
  spec.validate();
  for (const auto& p : candidates)
    if (p.size() != spec.d + 1)
      throw MalformedInput("candidate point has dimension " + std::to_string(p.size()) +
                           ", expected " + std::to_string(spec.d + 1));
  for (std::size_t n = 2; n <= n_cap; ++n) {
    const ConvexSet a = member_a(spec.d, n);
    const bool avoids = std::none_of(candidates.begin(), candidates.end(),
                                     [&](const Point& p) { return contains_point(a, p); });
    if (avoids) return n;
  }
  return std::nullopt;
}

}  // namespace helly
