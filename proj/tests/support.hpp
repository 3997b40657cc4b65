// Independent brute-force oracles for the test suites.
#ifndef HELLY_TESTS_SUPPORT_HPP
#define HELLY_TESTS_SUPPORT_HPP

#include "helly/constructions.hpp"
#include "helly/lp.hpp"
#include "helly/pq.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace helly::test {

inline Rational r(long long n, long long d = 1) { return Rational(n) / Rational(d); }

/// Row a·x <= b (strict = false) over dense coefficients.
struct FmRow {
  std::vector<Rational> a;
  Rational b;
};

/// Feasibility by Fourier-Motzkin elimination of every variable.
inline bool fm_feasible(const LinearSystem& sys) {
  const auto n = static_cast<std::size_t>(sys.dim);
  std::vector<FmRow> rows;
  auto push = [&](const Point& c, const Rational& b, int sign) {
    FmRow row{std::vector<Rational>(n), sign * b};
    for (std::size_t i = 0; i < n; ++i) row.a[i] = sign * c(static_cast<Eigen::Index>(i));
    rows.push_back(row);
  };
  for (const auto& c : sys.constraints) {
    push(c.coeffs, c.rhs, 1);
    if (c.relation == Relation::Equal) push(c.coeffs, c.rhs, -1);
  }
  for (auto v : sys.nonneg_vars) {
    Point c = zero_point(sys.dim);
    c(v) = -1;
    push(c, 0, 1);
  }
  for (std::size_t var = 0; var < n; ++var) {
    std::vector<FmRow> pos, neg, next;
    for (auto& row : rows) {
      if (row.a[var] > 0) pos.push_back(row);
      else if (row.a[var] < 0) neg.push_back(row);
      else next.push_back(row);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        const Rational sp = -q.a[var], sq = p.a[var];
        FmRow c{std::vector<Rational>(n), sp * p.b + sq * q.b};
        for (std::size_t i = 0; i < n; ++i) c.a[i] = sp * p.a[i] + sq * q.a[i];
        next.push_back(c);
      }
    rows = std::move(next);
  }
  for (const auto& row : rows)
    if (row.b < 0) return false;
  return true;
}

/// Minimum number of intersecting parts over all set partitions, with
/// intersections decided by direct joint LPs.
inline std::size_t brute_force_piercing(const Family& fam) {
  const std::size_t n = fam.size();
  std::map<std::uint64_t, bool> memo;
  auto intersecting = [&](std::uint64_t mask) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    IndexSet idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    const bool v = intersect_nonempty(fam, idx).nonempty;
    memo[mask] = v;
    return v;
  };
  std::size_t best = n;
  std::vector<std::size_t> label(n, 0);
  // Restricted growth strings enumerate every set partition once.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (blocks >= best) return;
    if (i == n) {
      std::vector<std::uint64_t> masks(blocks, 0);
      for (std::size_t j = 0; j < n; ++j) masks[label[j]] |= std::uint64_t{1} << j;
      for (auto m : masks)
        if (!intersecting(m)) return;
      best = blocks;
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      label[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return best;
}

/// Smallest vertex subset hitting every edge, by increasing size.
inline std::size_t brute_force_transversal(const Hypergraph& h) {
  const std::size_t n = h.n_vertices;
  std::size_t best = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= best) continue;
    bool hits = true;
    for (const auto& e : h.edges) {
      bool any = false;
      for (auto v : e) any = any || (mask >> v & 1);
      if (!any) {
        hits = false;
        break;
      }
    }
    if (hits) best = size;
  }
  return h.edges.empty() ? 0 : best;
}

inline Hypergraph random_hypergraph(Rng& rng, std::size_t n, std::size_t arity, std::size_t edges) {
  std::vector<IndexSet> es;
  for (std::size_t e = 0; e < edges; ++e) {
    IndexSet s;
    while (s.size() < arity) {
      const auto v = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(n) - 1));
      if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    }
    es.push_back(s);
  }
  return Hypergraph::make(n, es, arity);
}

/// Random plane family of rectangles (VRep or HRep) and triangles.
inline Family random_plane_family(Rng& rng, std::size_t n) {
  Family fam;
  fam.dim = 2;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string label = "F" + std::to_string(i);
    const auto kind = rng.integer(0, 2);
    if (kind == 2) {
      std::vector<Point> pts;
      for (int k = 0; k < 3; ++k)
        pts.push_back(make_point({rng.rational(0, 6, 4), rng.rational(0, 6, 4)}));
      fam.add(ConvexSet::from_generators(label, 2, pts));
    } else {
      const Rational x = rng.rational(0, 5, 3), y = rng.rational(0, 5, 3);
      const Rational w = rng.rational(r(1, 3), 3, 3), h = rng.rational(r(1, 3), 3, 3);
      const Point lo = make_point({x, y}), hi = make_point({x + w, y + h});
      fam.add(kind == 0 ? ConvexSet::box(label, lo, hi) : ConvexSet::box_halfspaces(label, lo, hi));
    }
  }
  return fam;
}

/// Brute force over outcomes: entry i is P(at least i of the events), i = 1..d.
inline std::vector<Rational> at_least_by_enumeration(const std::vector<Rational>& alphas) {
  const std::size_t d = alphas.size();
  std::vector<Rational> exactly(d + 1, Rational(0));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    Rational p = 1;
    std::size_t count = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (mask >> j & 1) {
        p *= alphas[j];
        ++count;
      } else {
        p *= 1 - alphas[j];
      }
    }
    exactly[count] += p;
  }
  std::vector<Rational> out(d);
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t k = i; k <= d; ++k) out[i - 1] += exactly[k];
  return out;
}

/// Barycentric membership in the simplex spanned by the rows of M (d rows in R^d).
inline bool in_simplex_by_barycentrics(const Matrix& rows, const Point& x) {
  const auto lambda = solve_linear(Matrix(rows.transpose()), x);
  if (!lambda) return false;
  Rational sum = 0;
  for (Eigen::Index i = 0; i < lambda->size(); ++i) {
    if ((*lambda)(i) < 0) return false;
    sum += (*lambda)(i);
  }
  return sum == 1;
}

}  // namespace helly::test

#endif  // HELLY_TESTS_SUPPORT_HPP
