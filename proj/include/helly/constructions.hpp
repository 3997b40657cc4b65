#ifndef HELLY_CONSTRUCTIONS_HPP
#define HELLY_CONSTRUCTIONS_HPP

#include "helly/convex.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace helly {

/// Seeded generator owned by one invocation. Draws are built from raw 64-bit
/// output only, so a seed gives the same values on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  /// num/den with den in [1, max_den] and the value in [lo, hi].
  Rational rational(const Rational& lo, const Rational& hi, std::int64_t max_den);
  /// Rational strictly inside (0,1) with denominator <= max_den (max_den >= 2).
  Rational open_unit(std::int64_t max_den);

 private:
  std::mt19937_64 engine_;
};

struct SimplexSpec {
  Rational alpha = 1;
  Eigen::Index d = 1;
};

/// Rows are the vertices e1+...+e(k-1)+alpha*ek, k = 1..d.
Matrix simplex_matrix(const Rational& alpha, Eigen::Index d);

/// The (d-1)-simplex spanned by the rows of simplex_matrix.
ConvexSet simplex_s(const SimplexSpec& spec);

/// Distribution of the number of occurring independent events with the given
/// probabilities: entry k is P(exactly k occur), k = 0..upto.
std::vector<Rational> poisson_binomial_coeffs(std::span<const Rational> alphas, std::size_t upto);

/// x_i = P(at least i of the d events occur); a common point of
/// S_{alpha_1}, ..., S_{alpha_d}. Requires 0 < alpha_1 <= ... <= alpha_d < 1.
Point simplex_common_point(std::span<const Rational> alphas);

/// d sorted alphas in (0,1) with denominators <= max_den.
std::vector<Rational> random_sorted_alphas(Rng& rng, std::size_t d, std::int64_t max_den = 1000);

struct CounterexampleSpec {
  Eigen::Index d = 1;            // sets live in R^(d+1)
  std::size_t n_max = 2;         // A_2 .. A_{n_max}
  std::size_t n_bounded = 1;     // B_1 .. B_{n_bounded}
  Rational bounded_margin = 1;   // B_i extends i*margin beyond the unit cube

  void validate() const;
};

/// A_n = conv(S_{1/n} ∪ {t e1 : t >= n}) in R^(d+1), simplex in the e1 = 0 hyperplane.
ConvexSet member_a(Eigen::Index d, std::size_t n);
Family family_a(const CounterexampleSpec& spec);
/// Flat boxes {0} x [-m_i, 1+m_i]^d, m_i = i * margin.
Family family_b(const CounterexampleSpec& spec);
/// A members first, then B members.
Family counterexample_family(const CounterexampleSpec& spec);

/// copies of {0} followed by the rays [n, inf), n = 1..n_max.
Family gruenbaum_line(std::size_t n_max, std::size_t copies_of_f0);

/// `count` compact (k-1)-dimensional parallelotopes of generic rational flats
/// inside the box [-radius, radius]^d; offsets are re-drawn until the family
/// is verified k-free.
Family free_flats_family(Eigen::Index d, Eigen::Index k, std::size_t count, const Rational& radius,
                         std::uint64_t seed);

/// Smallest n in [2, n_cap] with A_n avoiding every candidate point, or
/// nullopt when the cap is reached first (the cap was too small).
std::optional<std::size_t> escape_witness(const CounterexampleSpec& spec,
                                          std::span<const Point> candidates, std::size_t n_cap);

}  // namespace helly

#endif  // HELLY_CONSTRUCTIONS_HPP
