#pragma once

// Seedable generators for the synthetic scenarios: Gaussian pairs and
// mixtures, QQ plots with outliers, noisy functions, and OLS residual
// variance patterns.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shapemetrics/random.hpp"
#include "shapemetrics/types.hpp"

namespace shapemetrics {

/// Symmetric 2x2 matrix.
struct SymMat2 {
  double xx = 1.0;
  double xy = 0.0;
  double yy = 1.0;
};

struct GaussianSpec {
  Point mean;
  SymMat2 cov;
};

/// n draws from N(mean, cov) via the Cholesky factor of cov. Throws
/// std::invalid_argument unless cov is positive definite.
PointSet gen_gaussian(std::size_t n, const GaussianSpec& spec, Rng& rng);

/// n points split as evenly as possible (earlier components take the
/// remainder) over k unit-covariance components centered on the first k of
/// (0,0), (10,10), (10,0), (0,10). Points are ordered by component.
PointSet gen_mixture(int k, std::size_t n, Rng& rng);

enum class OutlierLevel { none, minor, medium, major };

struct QqParams {
  std::size_t sample_size = 1000;
  std::size_t outlier_count = 10;  // replaced draws for every level but none
  double minor_shift = 3.0;
  double medium_shift = 5.0;
  double major_shift = 10.0;
};

/// QQ plot points (Phi^-1((i - 0.5) / n), x_(i)) of a standard normal
/// sample in which `outlier_count` draws come from N(shift, 1).
PointSet gen_qq(OutlierLevel level, Rng& rng, const QqParams& params = {});

enum class FunctionKind { linear, sine, parabola, poly };

struct FunctionParams {
  double x_sd = 10.0;        // X ~ N(0, x_sd^2)
  double noise_scale = 1.0;  // multiplies every noise sd; 0 gives exact curves
};

/// linear: 3x; sine: 4 sin x (noise sd 0.5); parabola: x^2;
/// poly: x^4 + 10x^3 - 7x^2. Unit noise sd unless noted.
PointSet gen_function(FunctionKind kind, std::size_t n, Rng& rng, const FunctionParams& params = {});

enum class ResidualKind { random, cone, binom, multi };

struct ResidualParams {
  double random_sd = 1.0;
  double cone_slope = 0.3;  // residual sd = slope * |fitted| for cone and multi
  double fitted_max = 10.0;
  double binom_lo = 0.02;
  double binom_hi = 0.98;
};

/// (fitted, residual) pairs.
///   random: f ~ U(0, max),   r ~ N(0, random_sd^2)
///   cone:   f ~ U(0, max),   r ~ N(0, (slope f)^2)
///   binom:  f ~ U(lo, hi),   r ~ N(0, f (1 - f))
///   multi:  f ~ U(-max, max), r ~ N(0, (slope f)^2)
PointSet gen_residual(ResidualKind kind, std::size_t n, Rng& rng, const ResidualParams& params = {});

enum class Family { normal_pair, mixture, qq, function, residual };

/// One simulated image. Variants per family:
///   normal_pair: standard | shifted | correlated | tight
///   mixture:     1 | 2 | 3 | 4
///   qq:          none | minor | medium | major
///   function:    linear | sine | parabola | poly
///   residual:    random | cone | binom | multi
struct ScenarioSpec {
  Family family = Family::normal_pair;
  std::string variant = "standard";
  std::size_t n_points = 1000;
  std::uint64_t seed = 0;
};

std::string_view family_name(Family f) noexcept;
Family parse_family(std::string_view name);
std::vector<std::string_view> family_variants(Family f);

/// Throws std::invalid_argument for an unknown variant or n_points == 0.
void validate(const ScenarioSpec& spec);

/// Gaussian for a normal_pair variant.
GaussianSpec normal_pair_spec(std::string_view variant);

/// Deterministic: equal specs give bitwise-equal point sets.
PointSet simulate(const ScenarioSpec& spec);

}  // namespace shapemetrics
