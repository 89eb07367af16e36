#include "shapemetrics/simulators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace shapemetrics {

PointSet gen_gaussian(std::size_t n, const GaussianSpec& spec, Rng& rng) {
  const SymMat2& s = spec.cov;
  if (!(s.xx > 0.0) || !(s.xx * s.yy - s.xy * s.xy > 0.0))
    throw std::invalid_argument("gen_gaussian: covariance is not positive definite");
  const double l11 = std::sqrt(s.xx);
  const double l21 = s.xy / l11;
  const double l22 = std::sqrt(s.yy - l21 * l21);

  PointSet out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    out.push_back({spec.mean.x + l11 * z1, spec.mean.y + l21 * z1 + l22 * z2});
  }
  return out;
}

PointSet gen_mixture(int k, std::size_t n, Rng& rng) {
  static constexpr std::array<Point, 4> kMeans{{{0, 0}, {10, 10}, {10, 0}, {0, 10}}};
  if (k < 1 || k > 4) throw std::invalid_argument("gen_mixture: k must be in 1..4");
  const auto components = static_cast<std::size_t>(k);
  PointSet out;
  out.reserve(n);
  for (std::size_t c = 0; c < components; ++c) {
    const std::size_t count = n / components + (c < n % components ? 1 : 0);
    const PointSet part = gen_gaussian(count, {kMeans[c], {}}, rng);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

PointSet gen_qq(OutlierLevel level, Rng& rng, const QqParams& params) {
  const std::size_t n = params.sample_size;
  if (n == 0) throw std::invalid_argument("gen_qq: sample_size must be >= 1");
  double shift = 0.0;
  std::size_t outliers = 0;
  switch (level) {
    case OutlierLevel::none:
      break;
    case OutlierLevel::minor:
      shift = params.minor_shift;
      outliers = params.outlier_count;
      break;
    case OutlierLevel::medium:
      shift = params.medium_shift;
      outliers = params.outlier_count;
      break;
    case OutlierLevel::major:
      shift = params.major_shift;
      outliers = params.outlier_count;
      break;
  }
  outliers = std::min(outliers, n);

  std::vector<double> sample;
  sample.reserve(n);
  for (std::size_t i = 0; i < n - outliers; ++i) sample.push_back(rng.normal());
  for (std::size_t i = 0; i < outliers; ++i) sample.push_back(rng.normal(shift, 1.0));
  std::sort(sample.begin(), sample.end());

  PointSet out;
  out.reserve(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({normal_quantile((static_cast<double>(i) + 0.5) / dn), sample[i]});
  return out;
}

PointSet gen_function(FunctionKind kind, std::size_t n, Rng& rng, const FunctionParams& params) {
  PointSet out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.normal(0.0, params.x_sd);
    double y = 0.0;
    double noise_sd = 1.0;
    switch (kind) {
      case FunctionKind::linear:
        y = 3.0 * x;
        break;
      case FunctionKind::sine:
        y = 4.0 * std::sin(x);
        noise_sd = 0.5;
        break;
      case FunctionKind::parabola:
        y = x * x;
        break;
      case FunctionKind::poly: {
        const double x2 = x * x;
        y = x2 * x2 + 10.0 * x2 * x - 7.0 * x2;
        break;
      }
    }
    // The noise draw is always consumed so noise_scale does not shift the stream.
    const double eps = rng.normal();
    out.push_back({x, y + params.noise_scale * noise_sd * eps});
  }
  return out;
}

PointSet gen_residual(ResidualKind kind, std::size_t n, Rng& rng, const ResidualParams& params) {
  PointSet out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double f = 0.0;
    double sd = 0.0;
    switch (kind) {
      case ResidualKind::random:
        f = rng.uniform(0.0, params.fitted_max);
        sd = params.random_sd;
        break;
      case ResidualKind::cone:
        f = rng.uniform(0.0, params.fitted_max);
        sd = params.cone_slope * f;
        break;
      case ResidualKind::binom:
        f = rng.uniform(params.binom_lo, params.binom_hi);
        sd = std::sqrt(f * (1.0 - f));
        break;
      case ResidualKind::multi:
        f = rng.uniform(-params.fitted_max, params.fitted_max);
        sd = params.cone_slope * std::abs(f);
        break;
    }
    out.push_back({f, sd * rng.normal()});
  }
  return out;
}

namespace {

template <class Enum, std::size_t N>
Enum lookup(std::string_view name, const std::array<std::string_view, N>& names, std::string_view what) {
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] == name) return static_cast<Enum>(i);
  throw std::invalid_argument("unknown " + std::string(what) + " variant '" + std::string(name) + "'");
}

constexpr std::array<std::string_view, 5> kFamilies{"normal_pair", "mixture", "qq", "function",
                                                    "residual"};
constexpr std::array<std::string_view, 4> kNormalVariants{"standard", "shifted", "correlated", "tight"};
constexpr std::array<std::string_view, 4> kMixtureVariants{"1", "2", "3", "4"};
constexpr std::array<std::string_view, 4> kQqVariants{"none", "minor", "medium", "major"};
constexpr std::array<std::string_view, 4> kFunctionVariants{"linear", "sine", "parabola", "poly"};
constexpr std::array<std::string_view, 4> kResidualVariants{"random", "cone", "binom", "multi"};

}  // namespace

std::string_view family_name(Family f) noexcept { return kFamilies[static_cast<std::size_t>(f)]; }

Family parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kFamilies.size(); ++i)
    if (kFamilies[i] == name) return static_cast<Family>(i);
  throw std::invalid_argument("unknown scenario family '" + std::string(name) + "'");
}

std::vector<std::string_view> family_variants(Family f) {
  const auto to_vec = [](const auto& a) { return std::vector<std::string_view>(a.begin(), a.end()); };
  switch (f) {
    case Family::normal_pair:
      return to_vec(kNormalVariants);
    case Family::mixture:
      return to_vec(kMixtureVariants);
    case Family::qq:
      return to_vec(kQqVariants);
    case Family::function:
      return to_vec(kFunctionVariants);
    case Family::residual:
      return to_vec(kResidualVariants);
  }
  return {};
}

GaussianSpec normal_pair_spec(std::string_view variant) {
  switch (lookup<int>(variant, kNormalVariants, "normal_pair")) {
    case 0:
      return {{0, 0}, {1, 0, 1}};
    case 1:
      return {{10, 10}, {1, 0, 1}};
    case 2:
      return {{0, 0}, {1, 0.9, 1}};
    default:
      return {{0, 0}, {0.001, 0, 0.001}};
  }
}

void validate(const ScenarioSpec& spec) {
  if (spec.n_points == 0) throw std::invalid_argument("scenario n_points must be >= 1");
  const auto variants = family_variants(spec.family);
  if (std::find(variants.begin(), variants.end(), spec.variant) == variants.end())
    throw std::invalid_argument("unknown " + std::string(family_name(spec.family)) + " variant '" +
                                spec.variant + "'");
}

PointSet simulate(const ScenarioSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const std::size_t n = spec.n_points;
  switch (spec.family) {
    case Family::normal_pair:
      return gen_gaussian(n, normal_pair_spec(spec.variant), rng);
    case Family::mixture:
      return gen_mixture(spec.variant[0] - '0', n, rng);
    case Family::qq: {
      QqParams p;
      p.sample_size = n;
      p.outlier_count = n / 100;
      return gen_qq(lookup<OutlierLevel>(spec.variant, kQqVariants, "qq"), rng, p);
    }
    case Family::function:
      return gen_function(lookup<FunctionKind>(spec.variant, kFunctionVariants, "function"), n, rng);
    case Family::residual:
      return gen_residual(lookup<ResidualKind>(spec.variant, kResidualVariants, "residual"), n, rng);
  }
  throw std::invalid_argument("unknown scenario family");
}

}  // namespace shapemetrics
