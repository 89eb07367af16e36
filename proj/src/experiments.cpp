#include "shapemetrics/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

namespace shapemetrics {

std::string_view window_policy_name(WindowPolicy p) noexcept {
  return p == WindowPolicy::shared ? "shared" : "per_image";
}

ExperimentError::ExperimentError(std::string experiment, std::string stage, const std::string& what)
    : std::runtime_error("[" + experiment + "/" + stage + "] " + what),
      experiment_(std::move(experiment)),
      stage_(std::move(stage)) {}

void ExperimentSpec::validate() const {
  if (classes.size() < 2) throw std::invalid_argument("experiment needs at least 2 classes");
  if (images_per_class < 2) throw std::invalid_argument("images_per_class must be >= 2");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train_fraction must lie in (0, 1)");
  validate_grid(grid);
  cv.validate();
  for (const ClassSpec& c : classes) shapemetrics::validate(c.scenario);
}

std::uint64_t image_seed(const ExperimentSpec& spec, std::size_t class_index, std::size_t replicate) {
  return derive_seed(spec.master_seed, spec.name, class_index, replicate);
}

namespace {

// Static partition of [0, n) over worker threads. Each index writes only its
// own output slot, so results do not depend on scheduling. The exception
// of the lowest failing index is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::exception_ptr> errors(n);
  const auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t b = 0; b < n; b += chunk) pool.emplace_back(run, b, std::min(n, b + chunk));
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class F>
auto staged(const std::string& experiment, const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ExperimentError&) {
    throw;
  } catch (const std::exception& e) {
    throw ExperimentError(experiment, stage, e.what());
  }
}

}  // namespace

std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& data, double fraction,
                                                           Rng& rng) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("split fraction must lie in (0, 1)");
  std::vector<std::size_t> train_rows, validation_rows;
  for (int c = 0; c < data.class_count(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (data.labels[i] == c) members.push_back(i);
    if (members.size() < 2)
      throw std::invalid_argument("stratified split: class '" + data.class_names[static_cast<std::size_t>(c)] +
                                  "' has fewer than 2 rows");
    shuffle(std::span<std::size_t>(members), rng);
    // The epsilon absorbs representation error such as 0.7 * 10 = 6.999...
    const auto n_train =
        static_cast<std::size_t>(std::floor(fraction * static_cast<double>(members.size()) + 1e-9));
    train_rows.insert(train_rows.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
    validation_rows.insert(validation_rows.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train),
                           members.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(validation_rows.begin(), validation_rows.end());
  return {data.subset(train_rows), data.subset(validation_rows)};
}

LabeledDataset build_dataset(const ExperimentSpec& spec, std::vector<BinaryImage>* images) {
  staged(spec.name, "config", [&] {
    spec.validate();
    return 0;
  });
  const std::size_t per_class = spec.images_per_class;
  const std::size_t total = spec.classes.size() * per_class;

  const auto scenario_for = [&](std::size_t i) {
    ScenarioSpec s = spec.classes[i / per_class].scenario;
    s.seed = image_seed(spec, i / per_class, i % per_class);
    return s;
  };

  std::vector<BinaryImage> rendered(total);
  if (spec.window == WindowPolicy::shared) {
    std::vector<PointSet> points(total);
    staged(spec.name, "simulate", [&] {
      parallel_for(total, spec.threads, [&](std::size_t i) { points[i] = simulate(scenario_for(i)); });
      return 0;
    });
    const BinningWindow window = staged(spec.name, "rasterize", [&] { return union_window(points); });
    staged(spec.name, "rasterize", [&] {
      parallel_for(total, spec.threads, [&](std::size_t i) { rendered[i] = rasterize(points[i], spec.grid, window); });
      return 0;
    });
  } else {
    staged(spec.name, "simulate", [&] {
      parallel_for(total, spec.threads,
                   [&](std::size_t i) { rendered[i] = rasterize(simulate(scenario_for(i)), spec.grid); });
      return 0;
    });
  }

  std::vector<MetricVector> metrics(total);
  staged(spec.name, "metrics", [&] {
    parallel_for(total, spec.threads,
                 [&](std::size_t i) { metrics[i] = metric_vector(rendered[i], spec.metric_options); });
    return 0;
  });

  LabeledDataset data;
  for (const ClassSpec& c : spec.classes) data.class_names.push_back(c.name);
  for (std::size_t i = 0; i < total; ++i) data.add(metrics[i].to_array(), static_cast<int>(i / per_class));
  if (images) *images = std::move(rendered);
  return data;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  std::vector<BinaryImage> images;
  const LabeledDataset data = build_dataset(spec, spec.keep_images ? &images : nullptr);

  Rng split_rng(derive_seed(spec.master_seed, spec.name + "#split"));
  auto [train, validation] =
      staged(spec.name, "split", [&] { return stratified_split(data, spec.train_fraction, split_rng); });

  Rng cv_rng(derive_seed(spec.master_seed, spec.name + "#cv"));
  CvResult cv = staged(spec.name, "cross-validate", [&] { return cross_validate(train, spec.cv, cv_rng); });
  TreeModel tree = staged(spec.name, "fit", [&] { return prune(grow(train, spec.cv), cv.selected_cp); });

  const auto classes = static_cast<std::size_t>(data.class_count());
  std::vector<std::vector<int>> confusion(classes, std::vector<int>(classes, 0));
  int correct = 0;
  staged(spec.name, "evaluate", [&] {
    for (std::size_t i = 0; i < validation.size(); ++i) {
      const int predicted = tree.predict(validation.features[i]);
      ++confusion[static_cast<std::size_t>(validation.labels[i])][static_cast<std::size_t>(predicted)];
      if (predicted == validation.labels[i]) ++correct;
    }
    return 0;
  });
  const int n_val = static_cast<int>(validation.size());
  const Interval ci = staged(spec.name, "evaluate", [&] { return clopper_pearson(correct, n_val); });

  return ExperimentResult{spec.name,
                          data.class_names,
                          static_cast<double>(correct) / n_val,
                          ci.low,
                          ci.high,
                          std::move(confusion),
                          std::move(tree),
                          std::move(cv),
                          static_cast<int>(train.size()),
                          n_val,
                          std::move(images)};
}

namespace {

ExperimentSpec make_experiment(std::string name, std::string description, Family family,
                               std::vector<std::pair<std::string, std::string>> classes, WindowPolicy window,
                               std::uint64_t master_seed, const GridSpec& grid) {
  ExperimentSpec spec;
  spec.name = std::move(name);
  spec.description = std::move(description);
  spec.window = window;
  spec.master_seed = master_seed;
  spec.grid = grid;
  for (auto& [class_name, variant] : classes)
    spec.classes.push_back({class_name, ScenarioSpec{family, variant, 1000, 0}});
  return spec;
}

}  // namespace

std::vector<ExperimentSpec> default_suite(std::uint64_t master_seed, const GridSpec& grid) {
  std::vector<ExperimentSpec> suite;
  suite.push_back(make_experiment("normal_means", "N((0,0), I) vs N((10,10), I)", Family::normal_pair,
                                  {{"N(0,I)", "standard"}, {"N(10,I)", "shifted"}}, WindowPolicy::shared,
                                  master_seed, grid));
  suite.push_back(make_experiment("normal_correlation", "N(0, I) vs N(0, [[1,0.9],[0.9,1]])",
                                  Family::normal_pair, {{"N(0,I)", "standard"}, {"N(0,rho=0.9)", "correlated"}},
                                  WindowPolicy::shared, master_seed, grid));
  suite.push_back(make_experiment("normal_scale", "N(0, I) vs N(0, 0.001 I)", Family::normal_pair,
                                  {{"N(0,I)", "standard"}, {"N(0,0.001I)", "tight"}}, WindowPolicy::shared,
                                  master_seed, grid));
  suite.push_back(make_experiment("mixtures", "mixtures of 1 to 4 Gaussians", Family::mixture,
                                  {{"1 Gaussian", "1"}, {"2 Gaussians", "2"}, {"3 Gaussians", "3"},
                                   {"4 Gaussians", "4"}},
                                  WindowPolicy::per_image, master_seed, grid));
  suite.push_back(make_experiment("qq_outliers", "QQ plots with no, minor, medium and major outliers",
                                  Family::qq,
                                  {{"none", "none"}, {"minor", "minor"}, {"medium", "medium"}, {"major", "major"}},
                                  WindowPolicy::per_image, master_seed, grid));
  suite.push_back(make_experiment("functions", "linear, sine, parabola and quartic polynomial", Family::function,
                                  {{"linear", "linear"}, {"sine", "sine"}, {"parabola", "parabola"},
                                   {"poly", "poly"}},
                                  WindowPolicy::per_image, master_seed, grid));
  suite.push_back(make_experiment("residuals", "OLS residual patterns: random, cone, binomial, multiplicative",
                                  Family::residual,
                                  {{"random", "random"}, {"cone", "cone"}, {"binom", "binom"}, {"multi", "multi"}},
                                  WindowPolicy::per_image, master_seed, grid));
  return suite;
}

SuiteReport run_suite(const SuiteConfig& config) {
  std::vector<ExperimentSpec> specs = default_suite(config.master_seed, config.grid);
  if (!config.only.empty()) {
    std::vector<ExperimentSpec> chosen;
    for (const std::string& name : config.only) {
      auto it = std::find_if(specs.begin(), specs.end(), [&](const ExperimentSpec& s) { return s.name == name; });
      if (it == specs.end()) throw std::invalid_argument("unknown experiment '" + name + "'");
      chosen.push_back(*it);
    }
    specs = std::move(chosen);
  }

  SuiteReport report;
  report.config = config;
  std::vector<TreeModel> trees;
  for (ExperimentSpec& spec : specs) {
    spec.images_per_class = config.images_per_class;
    spec.train_fraction = config.train_fraction;
    spec.cv = config.cv;
    spec.metric_options = config.metric_options;
    spec.threads = config.threads;
    spec.keep_images = config.keep_images;
    SuiteEntry entry{spec.name, spec.description, std::nullopt, {}};
    try {
      entry.result = run_experiment(spec);
      trees.push_back(entry.result->tree);
      report.internal_nodes += static_cast<int>(entry.result->tree.internal_count());
    } catch (const std::exception& e) {
      entry.error = e.what();
      report.complete = false;
    }
    report.entries.push_back(std::move(entry));
  }
  report.usage = feature_usage(trees);
  return report;
}

}  // namespace shapemetrics
