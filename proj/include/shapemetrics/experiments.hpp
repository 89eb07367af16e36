#pragma once

// End-to-end classification experiments: simulate images per class,
// extract metrics, stratified split, cross-validated tree, validation
// accuracy with an exact binomial interval.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shapemetrics/cart.hpp"
#include "shapemetrics/clopper_pearson.hpp"
#include "shapemetrics/metrics.hpp"
#include "shapemetrics/rasterizer.hpp"
#include "shapemetrics/simulators.hpp"

namespace shapemetrics {

/// How the binning window is chosen for an experiment's images.
enum class WindowPolicy {
  per_image,  // each image spans its own data range
  shared,     // one window covering every image of the experiment
};

std::string_view window_policy_name(WindowPolicy p) noexcept;

struct ClassSpec {
  std::string name;
  ScenarioSpec scenario;  // scenario.seed is replaced per image
};

struct ExperimentSpec {
  std::string name;
  std::string description;
  std::vector<ClassSpec> classes;
  std::size_t images_per_class = 100;
  double train_fraction = 0.8;
  GridSpec grid;
  WindowPolicy window = WindowPolicy::per_image;
  std::uint64_t master_seed = 0;
  CvParams cv;
  MetricOptions metric_options;
  unsigned threads = 0;      // 0 = hardware concurrency
  bool keep_images = false;  // retain rasterized images in the result

  void validate() const;
};

/// Failure inside run_experiment, tagged with the pipeline stage.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(std::string experiment, std::string stage, const std::string& what);
  const std::string& experiment() const noexcept { return experiment_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string experiment_;
  std::string stage_;
};

struct ExperimentResult {
  std::string name;
  std::vector<std::string> class_names;
  double accuracy = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::vector<std::vector<int>> confusion;  // [true][predicted]
  TreeModel tree;
  CvResult cv;
  int n_train = 0;
  int n_validation = 0;
  std::vector<BinaryImage> images;  // class-major, only with keep_images
};

/// Seed of replicate `replicate` of class `class_index`.
std::uint64_t image_seed(const ExperimentSpec& spec, std::size_t class_index, std::size_t replicate);

/// Per class: floor(fraction * n_c) rows drawn without replacement go to
/// train, the rest to validation. Rows keep their original order.
std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& data, double fraction,
                                                           Rng& rng);

/// Simulate, rasterize and measure every image. Images are returned when
/// `images` is non-null.
LabeledDataset build_dataset(const ExperimentSpec& spec, std::vector<BinaryImage>* images = nullptr);

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// The seven standard experiments, in report order:
/// normal_means, normal_correlation, normal_scale, mixtures, qq_outliers,
/// functions, residuals.
std::vector<ExperimentSpec> default_suite(std::uint64_t master_seed, const GridSpec& grid = {});

struct SuiteConfig {
  std::uint64_t master_seed = 42;
  GridSpec grid;
  std::vector<std::string> only;  // empty = all seven
  std::size_t images_per_class = 100;
  double train_fraction = 0.8;
  CvParams cv;
  MetricOptions metric_options;
  unsigned threads = 0;
  bool keep_images = false;
};

struct SuiteEntry {
  std::string name;
  std::string description;
  std::optional<ExperimentResult> result;
  std::string error;  // set when result is empty
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<SuiteEntry> entries;
  std::array<int, kMetricCount> usage{};
  int internal_nodes = 0;
  bool complete = true;
};

/// Runs the selected experiments. A failing experiment is recorded in its
/// entry and marks the report incomplete; the others still run.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace shapemetrics
