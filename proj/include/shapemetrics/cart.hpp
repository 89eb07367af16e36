#pragma once

// Binary classification tree: greedy Gini growth, weakest-link
// cost-complexity pruning, and stratified k-fold selection of the
// complexity parameter.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shapemetrics/metrics.hpp"
#include "shapemetrics/random.hpp"

namespace shapemetrics {

struct LabeledDataset {
  std::vector<FeatureRow> features;
  std::vector<int> labels;
  std::vector<std::string> class_names;

  std::size_t size() const noexcept { return labels.size(); }
  int class_count() const noexcept { return static_cast<int>(class_names.size()); }
  void add(const FeatureRow& row, int label) {
    features.push_back(row);
    labels.push_back(label);
  }
  /// Rows per class, indexed by label.
  std::vector<std::size_t> class_sizes() const;
  /// Subset with the same class names.
  LabeledDataset subset(std::span<const std::size_t> rows) const;
  /// Throws unless C >= 2, labels < C, features finite and sizes agree.
  void validate() const;
};

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;
  std::vector<int> class_counts;
  double improvement = 0.0;  // Gini decrease of this node's split

  bool is_leaf() const noexcept { return feature < 0; }
  int count() const noexcept;
  int errors() const noexcept;
};

/// Immutable fitted tree; node 0 is the root. Routes left when
/// feature < threshold.
class TreeModel {
 public:
  TreeModel(std::vector<TreeNode> nodes, std::vector<std::string> class_names, double cp);

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& root() const noexcept { return nodes_.front(); }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  double cp() const noexcept { return cp_; }

  std::size_t leaf_count() const noexcept;
  std::size_t internal_count() const noexcept { return nodes_.size() - leaf_count(); }

  /// Throws std::invalid_argument on a non-finite feature.
  int predict(const FeatureRow& features) const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<std::string> class_names_;
  double cp_ = 0.0;
};

struct CvParams {
  int folds = 5;
  std::vector<double> cp_grid{0.3, 0.1, 0.03, 0.01, 0.003, 0.001, 0.0};
  int min_node = 20;  // smallest node that may be split
  int min_leaf = 7;   // smallest allowed child
  int max_depth = 30;

  void validate() const;
};

struct Split {
  int feature = -1;
  double threshold = 0.0;
  std::size_t left_count = 0;
  double improvement = 0.0;
};

/// Best Gini split of `rows` over every feature and every midpoint between
/// consecutive distinct values, with both children >= min_leaf. Split
/// quality is compared exactly in integer arithmetic; ties go to the lowest
/// feature, then the lowest threshold. Empty if no split has positive gain.
std::optional<Split> best_split(const LabeledDataset& data, std::span<const std::size_t> rows,
                                int min_leaf);

/// Fully grown tree (cp = 0, limited only by min_node, min_leaf, max_depth
/// and purity).
TreeModel grow(const LabeledDataset& data, const CvParams& params);

/// Smallest subtree minimizing errors(T) + cp * leaves(T) * errors(root).
TreeModel prune(const TreeModel& tree, double cp);

struct CvResult {
  std::vector<double> cp_grid;        // descending
  std::vector<double> mean_accuracy;  // per grid entry
  double selected_cp = 0.0;
};

/// Stratified k-fold estimate of held-out accuracy for every cp in the grid.
/// Picks the best mean accuracy, ties toward the largest cp.
CvResult cross_validate(const LabeledDataset& data, const CvParams& params, Rng& rng);

double cross_validate_cp(const LabeledDataset& data, const CvParams& params, Rng& rng);

/// grow + prune at the cross-validated cp. Data with a single class yields a
/// single leaf without cross-validation.
TreeModel fit(const LabeledDataset& data, const CvParams& params, Rng& rng);

int predict(const TreeModel& model, const FeatureRow& features);

double accuracy(const TreeModel& model, const LabeledDataset& data);

/// Internal nodes splitting on each feature, summed over models.
std::array<int, kMetricCount> feature_usage(std::span<const TreeModel> models);

}  // namespace shapemetrics
