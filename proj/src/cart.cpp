#include "shapemetrics/cart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace shapemetrics {

std::vector<std::size_t> LabeledDataset::class_sizes() const {
  std::vector<std::size_t> sizes(class_names.size(), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> rows) const {
  LabeledDataset out;
  out.class_names = class_names;
  out.features.reserve(rows.size());
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) out.add(features[r], labels[r]);
  return out;
}

void LabeledDataset::validate() const {
  if (class_names.size() < 2) throw std::invalid_argument("dataset needs at least 2 classes");
  if (features.size() != labels.size()) throw std::invalid_argument("dataset feature/label size mismatch");
  for (int l : labels)
    if (l < 0 || l >= class_count()) throw std::invalid_argument("dataset label out of range");
  for (const FeatureRow& row : features)
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("dataset has a non-finite feature");
}

int TreeNode::count() const noexcept { return std::accumulate(class_counts.begin(), class_counts.end(), 0); }

int TreeNode::errors() const noexcept {
  return count() - (class_counts.empty() ? 0 : *std::max_element(class_counts.begin(), class_counts.end()));
}

TreeModel::TreeModel(std::vector<TreeNode> nodes, std::vector<std::string> class_names, double cp)
    : nodes_(std::move(nodes)), class_names_(std::move(class_names)), cp_(cp) {
  if (nodes_.empty()) throw std::invalid_argument("tree has no nodes");
  const int n = static_cast<int>(nodes_.size());
  for (const TreeNode& node : nodes_)
    if (!node.is_leaf() && (node.left <= 0 || node.right <= 0 || node.left >= n || node.right >= n))
      throw std::invalid_argument("internal tree node with missing child");
}

std::size_t TreeModel::leaf_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int TreeModel::predict(const FeatureRow& features) const {
  for (double v : features)
    if (!std::isfinite(v)) throw std::invalid_argument("predict: non-finite feature");
  const TreeNode* node = &nodes_.front();
  while (!node->is_leaf()) {
    const double v = features[static_cast<std::size_t>(node->feature)];
    node = &nodes_[static_cast<std::size_t>(v < node->threshold ? node->left : node->right)];
  }
  return node->label;
}

void CvParams::validate() const {
  if (folds < 2) throw std::invalid_argument("cv folds must be >= 2");
  if (cp_grid.empty()) throw std::invalid_argument("cp grid must be nonempty");
  for (double cp : cp_grid)
    if (!(cp >= 0.0 && cp <= 1.0)) throw std::invalid_argument("cp grid values must lie in [0, 1]");
  if (min_node < 1 || min_leaf < 1) throw std::invalid_argument("min_node and min_leaf must be >= 1");
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
}

namespace {

using Wide = __int128;

// Gini split quality sum_k cL_k^2 / nL + sum_k cR_k^2 / nR as an exact
// fraction. Larger is purer.
struct Quality {
  Wide num = 0;
  Wide den = 1;

  bool better_than(const Quality& o) const noexcept { return num * o.den > o.num * den; }
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

std::int64_t sum_squares(std::span<const int> counts) {
  std::int64_t s = 0;
  for (int c : counts) s += static_cast<std::int64_t>(c) * c;
  return s;
}

std::vector<int> count_classes(const LabeledDataset& data, std::span<const std::size_t> rows) {
  std::vector<int> counts(static_cast<std::size_t>(data.class_count()), 0);
  for (std::size_t r : rows) ++counts[static_cast<std::size_t>(data.labels[r])];
  return counts;
}

int majority(std::span<const int> counts) {
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

struct Grower {
  const LabeledDataset& data;
  const CvParams& params;
  std::vector<TreeNode> nodes;

  int build(std::vector<std::size_t> rows, int depth) {
    TreeNode node;
    node.class_counts = count_classes(data, rows);
    node.label = majority(node.class_counts);
    const int index = static_cast<int>(nodes.size());
    nodes.push_back(node);

    const bool pure = node.errors() == 0;
    if (pure || static_cast<int>(rows.size()) < params.min_node || depth >= params.max_depth) return index;
    const auto split = best_split(data, rows, params.min_leaf);
    if (!split) return index;

    std::vector<std::size_t> left, right;
    const auto f = static_cast<std::size_t>(split->feature);
    for (std::size_t r : rows) (data.features[r][f] < split->threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    const int l = build(std::move(left), depth + 1);
    const int r = build(std::move(right), depth + 1);
    TreeNode& self = nodes[static_cast<std::size_t>(index)];
    self.feature = split->feature;
    self.threshold = split->threshold;
    self.improvement = split->improvement;
    self.left = l;
    self.right = r;
    return index;
  }
};

struct Pruner {
  const std::vector<TreeNode>& in;
  double penalty;  // cp * errors(root)
  std::vector<TreeNode> out;

  // Returns the minimal cost of the subtree at `i`; marks collapses.
  double cost(int i, std::vector<char>& collapse) const {
    const TreeNode& n = in[static_cast<std::size_t>(i)];
    const double as_leaf = n.errors() + penalty;
    if (n.is_leaf()) return as_leaf;
    const double below = cost(n.left, collapse) + cost(n.right, collapse);
    if (as_leaf <= below + 1e-9) {
      collapse[static_cast<std::size_t>(i)] = 1;
      return as_leaf;
    }
    return below;
  }

  int copy(int i, const std::vector<char>& collapse) {
    TreeNode n = in[static_cast<std::size_t>(i)];
    const int index = static_cast<int>(out.size());
    if (collapse[static_cast<std::size_t>(i)] || n.is_leaf()) {
      n.feature = -1;
      n.left = n.right = -1;
      n.threshold = 0.0;
      n.improvement = 0.0;
      out.push_back(std::move(n));
      return index;
    }
    out.push_back(n);
    const int l = copy(n.left, collapse);
    const int r = copy(n.right, collapse);
    out[static_cast<std::size_t>(index)].left = l;
    out[static_cast<std::size_t>(index)].right = r;
    return index;
  }
};

std::vector<double> descending(std::vector<double> grid) {
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

std::optional<Split> best_split(const LabeledDataset& data, std::span<const std::size_t> rows,
                                int min_leaf) {
  const std::size_t n = rows.size();
  const auto classes = static_cast<std::size_t>(data.class_count());
  const std::vector<int> total = count_classes(data, rows);
  const Quality parent{sum_squares(total), static_cast<Wide>(n)};
  const auto leaf_min = static_cast<std::size_t>(std::max(1, min_leaf));

  std::optional<Split> best;
  Quality best_q = parent;
  std::vector<std::size_t> order(rows.begin(), rows.end());
  std::vector<int> left(classes), right(classes);

  for (std::size_t f = 0; f < kMetricCount; ++f) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = data.features[a][f], vb = data.features[b][f];
      return va < vb || (va == vb && a < b);
    });
    std::fill(left.begin(), left.end(), 0);
    right = total;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto label = static_cast<std::size_t>(data.labels[order[i]]);
      ++left[label];
      --right[label];
      const double v = data.features[order[i]][f];
      const double next = data.features[order[i + 1]][f];
      const std::size_t nl = i + 1, nr = n - nl;
      if (!(v < next) || nl < leaf_min || nr < leaf_min) continue;
      const Wide a = sum_squares(left), b = sum_squares(right);
      const Quality q{a * static_cast<Wide>(nr) + b * static_cast<Wide>(nl),
                      static_cast<Wide>(nl) * static_cast<Wide>(nr)};
      if (!q.better_than(best_q)) continue;
      double threshold = std::midpoint(v, next);
      if (!(threshold > v)) threshold = next;
      best_q = q;
      best = Split{static_cast<int>(f), threshold, nl,
                   (q.value() - parent.value()) / static_cast<double>(n)};
    }
  }
  return best;
}

TreeModel grow(const LabeledDataset& data, const CvParams& params) {
  data.validate();
  params.validate();
  if (data.size() == 0) throw std::invalid_argument("cannot grow a tree on empty data");
  Grower g{data, params, {}};
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  g.build(std::move(rows), 0);
  return TreeModel(std::move(g.nodes), data.class_names, 0.0);
}

TreeModel prune(const TreeModel& tree, double cp) {
  if (!(cp >= 0.0)) throw std::invalid_argument("prune: cp must be >= 0");
  const auto& nodes = tree.nodes();
  Pruner p{nodes, cp * nodes.front().errors(), {}};
  std::vector<char> collapse(nodes.size(), 0);
  p.cost(0, collapse);
  p.copy(0, collapse);
  return TreeModel(std::move(p.out), tree.class_names(), cp);
}

CvResult cross_validate(const LabeledDataset& data, const CvParams& params, Rng& rng) {
  data.validate();
  params.validate();
  const auto folds = static_cast<std::size_t>(params.folds);
  if (data.size() < folds) throw std::invalid_argument("cross-validation: fewer rows than folds");
  for (std::size_t s : data.class_sizes())
    if (s < folds) throw std::invalid_argument("cross-validation: too few rows per class for stratified folds");

  // Stratified assignment: shuffle each class, deal rows round-robin with
  // the dealer position carried across classes.
  std::vector<std::size_t> fold_of(data.size());
  std::size_t dealer = 0;
  for (int c = 0; c < data.class_count(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (data.labels[i] == c) members.push_back(i);
    shuffle(std::span<std::size_t>(members), rng);
    for (std::size_t m : members) fold_of[m] = dealer++ % folds;
  }

  CvResult result;
  result.cp_grid = descending(params.cp_grid);
  result.mean_accuracy.assign(result.cp_grid.size(), 0.0);
  for (std::size_t k = 0; k < folds; ++k) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < data.size(); ++i) (fold_of[i] == k ? test : train).push_back(i);
    const TreeModel full = grow(data.subset(train), params);
    const LabeledDataset held_out = data.subset(test);
    for (std::size_t g = 0; g < result.cp_grid.size(); ++g)
      result.mean_accuracy[g] += accuracy(prune(full, result.cp_grid[g]), held_out);
  }
  for (double& a : result.mean_accuracy) a /= static_cast<double>(folds);

  std::size_t best = 0;
  for (std::size_t g = 1; g < result.cp_grid.size(); ++g)
    if (result.mean_accuracy[g] > result.mean_accuracy[best] + 1e-12) best = g;
  result.selected_cp = result.cp_grid[best];
  return result;
}

double cross_validate_cp(const LabeledDataset& data, const CvParams& params, Rng& rng) {
  return cross_validate(data, params, rng).selected_cp;
}

TreeModel fit(const LabeledDataset& data, const CvParams& params, Rng& rng) {
  if (data.size() == 0) throw std::invalid_argument("cannot fit a tree on empty data");
  const auto sizes = data.class_sizes();
  if (std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; }) < 2)
    return grow(data, params);  // pure root: a single leaf
  const double cp = cross_validate_cp(data, params, rng);
  return prune(grow(data, params), cp);
}

int predict(const TreeModel& model, const FeatureRow& features) { return model.predict(features); }

double accuracy(const TreeModel& model, const LabeledDataset& data) {
  if (data.size() == 0) throw std::invalid_argument("accuracy of an empty dataset");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (model.predict(data.features[i]) == data.labels[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::array<int, kMetricCount> feature_usage(std::span<const TreeModel> models) {
  std::array<int, kMetricCount> counts{};
  for (const TreeModel& m : models)
    for (const TreeNode& n : m.nodes())
      if (!n.is_leaf()) ++counts[static_cast<std::size_t>(n.feature)];
  return counts;
}

}  // namespace shapemetrics
