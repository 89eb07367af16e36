#include "shapemetrics/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace shapemetrics::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::size_t line) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("points csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

PointSet read_points_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  PointSet points;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!header) {
      if (row != "x,y") throw std::runtime_error("points csv: expected header 'x,y'");
      header = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw std::runtime_error("points csv line " + std::to_string(line_no) + ": expected two columns");
    points.push_back({parse_double(row.substr(0, comma), line_no), parse_double(row.substr(comma + 1), line_no)});
  }
  if (!header) throw std::runtime_error("points csv: expected header 'x,y'");
  return points;
}

PointSet read_points_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  out << "x,y\n";
  for (const Point& p : points) out << format_double(p.x, 17) << ',' << format_double(p.y, 17) << '\n';
}

void write_pgm(std::ostream& out, const BinaryImage& image) {
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::string row(image.width(), '\0');
  for (std::size_t r = image.height(); r-- > 0;) {
    for (std::size_t c = 0; c < image.width(); ++c) row[c] = image.at(c, r) ? static_cast<char>(255) : '\0';
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

void write_pgm(const std::filesystem::path& path, const BinaryImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_pgm(out, image);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

BinaryImage read_pgm(std::istream& in) {
  const auto token = [&]() {
    std::string t;
    char ch;
    while (in.get(ch)) {
      if (ch == '#') {
        std::string skip;
        std::getline(in, skip);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        if (!t.empty()) break;
        continue;
      }
      t.push_back(ch);
    }
    if (t.empty()) throw std::runtime_error("pgm: truncated header");
    return t;
  };
  const std::string magic = token();
  if (magic != "P5" && magic != "P2") throw std::runtime_error("pgm: unsupported format " + magic);
  const std::size_t w = std::stoul(token());
  const std::size_t h = std::stoul(token());
  const unsigned long maxval = std::stoul(token());
  if (w == 0 || h == 0 || maxval == 0 || maxval > 255) throw std::runtime_error("pgm: unsupported dimensions/maxval");

  BinaryImage img(w, h, {0.0, static_cast<double>(w)}, {0.0, static_cast<double>(h)});
  for (std::size_t r = h; r-- > 0;) {
    for (std::size_t c = 0; c < w; ++c) {
      unsigned long v = 0;
      if (magic == "P5") {
        char ch;
        if (!in.get(ch)) throw std::runtime_error("pgm: truncated pixel data");
        v = static_cast<unsigned char>(ch);
      } else {
        v = std::stoul(token());
      }
      img.set(c, r, v != 0);
    }
  }
  return img;
}

BinaryImage read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  return read_pgm(in);
}

std::string metrics_csv_header() {
  std::string h;
  for (std::string_view name : kMetricNames) {
    h += name;
    h += ',';
  }
  return h + "label";
}

std::string metrics_csv_row(const MetricVector& m, std::string_view label) {
  std::string row;
  for (double v : m.to_array()) row += format_double(v) + ",";
  return row + std::string(label);
}

nlohmann::ordered_json metrics_json(const MetricVector& m, std::string_view label) {
  nlohmann::ordered_json j;
  const FeatureRow values = m.to_array();
  for (std::size_t i = 0; i < kMetricCount; ++i) j[std::string(kMetricNames[i])] = values[i];
  j["label"] = label;
  return j;
}

nlohmann::ordered_json tree_json(const TreeModel& tree) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const TreeNode& n = tree.nodes()[i];
    nlohmann::ordered_json node;
    node["id"] = i;
    if (n.is_leaf()) {
      node["leaf"] = true;
    } else {
      node["leaf"] = false;
      node["feature"] = kMetricNames[static_cast<std::size_t>(n.feature)];
      node["feature_index"] = n.feature;
      node["threshold"] = n.threshold;
      node["improvement"] = n.improvement;
      node["left"] = n.left;
      node["right"] = n.right;
    }
    node["label"] = tree.class_names()[static_cast<std::size_t>(n.label)];
    node["class_counts"] = n.class_counts;
    nodes.push_back(std::move(node));
  }
  nlohmann::ordered_json j;
  j["cp"] = tree.cp();
  j["class_names"] = tree.class_names();
  j["leaves"] = tree.leaf_count();
  j["internal_nodes"] = tree.internal_count();
  j["nodes"] = std::move(nodes);
  return j;
}

nlohmann::ordered_json result_json(const ExperimentResult& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["classes"] = r.class_names;
  j["accuracy"] = r.accuracy;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["n_train"] = r.n_train;
  j["n_validation"] = r.n_validation;
  j["confusion"] = r.confusion;
  j["selected_cp"] = r.cv.selected_cp;
  nlohmann::ordered_json cv = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.cv.cp_grid.size(); ++i)
    cv.push_back({{"cp", r.cv.cp_grid[i]}, {"mean_accuracy", r.cv.mean_accuracy[i]}});
  j["cross_validation"] = std::move(cv);
  j["tree"] = tree_json(r.tree);
  return j;
}

nlohmann::ordered_json report_json(const SuiteReport& report) {
  const SuiteConfig& c = report.config;
  nlohmann::ordered_json j;
  nlohmann::ordered_json config;
  config["master_seed"] = c.master_seed;
  config["bins_x"] = c.grid.bins_x;
  config["bins_y"] = c.grid.bins_y;
  config["images_per_class"] = c.images_per_class;
  config["train_fraction"] = c.train_fraction;
  config["tree_params"] = {{"folds", c.cv.folds},       {"cp_grid", c.cv.cp_grid},
                           {"min_node", c.cv.min_node}, {"min_leaf", c.cv.min_leaf},
                           {"max_depth", c.cv.max_depth}};
  config["eccentricity"] =
      c.metric_options.eccentricity == EccentricityForm::eigen_ratio ? "eigen_ratio" : "axis_ratio";
  config["circularity"] = c.metric_options.circularity == CircularityForm::perimeter_squared_over_area
                              ? "perimeter_squared_over_area"
                              : "area_over_perimeter_squared";
  j["config"] = std::move(config);
  j["complete"] = report.complete;

  nlohmann::ordered_json experiments = nlohmann::ordered_json::array();
  for (const SuiteEntry& e : report.entries) {
    nlohmann::ordered_json x;
    if (e.result) {
      x = result_json(*e.result);
      x["status"] = "ok";
    } else {
      x["name"] = e.name;
      x["status"] = "failed";
      x["error"] = e.error;
    }
    x["description"] = e.description;
    experiments.push_back(std::move(x));
  }
  j["experiments"] = std::move(experiments);

  nlohmann::ordered_json usage = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < kMetricCount; ++i)
    usage.push_back({{"metric", kMetricNames[i]}, {"count", report.usage[i]}});
  j["usage"] = std::move(usage);
  j["internal_nodes"] = report.internal_nodes;
  return j;
}

void write_results_csv(std::ostream& out, const SuiteReport& report) {
  out << "experiment,accuracy,ci_low,ci_high,n\n";
  for (const SuiteEntry& e : report.entries) {
    if (e.result) {
      const ExperimentResult& r = *e.result;
      out << r.name << ',' << format_double(r.accuracy, 6) << ',' << format_double(r.ci_low, 6) << ','
          << format_double(r.ci_high, 6) << ',' << r.n_validation << '\n';
    } else {
      out << e.name << ",NA,NA,NA,0\n";
    }
  }
}

void write_usage_csv(std::ostream& out, const SuiteReport& report) {
  out << "metric,count\n";
  for (std::size_t i = 0; i < kMetricCount; ++i) out << kMetricNames[i] << ',' << report.usage[i] << '\n';
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace shapemetrics::io
