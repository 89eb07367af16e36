#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "shapemetrics/experiments.hpp"
#include "shapemetrics/io.hpp"
#include "shapemetrics/metrics.hpp"
#include "shapemetrics/rasterizer.hpp"
#include "shapemetrics/simulators.hpp"

namespace shapemetrics::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridFlags {
  int bins = 100;
  std::optional<int> bins_x;
  std::optional<int> bins_y;

  void add(CLI::App& app) {
    app.add_option("--bins", bins, "Histogram bins per axis")->capture_default_str();
    app.add_option("--bins-x", bins_x, "Bins along x (overrides --bins)");
    app.add_option("--bins-y", bins_y, "Bins along y (overrides --bins)");
  }
  GridSpec grid() const { return {bins_x.value_or(bins), bins_y.value_or(bins)}; }
};

struct MetricFlags {
  std::string eccentricity = "eigen_ratio";
  std::string circularity = "perimeter_squared_over_area";

  void add(CLI::App& app) {
    app.add_option("--eccentricity", eccentricity, "eigen_ratio (eig1/eig2) or axis_ratio (sqrt)")
        ->check(CLI::IsMember({"eigen_ratio", "axis_ratio"}))
        ->capture_default_str();
    app.add_option("--circularity", circularity,
                   "perimeter_squared_over_area (P^2/4piA) or area_over_perimeter_squared")
        ->check(CLI::IsMember({"perimeter_squared_over_area", "area_over_perimeter_squared"}))
        ->capture_default_str();
  }
  MetricOptions options() const {
    MetricOptions o;
    o.eccentricity = eccentricity == "axis_ratio" ? EccentricityForm::axis_ratio : EccentricityForm::eigen_ratio;
    o.circularity = circularity == "area_over_perimeter_squared" ? CircularityForm::area_over_perimeter_squared
                                                                 : CircularityForm::perimeter_squared_over_area;
    return o;
  }
};

struct ExperimentFlags {
  std::uint64_t seed = 42;
  std::string out = ".";
  std::size_t images_per_class = 100;
  int folds = 5;
  unsigned threads = 0;
  bool dump_tree = false;
  bool images = false;
  GridFlags grid;
  MetricFlags metrics;

  void add(CLI::App& app) {
    app.add_option("--seed", seed, "Master seed")->capture_default_str();
    app.add_option("--out", out, "Output directory")->capture_default_str();
    app.add_option("--images-per-class", images_per_class, "Simulated images per class")->capture_default_str();
    app.add_option("--folds", folds, "Cross-validation folds")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_flag("--dump-tree", dump_tree, "Write trees/<experiment>.json");
    app.add_flag("--images", images, "Write images/<experiment>/*.pgm");
    grid.add(app);
    metrics.add(app);
  }

  SuiteConfig config() const {
    SuiteConfig c;
    c.master_seed = seed;
    c.grid = grid.grid();
    c.images_per_class = images_per_class;
    c.cv.folds = folds;
    c.metric_options = metrics.options();
    c.threads = threads;
    c.keep_images = images;
    return c;
  }
};

std::string sanitize(std::string_view s) {
  std::string out;
  for (char ch : s)
    out.push_back(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' ? ch : '_');
  return out;
}

void write_suite_outputs(const SuiteReport& report, const ExperimentFlags& flags) {
  const fs::path dir(flags.out);
  fs::create_directories(dir);
  std::ostringstream results, usage;
  io::write_results_csv(results, report);
  io::write_usage_csv(usage, report);
  io::write_file(dir / "results.csv", results.str());
  io::write_file(dir / "usage.csv", usage.str());
  io::write_file(dir / "report.json", io::report_json(report).dump(2) + "\n");

  for (const SuiteEntry& e : report.entries) {
    if (!e.result) continue;
    const ExperimentResult& r = *e.result;
    if (flags.dump_tree) {
      fs::create_directories(dir / "trees");
      io::write_file(dir / "trees" / (r.name + ".json"), io::tree_json(r.tree).dump(2) + "\n");
    }
    if (flags.images && !r.images.empty()) {
      const fs::path img_dir = dir / "images" / r.name;
      fs::create_directories(img_dir);
      const std::size_t per_class = r.images.size() / r.class_names.size();
      for (std::size_t i = 0; i < r.images.size(); ++i) {
        char index[24];
        std::snprintf(index, sizeof index, "%03zu", i % per_class);
        io::write_pgm(img_dir / ("c" + std::to_string(i / per_class) + "_" +
                                 sanitize(r.class_names[i / per_class]) + "_" + index + ".pgm"),
                      r.images[i]);
      }
    }
  }
}

// "key = value" lines ('#' comments) turned into flags inserted before the
// user's own arguments, so explicit flags win.
std::vector<std::string> config_args(const fs::path& path, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::vector<std::string> args;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (strip(line).empty()) continue;
    if (eq == std::string::npos)
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub.get_option_no_throw(flag);
    if (!opt || key == "config")
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (opt->get_expected_max() == 0) {
      if (value == "true" || value == "1" || value == "yes") args.push_back(flag);
      else if (value != "false" && value != "0" && value != "no")
        throw UsageError(path.string() + ":" + std::to_string(line_no) + ": '" + key + "' expects true/false");
    } else {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shape metrics for 2D point data: rasterize scatter data, measure shapes, classify"};
  app.name("shapemetrics");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value file mirroring these flags; flags override it");
  };

  // simulate
  CLI::App* simulate = app.add_subcommand("simulate", "Write a simulated point set as x,y CSV");
  std::string family = "normal_pair", variant = "standard", sim_out, sim_image;
  std::size_t sim_n = 1000;
  std::uint64_t sim_seed = 0;
  GridFlags sim_grid;
  simulate->add_option("--family", family, "normal_pair | mixture | qq | function | residual")->capture_default_str();
  simulate->add_option("--variant", variant, "Family-specific variant")->capture_default_str();
  simulate->add_option("--n", sim_n, "Number of points")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Seed")->capture_default_str();
  simulate->add_option("--out", sim_out, "Output CSV (default: stdout)");
  simulate->add_option("--image", sim_image, "Also write the rasterized image as PGM");
  sim_grid.add(*simulate);
  add_config(simulate);

  // rasterize
  CLI::App* rasterize_cmd = app.add_subcommand("rasterize", "Convert an x,y CSV into a binary PGM image");
  std::string ras_in, ras_out;
  GridFlags ras_grid;
  rasterize_cmd->add_option("--in", ras_in, "Input points CSV")->required();
  rasterize_cmd->add_option("--out", ras_out, "Output PGM")->required();
  ras_grid.add(*rasterize_cmd);
  add_config(rasterize_cmd);

  // metrics
  CLI::App* metrics_cmd = app.add_subcommand("metrics", "Print the seven shape metrics of a point set or PGM");
  std::string met_in, met_out, met_format = "csv", met_label;
  GridFlags met_grid;
  MetricFlags met_flags;
  metrics_cmd->add_option("--in", met_in, "Points CSV, or a .pgm image")->required();
  metrics_cmd->add_option("--out", met_out, "Output file (default: stdout)");
  metrics_cmd->add_option("--format", met_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  metrics_cmd->add_option("--label", met_label, "Value for the label column");
  met_grid.add(*metrics_cmd);
  met_flags.add(*metrics_cmd);
  add_config(metrics_cmd);

  // run
  CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment");
  std::string run_name;
  ExperimentFlags run_flags;
  run_cmd->add_option("--experiment", run_name,
                      "normal_means | normal_correlation | normal_scale | mixtures | qq_outliers | functions | "
                      "residuals")
      ->required();
  run_flags.add(*run_cmd);
  add_config(run_cmd);

  // suite
  CLI::App* suite_cmd = app.add_subcommand("suite", "Run all seven experiments and the metric usage table");
  std::vector<std::string> only;
  ExperimentFlags suite_flags;
  suite_cmd->add_option("--only", only, "Comma-separated subset of experiments")->delimiter(',');
  suite_flags.add(*suite_cmd);
  add_config(suite_cmd);

  std::vector<std::string> argv_store{"shapemetrics"};
  try {
    std::vector<std::string> final_args = args;
    if (const auto cfg = find_config(args); cfg && !args.empty()) {
      CLI::App* sub = nullptr;
      for (CLI::App* s : {simulate, rasterize_cmd, metrics_cmd, run_cmd, suite_cmd})
        if (s->get_name() == args[0]) sub = s;
      if (!sub) throw UsageError("--config must follow a subcommand");
      const auto extra = config_args(*cfg, *sub);
      final_args.insert(final_args.begin() + 1, extra.begin(), extra.end());
    }
    argv_store.insert(argv_store.end(), final_args.begin(), final_args.end());
    std::vector<const char*> argv;
    for (const std::string& a : argv_store) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (simulate->parsed()) {
      ScenarioSpec spec{parse_family(family), variant, sim_n, sim_seed};
      const PointSet points = shapemetrics::simulate(spec);
      if (sim_out.empty()) {
        io::write_points_csv(out, points);
      } else {
        std::ostringstream ss;
        io::write_points_csv(ss, points);
        io::write_file(sim_out, ss.str());
      }
      if (!sim_image.empty()) io::write_pgm(fs::path(sim_image), rasterize(points, sim_grid.grid()));
    } else if (rasterize_cmd->parsed()) {
      io::write_pgm(fs::path(ras_out), rasterize(io::read_points_csv(fs::path(ras_in)), ras_grid.grid()));
    } else if (metrics_cmd->parsed()) {
      const fs::path in_path(met_in);
      const BinaryImage img = in_path.extension() == ".pgm"
                                  ? io::read_pgm(in_path)
                                  : rasterize(io::read_points_csv(in_path), met_grid.grid());
      const MetricVector m = metric_vector(img, met_flags.options());
      const std::string text = met_format == "json"
                                   ? io::metrics_json(m, met_label).dump(2) + "\n"
                                   : io::metrics_csv_header() + "\n" + io::metrics_csv_row(m, met_label) + "\n";
      if (met_out.empty()) out << text;
      else io::write_file(met_out, text);
    } else if (run_cmd->parsed()) {
      SuiteConfig config = run_flags.config();
      config.only = {run_name};
      const SuiteReport report = run_suite(config);
      write_suite_outputs(report, run_flags);
      if (!report.complete) {
        err << "error: " << report.entries.front().error << "\n";
        return 1;
      }
    } else if (suite_cmd->parsed()) {
      SuiteConfig config = suite_flags.config();
      config.only = only;
      const SuiteReport report = run_suite(config);
      write_suite_outputs(report, suite_flags);
      if (!report.complete) {
        for (const SuiteEntry& e : report.entries)
          if (!e.result) err << "error: " << e.error << "\n";
        return 1;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace shapemetrics::cli
