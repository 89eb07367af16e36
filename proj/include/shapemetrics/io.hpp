#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "shapemetrics/cart.hpp"
#include "shapemetrics/experiments.hpp"
#include "shapemetrics/metrics.hpp"
#include "shapemetrics/types.hpp"

namespace shapemetrics::io {

/// printf-style %.{precision}g.
std::string format_double(double v, int precision = 10);

// Point CSV: header "x,y", one point per row.
PointSet read_points_csv(std::istream& in);
PointSet read_points_csv(const std::filesystem::path& path);
void write_points_csv(std::ostream& out, const PointSet& points);

/// Binary PGM (P5, maxval 255, white = 255). Rows are written top-down, so
/// the largest y-bin comes first.
void write_pgm(std::ostream& out, const BinaryImage& image);
void write_pgm(const std::filesystem::path& path, const BinaryImage& image);
/// Reads P5 or P2; any nonzero sample is white. Ranges are set to the pixel
/// extent.
BinaryImage read_pgm(std::istream& in);
BinaryImage read_pgm(const std::filesystem::path& path);

/// "white_ei,black_ei,sp,eccentricity,eig1,eig2,circularity,label"
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricVector& m, std::string_view label);
nlohmann::ordered_json metrics_json(const MetricVector& m, std::string_view label);

nlohmann::ordered_json tree_json(const TreeModel& tree);
nlohmann::ordered_json result_json(const ExperimentResult& result);
nlohmann::ordered_json report_json(const SuiteReport& report);

/// experiment,accuracy,ci_low,ci_high,n
void write_results_csv(std::ostream& out, const SuiteReport& report);
/// metric,count in metric order.
void write_usage_csv(std::ostream& out, const SuiteReport& report);

/// Writes `text` to `path`, throwing std::runtime_error on failure.
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace shapemetrics::io
