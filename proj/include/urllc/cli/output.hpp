#pragma once

#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace urllc::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trippable decimal ("%.17g"); "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double v);
/// Scientific notation with 16 significant digits, for probabilities.
std::string format_prob(double v);
std::string format_bool(bool v);

/// RFC-4180 style writer: LF line endings, fields quoted only when needed.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::string path_;
  std::ofstream out_;
};

/// Resolved parameters of one run, written as `key = value` lines so it can be fed
/// back through --config.
class Manifest {
 public:
  explicit Manifest(std::string command);

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, std::int64_t value);
  void add(const std::string& key, bool value);
  void warn(const std::string& message);

  void print(std::ostream& os) const;
  void write(const std::string& path) const;

  static bool is_meta_key(const std::string& key);

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::string> warnings_;
};

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
};

/// Minimal SVG line chart. Non-finite points and non-positive points on a log axis are skipped.
void write_svg_plot(const std::string& path, const PlotSpec& spec, const std::vector<PlotSeries>& series);

}  // namespace urllc::cli
