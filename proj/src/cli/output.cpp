#include "urllc/cli/output.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>

#include "urllc/fb_coding.hpp"

namespace urllc::cli {

namespace {

std::string printf_double(const char* fmt, double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), fmt, v);
  return buf.data();
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_real(double v) { return printf_double("%.17g", v); }

std::string format_prob(double v) { return printf_double("%.15e", v); }

std::string format_bool(bool v) { return v ? "true" : "false"; }

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError("cannot open '" + path + "' for writing");
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw IoError("failed writing '" + path_ + "'");
}

Manifest::Manifest(std::string command) : command_(std::move(command)) {}

void Manifest::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
void Manifest::add(const std::string& key, double value) { add(key, format_real(value)); }
void Manifest::add(const std::string& key, std::int64_t value) { add(key, std::to_string(value)); }
void Manifest::add(const std::string& key, bool value) { add(key, format_bool(value)); }
void Manifest::warn(const std::string& message) { warnings_.push_back(message); }

bool Manifest::is_meta_key(const std::string& key) {
  return key == "command" || key == "toolkit_version" || key == "timestamp" || key == "dispersion_model";
}

void Manifest::print(std::ostream& os) const {
  os << "# urllc-pls run manifest\n";
  os << "command = " << command_ << '\n';
  os << "toolkit_version = " << URLLC_PLS_VERSION << '\n';
  os << "timestamp = " << utc_timestamp() << '\n';
  os << "dispersion_model = " << kDispersionModel << '\n';
  for (const auto& w : warnings_) os << "# warning: " << w << '\n';
  for (const auto& [k, v] : entries_) os << k << " = " << v << '\n';
}

void Manifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  print(out);
  out.close();
  if (out.fail()) throw IoError("failed writing '" + path + "'");
}

void write_svg_plot(const std::string& path, const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  constexpr double kWidth = 720, kHeight = 480, kLeft = 80, kRight = 160, kTop = 40, kBottom = 60;
  auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) { return std::isfinite(x) && std::isfinite(y) && (!spec.log_y || y > 0); };

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, ty(s.y[i]));
      y_hi = std::max(y_hi, ty(s.y[i]));
    }
  }
  if (!(x_lo < x_hi)) x_hi = x_lo + 1;
  if (!(y_lo < y_hi)) y_hi = y_lo + 1;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (ty(y) - y_lo) / (y_hi - y_lo) * ph; };

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  static constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << xml_escape(spec.title)
      << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
      << xml_escape(spec.x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 20 " << kTop + ph / 2
      << ")\" text-anchor=\"middle\">" << xml_escape(spec.y_label) << (spec.log_y ? " (log10)" : "") << "</text>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4.0;
    const double yv = y_lo + (y_hi - y_lo) * t / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
        << printf_double("%.4g", xv) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + ph - (yv - y_lo) / (y_hi - y_lo) * ph + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << printf_double("%.4g", yv) << "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % kColors.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (usable(s.x[i], s.y[i])) out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    out << "\"/>\n";
    const double ly = kTop + 16 + 18.0 * static_cast<double>(k);
    out << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + pw + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << xml_escape(s.name)
        << "</text>\n";
  }
  out << "</svg>\n";
  if (out.fail()) throw IoError("failed writing '" + path + "'");
}

}  // namespace urllc::cli
