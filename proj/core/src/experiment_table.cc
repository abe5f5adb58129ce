/* Copyright 2026 The Palate Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/


#include "palate/experiment_table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "palate/errors.h"

namespace palate {
namespace {

std::string FormatDouble(double v) {
  char buf[32];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string ShortNumber(double v) {
  char buf[32];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 3);
  return std::string(buf, ptr);
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#e377c2", "#7f7f7f"};

}  // namespace

ExperimentTable::ExperimentTable(std::string experiment_name,
                                 std::string parameter_name,
                                 std::vector<std::string> metric_names)
    : experiment_name_(std::move(experiment_name)),
      parameter_name_(std::move(parameter_name)),
      metric_names_(std::move(metric_names)) {}

void ExperimentTable::AddRow(double parameter, std::vector<double> values) {
  if (values.size() != metric_names_.size()) {
    throw InvalidArgumentError("table row has " + std::to_string(values.size()) +
                               " values, expected " +
                               std::to_string(metric_names_.size()));
  }
  if (!rows_.empty()) {
    const double prev = rows_.back().parameter;
    // A single row fixes no direction yet; any distinct value is accepted.
    const bool ok = rows_.size() < 2
                        ? (parameter > prev || parameter < prev)
                        : (rows_[1].parameter > rows_[0].parameter
                               ? parameter > prev
                               : parameter < prev);
    if (!ok) {
      throw InvalidArgumentError("table parameter " + FormatDouble(parameter) +
                                 " breaks strict monotonicity after " +
                                 FormatDouble(prev));
    }
  }
  rows_.push_back({parameter, std::move(values)});
}

std::size_t ExperimentTable::MetricIndex(const std::string& name) const {
  auto it = std::find(metric_names_.begin(), metric_names_.end(), name);
  if (it == metric_names_.end()) {
    throw InvalidArgumentError("table has no metric '" + name + "'");
  }
  return static_cast<std::size_t>(it - metric_names_.begin());
}

double ExperimentTable::Value(std::size_t row, const std::string& metric) const {
  return rows_.at(row).values[MetricIndex(metric)];
}

std::vector<double> ExperimentTable::Column(const std::string& metric) const {
  const std::size_t idx = MetricIndex(metric);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.values[idx]);
  return out;
}

std::vector<double> ExperimentTable::Parameters() const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.parameter);
  return out;
}

std::string ExperimentTable::ToCsv() const {
  std::ostringstream out;
  out << parameter_name_;
  for (const auto& m : metric_names_) out << ',' << m;
  out << '\n';
  for (const auto& r : rows_) {
    out << FormatDouble(r.parameter);
    for (double v : r.values) out << ',' << FormatDouble(v);
    out << '\n';
  }
  return out.str();
}

nlohmann::json ExperimentTable::ToJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rows_) {
    nlohmann::json metrics = nlohmann::json::object();
    for (std::size_t i = 0; i < metric_names_.size(); ++i) {
      metrics[metric_names_[i]] = r.values[i];
    }
    rows.push_back({{"parameter", r.parameter}, {"metrics", metrics}});
  }
  return {{"experiment_name", experiment_name_},
          {"parameter_name", parameter_name_},
          {"metric_names", metric_names_},
          {"rows", rows},
          {"metadata", metadata_}};
}

ExperimentTable ExperimentTable::FromJson(const nlohmann::json& j) {
  try {
    ExperimentTable table(j.at("experiment_name").get<std::string>(),
                          j.at("parameter_name").get<std::string>(),
                          j.at("metric_names").get<std::vector<std::string>>());
    for (const auto& row : j.at("rows")) {
      std::vector<double> values;
      for (const auto& name : table.metric_names_) {
        values.push_back(row.at("metrics").at(name).get<double>());
      }
      table.AddRow(row.at("parameter").get<double>(), std::move(values));
    }
    table.metadata_ = j.value("metadata", nlohmann::json::object());
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed experiment table JSON: ") + e.what());
  }
}

std::string ExperimentTable::ToSvg(const SvgOptions& options) const {
  const double left = 70, right = 160, top = 40, bottom = 50;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;

  auto tx = [&](double v) { return options.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return options.log_y ? std::log10(v) : v; };
  auto usable = [](double v) { return std::isfinite(v); };

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& r : rows_) {
    const double x = tx(r.parameter);
    if (!usable(x)) continue;
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    for (double v : r.values) {
      const double y = ty(v);
      if (!usable(y)) continue;
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!(x_hi > x_lo)) { x_lo -= 0.5; x_hi += 0.5; }
  if (!(y_hi > y_lo)) { y_lo -= 0.5; y_hi += 0.5; }
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"22\" font-size=\"15\">"
      << XmlEscape(experiment_name_) << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4.0;
    const double yv = y_lo + (y_hi - y_lo) * t / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">"
        << ShortNumber(options.log_x ? std::pow(10.0, xv) : xv) << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\">"
        << ShortNumber(options.log_y ? std::pow(10.0, yv) : yv) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << options.height - 10
      << "\" text-anchor=\"middle\">" << XmlEscape(parameter_name_)
      << (options.log_x ? " (log)" : "") << "</text>\n";

  for (std::size_t m = 0; m < metric_names_.size(); ++m) {
    const char* color = kPalette[m % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& r : rows_) {
      const double x = tx(r.parameter);
      const double y = ty(r.values[m]);
      if (!usable(x) || !usable(y)) continue;
      out << (first ? "" : " ") << px(x) << ',' << py(y);
      first = false;
    }
    out << "\"/>\n";
    const double ly = top + 14 + 18 * static_cast<double>(m);
    out << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << ly - 4
        << "\" x2=\"" << left + plot_w + 32 << "\" y2=\"" << ly - 4
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + plot_w + 38 << "\" y=\"" << ly << "\">"
        << XmlEscape(metric_names_[m]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void ExperimentTable::Write(const std::filesystem::path& path,
                            const SvgOptions& svg) const {
  const std::string ext = path.extension().string();
  std::string content;
  if (ext == ".csv") {
    content = ToCsv();
  } else if (ext == ".svg") {
    content = ToSvg(svg);
  } else {
    content = ToJson().dump(2) + "\n";
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw DataError("write failed on " + path.string());
}

}  // namespace palate
