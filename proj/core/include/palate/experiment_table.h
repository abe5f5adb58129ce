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


#ifndef PALATE_EXPERIMENT_TABLE_H_
#define PALATE_EXPERIMENT_TABLE_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace palate {

struct TableRow {
  double parameter = 0.0;
  // Aligned with ExperimentTable::metric_names().
  std::vector<double> values;
};

struct SvgOptions {
  bool log_x = false;
  bool log_y = false;
  int width = 720;
  int height = 440;
};

// Ordered (parameter -> metrics) series produced by the experiment
// harnesses. Parameter values are strictly monotone in row order and every
// row carries the same metrics.
class ExperimentTable {
 public:
  ExperimentTable(std::string experiment_name, std::string parameter_name,
                  std::vector<std::string> metric_names);

  // Throws InvalidArgumentError on a width mismatch or when `parameter`
  // breaks the monotone direction set by the first two rows.
  void AddRow(double parameter, std::vector<double> values);

  const std::string& experiment_name() const { return experiment_name_; }
  const std::string& parameter_name() const { return parameter_name_; }
  const std::vector<std::string>& metric_names() const { return metric_names_; }
  const std::vector<TableRow>& rows() const { return rows_; }
  nlohmann::json& metadata() { return metadata_; }
  const nlohmann::json& metadata() const { return metadata_; }

  std::size_t MetricIndex(const std::string& name) const;
  double Value(std::size_t row, const std::string& metric) const;
  std::vector<double> Column(const std::string& metric) const;
  std::vector<double> Parameters() const;

  // Header "parameter_name,metric..." then one line per row, 17 significant
  // digits.
  std::string ToCsv() const;
  nlohmann::json ToJson() const;
  static ExperimentTable FromJson(const nlohmann::json& j);
  // One polyline per metric.
  std::string ToSvg(const SvgOptions& options = {}) const;

  // Format chosen by extension: .csv, .svg, anything else JSON.
  void Write(const std::filesystem::path& path,
             const SvgOptions& svg = {}) const;

 private:
  std::string experiment_name_;
  std::string parameter_name_;
  std::vector<std::string> metric_names_;
  std::vector<TableRow> rows_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

}  // namespace palate

#endif  // PALATE_EXPERIMENT_TABLE_H_
