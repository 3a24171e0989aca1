// Copyright 2026 The qae-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qae/config.hpp"
#include "qae/network.hpp"

namespace qae {

/// Delimited text table with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_csv() const;
  std::size_t column(const std::string& name) const;  // throws if absent
  double value(std::size_t row, const std::string& name) const;
};

/// Fixed-precision rendering used in every table so that outputs compare
/// byte for byte.
std::string format_number(double x);

struct NamedTable {
  std::string file;  // e.g. "sweep.csv"
  Table table;
};

struct NamedModel {
  std::string file;
  QaeModel model;
};

struct ExperimentOutput {
  std::vector<NamedTable> tables;
  std::vector<NamedModel> models;
  std::string summary;  // one line

  const Table& table(const std::string& file) const;
};

/// Runs one experiment in memory. Sweep points are evaluated concurrently
/// with per-point random streams, and rows come out sorted by the sweep key.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Writes every table and model under `dir`, creating it if needed.
void write_outputs(const ExperimentOutput& output, const std::filesystem::path& dir);

/// The model an evaluation experiment works on: loaded from config.model_path
/// when set (std::runtime_error if missing), otherwise trained at channel.p
/// with the root seed.
QaeModel obtain_model(const ExperimentConfig& config);

/// First epoch whose training fidelity reaches `threshold`, or -1.
int first_crossing(const TrainingLog& log, double threshold);

}  // namespace qae
