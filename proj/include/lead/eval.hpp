// Copyright 2026 The lead Authors.
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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lead/bibcoupling.hpp"
#include "lead/model.hpp"

namespace lead {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  std::size_t abstain_count = 0;  // already folded into fn/tn

  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// Abstentions count as predicted "no". Throws Eval when a gold pair has no
// decision, more than one, or no label.
ConfusionMatrix confusion(const std::vector<Decision>& decisions,
                          const std::vector<CandidatePair>& gold);

struct MetricsReport {
  std::string name;
  ConfusionMatrix matrix;
  // Exact fractions in [0, 1].
  double precision_raw = 0.0;
  double recall_raw = 0.0;
  double f1_raw = 0.0;
  double accuracy_raw = 0.0;
  // Percentages rounded half-up to one decimal.
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  bool precision_degenerate = false;  // tp + fp == 0
  bool recall_degenerate = false;     // tp + fn == 0
  std::optional<double> elapsed_seconds;
};

// Throws Eval on an empty matrix.
MetricsReport metrics(const ConfusionMatrix& m, std::string name = {},
                      std::optional<double> elapsed_seconds = std::nullopt);

struct RenderedTable {
  std::string text;
  std::string csv;
};

// Method, Precision, Recall, F1, Accuracy, Time (s); rows in input order.
RenderedTable format_table(const std::vector<MetricsReport>& reports);

struct SweepCell {
  double threshold = 0.0;
  TimeWindow window;
  MetricsReport report;
};

std::vector<double> default_sweep_thresholds();      // 0.25, 0.20, 0.15, 0.10
std::vector<TimeWindow> default_sweep_windows();     // 2020:2023, 2016:2023

// threshold,window,precision,recall,f1,accuracy
std::string sweep_csv(const std::vector<SweepCell>& cells);
// One row per threshold (first-seen order), one P/R/F1/Acc group per window.
std::string sweep_grid(const std::vector<SweepCell>& cells);

// "96.7": one decimal, as displayed in every table.
std::string format_percent(double value);

}  // namespace lead
