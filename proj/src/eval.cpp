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

#include "lead/eval.hpp"

#include <algorithm>
#include <map>

#include <spdlog/fmt/fmt.h>

#include "lead/csv.hpp"
#include "lead/errors.hpp"

namespace lead {

namespace {

std::string pair_name(const std::string& record_id, const std::string& auid) {
  return "(" + record_id + ", " + auid + ")";
}

double ratio_or_zero(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double percent_or_zero(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : percent_half_up(num, den, 1);
}

std::string threshold_str(double t) { return fmt::format("{:.2f}", t); }

}  // namespace

std::string format_percent(double value) { return fmt::format("{:.1f}", value); }

ConfusionMatrix confusion(const std::vector<Decision>& decisions,
                          const std::vector<CandidatePair>& gold) {
  std::map<std::pair<std::string, std::string>, std::vector<const Decision*>> by_pair;
  for (const auto& d : decisions) by_pair[{d.record_id, d.auid}].push_back(&d);

  ConfusionMatrix m;
  for (const auto& g : gold) {
    const auto name = pair_name(g.record.record_id, g.auid);
    if (!g.gold) raise(ErrorKind::Eval, "gold pair " + name + " has no label");
    auto it = by_pair.find({g.record.record_id, g.auid});
    if (it == by_pair.end()) raise(ErrorKind::Eval, "no decision for gold pair " + name);
    if (it->second.size() != 1)
      raise(ErrorKind::Eval, std::to_string(it->second.size()) + " decisions for gold pair " + name);
    const auto verdict = it->second.front()->verdict;
    if (verdict == Verdict::Abstain) ++m.abstain_count;
    const bool predicted = verdict == Verdict::Yes;
    if (*g.gold) predicted ? ++m.tp : ++m.fn;
    else predicted ? ++m.fp : ++m.tn;
  }
  return m;
}

MetricsReport metrics(const ConfusionMatrix& m, std::string name,
                      std::optional<double> elapsed_seconds) {
  if (m.total() == 0) raise(ErrorKind::Eval, "cannot score an empty confusion matrix");
  MetricsReport r;
  r.name = std::move(name);
  r.matrix = m;
  r.elapsed_seconds = elapsed_seconds;
  r.precision_degenerate = m.tp + m.fp == 0;
  r.recall_degenerate = m.tp + m.fn == 0;
  // 2PR/(P+R) reduces to 2tp/(2tp+fp+fn), which keeps the rounding exact.
  const std::size_t f1_den = 2 * m.tp + m.fp + m.fn;
  r.precision_raw = ratio_or_zero(m.tp, m.tp + m.fp);
  r.recall_raw = ratio_or_zero(m.tp, m.tp + m.fn);
  r.f1_raw = m.tp == 0 ? 0.0 : ratio_or_zero(2 * m.tp, f1_den);
  r.accuracy_raw = ratio_or_zero(m.tp + m.tn, m.total());
  r.precision = percent_or_zero(m.tp, m.tp + m.fp);
  r.recall = percent_or_zero(m.tp, m.tp + m.fn);
  r.f1 = m.tp == 0 ? 0.0 : percent_or_zero(2 * m.tp, f1_den);
  r.accuracy = percent_or_zero(m.tp + m.tn, m.total());
  return r;
}

RenderedTable format_table(const std::vector<MetricsReport>& reports) {
  const std::vector<std::string> header{"Method", "Precision", "Recall", "F1", "Accuracy",
                                        "Time (s)"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    rows.push_back({r.name, format_percent(r.precision), format_percent(r.recall),
                    format_percent(r.f1), format_percent(r.accuracy),
                    r.elapsed_seconds ? fmt::format("{:.3f}", *r.elapsed_seconds) : ""});
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += "  ";
      out += c == 0 ? fmt::format("{:<{}}", cells[c], width[c])
                    : fmt::format("{:>{}}", cells[c], width[c]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };

  RenderedTable t;
  t.text = line(header);
  t.csv = csv::join_row({"method", "precision", "recall", "f1", "accuracy", "time_s"}) + "\n";
  for (const auto& row : rows) {
    t.text += line(row);
    t.csv += csv::join_row(row) + "\n";
  }
  return t;
}

std::vector<double> default_sweep_thresholds() { return {0.25, 0.20, 0.15, 0.10}; }

std::vector<TimeWindow> default_sweep_windows() {
  return {TimeWindow{2020, 2023}, TimeWindow{2016, 2023}};
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string out = "threshold,window,precision,recall,f1,accuracy\n";
  for (const auto& c : cells) {
    out += csv::join_row({threshold_str(c.threshold), c.window.str(),
                          format_percent(c.report.precision), format_percent(c.report.recall),
                          format_percent(c.report.f1), format_percent(c.report.accuracy)}) +
           "\n";
  }
  return out;
}

std::string sweep_grid(const std::vector<SweepCell>& cells) {
  std::vector<double> thresholds;
  std::vector<TimeWindow> windows;
  for (const auto& c : cells) {
    if (std::find(thresholds.begin(), thresholds.end(), c.threshold) == thresholds.end())
      thresholds.push_back(c.threshold);
    if (std::find(windows.begin(), windows.end(), c.window) == windows.end())
      windows.push_back(c.window);
  }
  auto find = [&](double t, const TimeWindow& w) -> const SweepCell* {
    for (const auto& c : cells)
      if (c.threshold == t && c.window == w) return &c;
    return nullptr;
  };

  constexpr int kCol = 9;
  const int group_width = 4 * kCol + 3;
  std::string out = fmt::format("{:<9}", "");
  for (const auto& w : windows) out += fmt::format(" | {:^{}}", w.str(), group_width);
  out += "\n" + fmt::format("{:<9}", "Threshold");
  for (std::size_t i = 0; i < windows.size(); ++i)
    out += fmt::format(" | {:>{}} {:>{}} {:>{}} {:>{}}", "Precision", kCol, "Recall", kCol, "F1",
                       kCol, "Accuracy", kCol);
  out += "\n";
  for (double t : thresholds) {
    out += fmt::format("{:<9}", threshold_str(t));
    for (const auto& w : windows) {
      const auto* c = find(t, w);
      if (!c) {
        out += fmt::format(" | {:>{}}", "-", group_width);
        continue;
      }
      out += fmt::format(" | {:>{}} {:>{}} {:>{}} {:>{}}", format_percent(c->report.precision),
                         kCol, format_percent(c->report.recall), kCol,
                         format_percent(c->report.f1), kCol, format_percent(c->report.accuracy),
                         kCol);
    }
    out += "\n";
  }
  return out;
}

}  // namespace lead
