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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "lead/ingest.hpp"
#include "lead/model.hpp"

namespace lead {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using DenseMatrix = Eigen::MatrixXd;

enum class EdgeWeighting { CoPublicationCount, Binary };

// Undirected co-authorship graph over every auid seen in the profiles,
// including co-authors without a profile of their own.
class CoauthorGraph {
 public:
  CoauthorGraph() = default;
  CoauthorGraph(std::vector<std::string> nodes, SparseMatrix weights);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const SparseMatrix& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  std::optional<std::size_t> index_of(std::string_view auid) const;

  // Edge list "auid_a,auid_b,weight" with a < b, header included.
  std::string edge_list_csv() const;

 private:
  std::vector<std::string> nodes_;
  SparseMatrix weights_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Nodes are ordered by auid. w_ij counts distinct pub_ids on which i and j
// both appear, whichever profile lists the publication.
CoauthorGraph build_graph(std::span<const AuthorProfile> profiles,
                          EdgeWeighting weighting = EdgeWeighting::CoPublicationCount);

Eigen::VectorXd degrees(const SparseMatrix& w);
// S = D^-1/2 W D^-1/2; rows and columns of zero-degree nodes stay zero.
SparseMatrix normalize(const SparseMatrix& w, const Eigen::VectorXd& deg);
inline SparseMatrix normalize(const SparseMatrix& w) { return normalize(w, degrees(w)); }

struct SeedLabels {
  std::vector<std::string> classes;  // ascending class ids
  DenseMatrix y;                     // n x C, one-hot rows or all-zero
};

// Builds Y from (auid, class id) assignments. A node seeded with several
// classes keeps the most frequent one; ties go to the smallest class id.
// Unknown auids are skipped with a warning.
SeedLabels make_seed_labels(const CoauthorGraph& graph,
                            const std::vector<std::pair<std::string, std::string>>& assignments);

// Seed assignments from the dataset's seed alignments at `level`.
std::vector<std::pair<std::string, std::string>> seed_assignments(const Dataset& data,
                                                                  Granularity level);

struct SpreadParams {
  double alpha = 0.2;
  double tol = 1e-3;  // max-abs change between successive iterates
  int max_iter = 30;
};

struct SoftLabels {
  DenseMatrix f;
  int iterations_used = 0;
  bool converged = false;
};

// Called after every update with the iteration number (1-based) and F^(t).
using SpreadObserver = std::function<void(int, const DenseMatrix&)>;

// F^(t+1) = alpha S F^(t) + (1 - alpha) Y starting at F^(0) = Y; stops when
// the max-abs change is <= tol or after max_iter updates.
SoftLabels spread(const SparseMatrix& s, const DenseMatrix& y, const SpreadParams& params,
                  const SpreadObserver& observer = {});

// Dense direct solve of (I - alpha S) F = (1 - alpha) Y. Reference oracle for
// spread(); refuses graphs above `max_nodes`.
DenseMatrix closed_form(const SparseMatrix& s, const DenseMatrix& y, double alpha,
                        std::size_t max_nodes = 2000);

struct InferredClass {
  std::optional<std::size_t> class_index;  // nullopt: abstain (all-zero row)
  double confidence = 0.0;
  bool tie = false;
};

InferredClass infer_class(const DenseMatrix& f, std::size_t node);

// Graph, seed labels and the spread result at one granularity.
class LabelModel {
 public:
  static LabelModel build(const Dataset& data, Granularity level, const SpreadParams& params = {},
                          EdgeWeighting weighting = EdgeWeighting::CoPublicationCount);

  Granularity level() const { return level_; }
  const CoauthorGraph& graph() const { return graph_; }
  const SeedLabels& seeds() const { return seeds_; }
  const SoftLabels& soft() const { return soft_; }

  // Unknown auids yield an abstaining prediction with in_graph = false.
  LsPrediction predict(std::string_view auid) const;

 private:
  Granularity level_ = Granularity::ScientificArea;
  CoauthorGraph graph_;
  SeedLabels seeds_;
  SoftLabels soft_;
};

struct LsOutcome {
  Verdict verdict = Verdict::Abstain;
  LsPrediction prediction;
};

// yes iff the inferred class equals the record's field projected at the
// model's level; abstentions propagate.
LsOutcome ls_classify(const RegistryRecord& record, std::string_view auid, const LabelModel& model);

}  // namespace lead
