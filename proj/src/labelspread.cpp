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

#include "lead/labelspread.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <Eigen/LU>
#include <spdlog/spdlog.h>

#include "lead/errors.hpp"

namespace lead {

CoauthorGraph::CoauthorGraph(std::vector<std::string> nodes, SparseMatrix weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (weights_.rows() != static_cast<Eigen::Index>(nodes_.size()) ||
      weights_.cols() != weights_.rows())
    raise(ErrorKind::Shape, "weight matrix does not match node count");
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);
}

std::optional<std::size_t> CoauthorGraph::index_of(std::string_view auid) const {
  auto it = index_.find(std::string(auid));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string CoauthorGraph::edge_list_csv() const {
  std::ostringstream out;
  out << "auid_a,auid_b,weight\n";
  for (Eigen::Index i = 0; i < weights_.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(weights_, i); it; ++it)
      if (it.col() > i) out << nodes_[i] << ',' << nodes_[it.col()] << ',' << it.value() << '\n';
  return out.str();
}

CoauthorGraph build_graph(std::span<const AuthorProfile> profiles, EdgeWeighting weighting) {
  std::set<std::string> ids;
  for (const auto& p : profiles) {
    ids.insert(p.auid);
    for (const auto& pub : p.publications)
      for (const auto& co : pub.coauthor_auids)
        if (!co.empty()) ids.insert(co);
  }
  std::vector<std::string> nodes(ids.begin(), ids.end());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);

  // Author set per distinct publication, merged across every profile
  // that lists it.
  std::map<std::string, std::set<std::size_t>> authors_of;
  for (const auto& p : profiles) {
    for (const auto& pub : p.publications) {
      auto& authors = authors_of[pub.pub_id];
      authors.insert(index.at(p.auid));
      for (const auto& co : pub.coauthor_auids)
        if (!co.empty()) authors.insert(index.at(co));
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& [_, authors] : authors_of) {
    for (auto a = authors.begin(); a != authors.end(); ++a) {
      for (auto b = std::next(a); b != authors.end(); ++b) {
        const auto i = static_cast<Eigen::Index>(*a), j = static_cast<Eigen::Index>(*b);
        triplets.emplace_back(i, j, 1.0);
        triplets.emplace_back(j, i, 1.0);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(nodes.size());
  SparseMatrix w(n, n);
  w.setFromTriplets(triplets.begin(), triplets.end());  // duplicates are summed
  if (weighting == EdgeWeighting::Binary)
    for (Eigen::Index k = 0; k < w.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(w, k); it; ++it) it.valueRef() = 1.0;
  w.makeCompressed();
  return CoauthorGraph(std::move(nodes), std::move(w));
}

Eigen::VectorXd degrees(const SparseMatrix& w) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(w.rows());
  for (Eigen::Index i = 0; i < w.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(w, i); it; ++it) d[i] += it.value();
  return d;
}

SparseMatrix normalize(const SparseMatrix& w, const Eigen::VectorXd& deg) {
  if (w.rows() != w.cols() || deg.size() != w.rows())
    raise(ErrorKind::Shape, "normalize needs a square matrix and matching degrees");
  Eigen::VectorXd inv_sqrt(deg.size());
  for (Eigen::Index i = 0; i < deg.size(); ++i)
    inv_sqrt[i] = deg[i] > 0.0 ? 1.0 / std::sqrt(deg[i]) : 0.0;
  SparseMatrix s = w;
  for (Eigen::Index i = 0; i < s.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(s, i); it; ++it)
      it.valueRef() = it.value() * inv_sqrt[i] * inv_sqrt[it.col()];
  s.prune(0.0);
  return s;
}

SeedLabels make_seed_labels(const CoauthorGraph& graph,
                            const std::vector<std::pair<std::string, std::string>>& assignments) {
  std::map<std::size_t, std::map<std::string, int>> votes;
  std::set<std::string> classes;
  for (const auto& [auid, cls] : assignments) {
    auto idx = graph.index_of(auid);
    if (!idx) {
      spdlog::warn("seed auid {} is not a graph node; skipped", auid);
      continue;
    }
    votes[*idx][cls]++;
    classes.insert(cls);
  }

  SeedLabels out;
  out.classes.assign(classes.begin(), classes.end());
  std::map<std::string, std::size_t> class_index;
  for (std::size_t c = 0; c < out.classes.size(); ++c) class_index[out.classes[c]] = c;

  out.y = DenseMatrix::Zero(static_cast<Eigen::Index>(graph.size()),
                            static_cast<Eigen::Index>(out.classes.size()));
  for (const auto& [node, counts] : votes) {
    // std::map iterates class ids in ascending order, so the first maximum
    // is the smallest id among ties.
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it)
      if (it->second > best->second) best = it;
    if (counts.size() > 1)
      spdlog::info("node {} seeded with {} classes; keeping {}", graph.nodes()[node],
                   counts.size(), best->first);
    out.y(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(class_index[best->first])) = 1.0;
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> seed_assignments(const Dataset& data,
                                                                  Granularity level) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : data.seeds()) {
    std::optional<std::string_view> ad;
    if (level == Granularity::AcademicDiscipline) {
      const auto* rec = data.record(s.record_id);
      if (!rec || rec->ad.empty()) {
        spdlog::warn("seed {} has no AD code; skipped at AD granularity", s.record_id);
        continue;
      }
      ad = rec->ad;
    }
    out.emplace_back(s.auid, project(s.rf, level, ad));
  }
  return out;
}

SoftLabels spread(const SparseMatrix& s, const DenseMatrix& y, const SpreadParams& params,
                  const SpreadObserver& observer) {
  if (s.rows() != s.cols() || s.rows() != y.rows())
    raise(ErrorKind::Shape, "S is " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                                " but Y has " + std::to_string(y.rows()) + " rows");
  if (!(params.alpha > 0.0 && params.alpha < 1.0))
    raise(ErrorKind::Param, "alpha must lie in (0, 1)");
  if (params.max_iter < 1) raise(ErrorKind::Param, "max_iter must be positive");

  const DenseMatrix anchor = (1.0 - params.alpha) * y;
  SoftLabels out;
  out.f = y;
  DenseMatrix next(y.rows(), y.cols());
  for (int t = 1; t <= params.max_iter; ++t) {
    next.noalias() = params.alpha * (s * out.f);
    next += anchor;
    const double change = y.size() == 0 ? 0.0 : (next - out.f).cwiseAbs().maxCoeff();
    out.f.swap(next);
    out.iterations_used = t;
    if (observer) observer(t, out.f);
    if (change <= params.tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

DenseMatrix closed_form(const SparseMatrix& s, const DenseMatrix& y, double alpha,
                        std::size_t max_nodes) {
  if (s.rows() != s.cols() || s.rows() != y.rows())
    raise(ErrorKind::Shape, "closed_form: S and Y disagree on the node count");
  if (static_cast<std::size_t>(s.rows()) > max_nodes)
    raise(ErrorKind::TooLarge, "closed_form: " + std::to_string(s.rows()) + " nodes exceeds cap " +
                                   std::to_string(max_nodes));
  const auto n = s.rows();
  DenseMatrix a = DenseMatrix::Identity(n, n) - alpha * DenseMatrix(s);
  return Eigen::PartialPivLU<DenseMatrix>(a).solve((1.0 - alpha) * y);
}

InferredClass infer_class(const DenseMatrix& f, std::size_t node) {
  if (node >= static_cast<std::size_t>(f.rows()))
    raise(ErrorKind::NodeNotFound, "node " + std::to_string(node) + " outside " +
                                       std::to_string(f.rows()) + " rows");
  InferredClass out;
  const auto row = static_cast<Eigen::Index>(node);
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    const double v = f(row, c);
    if (v <= 0.0) continue;
    if (!out.class_index || v > out.confidence) {
      out.class_index = static_cast<std::size_t>(c);
      out.confidence = v;
      out.tie = false;
    } else if (v == out.confidence) {
      out.tie = true;
    }
  }
  return out;
}

LabelModel LabelModel::build(const Dataset& data, Granularity level, const SpreadParams& params,
                             EdgeWeighting weighting) {
  LabelModel m;
  m.level_ = level;
  m.graph_ = build_graph(data.profiles(), weighting);
  m.seeds_ = make_seed_labels(m.graph_, seed_assignments(data, level));
  const SparseMatrix s = normalize(m.graph_.weights());
  m.soft_ = spread(s, m.seeds_.y, params);
  if (!m.soft_.converged)
    spdlog::info("label spreading stopped after {} iterations without reaching tol {}",
                 m.soft_.iterations_used, params.tol);
  return m;
}

LsPrediction LabelModel::predict(std::string_view auid) const {
  LsPrediction p;
  p.level = level_;
  auto idx = graph_.index_of(auid);
  if (!idx) {
    p.in_graph = false;
    return p;
  }
  auto inferred = infer_class(soft_.f, *idx);
  if (inferred.class_index) p.class_id = seeds_.classes[*inferred.class_index];
  p.confidence = inferred.confidence;
  p.tie = inferred.tie;
  return p;
}

LsOutcome ls_classify(const RegistryRecord& record, std::string_view auid, const LabelModel& model) {
  LsOutcome out;
  out.prediction = model.predict(auid);
  if (!out.prediction.in_graph)
    spdlog::warn("auid {} is not in the co-author graph; abstaining", auid);
  if (!out.prediction.class_id) {
    out.verdict = Verdict::Abstain;
    return out;
  }
  const auto target = project(record.rf, model.level(), record.ad);
  out.verdict = *out.prediction.class_id == target ? Verdict::Yes : Verdict::No;
  return out;
}

}  // namespace lead
