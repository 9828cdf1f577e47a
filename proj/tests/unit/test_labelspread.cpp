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

#include <doctest.h>

#include <random>

#include "lead/errors.hpp"
#include "lead/labelspread.hpp"
#include "support/random_graph.hpp"

using namespace lead;

namespace {

SparseMatrix dense_to_sparse(const DenseMatrix& d) { return d.sparseView(); }

Publication coauthored(std::string id, std::vector<std::string> coauthors) {
  Publication p;
  p.pub_id = std::move(id);
  p.year = 2020;
  p.coauthor_auids = std::move(coauthors);
  return p;
}

AuthorProfile person(std::string auid, std::vector<Publication> pubs) {
  AuthorProfile a;
  a.auid = std::move(auid);
  a.publications = std::move(pubs);
  return a;
}

RegistryRecord record(std::string id, std::string rf) {
  RegistryRecord r;
  r.record_id = std::move(id);
  r.first_name = "A";
  r.last_name = "B";
  r.rf = parse_rf(rf);
  r.ad = "X/01";
  return r;
}

}  // namespace

TEST_CASE("normalize on a path graph") {
  DenseMatrix w(3, 3);
  w << 0, 1, 0,
       1, 0, 1,
       0, 1, 0;
  const DenseMatrix s = normalize(dense_to_sparse(w));
  const double e = 1.0 / std::sqrt(2.0);
  CHECK(s(0, 1) == doctest::Approx(e));
  CHECK(s(1, 2) == doctest::Approx(e));
  CHECK(s(0, 2) == 0.0);
  CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero-degree rows stay zero") {
  DenseMatrix w = DenseMatrix::Zero(3, 3);
  w(0, 1) = w(1, 0) = 2.0;
  const DenseMatrix s = normalize(dense_to_sparse(w));
  CHECK(s.row(2).cwiseAbs().sum() == 0.0);
  CHECK(s.col(2).cwiseAbs().sum() == 0.0);
  CHECK(s(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("two-node closed form") {
  DenseMatrix w(2, 2);
  w << 0, 1, 1, 0;
  const DenseMatrix y = DenseMatrix::Identity(2, 2);
  const DenseMatrix f = closed_form(normalize(dense_to_sparse(w)), y, 0.2);
  CHECK(f(0, 0) == doctest::Approx(0.8 / 0.96));
  CHECK(f(0, 1) == doctest::Approx(0.16 / 0.96));
  CHECK(f(0, 0) == doctest::Approx(0.8333).epsilon(1e-4));
  CHECK(f(0, 1) == doctest::Approx(0.1667).epsilon(1e-3));
  CHECK(f(1, 1) == doctest::Approx(f(0, 0)));
}

TEST_CASE("isolated seed settles at (1 - alpha) Y") {
  const SparseMatrix s(1, 1);
  DenseMatrix y(1, 2);
  y << 1, 0;
  const auto out = spread(s, y, SpreadParams{});
  CHECK(out.converged);
  CHECK(out.iterations_used == 2);
  CHECK(out.f(0, 0) == doctest::Approx(0.8));
  CHECK(out.f(0, 1) == 0.0);
}

TEST_CASE("all-zero Y converges after one update") {
  DenseMatrix w(2, 2);
  w << 0, 1, 1, 0;
  const auto out = spread(normalize(dense_to_sparse(w)), DenseMatrix::Zero(2, 3), SpreadParams{});
  CHECK(out.converged);
  CHECK(out.iterations_used == 1);
  CHECK(out.f.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spread reports non-convergence at max_iter") {
  DenseMatrix w(2, 2);
  w << 0, 1, 1, 0;
  const auto out = spread(normalize(dense_to_sparse(w)), DenseMatrix::Identity(2, 2),
                          SpreadParams{0.2, 0.0, 3});
  CHECK_FALSE(out.converged);
  CHECK(out.iterations_used == 3);
}

TEST_CASE("parameter and shape errors") {
  const SparseMatrix s(2, 2);
  CHECK_THROWS_AS(spread(s, DenseMatrix::Zero(3, 1), {}), Error);
  CHECK_THROWS_AS(spread(s, DenseMatrix::Zero(2, 1), SpreadParams{1.0, 1e-3, 30}), Error);
  CHECK_THROWS_AS(spread(s, DenseMatrix::Zero(2, 1), SpreadParams{0.2, 1e-3, 0}), Error);
  CHECK_THROWS_AS(closed_form(SparseMatrix(3, 3), DenseMatrix::Zero(3, 1), 0.2, 2), Error);
}

TEST_CASE("infer_class ties and abstentions") {
  DenseMatrix f(3, 3);
  f << 0.1, 0.5, 0.2,
       0.4, 0.1, 0.4,
       0.0, 0.0, 0.0;
  auto a = infer_class(f, 0);
  REQUIRE(a.class_index);
  CHECK(*a.class_index == 1);
  CHECK(a.confidence == doctest::Approx(0.5));
  CHECK_FALSE(a.tie);
  auto b = infer_class(f, 1);
  REQUIRE(b.class_index);
  CHECK(*b.class_index == 0);
  CHECK(b.tie);
  CHECK_FALSE(infer_class(f, 2).class_index);
  CHECK_THROWS_AS(infer_class(f, 3), Error);
}

TEST_CASE("graph counts distinct shared publications") {
  // "p1" is listed by both authors and must count once.
  const std::vector<AuthorProfile> profiles{
      person("a", {coauthored("p1", {"b"}), coauthored("p2", {"b", "c"})}),
      person("b", {coauthored("p1", {"a"})}),
  };
  const auto g = build_graph(profiles);
  REQUIRE(g.size() == 3);
  const auto a = *g.index_of("a"), b = *g.index_of("b"), c = *g.index_of("c");
  const DenseMatrix w = g.weights();
  CHECK(w(a, b) == 2.0);
  CHECK(w(b, c) == 1.0);
  CHECK(w(a, c) == 1.0);
  CHECK(w(a, a) == 0.0);
  const DenseMatrix wb = build_graph(profiles, EdgeWeighting::Binary).weights();
  CHECK(wb(a, b) == 1.0);
  CHECK(g.edge_list_csv() == "auid_a,auid_b,weight\na,b,2\na,c,1\nb,c,1\n");
  CHECK_FALSE(g.index_of("zz").has_value());
}

TEST_CASE("seed labels use majority with smallest-id ties") {
  const std::vector<AuthorProfile> profiles{person("a", {coauthored("p", {"b"})})};
  const auto g = build_graph(profiles);
  const auto seeds = make_seed_labels(g, {{"a", "09"}, {"a", "01"}, {"b", "05"}, {"b", "05"}, {"b", "01"},
                                          {"ghost", "02"}});
  REQUIRE(seeds.classes == std::vector<std::string>{"01", "05", "09"});
  CHECK(seeds.y(0, 0) == 1.0);  // a: tie between 01 and 09
  CHECK(seeds.y.row(0).sum() == 1.0);
  CHECK(seeds.y(1, 1) == 1.0);
}

TEST_CASE("spread matches the closed form on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = lead::testing::random_instance(rng);
    const auto s = normalize(g.w);
    const auto iter = spread(s, g.y, SpreadParams{0.2, 1e-12, 10000});
    const DenseMatrix exact = closed_form(s, g.y, 0.2);
    CHECK(iter.converged);
    CHECK((iter.f - exact).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("contraction of successive updates") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = lead::testing::random_instance(rng);
    DenseMatrix prev = g.y, prev_delta;
    bool ok = true;
    spread(normalize(g.w), g.y, SpreadParams{0.2, 0.0, 25}, [&](int t, const DenseMatrix& f) {
      DenseMatrix delta = f - prev;
      if (t > 1 && delta.norm() > 0.2 * prev_delta.norm() + 1e-12) ok = false;
      prev_delta = delta;
      prev = f;
    });
    CHECK(ok);
  }
}

TEST_CASE("permuting node labels permutes the result") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = lead::testing::random_instance(rng, 30);
    const auto n = g.w.rows();
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
    perm.setIdentity();
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (Eigen::Index i = 0; i < n; ++i) perm.indices()[i] = idx[static_cast<std::size_t>(i)];
    const DenseMatrix wp = perm * DenseMatrix(g.w) * perm.transpose();
    const DenseMatrix yp = perm * g.y;
    const auto a = spread(normalize(g.w), g.y, {});
    const auto b = spread(normalize(dense_to_sparse(wp)), yp, {});
    CHECK((perm * a.f - b.f).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("scaling all weights leaves S unchanged") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = lead::testing::random_instance(rng, 30);
    const SparseMatrix scaled = 3.5 * g.w;
    const DenseMatrix s1 = normalize(g.w), s2 = normalize(scaled);
    CHECK((s1 - s2).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("label model and ls_classify on a small dataset") {
  std::vector<RegistryRecord> records{record("s1", "09/E3"), record("s2", "13/B4"), record("r1", "09/E3")};
  std::vector<AuthorProfile> profiles{
      person("10", {coauthored("p1", {"30"})}),
      person("20", {coauthored("p2", {"40"})}),
      person("30", {coauthored("p1", {"10"})}),
      person("40", {coauthored("p2", {"20"})}),
      person("50", {}),
  };
  std::vector<SeedAlignment> seeds{{"s1", "10", parse_rf("09/E3")}, {"s2", "20", parse_rf("13/B4")}};
  const auto data = Dataset::assemble(records, profiles, seeds, {});

  const auto sa = LabelModel::build(data, Granularity::ScientificArea);
  CHECK(sa.seeds().classes == std::vector<std::string>{"09", "13"});
  const auto near_seed = ls_classify(*data.record("r1"), "30", sa);
  CHECK(near_seed.verdict == Verdict::Yes);
  CHECK(near_seed.prediction.class_id == std::optional<std::string>("09"));
  CHECK(ls_classify(*data.record("r1"), "40", sa).verdict == Verdict::No);
  const auto isolated = ls_classify(*data.record("r1"), "50", sa);
  CHECK(isolated.verdict == Verdict::Abstain);
  CHECK(isolated.prediction.in_graph);
  const auto unknown = ls_classify(*data.record("r1"), "99", sa);
  CHECK(unknown.verdict == Verdict::Abstain);
  CHECK_FALSE(unknown.prediction.in_graph);

  const auto rf = LabelModel::build(data, Granularity::RecruitmentField);
  CHECK(rf.predict("30").class_id == std::optional<std::string>("09/E3"));
  const auto ad = LabelModel::build(data, Granularity::AcademicDiscipline);
  CHECK(ad.predict("30").class_id == std::optional<std::string>("X/01"));
}
