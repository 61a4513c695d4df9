// Copyright 2026 The streamsong Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sstream>

#include "streamsong/eval.hpp"

namespace streamsong {
namespace {

std::vector<ClassId> ids(std::initializer_list<std::int64_t> v) {
  std::vector<ClassId> out;
  for (auto x : v) out.push_back(ClassId{x});
  return out;
}

std::vector<ClassId> repeat(std::int64_t id, std::size_t n) { return std::vector<ClassId>(n, ClassId{id}); }

void append(std::vector<ClassId>& a, const std::vector<ClassId>& b) { a.insert(a.end(), b.begin(), b.end()); }

TEST(AlignLabels, PerfectMatch) {
  const auto pred = ids({7, 7, 8, 8});
  const auto truth = ids({0, 0, 1, 1});
  const auto al = align_labels(pred, truth);
  EXPECT_EQ(al.map(ClassId{7}), ClassId{0});
  EXPECT_EQ(al.map(ClassId{8}), ClassId{1});
}

TEST(AlignLabels, ExtraPredictedClassStaysUnmapped) {
  const auto pred = ids({0, 0, 1, 1, 2});
  const auto truth = ids({0, 0, 1, 1, 1});
  const auto al = align_labels(pred, truth);
  EXPECT_EQ(al.mapping.size(), 2u);
  EXPECT_EQ(al.map(ClassId{2}), kOutlier);
}

TEST(AlignLabels, GreedyTakesLargestCountFirst) {
  // Co-occurrence rows are predictions, columns truth: [[90, 10], [5, 95]].
  std::vector<ClassId> pred, truth;
  append(pred, repeat(0, 100));
  append(truth, repeat(10, 90));
  append(truth, repeat(11, 10));
  append(pred, repeat(1, 100));
  append(truth, repeat(10, 5));
  append(truth, repeat(11, 95));
  const auto al = align_labels(pred, truth);
  EXPECT_EQ(al.map(ClassId{1}), ClassId{11});
  EXPECT_EQ(al.map(ClassId{0}), ClassId{10});
}

TEST(AlignLabels, OutlierPredictionsNeverMatch) {
  const auto pred = std::vector<ClassId>{kOutlier, kOutlier, ClassId{0}};
  const auto truth = ids({3, 3, 4});
  const auto al = align_labels(pred, truth);
  EXPECT_EQ(al.mapping.size(), 1u);
  EXPECT_TRUE(al.instantiates(ClassId{4}));
  EXPECT_FALSE(al.instantiates(ClassId{3}));
}

TEST(Precision, IdenticalAndThreeOfFour) {
  const auto a = ids({0, 1, 2, 1});
  EXPECT_EQ(precision(a, a, align_labels(a, a)), 1.0);
  const auto pred = ids({0, 1, 2, 2});
  const auto truth = ids({0, 1, 2, 1});
  LabelAlignment identity;
  for (std::int64_t c = 0; c < 3; ++c) identity.mapping[ClassId{c}] = ClassId{c};
  EXPECT_DOUBLE_EQ(precision(pred, truth, identity), 0.75);
}

TEST(Precision, OutlierRightOnlyForUninstantiatedTruth) {
  const std::vector<ClassId> pred{ClassId{0}, kOutlier, kOutlier};
  const auto truth = ids({0, 0, 5});
  const auto al = align_labels(pred, truth);
  // The first outlier belongs to an instantiated class, the second does not.
  EXPECT_DOUBLE_EQ(precision(pred, truth, al), 2.0 / 3.0);
}

TEST(Precision, RejectsMismatchedOrEmpty) {
  const auto a = ids({0, 1});
  const auto b = ids({0});
  EXPECT_THROW(precision(a, b, align_labels(a, a)), ArgumentError);
  EXPECT_THROW(align_labels(a, b), ArgumentError);
  EXPECT_THROW(precision({}, {}, LabelAlignment{}), ArgumentError);
}

TEST(ConfidentPrecision, AllAboveThresholdEqualsPrecision) {
  const auto pred = ids({0, 1, 1, 0});
  const auto truth = ids({0, 1, 0, 0});
  const auto al = align_labels(pred, truth);
  const std::vector<double> typ{0.9, 0.8, 0.7, 0.6};
  const auto cp = confident_precision(pred, truth, typ, al);
  EXPECT_EQ(cp.precision, precision(pred, truth, al));
  EXPECT_EQ(cp.coverage, 1.0);
}

TEST(ConfidentPrecision, RestrictsToConfidentPoints) {
  const auto pred = ids({0, 1, 1, 0});
  const auto truth = ids({0, 1, 0, 0});
  const auto al = align_labels(pred, truth);
  const std::vector<double> typ{0.9, 0.8, 0.1, 0.2};
  const auto cp = confident_precision(pred, truth, typ, al);
  EXPECT_EQ(cp.precision, 1.0);
  EXPECT_EQ(cp.coverage, 0.5);
}

TEST(ConfidentPrecision, NothingQualifiesConvention) {
  const auto a = ids({0, 1});
  const std::vector<double> typ{0.1, 0.05};
  const auto cp = confident_precision(a, a, typ, align_labels(a, a));
  EXPECT_EQ(cp.precision, 1.0);
  EXPECT_EQ(cp.coverage, 0.0);
}

TEST(ProbeSeries, TableAndCsv) {
  std::vector<StreamOutput> outs(2);
  outs[0].stream_index = 0;
  outs[0].probes = {{{ClassId{0}, 0.7}, {ClassId{1}, 0.2}}, {{ClassId{0}, 0.0}, {ClassId{1}, 0.1}}};
  outs[1].stream_index = 1;
  outs[1].probes = {{{ClassId{0}, 0.6}}, {{ClassId{0}, 0.3}}};
  const auto t = probe_series(outs);
  ASSERT_EQ(t.probe_count, 2u);
  EXPECT_EQ(t.rows[0], (std::vector<double>{0.7, 0.1}));
  EXPECT_EQ(t.rows[1], (std::vector<double>{0.6, 0.3}));
  std::ostringstream os;
  write_probe_csv(os, t);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "stream_index,probe_0,probe_1");
}

TEST(ProbeSeries, NoProbesGivesEmptyTable) {
  std::vector<StreamOutput> outs(3);
  const auto t = probe_series(outs);
  EXPECT_EQ(t.probe_count, 0u);
  std::ostringstream os;
  write_probe_csv(os, t);
  EXPECT_EQ(os.str(), "stream_index\n");
}

}  // namespace
}  // namespace streamsong
