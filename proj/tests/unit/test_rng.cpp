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

#include <algorithm>
#include <cmath>
#include <set>

#include "streamsong/error.hpp"
#include "streamsong/rng.hpp"

namespace streamsong {
namespace {

TEST(Rng, EngineMatchesStandardReferenceValue) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  Rng rng;
  rng.discard(9999);
  EXPECT_EQ(rng(), 9981545732273789042ull);
}

TEST(Rng, Uniform01UsesTop53Bits) {
  Rng a(42), b(42);
  const double u = uniform01(a);
  EXPECT_EQ(u, static_cast<double>(b() >> 11) * 0x1.0p-53);
  for (int i = 0; i < 1000; ++i) {
    const double v = uniform01(a);
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Rng, NormalHasUnitMoments) {
  Rng rng(7);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = standard_normal(rng);
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Rng, UniformIndexChiSquare) {
  Rng rng(3);
  const std::size_t k = 4;
  const int n = 10000;
  std::vector<int> counts(k, 0);
  for (int i = 0; i < n; ++i) ++counts[uniform_index(rng, k)];
  double chi2 = 0;
  for (int c : counts) chi2 += (c - n / 4.0) * (c - n / 4.0) / (n / 4.0);
  EXPECT_LT(chi2, 11.34);  // 3 dof, p = 0.01
}

TEST(Rng, WeightedIndexFollowsWeightsAndSkipsZero) {
  Rng rng(5);
  const std::vector<double> w{0.0, 1.0, 3.0};
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 40000; ++i) ++counts[weighted_index(rng, w)];
  EXPECT_EQ(counts[0], 0);
  EXPECT_NEAR(counts[2] / 40000.0, 0.75, 0.01);
  const std::vector<double> zeros{0.0, 0.0};
  EXPECT_LT(weighted_index(rng, zeros), 2u);
}

TEST(Rng, PermutationAndSampling) {
  Rng rng(9);
  auto p = random_permutation(rng, 50);
  std::sort(p.begin(), p.end());
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(p[i], i);
  const auto s = sample_without_replacement(rng, 20, 7);
  EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 7u);
  for (std::size_t i : s) EXPECT_LT(i, 20u);
}

TEST(Rng, StateRoundTrips) {
  Rng rng(11);
  rng.discard(123);
  Rng copy = deserialize_rng(serialize_rng(rng));
  for (int i = 0; i < 10; ++i) EXPECT_EQ(rng(), copy());
  EXPECT_THROW(deserialize_rng("not a state"), Error);
}

}  // namespace
}  // namespace streamsong
