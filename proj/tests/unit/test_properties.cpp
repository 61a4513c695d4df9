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

#include "oracles.hpp"
#include "streamsong/datasets.hpp"
#include "streamsong/eval.hpp"
#include "streamsong/neural_gas.hpp"
#include "streamsong/persistence.hpp"
#include "streamsong/possibilistic.hpp"
#include "streamsong/sp1m.hpp"
#include "streamsong/stream_engine.hpp"

namespace streamsong {
namespace {

// A random model: 1-4 classes in 1-4 dimensions, 1-8 prototypes each, random etas.
Model random_model(Rng& rng, std::size_t* dim_out = nullptr) {
  const std::size_t dim = 1 + uniform_index(rng, 4);
  const std::size_t classes = 1 + uniform_index(rng, 4);
  std::vector<oracle::FootprintSpec> specs;
  for (std::size_t c = 0; c < classes; ++c) {
    oracle::FootprintSpec s{static_cast<std::int64_t>(c), {}, 0.1 + 5.0 * uniform01(rng)};
    const std::size_t n = 1 + uniform_index(rng, 8);
    for (std::size_t i = 0; i < n; ++i) {
      FeatureVector p(dim);
      // Coarse grid so exact distance ties occur and exercise the tie-break.
      for (auto& v : p) v = static_cast<double>(uniform_index(rng, 7));
      s.positions.push_back(p);
    }
    specs.push_back(std::move(s));
  }
  if (dim_out) *dim_out = dim;
  return oracle::make_model(dim, specs);
}

FeatureVector random_point(Rng& rng, std::size_t dim, double scale = 8.0) {
  FeatureVector x(dim);
  for (auto& v : x) v = scale * uniform01(rng) - 1.0;
  return x;
}

TEST(Property, KnnMatchesExhaustiveSort) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t dim = 0;
    const Model m = random_model(rng, &dim);
    FeatureVector x(dim);
    for (auto& v : x) v = static_cast<double>(uniform_index(rng, 7));
    const std::size_t k = 1 + uniform_index(rng, 12);
    const auto got = k_nearest_prototypes(x, m, k);
    const auto want = oracle::rank_all(x, m);
    ASSERT_EQ(got.size(), std::min(k, want.size()));
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_EQ(to_int(got[i].prototype->id), want[i].proto_id) << "trial " << trial;
      ASSERT_EQ(got[i].distance, want[i].d);
    }
  }
}

TEST(Property, ClassTypicalitiesMatchOracleAndStayInRange) {
  Rng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t dim = 0;
    const Model m = random_model(rng, &dim);
    const FeatureVector x = random_point(rng, dim);
    const std::size_t k = 1 + uniform_index(rng, 5);
    const double fz = 1.1 + 2.0 * uniform01(rng);
    const auto got = class_typicalities(x, m, k, fz);
    const auto want = oracle::class_typicalities(x, m, k, fz);
    ASSERT_EQ(got.size(), m.footprints().size());
    for (const auto& [cls, v] : want) {
      ASSERT_TRUE(got.contains(cls));
      EXPECT_GE(got.at(cls), 0.0);
      EXPECT_LE(got.at(cls), 1.0);
      EXPECT_NEAR(got.at(cls), v, 1e-12) << "trial " << trial;
    }
  }
}

TEST(Property, MembershipSumsToOne) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Model m = random_model(rng);
    for (const auto& [cls, fp] : m.footprints()) {
      for (const auto& p : fp.prototypes) {
        double sum = 0;
        for (const auto& [c, v] : prototype_fuzzy_membership(p, m, 3)) sum += v;
        EXPECT_NEAR(sum, 1.0, 1e-15);
      }
    }
  }
}

TEST(Property, PcmFixedPoint) {
  Rng rng(31);
  const double tol = 1e-4;
  int converged = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + uniform_index(rng, 3);
    FeatureVector mean(dim), cov(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      mean[d] = 20.0 * uniform01(rng);
      cov[d] = 0.2 + 3.0 * uniform01(rng);
    }
    const auto pts = gen_gaussian_class(mean, cov, 30 + uniform_index(rng, 100), rng);
    const double m = 1.2 + 1.5 * uniform01(rng);
    const auto r = p1m(pts, uniform_index(rng, pts.size()), m, tol, 1000);
    converged += r.converged;
    // Recompute typicalities at the returned state, then the weighted mean.
    FeatureVector next(dim, 0.0);
    double den = 0.0;
    for (const auto& p : pts) {
      double d2 = 0;
      for (std::size_t d = 0; d < dim; ++d) d2 += (p[d] - r.center[d]) * (p[d] - r.center[d]);
      const double w = std::pow(oracle::typicality(d2, r.eta, m), m);
      for (std::size_t d = 0; d < dim; ++d) next[d] += w * p[d];
      den += w;
    }
    for (auto& v : next) v /= den;
    EXPECT_LT(oracle::dist(next, r.center), 10 * tol) << "trial " << trial;
    for (double u : r.typicalities) {
      EXPECT_GT(u, 0.0);
      EXPECT_LE(u, 1.0);
    }
    // The center is a convex combination of the points.
    for (std::size_t d = 0; d < dim; ++d) {
      double lo = 1e300, hi = -1e300;
      for (const auto& p : pts) {
        lo = std::min(lo, p[d]);
        hi = std::max(hi, p[d]);
      }
      EXPECT_GE(r.center[d], lo);
      EXPECT_LE(r.center[d], hi);
    }
  }
  EXPECT_EQ(converged, 100);
}

// new == old + c (x - old) for a single c in [0, 1).
void expect_on_segment(const FeatureVector& old, const FeatureVector& now, const FeatureVector& x) {
  double c = -1;
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (x[d] == old[d]) {
      EXPECT_EQ(now[d], old[d]);
      continue;
    }
    const double cd = (now[d] - old[d]) / (x[d] - old[d]);
    if (c < 0) c = cd;
    EXPECT_NEAR(cd, c, 1e-9);
    EXPECT_GE(cd, 0.0);
    EXPECT_LT(cd, 1.0);
  }
}

TEST(Property, UpdatesAreConvexCombinations) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t dim = 0;
    Model m = random_model(rng, &dim);
    const FeatureVector x = random_point(rng, dim);
    const ClassId cls{static_cast<std::int64_t>(uniform_index(rng, m.footprints().size()))};
    const auto before = m.footprint(cls).prototypes;
    if (trial % 2 == 0) {
      update_footprint_knn(m, cls, x, uniform01(rng));
    } else {
      update_footprint_knn_local(m, cls, x);
    }
    const auto& after = m.footprint(cls).prototypes;
    for (std::size_t i = 0; i < before.size(); ++i) {
      expect_on_segment(before[i].position, after[i].position, x);
    }

    std::vector<FeatureVector> protos;
    for (const auto& p : before) protos.push_back(p.position);
    const auto old = protos;
    ng_adapt_step(protos, x, uniform01(rng) * 0.99 + 0.01, 0.1 + 3 * uniform01(rng));
    for (std::size_t i = 0; i < protos.size(); ++i) expect_on_segment(old[i], protos[i], x);
  }
}

TEST(Property, PersistedModelsScoreIdentically) {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t dim = 0;
    const Model m = random_model(rng, &dim);
    const Model back = model_from_json(nlohmann::json::parse(model_to_json(m).dump()));
    for (int q = 0; q < 20; ++q) {
      const FeatureVector x = random_point(rng, dim);
      EXPECT_EQ(class_typicalities(x, m), class_typicalities(x, back));
    }
  }
}

TEST(Property, Sp1mCentersNeverMutuallyCoincident) {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<FeatureVector> pts;
    const std::size_t blobs = 1 + uniform_index(rng, 4);
    for (std::size_t b = 0; b < blobs; ++b) {
      const FeatureVector mean{30 * uniform01(rng), 30 * uniform01(rng)}, cov{1, 1};
      const auto g = gen_gaussian_class(mean, cov, 40, rng);
      pts.insert(pts.end(), g.begin(), g.end());
    }
    const auto found = sp1m(pts, 5, 15, 1.5, 1e-4, 100, rng);
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (std::size_t j = 0; j < found.size(); ++j) {
        if (i == j) continue;
        const std::vector<ClusterRegion> other{{found[j].center, found[j].eta}};
        EXPECT_FALSE(coincidence_check(found[i].center, found[i].eta, other, 1.5));
      }
    }
  }
}

struct RunCase {
  int dataset;
  std::uint64_t seed;
};

class StreamInvariants : public ::testing::TestWithParam<RunCase> {};

TEST_P(StreamInvariants, HoldAtEveryStep) {
  BenchmarkSpec spec;
  spec.dataset_id = GetParam().dataset;
  spec.seed = GetParam().seed;
  const auto ls = make_benchmark(spec);
  EngineOptions opt;
  opt.buffer_capacity = GetParam().seed % 2 == 0 ? std::optional<std::size_t>(80) : std::nullopt;
  StreamEngine engine = StreamEngine::from_labeled(ls.init, HyperParams{}, spec.seed, opt);
  const double t = engine.model().params().typicality_threshold;
  const auto pts = ls.stream_points();
  std::vector<ClassId> labels;
  for (const auto& x : pts) {
    std::vector<ClusterRegion> regions;
    for (const auto& [cls, fp] : engine.model().footprints()) {
      for (const auto& p : fp.prototypes) regions.push_back({p.position, fp.eta});
    }
    const auto out = engine.process_point(x);
    labels.push_back(out.label);
    EXPECT_EQ(out.max_typicality() > t, out.event == EventKind::kClassified);
    if (out.label != kOutlier) EXPECT_TRUE(engine.model().has_class(out.label));
    for (const auto& [cls, v] : out.typicality) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_EQ(engine.buffer().size() + engine.absorbed_count() + engine.classified_count() +
                  engine.evicted_count(),
              engine.points_seen());
    if (out.new_class) {
      for (std::size_t idx : out.absorbed) labels[idx] = *out.new_class;
      // The new footprint's centroid is not inside an earlier region.
      const auto& fp = engine.model().footprint(*out.new_class);
      FeatureVector c(x.size(), 0.0);
      for (const auto& p : fp.prototypes) {
        for (std::size_t d = 0; d < c.size(); ++d) c[d] += p.position[d] / fp.prototypes.size();
      }
      EXPECT_LE(max_region_typicality(c, regions, 1.5), 0.5);
    }
  }
  std::vector<bool> buffered(pts.size(), false);
  for (const auto& e : engine.buffer().entries) buffered[e.stream_index] = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (labels[i] == kOutlier) EXPECT_TRUE(buffered[i] || engine.evicted_count() > 0);
  }
  EXPECT_NO_THROW(engine.model().check_invariants());
}

INSTANTIATE_TEST_SUITE_P(Datasets, StreamInvariants,
                         ::testing::Values(RunCase{1, 1}, RunCase{2, 2}, RunCase{3, 3},
                                           RunCase{4, 4}, RunCase{1, 6}));

TEST(Property, FullRunIsDeterministic) {
  BenchmarkSpec spec;
  spec.dataset_id = 2;
  spec.seed = 5;
  const auto ls = make_benchmark(spec);
  auto once = [&] {
    StreamEngine engine = StreamEngine::from_labeled(ls.init, HyperParams{}, 5);
    const auto run = run_stream(engine, ls.stream_points());
    nlohmann::json j = nlohmann::json::array();
    for (const auto& o : run.outputs) j.push_back(output_to_json(o));
    return std::make_pair(j.dump(), model_to_json(engine.model()).dump());
  };
  EXPECT_EQ(once(), once());
}

TEST(Property, ProbesNeverChangeTheRun) {
  BenchmarkSpec spec;
  spec.dataset_id = 1;
  spec.seed = 3;
  const auto ls = make_benchmark(spec);
  auto final_model = [&](std::vector<FeatureVector> probes) {
    EngineOptions opt;
    opt.probes = std::move(probes);
    StreamEngine engine = StreamEngine::from_labeled(ls.init, HyperParams{}, 3, opt);
    run_stream(engine, ls.stream_points());
    return model_to_json(engine.model()).dump();
  };
  EXPECT_EQ(final_model({}), final_model({{20, 20}, {40, 40}}));
}

TEST(Property, PrecisionInvariantUnderRelabeling) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 20 + uniform_index(rng, 50);
    std::vector<ClassId> pred(n), truth(n);
    std::vector<double> typ(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = static_cast<std::int64_t>(uniform_index(rng, 5)) - 1;
      pred[i] = p < 0 ? kOutlier : ClassId{p};
      truth[i] = ClassId{static_cast<std::int64_t>(uniform_index(rng, 4))};
      typ[i] = uniform01(rng);
    }
    const auto al = align_labels(pred, truth);
    const double p = precision(pred, truth, al);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    // Shift every predicted id and every truth id: same score.
    auto pred2 = pred;
    auto truth2 = truth;
    for (auto& c : pred2) {
      if (c != kOutlier) c = ClassId{to_int(c) + 10};
    }
    for (auto& c : truth2) c = ClassId{to_int(c) * 3 + 100};
    EXPECT_DOUBLE_EQ(precision(pred2, truth2, align_labels(pred2, truth2)), p);
    const double lowest = *std::min_element(typ.begin(), typ.end());
    const auto cp = confident_precision(pred, truth, typ, al, lowest / 2);
    EXPECT_EQ(cp.precision, p);
    EXPECT_EQ(cp.coverage, 1.0);
  }
}

}  // namespace
}  // namespace streamsong
