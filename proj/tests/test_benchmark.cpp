// Copyright (c) 2026 the chamferpose authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "core/benchmark.hpp"
#include "core/synth.hpp"
#include "oracles.hpp"

using namespace chamferpose;

namespace {

SyntheticModelSpec small_spec() {
  SyntheticModelSpec spec;
  spec.chains = 2;
  spec.bones_per_chain = 2;
  spec.cameras = 2;
  spec.image_width = spec.image_height = 160;
  spec.segments = 24;
  spec.rings = 4;
  return spec;
}

MotionParams quick_motion() {
  MotionParams motion;
  motion.seed = 99;
  return motion;
}

}  // namespace

TEST_CASE("make_model: one chain, one bone gives a single rigid capsule with 6 DOF") {
  SyntheticModelSpec spec;
  spec.chains = 1;
  spec.bones_per_chain = 1;
  const Model model = make_model(spec);
  CHECK(model.skeleton.dof_count() == 6);
  CHECK(model.skeleton.scoring_joints().size() == 1);
}

TEST_CASE("make_model: generated weights sum to one everywhere") {
  const Model model = make_model(SyntheticModelSpec{});
  for (const auto& wv : model.mesh.weights) {
    double sum = 0;
    for (const auto& [bone, alpha] : wv) {
      CHECK(alpha >= 0);
      sum += alpha;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("make_model: rest pose renders non-empty in every ring camera") {
  const SyntheticModelSpec spec;
  const Model model = make_model(spec);
  const Rig rig = make_rig(spec);
  const auto transforms =
      bone_transforms(model.skeleton, PoseVector::Zero(model.skeleton.dof_count()));
  const auto posed = skin(model.mesh, transforms);
  for (const Camera& cam : rig.cameras) {
    const BinaryMask mask = render_silhouette(posed, model.mesh.faces, cam);
    CHECK(mask.area() > 100);
  }
}

TEST_CASE("make_model rejects degenerate specs") {
  SyntheticModelSpec spec;
  spec.cameras = 1;
  CHECK_THROWS_AS(make_model(spec), InvalidArgumentError);
  spec = SyntheticModelSpec{};
  spec.capsule_radius = -2;
  CHECK_THROWS_AS(make_model(spec), InvalidArgumentError);
}

TEST_CASE("generate_sequence is deterministic per seed and respects zero amplitude") {
  const Model model = make_model(small_spec());
  const Sequence a = generate_sequence(model, quick_motion(), 30);
  const Sequence b = generate_sequence(model, quick_motion(), 30);
  REQUIRE(a.frames.size() == 30);
  for (size_t i = 0; i < a.frames.size(); ++i)
    CHECK((a.frames[i] - b.frames[i]).norm() == 0);

  MotionParams other = quick_motion();
  other.seed = 100;
  const Sequence c = generate_sequence(model, other, 30);
  bool any_diff = false;
  for (size_t i = 0; i < a.frames.size(); ++i)
    if ((a.frames[i] - c.frames[i]).norm() > 0) any_diff = true;
  CHECK(any_diff);

  MotionParams still = quick_motion();
  still.translation_amp = still.rotation_amp = still.joint_amp = 0;
  const Sequence s = generate_sequence(model, still, 20);
  for (const auto& f : s.frames) CHECK(f.norm() == 0);
}

TEST_CASE("generate_sequence requires at least 16 frames") {
  const Model model = make_model(small_spec());
  CHECK_THROWS_AS(generate_sequence(model, quick_motion(), 15), InvalidArgumentError);
}

TEST_CASE("mean pose displacement grows with the frame gap") {
  const Model model = make_model(small_spec());
  const Sequence seq = generate_sequence(model, quick_motion(), 200);
  double prev = 0;
  for (int gap : {1, 5, 10, 15}) {
    double sum = 0;
    int n = 0;
    for (size_t k = 0; k + gap < seq.frames.size(); ++k) {
      sum += joint_error(seq.frames[k], seq.frames[k + gap], model.skeleton);
      ++n;
    }
    const double mean = sum / n;
    CHECK(mean > prev);
    prev = mean;
  }
}

TEST_CASE("sample_pairs: the protocol arithmetic") {
  const Model model = make_model(small_spec());
  const Sequence seq = generate_sequence(model, quick_motion(), 200);
  const std::vector<int> gaps = {1, 5, 10, 15};
  const auto pairs = sample_pairs(seq, 0.10, gaps, 11);

  std::set<int> tests;
  for (const auto& p : pairs) {
    tests.insert(p.test);
    CHECK(p.test - p.start == p.gap);
    CHECK(p.start >= 0);
    CHECK(p.test < 200);
  }
  CHECK(tests.size() == 20);
  CHECK(pairs.size() <= 80);

  // In-bounds formula per gap.
  for (int g : gaps) {
    int expected = 0;
    for (int t : tests)
      if (t - g >= 0) ++expected;
    int got = 0;
    for (const auto& p : pairs)
      if (p.gap == g) ++got;
    CHECK(got == expected);
  }
}

TEST_CASE("sample_pairs: full fraction with gap 1 gives frames-1 pairs") {
  const Model model = make_model(small_spec());
  const Sequence seq = generate_sequence(model, quick_motion(), 40);
  const auto pairs = sample_pairs(seq, 1.0, {1}, 3);
  CHECK(pairs.size() == 39);
}

TEST_CASE("sample_pairs: determinism and seed sensitivity") {
  const Model model = make_model(small_spec());
  const Sequence seq = generate_sequence(model, quick_motion(), 100);
  const auto a = sample_pairs(seq, 0.2, {1, 5}, 7);
  const auto b = sample_pairs(seq, 0.2, {1, 5}, 7);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].start == b[i].start);
    CHECK(a[i].test == b[i].test);
  }
  const auto c = sample_pairs(seq, 0.2, {1, 5}, 8);
  bool differs = c.size() != a.size();
  for (size_t i = 0; !differs && i < a.size(); ++i)
    if (c[i].test != a[i].test) differs = true;
  CHECK(differs);
}

TEST_CASE("sample_pairs rejects impossible requests") {
  const Model model = make_model(small_spec());
  const Sequence seq = generate_sequence(model, quick_motion(), 20);
  CHECK_THROWS_AS(sample_pairs(seq, 0.0, {1}, 1), InvalidArgumentError);
  CHECK_THROWS_AS(sample_pairs(seq, 0.5, {}, 1), InvalidArgumentError);
  CHECK_THROWS_AS(sample_pairs(seq, 0.5, {25}, 1), InvalidArgumentError);
}

TEST_CASE("joint_error basics") {
  const Model model = make_model(small_spec());
  const int dof = model.skeleton.dof_count();
  const PoseVector zero = PoseVector::Zero(dof);
  CHECK(joint_error(zero, zero, model.skeleton) == 0);

  // Single-capsule model: one scoring joint, global shift (3,4,0) -> 5 mm.
  SyntheticModelSpec one;
  one.chains = 1;
  one.bones_per_chain = 1;
  const Model single = make_model(one);
  PoseVector moved = PoseVector::Zero(6);
  moved[0] = 3;
  moved[1] = 4;
  CHECK(joint_error(moved, PoseVector::Zero(6), single.skeleton) ==
        doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("joint_error matches a direct recomputation") {
  const Model model = make_model(small_spec());
  const int dof = model.skeleton.dof_count();
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    PoseVector a(dof), b(dof);
    for (int d = 0; d < dof; ++d) {
      a[d] = u(rng) * (d < 3 ? 20 : 1);
      b[d] = u(rng) * (d < 3 ? 20 : 1);
    }
    const auto pa = joint_positions(model.skeleton, a);
    const auto pb = joint_positions(model.skeleton, b);
    double expected = 0;
    for (size_t j = 0; j < pa.size(); ++j) expected += (pa[j] - pb[j]).norm();
    expected /= pa.size();
    CHECK(joint_error(a, b, model.skeleton) == doctest::Approx(expected).epsilon(1e-12));
  }
}

namespace {

std::vector<VariantSpec> two_variants() {
  ChamferConfig ch;
  ch.variant = Variant::CH;
  ChamferConfig thres;
  thres.variant = Variant::DCH_Thres;
  return {{"ch", ch}, {"dch-thres", thres}};
}

}  // namespace

TEST_CASE("run_benchmark covers the grid, records failures, stays deterministic") {
  const SyntheticModelSpec spec = small_spec();
  const Model model = make_model(spec);
  const Rig rig = make_rig(spec);
  Sequence seq = generate_sequence(model, quick_motion(), 24);
  // Poison one frame so pairs touching it fail but the run completes.
  seq.frames[23][1] = 1e7;

  std::vector<FramePair> pairs;
  for (int t : {5, 11, 23}) pairs.push_back({t - 1, t, 1});
  pairs.push_back({6, 11, 5});

  SolverConfig scfg;
  scfg.max_outer_iterations = 4;
  BenchmarkOptions options;
  options.jobs = 2;
  const BenchmarkReport report =
      run_benchmark(model, rig, seq, pairs, two_variants(), scfg, options);
  CHECK(report.records.size() == pairs.size() * 2);
  CHECK(report.gaps == std::vector<int>{1, 5});

  int failed = 0;
  for (const auto& r : report.records) {
    if (r.failed) {
      ++failed;
      CHECK(r.final_mm == r.initial_mm);
      CHECK(!r.converged);
    }
  }
  CHECK(failed == 2);  // the poisoned pair, once per variant

  BenchmarkOptions sequential;
  sequential.jobs = 1;
  const BenchmarkReport again =
      run_benchmark(model, rig, seq, pairs, two_variants(), scfg, sequential);
  REQUIRE(again.records.size() == report.records.size());
  for (size_t i = 0; i < report.records.size(); ++i) {
    CHECK(again.records[i].final_mm == report.records[i].final_mm);
    CHECK(again.records[i].initial_mm == report.records[i].initial_mm);
    CHECK(again.records[i].variant == report.records[i].variant);
    CHECK(again.records[i].converged == report.records[i].converged);
  }
}

TEST_CASE("gap-0 pairs recover exactly") {
  const SyntheticModelSpec spec = small_spec();
  const Model model = make_model(spec);
  const Rig rig = make_rig(spec);
  const Sequence seq = generate_sequence(model, quick_motion(), 20);

  std::vector<FramePair> pairs = {{4, 4, 0}, {9, 9, 0}};
  SolverConfig scfg;
  const BenchmarkReport report =
      run_benchmark(model, rig, seq, pairs, two_variants(), scfg, {});
  for (const auto& r : report.records) {
    CHECK(!r.failed);
    CHECK(r.final_mm < 1e-6);
  }
}

TEST_CASE("initial error aggregate increases with gap on generated sequences") {
  const SyntheticModelSpec spec = small_spec();
  const Model model = make_model(spec);
  const Rig rig = make_rig(spec);
  const Sequence seq = generate_sequence(model, quick_motion(), 60);
  const auto pairs = sample_pairs(seq, 0.2, {1, 5, 10, 15}, 5);

  std::map<int, std::pair<double, int>> initial;
  for (const auto& p : pairs) {
    const double err = joint_error(seq.frames[p.start], seq.frames[p.test], model.skeleton);
    initial[p.gap].first += err;
    initial[p.gap].second += 1;
  }
  double prev = 0;
  for (int g : {1, 5, 10, 15}) {
    const double mean = initial[g].first / initial[g].second;
    CHECK(mean > prev);
    prev = mean;
  }
}

TEST_CASE("summarize: single pair, curve endpoint, recomputation oracle") {
  BenchmarkReport report;
  report.gaps = {1};
  PairRecord r;
  r.pair_id = 0;
  r.gap = 1;
  r.variant = "ch";
  r.initial_mm = 4;
  r.final_mm = 2.5;
  r.time_s = 0.1;
  r.converged = true;
  report.records.push_back(r);

  const Summary s = summarize(report);
  REQUIRE(s.variants.size() == 1);
  CHECK(s.variants[0].overall.mean == doctest::Approx(2.5));
  CHECK(s.variants[0].overall.stddev == doctest::Approx(0));
  CHECK(s.variants[0].curve.back().second == doctest::Approx(1.0));
}

TEST_CASE("summarize invariants on a synthetic record set") {
  std::mt19937 rng(62);
  std::uniform_real_distribution<double> err(0, 30);
  BenchmarkReport report;
  report.gaps = {1, 5, 10, 15};
  int id = 0;
  for (const char* variant : {"ch", "dch-thres", "dch-dt3"})
    for (int g : report.gaps)
      for (int i = 0; i < 12; ++i) {
        PairRecord r;
        r.pair_id = id++;
        r.gap = g;
        r.variant = variant;
        r.initial_mm = err(rng);
        r.final_mm = err(rng);
        r.time_s = 0.01;
        r.converged = true;
        report.records.push_back(r);
      }

  const Summary s = summarize(report);
  for (const auto& vs : s.variants) {
    // Curves are monotone non-decreasing and reach 1.
    double prev = -1;
    for (const auto& [thr, frac] : vs.curve) {
      CHECK(frac >= prev);
      prev = frac;
    }
    CHECK(vs.curve.back().second == doctest::Approx(1.0));

    // Count-weighted per-gap means reproduce the overall mean.
    double weighted = 0;
    int count = 0;
    for (const auto& g : vs.per_gap) {
      weighted += g.mean * g.count;
      count += g.count;
    }
    CHECK(weighted / count == doctest::Approx(vs.overall.mean).epsilon(1e-9));

    // Independent recomputation from the records.
    double mean = 0;
    int n = 0;
    for (const auto& r : report.records)
      if (r.variant == vs.variant) {
        mean += r.final_mm;
        ++n;
      }
    mean /= n;
    CHECK(vs.overall.mean == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("summarize rejects an empty report") {
  BenchmarkReport report;
  CHECK_THROWS_AS(summarize(report), InvalidArgumentError);
}
