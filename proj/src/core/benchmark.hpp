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

#ifndef CHAMFERPOSE_CORE_BENCHMARK_HPP
#define CHAMFERPOSE_CORE_BENCHMARK_HPP

#include <string>
#include <vector>

#include "core/chamfer.hpp"
#include "core/solver.hpp"
#include "core/synth.hpp"
#include "core/types.hpp"

namespace chamferpose {

/// One configured distance variant of a benchmark run. The label names the
/// row in reports (several entries may share a variant with different
/// parameters, e.g. signed vs unsigned DCH-Thres).
struct VariantSpec {
  std::string label;
  ChamferConfig cfg;
};

struct PairRecord {
  int pair_id = 0;
  int gap = 0;
  std::string variant;
  double initial_mm = 0;
  double final_mm = 0;
  double time_s = 0;
  bool converged = false;
  bool failed = false;
};

struct BenchmarkReport {
  std::vector<PairRecord> records;
  std::vector<int> gaps;  // protocol gap list, reporting order
};

struct GapStats {
  int gap = -1;  // -1 = overall
  int count = 0;
  double mean = 0;
  double stddev = 0;
};

struct VariantSummary {
  std::string variant;
  std::vector<GapStats> per_gap;
  GapStats overall;
  double mean_time_s = 0;
  std::vector<std::pair<double, double>> curve;  // (threshold mm, fraction)
};

struct Summary {
  std::vector<VariantSummary> variants;
};

struct BenchmarkOptions {
  bool timing = false;  // forces sequential execution
  int jobs = 0;         // 0: hardware concurrency
  double contour_tol = 1.0;  // px, target polyline fitting
  RimParams rim_params;
};

/// Mean Euclidean distance between the two poses' joint positions.
double joint_error(const PoseVector& estimated, const PoseVector& truth,
                   const Skeleton& skel);

/// Renders the target pose in every camera and prepares the per-view
/// matching fields. Cameras with an empty projection are skipped.
std::vector<TargetView> build_targets(const Skeleton& skel, const SkinnedMesh& mesh,
                                      const PoseVector& target_pose, const Rig& rig,
                                      const ChamferConfig& cfg, double contour_tol);

/// Runs every (pair, variant) cell: initialize at the start frame, match
/// the rendered test-frame silhouettes, record errors and wall time.
/// Individual failures become failed rows and never abort the run.
BenchmarkReport run_benchmark(const Model& model, const Rig& rig, const Sequence& seq,
                              const std::vector<FramePair>& pairs,
                              const std::vector<VariantSpec>& variants,
                              const SolverConfig& scfg,
                              const BenchmarkOptions& options = {});

/// Per-gap and overall mean +- std per variant plus cumulative-error
/// curves sampled at 0.5 mm thresholds.
Summary summarize(const BenchmarkReport& report);

}  // namespace chamferpose

#endif  // CHAMFERPOSE_CORE_BENCHMARK_HPP
