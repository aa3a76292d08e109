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

#include "core/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

namespace chamferpose {

double joint_error(const PoseVector& estimated, const PoseVector& truth,
                   const Skeleton& skel) {
  const auto pe = joint_positions(skel, estimated);
  const auto pt = joint_positions(skel, truth);
  double sum = 0;
  for (size_t j = 0; j < pe.size(); ++j) sum += (pe[j] - pt[j]).norm();
  return sum / static_cast<double>(pe.size());
}

std::vector<TargetView> build_targets(const Skeleton& skel, const SkinnedMesh& mesh,
                                      const PoseVector& target_pose, const Rig& rig,
                                      const ChamferConfig& cfg, double contour_tol) {
  const auto transforms = bone_transforms(skel, target_pose);
  const auto posed = skin(mesh, transforms);

  std::vector<TargetView> targets;
  for (size_t c = 0; c < rig.cameras.size(); ++c) {
    const Camera& cam = rig.cameras[c];
    try {
      const BinaryMask mask = render_silhouette(posed, mesh.faces, cam);
      const OrientedContour oc = orient_mask_contours(mask, contour_tol);
      TargetView view;
      view.camera = cam;
      view.camera_id = static_cast<int>(c);
      view.fields = build_fields(oc, cam.width, cam.height, cfg);
      targets.push_back(std::move(view));
    } catch (const EmptyMaskError&) {
      continue;
    }
  }
  return targets;
}

namespace {

PairRecord run_cell(const Model& model, const Rig& rig, const Sequence& seq,
                    const FramePair& pair, int pair_id, const VariantSpec& variant,
                    const SolverConfig& scfg, const BenchmarkOptions& options) {
  PairRecord rec;
  rec.pair_id = pair_id;
  rec.gap = pair.gap;
  rec.variant = variant.label;

  const PoseVector& truth = seq.frames[pair.test];
  const PoseVector& init = seq.frames[pair.start];
  rec.initial_mm = joint_error(init, truth, model.skeleton);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto targets = build_targets(model.skeleton, model.mesh, truth, rig,
                                       variant.cfg, options.contour_tol);
    const PoseEstimate est = estimate_pose(init, targets, model.skeleton, model.mesh,
                                           scfg, options.rim_params);
    rec.final_mm = joint_error(est.pose, truth, model.skeleton);
    rec.converged = est.converged;
  } catch (const Error&) {
    rec.final_mm = rec.initial_mm;
    rec.converged = false;
    rec.failed = true;
  }
  rec.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace

BenchmarkReport run_benchmark(const Model& model, const Rig& rig, const Sequence& seq,
                              const std::vector<FramePair>& pairs,
                              const std::vector<VariantSpec>& variants,
                              const SolverConfig& scfg,
                              const BenchmarkOptions& options) {
  if (pairs.empty() || variants.empty())
    throw InvalidArgumentError("run_benchmark: empty pair or variant list");
  scfg.validate();
  for (const auto& v : variants) v.cfg.validate();

  BenchmarkReport report;
  {
    std::vector<int> gaps;
    for (const auto& p : pairs)
      if (std::find(gaps.begin(), gaps.end(), p.gap) == gaps.end()) gaps.push_back(p.gap);
    std::sort(gaps.begin(), gaps.end());
    report.gaps = gaps;
  }

  const size_t cells = pairs.size() * variants.size();
  report.records.resize(cells);
  auto run_index = [&](size_t i) {
    const size_t vi = i / pairs.size();
    const size_t pi = i % pairs.size();
    report.records[i] = run_cell(model, rig, seq, pairs[pi], static_cast<int>(pi),
                                 variants[vi], scfg, options);
  };

  int jobs = options.timing ? 1 : options.jobs;
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(cells)));

  if (jobs == 1) {
    for (size_t i = 0; i < cells; ++i) run_index(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&]() {
        for (size_t i = next.fetch_add(1); i < cells; i = next.fetch_add(1)) run_index(i);
      });
    for (auto& t : workers) t.join();
  }
  return report;
}

namespace {

GapStats stats_of(const std::vector<double>& values, int gap) {
  GapStats s;
  s.gap = gap;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  double var = 0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / values.size());
  return s;
}

}  // namespace

Summary summarize(const BenchmarkReport& report) {
  if (report.records.empty())
    throw InvalidArgumentError("summarize: empty report");

  std::vector<std::string> labels;
  for (const auto& r : report.records)
    if (std::find(labels.begin(), labels.end(), r.variant) == labels.end())
      labels.push_back(r.variant);

  Summary summary;
  for (const auto& label : labels) {
    VariantSummary vs;
    vs.variant = label;

    std::vector<double> all;
    double time_sum = 0;
    for (int gap : report.gaps) {
      std::vector<double> vals;
      for (const auto& r : report.records)
        if (r.variant == label && r.gap == gap) vals.push_back(r.final_mm);
      vs.per_gap.push_back(stats_of(vals, gap));
    }
    for (const auto& r : report.records) {
      if (r.variant != label) continue;
      all.push_back(r.final_mm);
      time_sum += r.time_s;
    }
    vs.overall = stats_of(all, -1);
    vs.mean_time_s = all.empty() ? 0 : time_sum / all.size();

    const double max_err = *std::max_element(all.begin(), all.end());
    const int steps = static_cast<int>(std::ceil(max_err / 0.5)) + 1;
    for (int i = 0; i <= steps; ++i) {
      const double thr = 0.5 * i;
      const double frac =
          static_cast<double>(std::count_if(all.begin(), all.end(),
                                            [&](double v) { return v <= thr; })) /
          all.size();
      vs.curve.emplace_back(thr, frac);
    }
    summary.variants.push_back(std::move(vs));
  }
  return summary;
}

}  // namespace chamferpose
