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

#include "chamferpose.h"

#include <cstring>
#include <new>
#include <string>

#include "core/benchmark.hpp"
#include "core/serialize.hpp"
#include "core/solver.hpp"
#include "core/synth.hpp"

using namespace chamferpose;

struct cpz_model {
  Model model;
};
struct cpz_rig {
  Rig rig;
};
struct cpz_sequence {
  Sequence seq;
};
struct cpz_result {
  PoseEstimate est;
};
struct cpz_report {
  BenchmarkReport report;
};

namespace {

thread_local std::string g_last_error = "no error";

cpz_status fail(cpz_status code, const char* what) {
  g_last_error = what;
  return code;
}

cpz_status to_status(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return fail(CPZ_ERROR_PARSE, e.what());
  if (dynamic_cast<const IoError*>(&e)) return fail(CPZ_ERROR_IO, e.what());
  if (dynamic_cast<const InvalidArgumentError*>(&e))
    return fail(CPZ_ERROR_INVALID_ARGUMENT, e.what());
  if (dynamic_cast<const EstimationFailedError*>(&e))
    return fail(CPZ_ERROR_ESTIMATION, e.what());
  if (dynamic_cast<const DegenerateError*>(&e) || dynamic_cast<const EmptyMaskError*>(&e))
    return fail(CPZ_ERROR_DEGENERATE, e.what());
  return fail(CPZ_ERROR_INTERNAL, e.what());
}

template <typename Fn>
cpz_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return to_status(e);
  } catch (...) {
    return fail(CPZ_ERROR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cpz_status out_string(const std::string& s, char** out) {
  if (!out) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null output pointer");
  *out = dup_string(s);
  return *out ? CPZ_OK : fail(CPZ_ERROR_INTERNAL, "allocation failed");
}

PoseVector pose_from_array(const double* data, int dof, int expected) {
  if (!data) throw InvalidArgumentError("null pose pointer");
  if (dof != expected)
    throw InvalidArgumentError("pose length " + std::to_string(dof) +
                               " does not match model dof " + std::to_string(expected));
  PoseVector pose(dof);
  for (int i = 0; i < dof; ++i) pose[i] = data[i];
  return pose;
}

MotionParams motion_from_json_text(const char* motion_json) {
  MotionParams motion;
  if (!motion_json) return motion;
  // Reuse the run-config sequence section.
  const std::string wrapped = std::string("{\"sequence\":") + motion_json + "}";
  RunConfig cfg = run_config_from_json(wrapped);
  motion = cfg.motion;
  return motion;
}

}  // namespace

extern "C" {

const char* cpz_last_error(void) { return g_last_error.c_str(); }

void cpz_string_free(char* s) { delete[] s; }

cpz_status cpz_synth_model(const char* spec_json, cpz_model** out_model,
                           cpz_rig** out_rig) {
  return guarded([&]() {
    const SyntheticModelSpec spec =
        spec_json ? model_spec_from_json(spec_json) : SyntheticModelSpec{};
    if (out_model) {
      auto* m = new cpz_model{make_model(spec)};
      *out_model = m;
    }
    if (out_rig) {
      auto* r = new cpz_rig{make_rig(spec)};
      *out_rig = r;
    }
    return CPZ_OK;
  });
}

cpz_status cpz_synth_sequence(const cpz_model* model, const char* motion_json,
                              int frames, cpz_sequence** out_seq) {
  return guarded([&]() {
    if (!model || !out_seq)
      return fail(CPZ_ERROR_INVALID_ARGUMENT, "null model or output");
    const MotionParams motion = motion_from_json_text(motion_json);
    *out_seq = new cpz_sequence{generate_sequence(model->model, motion, frames)};
    return CPZ_OK;
  });
}

cpz_status cpz_model_from_json(const char* text, cpz_model** out) {
  return guarded([&]() {
    if (!text || !out) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    *out = new cpz_model{model_from_json(text)};
    return CPZ_OK;
  });
}

cpz_status cpz_model_to_json(const cpz_model* model, char** out_text) {
  return guarded([&]() {
    if (!model) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null model");
    return out_string(model_to_json(model->model), out_text);
  });
}

cpz_status cpz_rig_from_json(const char* text, cpz_rig** out) {
  return guarded([&]() {
    if (!text || !out) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    *out = new cpz_rig{rig_from_json(text)};
    return CPZ_OK;
  });
}

cpz_status cpz_rig_to_json(const cpz_rig* rig, char** out_text) {
  return guarded([&]() {
    if (!rig) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null rig");
    return out_string(rig_to_json(rig->rig), out_text);
  });
}

cpz_status cpz_sequence_from_json(const char* text, cpz_sequence** out) {
  return guarded([&]() {
    if (!text || !out) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    *out = new cpz_sequence{sequence_from_json(text)};
    return CPZ_OK;
  });
}

cpz_status cpz_sequence_to_json(const cpz_sequence* seq, char** out_text) {
  return guarded([&]() {
    if (!seq) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null sequence");
    return out_string(sequence_to_json(seq->seq), out_text);
  });
}

void cpz_model_free(cpz_model* m) { delete m; }
void cpz_rig_free(cpz_rig* r) { delete r; }
void cpz_sequence_free(cpz_sequence* s) { delete s; }

int cpz_model_dof(const cpz_model* model) {
  return model ? model->model.skeleton.dof_count() : -1;
}

int cpz_rig_camera_count(const cpz_rig* rig) {
  return rig ? static_cast<int>(rig->rig.cameras.size()) : -1;
}

int cpz_sequence_length(const cpz_sequence* seq) {
  return seq ? static_cast<int>(seq->seq.frames.size()) : -1;
}

cpz_status cpz_sequence_pose(const cpz_sequence* seq, int frame, double* out,
                             int capacity) {
  return guarded([&]() {
    if (!seq || !out) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    if (frame < 0 || frame >= static_cast<int>(seq->seq.frames.size()))
      return fail(CPZ_ERROR_INVALID_ARGUMENT, "frame index out of range");
    const PoseVector& pose = seq->seq.frames[frame];
    if (capacity < pose.size())
      return fail(CPZ_ERROR_INVALID_ARGUMENT, "pose buffer too small");
    for (int i = 0; i < pose.size(); ++i) out[i] = pose[i];
    return CPZ_OK;
  });
}

cpz_status cpz_joint_error(const cpz_model* model, const double* pose_a,
                           const double* pose_b, int dof, double* out_mm) {
  return guarded([&]() {
    if (!model || !out_mm) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    const int expected = model->model.skeleton.dof_count();
    const PoseVector a = pose_from_array(pose_a, dof, expected);
    const PoseVector b = pose_from_array(pose_b, dof, expected);
    *out_mm = joint_error(a, b, model->model.skeleton);
    return CPZ_OK;
  });
}

cpz_status cpz_render_mask_pbm(const cpz_model* model, const cpz_rig* rig,
                               int camera, const double* pose, int dof,
                               char** out_data, size_t* out_size) {
  return guarded([&]() {
    if (!model || !rig || !out_data || !out_size)
      return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    if (camera < 0 || camera >= static_cast<int>(rig->rig.cameras.size()))
      return fail(CPZ_ERROR_INVALID_ARGUMENT, "camera index out of range");
    const PoseVector p = pose_from_array(pose, dof, model->model.skeleton.dof_count());
    const auto transforms = bone_transforms(model->model.skeleton, p);
    const auto posed = skin(model->model.mesh, transforms);
    const BinaryMask mask =
        render_silhouette(posed, model->model.mesh.faces, rig->rig.cameras[camera]);
    const std::string pbm = mask_to_pbm(mask);
    *out_data = new (std::nothrow) char[pbm.size()];
    if (!*out_data) return fail(CPZ_ERROR_INTERNAL, "allocation failed");
    std::memcpy(*out_data, pbm.data(), pbm.size());
    *out_size = pbm.size();
    return CPZ_OK;
  });
}

cpz_status cpz_contour_csv(const cpz_model* model, const cpz_rig* rig, int camera,
                           const double* pose, int dof, double contour_tol,
                           char** out_csv) {
  return guarded([&]() {
    if (!model || !rig) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    if (camera < 0 || camera >= static_cast<int>(rig->rig.cameras.size()))
      return fail(CPZ_ERROR_INVALID_ARGUMENT, "camera index out of range");
    const PoseVector p = pose_from_array(pose, dof, model->model.skeleton.dof_count());
    const auto transforms = bone_transforms(model->model.skeleton, p);
    const auto posed = skin(model->model.mesh, transforms);
    const BinaryMask mask =
        render_silhouette(posed, model->model.mesh.faces, rig->rig.cameras[camera]);
    return out_string(contour_to_csv(orient_mask_contours(mask, contour_tol)), out_csv);
  });
}

cpz_status cpz_estimate(const cpz_model* model, const cpz_rig* rig,
                        const double* start_pose, const double* target_pose,
                        int dof, const char* chamfer_json, const char* solver_json,
                        cpz_result** out) {
  return guarded([&]() {
    if (!model || !rig || !out) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    const int expected = model->model.skeleton.dof_count();
    const PoseVector start = pose_from_array(start_pose, dof, expected);
    const PoseVector target = pose_from_array(target_pose, dof, expected);
    const ChamferConfig ccfg =
        chamfer_json ? chamfer_config_from_json(chamfer_json) : ChamferConfig{};
    const SolverConfig scfg =
        solver_json ? solver_config_from_json(solver_json) : SolverConfig{};

    const auto targets = build_targets(model->model.skeleton, model->model.mesh,
                                       target, rig->rig, ccfg, 1.0);
    const PoseEstimate est =
        estimate_pose(start, targets, model->model.skeleton, model->model.mesh, scfg);
    *out = new cpz_result{est};
    return CPZ_OK;
  });
}

int cpz_result_dof(const cpz_result* r) {
  return r ? static_cast<int>(r->est.pose.size()) : -1;
}

cpz_status cpz_result_pose(const cpz_result* r, double* out, int capacity) {
  return guarded([&]() {
    if (!r || !out) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    if (capacity < r->est.pose.size())
      return fail(CPZ_ERROR_INVALID_ARGUMENT, "pose buffer too small");
    for (int i = 0; i < r->est.pose.size(); ++i) out[i] = r->est.pose[i];
    return CPZ_OK;
  });
}

int cpz_result_converged(const cpz_result* r) {
  return r ? (r->est.converged ? 1 : 0) : -1;
}

int cpz_result_history_length(const cpz_result* r) {
  return r ? static_cast<int>(r->est.residual_history.size()) : -1;
}

cpz_status cpz_result_history(const cpz_result* r, double* out, int capacity) {
  return guarded([&]() {
    if (!r || !out) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    if (capacity < static_cast<int>(r->est.residual_history.size()))
      return fail(CPZ_ERROR_INVALID_ARGUMENT, "history buffer too small");
    for (size_t i = 0; i < r->est.residual_history.size(); ++i)
      out[i] = r->est.residual_history[i];
    return CPZ_OK;
  });
}

void cpz_result_free(cpz_result* r) { delete r; }

cpz_status cpz_benchmark_run(const cpz_model* model, const cpz_rig* rig,
                             const cpz_sequence* seq, const char* run_config_json,
                             int timing, int jobs, cpz_report** out) {
  return guarded([&]() {
    if (!model || !rig || !seq || !out)
      return fail(CPZ_ERROR_INVALID_ARGUMENT, "null argument");
    const RunConfig cfg =
        run_config_json ? run_config_from_json(run_config_json) : default_run_config();

    const auto pairs = sample_pairs(seq->seq, cfg.fraction, cfg.gaps, cfg.pair_seed);
    BenchmarkOptions options;
    options.timing = timing != 0;
    options.jobs = jobs;
    const BenchmarkReport report = run_benchmark(model->model, rig->rig, seq->seq,
                                                 pairs, cfg.variants, cfg.solver,
                                                 options);
    *out = new cpz_report{report};
    return CPZ_OK;
  });
}

cpz_status cpz_report_records_csv(const cpz_report* report, char** out_csv) {
  return guarded([&]() {
    if (!report) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null report");
    return out_string(records_to_csv(report->report), out_csv);
  });
}

cpz_status cpz_report_summary_json(const cpz_report* report, char** out_json) {
  return guarded([&]() {
    if (!report) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null report");
    return out_string(summary_to_json(summarize(report->report)), out_json);
  });
}

cpz_status cpz_report_curves_csv(const cpz_report* report, char** out_csv) {
  return guarded([&]() {
    if (!report) return fail(CPZ_ERROR_INVALID_ARGUMENT, "null report");
    return out_string(curves_to_csv(summarize(report->report)), out_csv);
  });
}

void cpz_report_free(cpz_report* r) { delete r; }

cpz_status cpz_default_model_spec_json(char** out_text) {
  return guarded([&]() { return out_string(model_spec_to_json(SyntheticModelSpec{}), out_text); });
}

cpz_status cpz_default_run_config_json(char** out_text) {
  return guarded([&]() { return out_string(run_config_to_json(default_run_config()), out_text); });
}

cpz_status cpz_chamfer_config_echo_json(const char* chamfer_json, char** out_text) {
  return guarded([&]() {
    const ChamferConfig cfg =
        chamfer_json ? chamfer_config_from_json(chamfer_json) : ChamferConfig{};
    return out_string(chamfer_config_to_json(cfg), out_text);
  });
}

cpz_status cpz_solver_config_echo_json(const char* solver_json, char** out_text) {
  return guarded([&]() {
    const SolverConfig cfg =
        solver_json ? solver_config_from_json(solver_json) : SolverConfig{};
    return out_string(solver_config_to_json(cfg), out_text);
  });
}

}  // extern "C"
