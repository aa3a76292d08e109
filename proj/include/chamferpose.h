/*
 * Copyright (c) 2026 the chamferpose authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * chamferpose: silhouette-based articulated pose estimation with a
 * generalized Chamfer distance, plus a frame-pair benchmark harness.
 *
 * All functions return CPZ_OK (0) on success or a cpz_status error code;
 * cpz_last_error() describes the most recent failure on the calling
 * thread. Objects are opaque handles freed with their cpz_*_free
 * function. Strings returned through `char**` are heap-allocated and
 * released with cpz_string_free.
 *
 * Angles in JSON documents are degrees where the key says so (tau_deg);
 * everything else is radians and millimeters.
 */

#ifndef CHAMFERPOSE_H
#define CHAMFERPOSE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cpz_status {
  CPZ_OK = 0,
  CPZ_ERROR_INVALID_ARGUMENT = 1,
  CPZ_ERROR_PARSE = 2,
  CPZ_ERROR_IO = 3,
  CPZ_ERROR_DEGENERATE = 4,
  CPZ_ERROR_ESTIMATION = 5,
  CPZ_ERROR_INTERNAL = 6
} cpz_status;

typedef struct cpz_model cpz_model;       /* skeleton + skinned mesh */
typedef struct cpz_rig cpz_rig;           /* calibrated camera set */
typedef struct cpz_sequence cpz_sequence; /* pose frames */
typedef struct cpz_result cpz_result;     /* one estimation run */
typedef struct cpz_report cpz_report;     /* benchmark records */

/* Thread-local message of the last failed call. Never NULL. */
const char* cpz_last_error(void);
void cpz_string_free(char* s);

/* ---- synthetic model generation ---------------------------------- */

/* Builds the capsule-limb model and its camera ring from a
 * SyntheticModelSpec JSON document (pass NULL or "{}" for defaults).
 * Either output may be NULL when not needed. */
cpz_status cpz_synth_model(const char* spec_json, cpz_model** out_model,
                           cpz_rig** out_rig);

/* Band-limited pseudo-random motion; deterministic per seed. */
cpz_status cpz_synth_sequence(const cpz_model* model, const char* motion_json,
                              int frames, cpz_sequence** out_seq);

/* ---- serialization ------------------------------------------------ */

cpz_status cpz_model_from_json(const char* text, cpz_model** out);
cpz_status cpz_model_to_json(const cpz_model* model, char** out_text);
cpz_status cpz_rig_from_json(const char* text, cpz_rig** out);
cpz_status cpz_rig_to_json(const cpz_rig* rig, char** out_text);
cpz_status cpz_sequence_from_json(const char* text, cpz_sequence** out);
cpz_status cpz_sequence_to_json(const cpz_sequence* seq, char** out_text);

void cpz_model_free(cpz_model* m);
void cpz_rig_free(cpz_rig* r);
void cpz_sequence_free(cpz_sequence* s);

/* ---- introspection ------------------------------------------------ */

int cpz_model_dof(const cpz_model* model);
int cpz_rig_camera_count(const cpz_rig* rig);
int cpz_sequence_length(const cpz_sequence* seq);
cpz_status cpz_sequence_pose(const cpz_sequence* seq, int frame, double* out,
                             int capacity);

/* Mean distance between the joint positions of two poses, in mm. */
cpz_status cpz_joint_error(const cpz_model* model, const double* pose_a,
                           const double* pose_b, int dof, double* out_mm);

/* Renders a pose's silhouette in one camera as a P4 bitmap. */
cpz_status cpz_render_mask_pbm(const cpz_model* model, const cpz_rig* rig,
                               int camera, const double* pose, int dof,
                               char** out_data, size_t* out_size);

/* Oriented contour of a rendered silhouette as "x,y,phi" CSV. */
cpz_status cpz_contour_csv(const cpz_model* model, const cpz_rig* rig, int camera,
                           const double* pose, int dof, double contour_tol,
                           char** out_csv);

/* ---- pose estimation ---------------------------------------------- */

/* One frame-pair fit: silhouettes of target_pose (rendered in every
 * camera) are matched starting from start_pose. chamfer_json/solver_json
 * may be NULL for defaults. */
cpz_status cpz_estimate(const cpz_model* model, const cpz_rig* rig,
                        const double* start_pose, const double* target_pose,
                        int dof, const char* chamfer_json, const char* solver_json,
                        cpz_result** out);

int cpz_result_dof(const cpz_result* r);
cpz_status cpz_result_pose(const cpz_result* r, double* out, int capacity);
int cpz_result_converged(const cpz_result* r);
int cpz_result_history_length(const cpz_result* r);
cpz_status cpz_result_history(const cpz_result* r, double* out, int capacity);
void cpz_result_free(cpz_result* r);

/* ---- benchmark ----------------------------------------------------- */

/* Runs the frame-pair protocol described by a run-config JSON document
 * (the "model"/"sequence" sections are ignored in favor of the passed
 * handles). timing != 0 forces sequential execution; jobs <= 0 uses all
 * cores. */
cpz_status cpz_benchmark_run(const cpz_model* model, const cpz_rig* rig,
                             const cpz_sequence* seq, const char* run_config_json,
                             int timing, int jobs, cpz_report** out);

cpz_status cpz_report_records_csv(const cpz_report* report, char** out_csv);
cpz_status cpz_report_summary_json(const cpz_report* report, char** out_json);
cpz_status cpz_report_curves_csv(const cpz_report* report, char** out_csv);
void cpz_report_free(cpz_report* r);

/* Default documents, for discoverability and config echoing. */
cpz_status cpz_default_model_spec_json(char** out_text);
cpz_status cpz_default_run_config_json(char** out_text);
cpz_status cpz_chamfer_config_echo_json(const char* chamfer_json, char** out_text);
cpz_status cpz_solver_config_echo_json(const char* solver_json, char** out_text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CHAMFERPOSE_H */
