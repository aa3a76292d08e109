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

#ifndef CHAMFERPOSE_CORE_SOLVER_HPP
#define CHAMFERPOSE_CORE_SOLVER_HPP

#include <vector>

#include "core/chamfer.hpp"
#include "core/kinematics.hpp"
#include "core/projection.hpp"
#include "core/types.hpp"

namespace chamferpose {

struct SolverConfig {
  int max_outer_iterations = 10;
  int max_inner_iterations = 5;
  double convergence_tol = 1e-4;  // on the pose-update infinity norm
  double damping = 1e-3;

  void validate() const;
};

struct PoseEstimate {
  PoseVector pose;
  std::vector<double> residual_history;  // objective per inner iteration
  bool converged = false;
};

/// Target data of one camera view: the fixed silhouette to match.
struct TargetView {
  Camera camera;
  int camera_id = 0;
  ChamferFields fields;
};

/// Linearized point-to-ray system around `pose`. Each correspondence
/// contributes three rows of d(v x d - m)/d(theta); rows are scaled by
/// 1/sqrt(N) so that 0.5*|b|^2 equals the pooled objective
/// 1/(2N) sum |v x d - m|^2.
void linearize(const std::vector<Correspondence>& correspondences,
               const Skeleton& skel, const SkinnedMesh& mesh,
               const PoseVector& pose, MatX& A, VecX& b);

/// Pooled objective 1/(2N) sum |v(theta) x d - m|^2 at a pose.
double correspondence_objective(const std::vector<Correspondence>& correspondences,
                                const Skeleton& skel, const SkinnedMesh& mesh,
                                const PoseVector& pose);

/// Minimizes |A x - b|^2 + damping |x|^2 via the normal equations.
/// Throws RankDeficiencyError for a singular undamped system.
VecX solve_step(const MatX& A, const VecX& b, double damping);

/// Iterative multi-view estimation: the outer loop re-extracts rim
/// vertices and correspondences, the inner loop re-linearizes and updates
/// the pose with Levenberg-style damping.
PoseEstimate estimate_pose(const PoseVector& initial,
                           const std::vector<TargetView>& targets,
                           const Skeleton& skel, const SkinnedMesh& mesh,
                           const SolverConfig& scfg,
                           const RimParams& rim_params = {});

}  // namespace chamferpose

#endif  // CHAMFERPOSE_CORE_SOLVER_HPP
