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

#include "core/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace chamferpose {

void SolverConfig::validate() const {
  if (max_outer_iterations < 1 || max_inner_iterations < 1)
    throw InvalidArgumentError("solver config: iteration counts must be >= 1");
  if (!(convergence_tol > 0))
    throw InvalidArgumentError("solver config: convergence tolerance must be positive");
  if (damping < 0) throw InvalidArgumentError("solver config: damping must be >= 0");
}

namespace {

struct LinearizationContext {
  std::vector<RigidTransform> transforms;
  std::vector<Vec3> adj_omega;            // current-frame twist axes
  std::vector<Vec3> adj_v;
  std::vector<std::vector<int>> ancestors;  // per bone, root..self positions
};

LinearizationContext make_context(const Skeleton& skel, const PoseVector& pose) {
  LinearizationContext ctx;
  ctx.transforms = bone_transforms(skel, pose);

  std::unordered_map<int, int> pos_of;
  for (size_t j = 0; j < skel.bones.size(); ++j) pos_of[skel.bones[j].id] = static_cast<int>(j);

  ctx.adj_omega.resize(skel.bones.size());
  ctx.adj_v.resize(skel.bones.size());
  ctx.ancestors.resize(skel.bones.size());
  for (size_t j = 0; j < skel.bones.size(); ++j) {
    // Adjoint of the bone transform applied to its twist: the twist's
    // instantaneous action in the current world frame.
    const RigidTransform& T = ctx.transforms[j];
    const Twist& xi = skel.bones[j].twist;
    ctx.adj_omega[j] = T.rotation * xi.omega;
    ctx.adj_v[j] = T.translation.cross(ctx.adj_omega[j]) + T.rotation * xi.v;

    const int parent = skel.bones[j].parent;
    if (parent >= 0) ctx.ancestors[j] = ctx.ancestors[pos_of.at(parent)];
    ctx.ancestors[j].push_back(static_cast<int>(j));
  }
  return ctx;
}

Vec3 skinned_point(const SkinnedMesh& mesh, const std::vector<RigidTransform>& transforms,
                   int vertex) {
  Vec3 acc = Vec3::Zero();
  for (const auto& [bone, alpha] : mesh.weights[vertex])
    acc += alpha * transforms[bone].apply(mesh.rest_vertices[vertex]);
  return acc;
}

}  // namespace

void linearize(const std::vector<Correspondence>& correspondences,
               const Skeleton& skel, const SkinnedMesh& mesh,
               const PoseVector& pose, MatX& A, VecX& b) {
  if (correspondences.empty())
    throw InvalidArgumentError("linearize: empty correspondence set");

  const LinearizationContext ctx = make_context(skel, pose);
  const int dof = skel.dof_count();
  const int n = static_cast<int>(correspondences.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

  A.setZero(3 * n, dof);
  b.setZero(3 * n);

  std::vector<Vec3> cols(dof);
  for (int i = 0; i < n; ++i) {
    const Correspondence& c = correspondences[i];
    const Vec3& rest = mesh.rest_vertices[c.vertex];

    for (auto& col : cols) col.setZero();
    Vec3 v = Vec3::Zero();
    for (const auto& [bone, alpha] : mesh.weights[c.vertex]) {
      const Vec3 pj = ctx.transforms[bone].apply(rest);
      v += alpha * pj;
      for (int k : ctx.ancestors[bone])
        cols[k] += alpha * (ctx.adj_omega[k].cross(pj) + ctx.adj_v[k]);
    }

    const Vec3 r = v.cross(c.ray.d) - c.ray.m;
    b.segment<3>(3 * i) = -scale * r;
    for (int k = 0; k < dof; ++k)
      A.block<3, 1>(3 * i, k) = scale * cols[k].cross(c.ray.d);
  }
}

double correspondence_objective(const std::vector<Correspondence>& correspondences,
                                const Skeleton& skel, const SkinnedMesh& mesh,
                                const PoseVector& pose) {
  if (correspondences.empty())
    throw InvalidArgumentError("correspondence_objective: empty set");
  const auto transforms = bone_transforms(skel, pose);
  double sum = 0;
  for (const Correspondence& c : correspondences) {
    const Vec3 v = skinned_point(mesh, transforms, c.vertex);
    sum += (v.cross(c.ray.d) - c.ray.m).squaredNorm();
  }
  return sum / (2.0 * static_cast<double>(correspondences.size()));
}

VecX solve_step(const MatX& A, const VecX& b, double damping) {
  if (A.rows() != b.size())
    throw InvalidArgumentError("solve_step: A/b dimension mismatch");
  if (damping == 0) {
    Eigen::ColPivHouseholderQR<MatX> qr(A);
    qr.setThreshold(1e-10);
    if (qr.rank() < A.cols())
      throw RankDeficiencyError("solve_step: singular system and no damping");
    return qr.solve(b);
  }
  const MatX H = A.transpose() * A + damping * MatX::Identity(A.cols(), A.cols());
  const VecX g = A.transpose() * b;
  return Eigen::LDLT<MatX>(H).solve(g);
}

PoseEstimate estimate_pose(const PoseVector& initial,
                           const std::vector<TargetView>& targets,
                           const Skeleton& skel, const SkinnedMesh& mesh,
                           const SolverConfig& scfg, const RimParams& rim_params) {
  scfg.validate();
  if (targets.empty())
    throw InvalidArgumentError("estimate_pose: no target views");
  if (initial.size() != skel.dof_count())
    throw InvalidArgumentError("estimate_pose: pose length mismatch");

  PoseEstimate est;
  est.pose = initial;
  double damping = scfg.damping;

  for (int outer = 0; outer < scfg.max_outer_iterations; ++outer) {
    const PoseVector outer_start = est.pose;

    // Extract rim vertices of the current pose and match them against the
    // fixed target fields, pooling all cameras.
    const auto transforms = bone_transforms(skel, est.pose);
    const auto posed = skin(mesh, transforms);
    const auto normals = skin_normals(mesh, transforms);

    std::vector<Correspondence> pooled;
    for (const TargetView& view : targets) {
      try {
        const RimProjection rim = rim_vertices_posed(posed, normals, mesh.faces,
                                                     view.camera, view.camera_id,
                                                     rim_params);
        auto corr = select_correspondences(rim, view.fields, view.camera);
        pooled.insert(pooled.end(), corr.begin(), corr.end());
      } catch (const DegenerateError&) {
        continue;  // caller contract: skip degenerate cameras
      } catch (const EmptyMaskError&) {
        continue;
      }
    }
    if (pooled.empty())
      throw EstimationFailedError("estimate_pose: every camera view degenerate",
                                  initial);

    double obj = correspondence_objective(pooled, skel, mesh, est.pose);
    est.residual_history.push_back(obj);

    MatX A;
    VecX b;
    bool inner_converged = false;
    for (int inner = 0; inner < scfg.max_inner_iterations; ++inner) {
      linearize(pooled, skel, mesh, est.pose, A, b);
      const VecX delta = solve_step(A, b, damping);
      // The damped least-squares step cannot increase the linearized
      // objective.
      if ((A * delta - b).squaredNorm() > b.squaredNorm() * (1 + 1e-9) + 1e-12)
        throw Error("estimate_pose: linearized objective increased");

      const PoseVector candidate = est.pose + delta;
      const double cand_obj = correspondence_objective(pooled, skel, mesh, candidate);
      if (cand_obj <= obj) {
        est.pose = candidate;
        damping = std::max(damping * 0.1, 1e-12);
        est.residual_history.push_back(cand_obj);
        const double rel_drop = (obj - cand_obj) / std::max(obj, 1e-30);
        obj = cand_obj;
        if (delta.lpNorm<Eigen::Infinity>() < scfg.convergence_tol || rel_drop < 1e-6)
          { inner_converged = true; break; }
      } else {
        damping = std::min(damping * 10.0, 1e12);
        est.residual_history.push_back(obj);
      }
    }

    if ((est.pose - outer_start).lpNorm<Eigen::Infinity>() < scfg.convergence_tol) {
      est.converged = true;
      break;
    }
    (void)inner_converged;
  }
  return est;
}

}  // namespace chamferpose
