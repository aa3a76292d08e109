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

#ifndef CHAMFERPOSE_CORE_KINEMATICS_HPP
#define CHAMFERPOSE_CORE_KINEMATICS_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace chamferpose {

/// se(3) generator. A revolute twist has a unit rotation axis `omega`
/// (with `v = c x omega` for an axis through point c); a prismatic twist
/// has omega = 0 and a unit translation direction `v`.
struct Twist {
  Vec3 omega = Vec3::Zero();
  Vec3 v = Vec3::Zero();

  static Twist revolute(const Vec3& axis, const Vec3& point_on_axis) {
    Twist t;
    t.omega = axis.normalized();
    t.v = point_on_axis.cross(t.omega);
    return t;
  }
  static Twist prismatic(const Vec3& direction) {
    Twist t;
    t.v = direction.normalized();
    return t;
  }
  bool is_prismatic() const { return omega.norm() < 1e-12; }
};

/// Element of SE(3), stored as rotation + translation.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  RigidTransform compose(const RigidTransform& rhs) const {
    return {rotation * rhs.rotation, rotation * rhs.translation + translation};
  }
  RigidTransform inverse() const {
    Mat3 rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }
  static RigidTransform identity() { return {}; }
};

/// One bone of the articulated skeleton. Bones are stored in topological
/// order (parents precede children); each bone owns exactly one twist and
/// therefore one pose parameter. Multi-DOF joints (including the 6-DOF
/// global transform of a chain root) are chains of coincident bones.
struct Bone {
  int id = 0;
  int parent = -1;  // -1 for a chain root
  Twist twist;
  Vec3 center = Vec3::Zero();  // joint center in the rest frame
};

struct Skeleton {
  std::vector<Bone> bones;

  int dof_count() const { return static_cast<int>(bones.size()); }

  /// Indices of bones whose joint position is reported by joint_positions.
  /// Interior bones of a compound joint (a child shares the same rest
  /// center) are skipped; the deepest bone at a center represents the joint.
  std::vector<int> scoring_joints() const;

  /// Throws InvalidArgumentError when the bone list is not a forest in
  /// topological order or ids collide.
  void validate() const;
};

using PoseVector = VecX;

struct SkinnedMesh {
  std::vector<Vec3> rest_vertices;   // mm
  std::vector<Vec3> rest_normals;    // unit length
  std::vector<std::array<int, 3>> faces;
  // Per-vertex sparse skinning weights (bone id, alpha), sum to 1.
  std::vector<std::vector<std::pair<int, double>>> weights;

  void validate(int bone_count) const;
};

/// exp(theta * twist^) via Rodrigues' formula; prismatic twists translate.
RigidTransform exp_map(const Twist& twist, double theta);

/// Forward kinematics: T_j = T_parent(j) * exp(theta_j * twist_j^).
std::vector<RigidTransform> bone_transforms(const Skeleton& skel,
                                            const PoseVector& pose);

/// Linear blend skinning of rest vertices.
std::vector<Vec3> skin(const SkinnedMesh& mesh,
                       const std::vector<RigidTransform>& transforms);

struct SkinnedNormals {
  std::vector<Vec3> normals;
  std::vector<uint8_t> valid;  // 0 when the blended normal vanished
};

/// Normals blended with the rotation parts only, then renormalized.
SkinnedNormals skin_normals(const SkinnedMesh& mesh,
                            const std::vector<RigidTransform>& transforms);

/// Posed positions of the scoring joints (see Skeleton::scoring_joints).
std::vector<Vec3> joint_positions(const Skeleton& skel, const PoseVector& pose);

}  // namespace chamferpose

#endif  // CHAMFERPOSE_CORE_KINEMATICS_HPP
