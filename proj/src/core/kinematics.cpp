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

#include "core/kinematics.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace chamferpose {

namespace {

Mat3 skew(const Vec3& w) {
  Mat3 m;
  m << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return m;
}

}  // namespace

RigidTransform exp_map(const Twist& twist, double theta) {
  if (!std::isfinite(theta) || !twist.omega.allFinite() || !twist.v.allFinite())
    throw InvalidArgumentError("exp_map: non-finite twist or angle");

  const double wn = twist.omega.norm();
  if (wn < 1e-12) {
    // Prismatic: pure translation along v.
    return {Mat3::Identity(), theta * twist.v};
  }
  if (std::abs(wn - 1.0) > 1e-6)
    throw InvalidArgumentError("exp_map: revolute twist axis must be unit length");

  const Vec3 w = twist.omega;
  const Mat3 wx = skew(w);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Mat3 rot = Mat3::Identity() + s * wx + (1.0 - c) * (wx * wx);
  // t = (I - R)(w x v) + w w^T v theta
  Vec3 t = (Mat3::Identity() - rot) * w.cross(twist.v) + w * (w.dot(twist.v)) * theta;
  return {rot, t};
}

void Skeleton::validate() const {
  std::unordered_set<int> ids;
  for (size_t i = 0; i < bones.size(); ++i) {
    const Bone& b = bones[i];
    if (!ids.insert(b.id).second)
      throw InvalidArgumentError("skeleton: duplicate bone id " + std::to_string(b.id));
    if (b.parent >= 0) {
      bool found = false;
      for (size_t k = 0; k < i; ++k)
        if (bones[k].id == b.parent) { found = true; break; }
      if (!found)
        throw InvalidArgumentError(
            "skeleton: parent of bone " + std::to_string(b.id) +
            " does not precede it");
    }
    if (!b.center.allFinite() || !b.twist.omega.allFinite() || !b.twist.v.allFinite())
      throw InvalidArgumentError("skeleton: non-finite bone data");
  }
}

std::vector<int> Skeleton::scoring_joints() const {
  std::vector<int> out;
  for (size_t j = 0; j < bones.size(); ++j) {
    bool interior = false;
    for (size_t k = j + 1; k < bones.size(); ++k) {
      if (bones[k].parent == bones[j].id &&
          (bones[k].center - bones[j].center).norm() <= 1e-9) {
        interior = true;
        break;
      }
    }
    if (!interior) out.push_back(static_cast<int>(j));
  }
  return out;
}

std::vector<RigidTransform> bone_transforms(const Skeleton& skel,
                                            const PoseVector& pose) {
  if (pose.size() != skel.dof_count())
    throw InvalidArgumentError("bone_transforms: pose length " +
                               std::to_string(pose.size()) + " != dof count " +
                               std::to_string(skel.dof_count()));
  if (!pose.allFinite())
    throw InvalidArgumentError("bone_transforms: non-finite pose");

  std::unordered_map<int, int> index_of;
  index_of.reserve(skel.bones.size());
  std::vector<RigidTransform> out(skel.bones.size());
  for (size_t j = 0; j < skel.bones.size(); ++j) {
    const Bone& b = skel.bones[j];
    RigidTransform local = exp_map(b.twist, pose[static_cast<int>(j)]);
    if (b.parent < 0) {
      out[j] = local;
    } else {
      out[j] = out[index_of.at(b.parent)].compose(local);
    }
    index_of[b.id] = static_cast<int>(j);
  }
  return out;
}

std::vector<Vec3> skin(const SkinnedMesh& mesh,
                       const std::vector<RigidTransform>& transforms) {
  const int nb = static_cast<int>(transforms.size());
  std::vector<Vec3> out(mesh.rest_vertices.size());
  for (size_t v = 0; v < mesh.rest_vertices.size(); ++v) {
    Vec3 acc = Vec3::Zero();
    for (const auto& [bone, alpha] : mesh.weights[v]) {
      if (bone < 0 || bone >= nb)
        throw InvalidArgumentError("skin: weight references bone " +
                                   std::to_string(bone) + " outside transform list");
      acc += alpha * transforms[bone].apply(mesh.rest_vertices[v]);
    }
    out[v] = acc;
  }
  return out;
}

SkinnedNormals skin_normals(const SkinnedMesh& mesh,
                            const std::vector<RigidTransform>& transforms) {
  const int nb = static_cast<int>(transforms.size());
  SkinnedNormals out;
  out.normals.resize(mesh.rest_normals.size());
  out.valid.assign(mesh.rest_normals.size(), 1);
  for (size_t v = 0; v < mesh.rest_normals.size(); ++v) {
    Vec3 acc = Vec3::Zero();
    for (const auto& [bone, alpha] : mesh.weights[v]) {
      if (bone < 0 || bone >= nb)
        throw InvalidArgumentError("skin_normals: weight references bone " +
                                   std::to_string(bone) + " outside transform list");
      acc += alpha * (transforms[bone].rotation * mesh.rest_normals[v]);
    }
    const double n = acc.norm();
    if (n < 1e-9) {
      out.normals[v] = Vec3::Zero();
      out.valid[v] = 0;  // excluded from rim candidacy
    } else {
      out.normals[v] = acc / n;
    }
  }
  return out;
}

std::vector<Vec3> joint_positions(const Skeleton& skel, const PoseVector& pose) {
  const auto transforms = bone_transforms(skel, pose);
  std::vector<Vec3> out;
  for (int j : skel.scoring_joints())
    out.push_back(transforms[j].apply(skel.bones[j].center));
  return out;
}

void SkinnedMesh::validate(int bone_count) const {
  if (rest_normals.size() != rest_vertices.size() ||
      weights.size() != rest_vertices.size())
    throw InvalidArgumentError("mesh: vertex/normal/weight counts disagree");
  for (size_t v = 0; v < weights.size(); ++v) {
    double sum = 0;
    for (const auto& [bone, alpha] : weights[v]) {
      if (bone < 0 || bone >= bone_count)
        throw InvalidArgumentError("mesh: weight bone id out of range");
      if (alpha < 0)
        throw InvalidArgumentError("mesh: negative skinning weight");
      sum += alpha;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw InvalidArgumentError("mesh: skinning weights of vertex " +
                                 std::to_string(v) + " sum to " +
                                 std::to_string(sum));
  }
  for (const auto& f : faces)
    for (int i : f)
      if (i < 0 || i >= static_cast<int>(rest_vertices.size()))
        throw InvalidArgumentError("mesh: face index out of range");
}

}  // namespace chamferpose
