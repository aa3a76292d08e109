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

#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace chamferpose {

void SyntheticModelSpec::validate() const {
  if (chains < 1 || bones_per_chain < 1)
    throw InvalidArgumentError("model spec: chains and bones_per_chain must be >= 1");
  if (!(capsule_radius > 0) || !(capsule_length > 0) || !(chain_spacing > 0))
    throw InvalidArgumentError("model spec: capsule dimensions must be positive");
  if (cameras < 2)
    throw InvalidArgumentError("model spec: multi-view solving needs >= 2 cameras");
  if (!(ring_radius > 0) || image_width <= 0 || image_height <= 0)
    throw InvalidArgumentError("model spec: camera parameters must be positive");
  if (segments < 8 || rings < 2)
    throw InvalidArgumentError("model spec: tessellation too coarse");
  if (!(blend_zone > 0) || blend_zone > 0.5)
    throw InvalidArgumentError("model spec: blend zone must be in (0, 0.5]");
}

namespace {

double smoothstep01(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// Appends one capsule (cylinder of length L, radius r, axis +y from the
// origin, spherical caps) translated by `base`, skinned to `bone` with a
// falloff to `parent_bone` near the s=0 joint.
void append_capsule(SkinnedMesh& mesh, const Vec3& base, double L, double r,
                    int segments, int rings, int bone, int parent_bone,
                    double blend_zone) {
  const int cap_rings = std::max(2, segments / 8);
  struct Ring {
    double y;
    double radius;
    Vec3 normal_center;  // cap center for spherical normals, x/z marker
    bool spherical;
  };

  std::vector<Ring> ring_list;
  ring_list.push_back({-r, 0.0, Vec3(0, 0, 0), true});  // bottom pole marker
  for (int a = 1; a <= cap_rings; ++a) {
    const double ang = (kPi / 2) * (static_cast<double>(a) / cap_rings);
    ring_list.push_back({-r * std::cos(ang), r * std::sin(ang), Vec3(0, 0, 0), true});
  }
  for (int i = 1; i <= rings; ++i)
    ring_list.push_back({L * i / rings, r, Vec3(0, L, 0), false});
  for (int a = 1; a <= cap_rings; ++a) {
    const double ang = (kPi / 2) * (static_cast<double>(a) / cap_rings);
    ring_list.push_back({L + r * std::sin(ang), r * std::cos(ang), Vec3(0, L, 0), true});
  }

  const int base_index = static_cast<int>(mesh.rest_vertices.size());
  auto add_vertex = [&](const Vec3& local, const Vec3& normal) {
    mesh.rest_vertices.push_back(local + base);
    mesh.rest_normals.push_back(normal.normalized());
    const double s = local.y() / L;
    double w_parent = 0.0;
    if (parent_bone >= 0 && parent_bone != bone)
      w_parent = 0.5 * (1.0 - smoothstep01(s / blend_zone));
    if (w_parent > 0)
      mesh.weights.push_back({{bone, 1.0 - w_parent}, {parent_bone, w_parent}});
    else
      mesh.weights.push_back({{bone, 1.0}});
  };

  // Bottom pole.
  add_vertex(Vec3(0, -r, 0), Vec3(0, -1, 0));
  std::vector<int> ring_start;  // first vertex of each full ring
  for (size_t li = 1; li < ring_list.size(); ++li) {
    const Ring& ring = ring_list[li];
    ring_start.push_back(static_cast<int>(mesh.rest_vertices.size()));
    for (int sgm = 0; sgm < segments; ++sgm) {
      const double a = 2 * kPi * sgm / segments;
      const Vec3 local(ring.radius * std::cos(a), ring.y, ring.radius * std::sin(a));
      Vec3 normal;
      if (ring.spherical) {
        const Vec3 center(0, ring.normal_center.y(), 0);
        normal = local - center;
        if (normal.norm() < 1e-12) normal = Vec3(0, ring.y > L / 2 ? 1 : -1, 0);
      } else {
        normal = Vec3(std::cos(a), 0, std::sin(a));
      }
      add_vertex(local, normal);
    }
  }
  // Top pole.
  const int top_pole = static_cast<int>(mesh.rest_vertices.size());
  add_vertex(Vec3(0, L + r, 0), Vec3(0, 1, 0));

  // Bottom fan.
  const int first_ring = ring_start.front();
  for (int sgm = 0; sgm < segments; ++sgm)
    mesh.faces.push_back({base_index, first_ring + (sgm + 1) % segments, first_ring + sgm});
  // Quad strips.
  for (size_t b = 0; b + 1 < ring_start.size(); ++b) {
    const int r0 = ring_start[b], r1 = ring_start[b + 1];
    for (int sgm = 0; sgm < segments; ++sgm) {
      const int sn = (sgm + 1) % segments;
      mesh.faces.push_back({r0 + sgm, r0 + sn, r1 + sgm});
      mesh.faces.push_back({r1 + sgm, r0 + sn, r1 + sn});
    }
  }
  // Top fan.
  const int last_ring = ring_start.back();
  for (int sgm = 0; sgm < segments; ++sgm)
    mesh.faces.push_back({top_pole, last_ring + sgm, last_ring + (sgm + 1) % segments});
}

}  // namespace

Model make_model(const SyntheticModelSpec& spec) {
  spec.validate();
  Model model;

  // 6-DOF global frame: three prismatic + three revolute single-DOF bones
  // through the root joint at the origin. These are the first six pose
  // entries of every chain.
  const Vec3 root(0, 0, 0);
  auto add_bone = [&](int parent, const Twist& t, const Vec3& center) {
    Bone b;
    b.id = static_cast<int>(model.skeleton.bones.size());
    b.parent = parent;
    b.twist = t;
    b.center = center;
    model.skeleton.bones.push_back(b);
    return b.id;
  };
  int prev = add_bone(-1, Twist::prismatic(Vec3::UnitX()), root);
  prev = add_bone(prev, Twist::prismatic(Vec3::UnitY()), root);
  prev = add_bone(prev, Twist::prismatic(Vec3::UnitZ()), root);
  prev = add_bone(prev, Twist::revolute(Vec3::UnitX(), root), root);
  prev = add_bone(prev, Twist::revolute(Vec3::UnitY(), root), root);
  const int global_frame = add_bone(prev, Twist::revolute(Vec3::UnitZ(), root), root);

  const double L = spec.capsule_length;
  for (int c = 0; c < spec.chains; ++c) {
    const double bx = (c - (spec.chains - 1) / 2.0) * spec.chain_spacing;
    const Vec3 chain_base(bx, 0, 0);
    int bone = global_frame;
    for (int k = 0; k < spec.bones_per_chain; ++k) {
      const Vec3 seg_base = chain_base + Vec3(0, k * L, 0);
      int parent_bone = bone;
      if (k > 0) {
        // Flexion joint about the world x axis at the segment base.
        bone = add_bone(parent_bone, Twist::revolute(Vec3::UnitX(), seg_base), seg_base);
      }
      append_capsule(model.mesh, seg_base, L, spec.capsule_radius, spec.segments,
                     spec.rings, bone, k == 0 ? -1 : parent_bone, spec.blend_zone);
    }
  }

  model.skeleton.validate();
  model.mesh.validate(model.skeleton.dof_count());
  return model;
}

Rig make_rig(const SyntheticModelSpec& spec) {
  spec.validate();
  Rig rig;

  const double mid_y = spec.bones_per_chain * spec.capsule_length / 2.0;
  const Vec3 target(0, mid_y, 0);
  const double x_extent = (spec.chains - 1) / 2.0 * spec.chain_spacing + spec.capsule_radius;
  const double y_extent = mid_y + spec.capsule_radius;
  const double half_extent = std::max(x_extent, y_extent) + 45.0;  // motion allowance
  const double half_image = std::min(spec.image_width, spec.image_height) / 2.0 - 10.0;
  const double focal = spec.ring_radius * half_image / half_extent;

  Mat3 K = Mat3::Identity();
  K(0, 0) = K(1, 1) = focal;
  K(0, 2) = (spec.image_width - 1) / 2.0;
  K(1, 2) = (spec.image_height - 1) / 2.0;

  for (int i = 0; i < spec.cameras; ++i) {
    const double a = 2 * kPi * i / spec.cameras;
    const Vec3 pos = target + Vec3(spec.ring_radius * std::cos(a), 0,
                                   spec.ring_radius * std::sin(a));
    const Vec3 z = (target - pos).normalized();
    Vec3 x = z.cross(Vec3::UnitY());
    if (x.norm() < 1e-9) throw InvalidArgumentError("make_rig: degenerate view direction");
    x.normalize();
    const Vec3 y = z.cross(x);

    Camera cam;
    cam.K = K;
    cam.R.row(0) = x.transpose();
    cam.R.row(1) = y.transpose();
    cam.R.row(2) = z.transpose();
    cam.t = -(cam.R * pos);
    cam.width = spec.image_width;
    cam.height = spec.image_height;
    cam.validate();
    rig.cameras.push_back(cam);
  }
  return rig;
}

Sequence generate_sequence(const Model& model, const MotionParams& motion,
                           int frames) {
  if (frames < 16)
    throw InvalidArgumentError("generate_sequence: need >= 16 frames to support gap 15");

  const int dof = model.skeleton.dof_count();
  std::mt19937_64 rng(motion.seed);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);

  // Three harmonics per DOF; amplitudes double as the joint limits.
  constexpr double kHarmonic[3] = {0.55, 0.30, 0.15};
  std::vector<std::array<double, 3>> phases(dof);
  std::vector<double> amp(dof);
  for (int d = 0; d < dof; ++d) {
    for (int h = 0; h < 3; ++h) phases[d][h] = phase(rng);
    if (d < 3)
      amp[d] = motion.translation_amp;
    else if (d < 6)
      amp[d] = motion.rotation_amp;
    else
      amp[d] = motion.joint_amp;
  }

  Sequence seq;
  seq.fps = motion.fps;
  seq.frames.reserve(frames);
  for (int t = 0; t < frames; ++t) {
    PoseVector pose(dof);
    for (int d = 0; d < dof; ++d) {
      double v = 0;
      for (int h = 0; h < 3; ++h)
        v += kHarmonic[h] * std::sin(2 * kPi * (h + 1) * t / motion.base_period +
                                     phases[d][h]);
      pose[d] = amp[d] * v;
    }
    seq.frames.push_back(std::move(pose));
  }
  return seq;
}

std::vector<FramePair> sample_pairs(const Sequence& seq, double fraction,
                                    const std::vector<int>& gaps, uint64_t seed) {
  const int frames = static_cast<int>(seq.frames.size());
  if (!(fraction > 0) || fraction > 1)
    throw InvalidArgumentError("sample_pairs: fraction must be in (0, 1]");
  if (gaps.empty()) throw InvalidArgumentError("sample_pairs: no gaps given");
  const int min_gap = *std::min_element(gaps.begin(), gaps.end());
  if (min_gap < 0) throw InvalidArgumentError("sample_pairs: negative gap");
  if (frames <= min_gap)
    throw InvalidArgumentError("sample_pairs: sequence too short for any gap");

  const int n_test = static_cast<int>(std::lround(fraction * frames));
  if (n_test < 1) throw InvalidArgumentError("sample_pairs: no test frames sampled");

  std::vector<int> indices(frames);
  std::iota(indices.begin(), indices.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n_test; ++i) {
    std::uniform_int_distribution<int> pick(i, frames - 1);
    std::swap(indices[i], indices[pick(rng)]);
  }
  std::vector<int> tests(indices.begin(), indices.begin() + n_test);
  std::sort(tests.begin(), tests.end());

  std::vector<FramePair> pairs;
  for (int t : tests)
    for (int g : gaps)
      if (t - g >= 0) pairs.push_back({t - g, t, g});
  return pairs;
}

}  // namespace chamferpose
