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

#ifndef CHAMFERPOSE_CORE_SYNTH_HPP
#define CHAMFERPOSE_CORE_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/kinematics.hpp"
#include "core/projection.hpp"
#include "core/types.hpp"

namespace chamferpose {

/// Parametric capsule-limb model: `chains` parallel capsule chains rising
/// from a common base line, viewed by a ring of cameras. Each chain's
/// first capsule is rigid to the 6-DOF global frame; every further capsule
/// articulates with one revolute joint.
struct SyntheticModelSpec {
  int chains = 3;
  int bones_per_chain = 3;
  double capsule_radius = 12.0;  // mm
  double capsule_length = 40.0;  // mm
  double chain_spacing = 30.0;   // mm between chain base points
  int cameras = 4;
  double ring_radius = 400.0;  // mm
  int image_width = 256;
  int image_height = 256;
  int segments = 32;      // capsule circumference subdivisions
  int rings = 6;          // cylinder subdivisions along the axis
  double blend_zone = 0.25;  // skinning falloff, fraction of capsule length

  void validate() const;
};

struct Model {
  Skeleton skeleton;
  SkinnedMesh mesh;
};

struct Rig {
  std::vector<Camera> cameras;
};

struct MotionParams {
  uint64_t seed = 7;
  double fps = 25.0;
  double translation_amp = 12.0;       // mm, global prismatic DOFs
  double rotation_amp = 0.18;          // rad, global revolute DOFs
  double joint_amp = 0.5;              // rad, articulated joints
  double base_period = 90.0;           // frames of the slowest harmonic
};

struct Sequence {
  std::string model_name = "synthetic";
  double fps = 25.0;
  std::vector<PoseVector> frames;
};

struct FramePair {
  int start = 0;
  int test = 0;
  int gap = 0;
};

Model make_model(const SyntheticModelSpec& spec);
Rig make_rig(const SyntheticModelSpec& spec);

/// Smooth band-limited pseudo-random joint trajectories, deterministic per
/// seed. Requires frames >= 16 so the gap-15 protocol stays in bounds.
Sequence generate_sequence(const Model& model, const MotionParams& motion,
                           int frames);

/// Uniformly samples round(fraction * frames) test frames without
/// replacement (deterministic per seed) and pairs each with every in-bounds
/// gap.
std::vector<FramePair> sample_pairs(const Sequence& seq, double fraction,
                                    const std::vector<int>& gaps, uint64_t seed);

}  // namespace chamferpose

#endif  // CHAMFERPOSE_CORE_SYNTH_HPP
