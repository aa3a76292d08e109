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

#ifndef CHAMFERPOSE_CORE_SERIALIZE_HPP
#define CHAMFERPOSE_CORE_SERIALIZE_HPP

#include <string>
#include <vector>

#include "core/benchmark.hpp"
#include "core/chamfer.hpp"
#include "core/projection.hpp"
#include "core/silhouette.hpp"
#include "core/solver.hpp"
#include "core/synth.hpp"
#include "core/types.hpp"

namespace chamferpose {

// Model document: {"bones":[{"id","parent","twist":{"omega","v"},"center"}],
// "vertices","normals","faces","weights":[[[boneId,alpha],...],...]}.
std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);

// Rig document: {"cameras":[{"K":[9],"R":[9],"t":[3],"width","height"}]},
// matrices row-major.
std::string rig_to_json(const Rig& rig);
Rig rig_from_json(const std::string& text);

// Sequence document: {"model","fps","frames":[[...],...]}.
std::string sequence_to_json(const Sequence& seq);
Sequence sequence_from_json(const std::string& text);

// {"variant","tau_deg","K","lambda","bins","mode"}; null/absent -> default.
std::string chamfer_config_to_json(const ChamferConfig& cfg);
ChamferConfig chamfer_config_from_json(const std::string& text);

std::string solver_config_to_json(const SolverConfig& cfg);
SolverConfig solver_config_from_json(const std::string& text);

std::string model_spec_to_json(const SyntheticModelSpec& spec);
SyntheticModelSpec model_spec_from_json(const std::string& text);

/// Full benchmark run configuration.
struct RunConfig {
  SyntheticModelSpec model;
  int frames = 200;
  MotionParams motion;
  double fraction = 0.10;
  std::vector<int> gaps = {1, 5, 10, 15};
  uint64_t pair_seed = 11;
  std::vector<VariantSpec> variants;
  SolverConfig solver;
  std::string output_dir = "out";
};

std::string run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const std::string& text);
/// The default five-variant comparison configuration.
RunConfig default_run_config();

// CSV column layouts are part of the external interface.
std::string records_to_csv(const BenchmarkReport& report);
BenchmarkReport records_from_csv(const std::string& text);
std::string curves_to_csv(const Summary& summary);
std::string summary_to_json(const Summary& summary);
std::string history_to_csv(const std::vector<double>& history);
std::string contour_to_csv(const OrientedContour& oc);
std::string pose_to_json(const PoseVector& pose);
PoseVector pose_from_json(const std::string& text);

/// P4 (packed bitmap) dump of a mask; foreground bits are 1.
std::string mask_to_pbm(const BinaryMask& mask);
BinaryMask mask_from_pbm(const std::string& data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace chamferpose

#endif  // CHAMFERPOSE_CORE_SERIALIZE_HPP
