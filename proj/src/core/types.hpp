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

#ifndef CHAMFERPOSE_CORE_TYPES_HPP
#define CHAMFERPOSE_CORE_TYPES_HPP

#include <Eigen/Core>
#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace chamferpose {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// Base class of all errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad argument values (dimension mismatches, non-finite inputs, ...).
struct InvalidArgumentError : Error {
  using Error::Error;
};

/// Point has non-positive depth in the camera frame.
struct BehindCameraError : Error {
  using Error::Error;
};

/// A rendered or supplied mask contains no foreground.
struct EmptyMaskError : Error {
  using Error::Error;
};

/// Degenerate input that the caller is expected to skip (empty rim set,
/// all correspondences rejected, ...).
struct DegenerateError : Error {
  using Error::Error;
};

/// Normal equations are singular and no damping was requested.
struct RankDeficiencyError : Error {
  using Error::Error;
};

/// Pose estimation could not produce a usable result.
struct EstimationFailedError : Error {
  EstimationFailedError(const std::string& msg, VecX initial)
      : Error(msg), initial_pose(std::move(initial)) {}
  VecX initial_pose;
};

/// Malformed JSON / CSV input.
struct ParseError : Error {
  using Error::Error;
};

/// Filesystem failure.
struct IoError : Error {
  using Error::Error;
};

constexpr double kPi = 3.14159265358979323846;

}  // namespace chamferpose

#endif  // CHAMFERPOSE_CORE_TYPES_HPP
