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

#ifndef CHAMFERPOSE_CORE_PROJECTION_HPP
#define CHAMFERPOSE_CORE_PROJECTION_HPP

#include <vector>

#include "core/types.hpp"

namespace chamferpose {

/// Calibrated pinhole camera. x_cam = R x_world + t, pixel = K x_cam / z.
/// Pixel origin is the top-left pixel center, x right, y down; pixel (i,j)
/// covers [i-1/2, i+1/2) x [j-1/2, j+1/2).
struct Camera {
  Mat3 K = Mat3::Identity();
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();
  int width = 0;
  int height = 0;

  Vec3 center() const { return -(R.transpose() * t); }
  void validate() const;
};

using PixelPoint = Vec2;

/// Line as unit direction d and moment m = p0 x d for any point p0 on it.
struct PluckerLine {
  Vec3 d = Vec3::UnitZ();
  Vec3 m = Vec3::Zero();
};

/// Pinhole projection. Throws BehindCameraError for non-positive depth.
PixelPoint project(const Vec3& point, const Camera& cam);

/// Depth of a world point in the camera frame (z of R p + t).
double depth_in_camera(const Vec3& point, const Camera& cam);

/// Viewing ray through a pixel, as a Plucker line through the camera center.
PluckerLine backproject(const PixelPoint& q, const Camera& cam);

/// v x d - m. Its Euclidean norm is the point-to-line distance.
Vec3 ray_residual(const Vec3& v, const PluckerLine& line);

}  // namespace chamferpose

#endif  // CHAMFERPOSE_CORE_PROJECTION_HPP
