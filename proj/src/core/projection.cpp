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

#include "core/projection.hpp"

#include <cmath>

namespace chamferpose {

void Camera::validate() const {
  if (width <= 0 || height <= 0)
    throw InvalidArgumentError("camera: non-positive image dimensions");
  if (std::abs(K.determinant()) < 1e-12)
    throw InvalidArgumentError("camera: singular intrinsics");
  if ((R * R.transpose() - Mat3::Identity()).norm() > 1e-6 ||
      std::abs(R.determinant() - 1.0) > 1e-6)
    throw InvalidArgumentError("camera: rotation is not in SO(3)");
}

double depth_in_camera(const Vec3& point, const Camera& cam) {
  return (cam.R * point + cam.t).z();
}

PixelPoint project(const Vec3& point, const Camera& cam) {
  const Vec3 xc = cam.R * point + cam.t;
  if (!(xc.z() > 0))
    throw BehindCameraError("project: point has non-positive depth");
  const Vec3 h = cam.K * xc;
  return {h.x() / h.z(), h.y() / h.z()};
}

PluckerLine backproject(const PixelPoint& q, const Camera& cam) {
  if (!q.allFinite())
    throw InvalidArgumentError("backproject: non-finite pixel");
  const Vec3 dir_cam = cam.K.inverse() * Vec3(q.x(), q.y(), 1.0);
  PluckerLine line;
  line.d = (cam.R.transpose() * dir_cam).normalized();
  line.m = cam.center().cross(line.d);
  return line;
}

Vec3 ray_residual(const Vec3& v, const PluckerLine& line) {
  return v.cross(line.d) - line.m;
}

}  // namespace chamferpose
