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

#ifndef CHAMFERPOSE_CORE_SILHOUETTE_HPP
#define CHAMFERPOSE_CORE_SILHOUETTE_HPP

#include <cstdint>
#include <vector>

#include "core/kinematics.hpp"
#include "core/projection.hpp"
#include "core/types.hpp"

namespace chamferpose {

struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> bits;  // row-major, 0/1

  uint8_t at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x]; }
  void set(int x, int y, uint8_t v) { bits[static_cast<size_t>(y) * width + x] = v; }
  bool inside(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  size_t area() const;
};

/// Closed border loop around one foreground component. Points are pixel
/// centers in traversal order with positive shoelace area (foreground on
/// the rotate-by-+90-degrees side of the walking direction); consecutive
/// points are 8-connected.
struct Contour {
  std::vector<Vec2> points;
};

/// One polyline segment of a simplified contour, covering contour points
/// [first, last] (indices wrap around the closed loop).
struct PolySegment {
  int first = 0;
  int last = 0;
  double angle = 0;  // direction of travel, in [0, 2*pi)
};

/// Contour with a tangent orientation angle per point.
struct OrientedContour {
  std::vector<Vec2> points;
  std::vector<double> phi;  // [0, 2*pi)
};

struct RimEntry {
  int vertex = 0;
  Vec2 pixel = Vec2::Zero();
  double phi = 0;  // tangent angle of the projected normal, [0, 2*pi)
  int camera = 0;
};

/// Projected rim vertices P(theta) of one camera view.
struct RimProjection {
  std::vector<RimEntry> entries;
};

struct RimParams {
  double border_distance = 1.0;        // px to the rendered mask border
  double perpendicular_slack = 10.0 * kPi / 180.0;  // rad around 90 degrees
};

/// Deterministic scanline rasterization; a pixel is foreground iff its
/// center is covered by any front- or back-facing triangle (top-left rule
/// on ties). Throws EmptyMaskError when nothing projects into the image.
BinaryMask render_silhouette(const std::vector<Vec3>& vertices,
                             const std::vector<std::array<int, 3>>& faces,
                             const Camera& cam);

/// Moore-neighborhood border following, outer borders only, one contour
/// per 8-connected foreground component (components tracing fewer than
/// 3 border pixels are dropped). Throws EmptyMaskError on an empty mask.
std::vector<Contour> extract_contour(const BinaryMask& mask);

/// Ramer-Douglas-Peucker simplification of the closed loop with maximum
/// deviation `tol`; every contour point is covered by exactly one segment.
std::vector<PolySegment> fit_polyline(const Contour& c, double tol);

/// fit_polyline plus per-point angle assignment along the traversal
/// direction.
OrientedContour orient_contour(const Contour& c, double tol);

/// Concatenation of the oriented contours of all components of a mask.
OrientedContour orient_mask_contours(const BinaryMask& mask, double tol);

/// Rim vertices of the posed mesh in one camera: vertices whose projection
/// lies within `border_distance` px of the rendered mask border and whose
/// skinned normal is close to perpendicular to the viewing ray. phi is the
/// image-plane direction of the projected normal rotated by +90 degrees,
/// i.e. the local contour tangent. Throws DegenerateError when the rim set
/// is empty (the caller must skip this camera).
RimProjection rim_vertices(const Skeleton& skel, const SkinnedMesh& mesh,
                           const PoseVector& pose, const Camera& cam,
                           int camera_id = 0, const RimParams& params = {});

/// Same, reusing already computed vertex positions and normals.
RimProjection rim_vertices_posed(const std::vector<Vec3>& posed_vertices,
                                 const SkinnedNormals& posed_normals,
                                 const std::vector<std::array<int, 3>>& faces,
                                 const Camera& cam, int camera_id = 0,
                                 const RimParams& params = {});

}  // namespace chamferpose

#endif  // CHAMFERPOSE_CORE_SILHOUETTE_HPP
