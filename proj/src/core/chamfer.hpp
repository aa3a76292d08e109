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

#ifndef CHAMFERPOSE_CORE_CHAMFER_HPP
#define CHAMFERPOSE_CORE_CHAMFER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/projection.hpp"
#include "core/silhouette.hpp"
#include "core/types.hpp"

namespace chamferpose {

/// Circular distance flavor: signed treats orientations as distinct up to
/// 2*pi (distances in [0, pi]); unsigned identifies opposite directions
/// (distances in [0, pi/2]).
enum class CircularMode { Signed, Unsigned };

enum class Variant { CH, DCH_Thres, DCH_Quant, DCH_Quant2, DCH_DT3 };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);
std::string mode_name(CircularMode m);
CircularMode mode_from_name(const std::string& name);

struct ChamferConfig {
  Variant variant = Variant::DCH_Thres;
  double tau = 22.5 * kPi / 180.0;  // rad
  double K = 0;                     // <= 0 resolves to the image diagonal
  double lambda = 25.0;             // px per rad
  int bins = 16;
  CircularMode mode = CircularMode::Signed;

  void validate() const;
  double penalty(int width, int height) const;
  /// Angular range of the mode: 2*pi signed, pi unsigned.
  double angle_range() const { return mode == CircularMode::Signed ? 2 * kPi : kPi; }
};

/// Circular distance between two angles under the given mode.
double circular_distance(double a, double b, CircularMode mode);

/// Exact Euclidean distance transform with nearest-site labels.
struct DistanceField2D {
  int width = 0;
  int height = 0;
  std::vector<double> dist;      // px
  std::vector<int32_t> nearest;  // index into the seeding point list, -1 if none

  double dist_at(int x, int y) const { return dist[static_cast<size_t>(y) * width + x]; }
  int32_t nearest_at(int x, int y) const { return nearest[static_cast<size_t>(y) * width + x]; }
};

/// Two-pass lower-envelope distance transform seeded at the contour points
/// (which must be integer pixel centers inside the raster). Ties prefer the
/// smallest point index.
DistanceField2D build_df2(const std::vector<Vec2>& points, int width, int height);
DistanceField2D build_df2(const Contour& c, int width, int height);

/// Quantized-orientation distance tensor: per-bin distance transforms
/// relaxed along the circular orientation axis with step cost
/// lambda * bin width.
struct DistanceTensor3D {
  int width = 0;
  int height = 0;
  int bins = 0;
  double lambda = 0;
  CircularMode mode = CircularMode::Signed;
  std::vector<double> dist;      // (bin, y, x) raster
  std::vector<int32_t> nearest;
  std::vector<double> bin_centers;

  size_t idx(int x, int y, int o) const {
    return (static_cast<size_t>(o) * height + y) * width + x;
  }
  double dist_at(int x, int y, int o) const { return dist[idx(x, y, o)]; }
  int32_t nearest_at(int x, int y, int o) const { return nearest[idx(x, y, o)]; }
};

DistanceTensor3D build_dt3(const OrientedContour& oc, int width, int height,
                           const ChamferConfig& cfg);

/// Nearest bin center for an angle, and the second-closest bin
/// (soft binning); ties resolve to the lower index.
int snap_bin(double phi, int bins, CircularMode mode);
std::pair<int, int> closest_two_bins(double phi, int bins, CircularMode mode);

/// Everything a variant needs to evaluate one camera view. The contour
/// points are canonicalized (sorted by y, x, phi) so that scores and
/// correspondences are invariant to the input point order.
struct ChamferFields {
  ChamferConfig cfg;  // with K resolved
  int width = 0;
  int height = 0;
  std::vector<Vec2> points;
  std::vector<double> phi;
  DistanceField2D full;                   // CH, DCH-Thres
  std::vector<DistanceField2D> per_bin;   // DCH-Quant, DCH-Quant2
  std::vector<uint8_t> bin_nonempty;
  DistanceTensor3D dt3;                   // DCH-DT3
};

ChamferFields build_fields(const OrientedContour& oc, int width, int height,
                           const ChamferConfig& cfg);

/// Generalized Chamfer distance of the rim set against one view's fields.
double chamfer_score(const RimProjection& rim, const ChamferFields& fields);

struct Correspondence {
  int vertex = 0;
  int camera = 0;
  Vec2 target = Vec2::Zero();
  PluckerLine ray;
};

/// Per-vertex nearest contour point under the variant's matching distance,
/// backprojected to a viewing ray. DCH-Thres removes orientation-
/// inconsistent entries instead of penalizing them; DCH-Quant2 yields up
/// to two correspondences per vertex. May return an empty set when every
/// entry is rejected.
std::vector<Correspondence> select_correspondences(const RimProjection& rim,
                                                   const ChamferFields& fields,
                                                   const Camera& cam);

}  // namespace chamferpose

#endif  // CHAMFERPOSE_CORE_CHAMFER_HPP
