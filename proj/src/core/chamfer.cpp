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

#include "core/chamfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace chamferpose {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_into(double a, double range) {
  a = std::fmod(a, range);
  if (a < 0) a += range;
  return a;
}
}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::CH: return "ch";
    case Variant::DCH_Thres: return "dch-thres";
    case Variant::DCH_Quant: return "dch-quant";
    case Variant::DCH_Quant2: return "dch-quant2";
    case Variant::DCH_DT3: return "dch-dt3";
  }
  throw InvalidArgumentError("unknown variant");
}

Variant variant_from_name(const std::string& name) {
  if (name == "ch") return Variant::CH;
  if (name == "dch-thres") return Variant::DCH_Thres;
  if (name == "dch-quant") return Variant::DCH_Quant;
  if (name == "dch-quant2") return Variant::DCH_Quant2;
  if (name == "dch-dt3") return Variant::DCH_DT3;
  throw ParseError("unknown chamfer variant '" + name + "'");
}

std::string mode_name(CircularMode m) {
  return m == CircularMode::Signed ? "signed" : "unsigned";
}

CircularMode mode_from_name(const std::string& name) {
  if (name == "signed") return CircularMode::Signed;
  if (name == "unsigned") return CircularMode::Unsigned;
  throw ParseError("unknown circular mode '" + name + "'");
}

void ChamferConfig::validate() const {
  if (!(tau > 0) || tau > kPi)
    throw InvalidArgumentError("chamfer config: tau must be in (0, pi]");
  if (lambda < 0) throw InvalidArgumentError("chamfer config: lambda must be >= 0");
  if (bins < 2) throw InvalidArgumentError("chamfer config: bins must be >= 2");
}

double ChamferConfig::penalty(int width, int height) const {
  return K > 0 ? K : std::hypot(static_cast<double>(width), static_cast<double>(height));
}

double circular_distance(double a, double b, CircularMode mode) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw InvalidArgumentError("circular_distance: non-finite angle");
  const double period = mode == CircularMode::Signed ? 2 * kPi : kPi;
  return std::abs(std::remainder(a - b, period));
}

int snap_bin(double phi, int bins, CircularMode mode) {
  const double range = mode == CircularMode::Signed ? 2 * kPi : kPi;
  const double binw = range / bins;
  const double r = wrap_into(phi, range);
  int i = static_cast<int>(std::floor(r / binw));
  if (i >= bins) i = bins - 1;  // guard against r == range after rounding
  const double frac = r - i * binw;
  if (frac == 0.0) {
    // Exactly on a bin boundary: equidistant from bins i-1 and i.
    const int lower = (i + bins - 1) % bins;
    return std::min(lower, i);
  }
  return i;
}

std::pair<int, int> closest_two_bins(double phi, int bins, CircularMode mode) {
  const double range = mode == CircularMode::Signed ? 2 * kPi : kPi;
  const double binw = range / bins;
  const int b1 = snap_bin(phi, bins, mode);
  const double center = (b1 + 0.5) * binw;
  const double r = wrap_into(phi, range);
  const double diff = std::remainder(r - center, range);
  int b2;
  if (diff > 0)
    b2 = (b1 + 1) % bins;
  else if (diff < 0)
    b2 = (b1 + bins - 1) % bins;
  else
    b2 = std::min((b1 + 1) % bins, (b1 + bins - 1) % bins);
  return {b1, b2};
}

namespace {

// Felzenszwalb-Huttenlocher exact squared-distance transform with labels.
// Seeds carry the smallest point index per pixel; ties across sites are
// resolved toward the smaller label where the lower envelope exposes them.
DistanceField2D edt_with_labels(const std::vector<Vec2>& points,
                                const std::vector<int32_t>& subset, int width,
                                int height) {
  DistanceField2D f;
  f.width = width;
  f.height = height;
  f.dist.assign(static_cast<size_t>(width) * height, kInf);
  f.nearest.assign(static_cast<size_t>(width) * height, -1);

  std::vector<int32_t> seed(static_cast<size_t>(width) * height, -1);
  for (int32_t pi : subset) {
    const Vec2& p = points[pi];
    const int x = static_cast<int>(std::lround(p.x()));
    const int y = static_cast<int>(std::lround(p.y()));
    if (x < 0 || x >= width || y < 0 || y >= height)
      throw InvalidArgumentError("distance transform: contour point outside raster");
    auto& s = seed[static_cast<size_t>(y) * width + x];
    if (s < 0 || pi < s) s = pi;
  }

  // Column pass: nearest seed row per column, ties to the smaller label.
  std::vector<double> g(static_cast<size_t>(width) * height, kInf);  // |dy|
  std::vector<int32_t> gl(static_cast<size_t>(width) * height, -1);
  for (int x = 0; x < width; ++x) {
    double d = kInf;
    int32_t l = -1;
    for (int y = 0; y < height; ++y) {
      const size_t at = static_cast<size_t>(y) * width + x;
      if (seed[at] >= 0) { d = 0; l = seed[at]; }
      else if (d != kInf) ++d;
      g[at] = d;
      gl[at] = l;
    }
    d = kInf;
    l = -1;
    for (int y = height - 1; y >= 0; --y) {
      const size_t at = static_cast<size_t>(y) * width + x;
      if (seed[at] >= 0) { d = 0; l = seed[at]; }
      else if (d != kInf) ++d;
      if (d < g[at] || (d == g[at] && l >= 0 && (gl[at] < 0 || l < gl[at]))) {
        g[at] = d;
        gl[at] = l;
      }
    }
  }

  // Row pass: lower envelope of parabolas (x - x0)^2 + g(x0)^2.
  std::vector<int> v(width);
  std::vector<double> z(width + 1);
  std::vector<double> gsq(width);
  for (int y = 0; y < height; ++y) {
    const size_t row = static_cast<size_t>(y) * width;
    int k = -1;
    for (int x = 0; x < width; ++x) {
      const double gx = g[row + x];
      gsq[x] = gx == kInf ? kInf : gx * gx;
      if (gsq[x] == kInf) continue;
      double s = 0;
      while (k >= 0) {
        // Intersection of parabola x with parabola v[k].
        s = (gsq[x] - gsq[v[k]] + static_cast<double>(x) * x -
             static_cast<double>(v[k]) * v[k]) /
            (2.0 * (x - v[k]));
        if (s <= z[k]) --k;
        else break;
      }
      ++k;
      v[k] = x;
      z[k] = k == 0 ? -kInf : s;
      z[k + 1] = kInf;
    }
    if (k < 0) continue;  // empty seed set for this field

    int j = 0;
    for (int x = 0; x < width; ++x) {
      while (z[j + 1] < x) ++j;
      auto value = [&](int cand) {
        const double dx = x - v[cand];
        return dx * dx + gsq[v[cand]];
      };
      int best = j;
      double bd = value(j);
      // Neighboring envelope parabolas may tie exactly at integer pixels;
      // prefer the smaller label.
      for (int cand : {j - 1, j + 1}) {
        if (cand < 0 || cand > k || v[cand] < 0) continue;
        if (z[cand] > x || z[cand + 1] < x) continue;
        const double cd = value(cand);
        if (cd < bd || (cd == bd && gl[row + v[cand]] < gl[row + v[best]])) {
          best = cand;
          bd = cd;
        }
      }
      f.dist[row + x] = std::sqrt(bd);
      f.nearest[row + x] = gl[row + v[best]];
    }
  }
  return f;
}

}  // namespace

DistanceField2D build_df2(const std::vector<Vec2>& points, int width, int height) {
  if (points.empty()) throw InvalidArgumentError("build_df2: empty contour");
  if (width <= 0 || height <= 0)
    throw InvalidArgumentError("build_df2: non-positive raster size");
  std::vector<int32_t> all(points.size());
  std::iota(all.begin(), all.end(), 0);
  return edt_with_labels(points, all, width, height);
}

DistanceField2D build_df2(const Contour& c, int width, int height) {
  return build_df2(c.points, width, height);
}

DistanceTensor3D build_dt3(const OrientedContour& oc, int width, int height,
                           const ChamferConfig& cfg) {
  cfg.validate();
  if (oc.points.empty()) throw InvalidArgumentError("build_dt3: empty contour");

  DistanceTensor3D t;
  t.width = width;
  t.height = height;
  t.bins = cfg.bins;
  t.lambda = cfg.lambda;
  t.mode = cfg.mode;
  const double range = cfg.angle_range();
  const double binw = range / cfg.bins;
  for (int o = 0; o < cfg.bins; ++o) t.bin_centers.push_back((o + 0.5) * binw);

  const size_t slice = static_cast<size_t>(width) * height;
  t.dist.assign(slice * cfg.bins, kInf);
  t.nearest.assign(slice * cfg.bins, -1);

  std::vector<std::vector<int32_t>> by_bin(cfg.bins);
  for (size_t i = 0; i < oc.points.size(); ++i)
    by_bin[snap_bin(oc.phi[i], cfg.bins, cfg.mode)].push_back(static_cast<int32_t>(i));

  for (int o = 0; o < cfg.bins; ++o) {
    if (by_bin[o].empty()) continue;
    DistanceField2D f = edt_with_labels(oc.points, by_bin[o], width, height);
    std::copy(f.dist.begin(), f.dist.end(), t.dist.begin() + o * slice);
    std::copy(f.nearest.begin(), f.nearest.end(), t.nearest.begin() + o * slice);
  }

  // Circular relaxation along the orientation axis, step cost
  // lambda * bin width. One forward+backward pass reaches the fixed point;
  // a second pass verifies it.
  const double step = cfg.lambda * binw;
  auto relax_from = [&](int o, int src) {
    bool changed = false;
    double* d = t.dist.data() + static_cast<size_t>(o) * slice;
    const double* ds = t.dist.data() + static_cast<size_t>(src) * slice;
    int32_t* n = t.nearest.data() + static_cast<size_t>(o) * slice;
    const int32_t* ns = t.nearest.data() + static_cast<size_t>(src) * slice;
    for (size_t p = 0; p < slice; ++p) {
      const double cand = ds[p] + step;
      if (cand < d[p]) {
        d[p] = cand;
        n[p] = ns[p];
        changed = true;
      }
    }
    return changed;
  };
  auto sweep = [&]() {
    bool changed = false;
    for (int it = 1; it <= 2 * cfg.bins; ++it) {
      const int o = it % cfg.bins;
      changed |= relax_from(o, (o + cfg.bins - 1) % cfg.bins);
    }
    for (int it = 2 * cfg.bins - 1; it >= 0; --it) {
      const int o = it % cfg.bins;
      changed |= relax_from(o, (o + 1) % cfg.bins);
    }
    return changed;
  };
  sweep();
  if (sweep()) {
    if (sweep())
      throw Error("build_dt3: orientation relaxation did not reach a fixed point");
  }
  return t;
}

ChamferFields build_fields(const OrientedContour& oc, int width, int height,
                           const ChamferConfig& cfg) {
  cfg.validate();
  if (oc.points.size() != oc.phi.size())
    throw InvalidArgumentError("build_fields: point/phi size mismatch");
  if (oc.points.empty()) throw InvalidArgumentError("build_fields: empty contour");

  ChamferFields fields;
  fields.cfg = cfg;
  fields.cfg.K = cfg.penalty(width, height);
  fields.width = width;
  fields.height = height;

  // Canonical order: scores must not depend on how the caller enumerated
  // the contour points.
  std::vector<int32_t> order(oc.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    if (oc.points[a].y() != oc.points[b].y()) return oc.points[a].y() < oc.points[b].y();
    if (oc.points[a].x() != oc.points[b].x()) return oc.points[a].x() < oc.points[b].x();
    return oc.phi[a] < oc.phi[b];
  });
  fields.points.reserve(order.size());
  fields.phi.reserve(order.size());
  for (int32_t i : order) {
    fields.points.push_back(oc.points[i]);
    fields.phi.push_back(wrap_into(oc.phi[i], 2 * kPi));
  }

  const OrientedContour canon{fields.points, fields.phi};
  fields.full = build_df2(fields.points, width, height);

  if (cfg.variant == Variant::DCH_Quant || cfg.variant == Variant::DCH_Quant2) {
    fields.per_bin.resize(cfg.bins);
    fields.bin_nonempty.assign(cfg.bins, 0);
    std::vector<std::vector<int32_t>> by_bin(cfg.bins);
    for (size_t i = 0; i < fields.points.size(); ++i) {
      if (cfg.variant == Variant::DCH_Quant2) {
        // Soft binning on both sides: a contour point near a bin boundary
        // seeds both adjacent fields, so a perfectly aligned rim scores 0.
        const auto [b1, b2] = closest_two_bins(fields.phi[i], cfg.bins, cfg.mode);
        by_bin[b1].push_back(static_cast<int32_t>(i));
        if (b2 != b1) by_bin[b2].push_back(static_cast<int32_t>(i));
      } else {
        by_bin[snap_bin(fields.phi[i], cfg.bins, cfg.mode)].push_back(
            static_cast<int32_t>(i));
      }
    }
    for (int o = 0; o < cfg.bins; ++o) {
      if (by_bin[o].empty()) continue;
      fields.per_bin[o] = edt_with_labels(fields.points, by_bin[o], width, height);
      fields.bin_nonempty[o] = 1;
    }
  }
  if (cfg.variant == Variant::DCH_DT3)
    fields.dt3 = build_dt3(canon, width, height, fields.cfg);

  return fields;
}

double chamfer_score(const RimProjection& rim, const ChamferFields& fields) {
  if (rim.entries.empty()) throw DegenerateError("chamfer_score: empty rim set");
  const ChamferConfig& cfg = fields.cfg;
  const double K = cfg.K;

  double sum = 0;
  size_t terms = 0;
  for (const RimEntry& e : rim.entries) {
    const int x = std::clamp(static_cast<int>(std::lround(e.pixel.x())), 0, fields.width - 1);
    const int y = std::clamp(static_cast<int>(std::lround(e.pixel.y())), 0, fields.height - 1);
    switch (cfg.variant) {
      case Variant::CH: {
        sum += fields.full.dist_at(x, y);
        ++terms;
        break;
      }
      case Variant::DCH_Thres: {
        const double d = fields.full.dist_at(x, y);
        const int32_t q = fields.full.nearest_at(x, y);
        const double dphi = circular_distance(e.phi, fields.phi[q], cfg.mode);
        sum += dphi < cfg.tau ? d : K;
        ++terms;
        break;
      }
      case Variant::DCH_Quant: {
        const int b = snap_bin(e.phi, cfg.bins, cfg.mode);
        sum += fields.bin_nonempty[b] ? fields.per_bin[b].dist_at(x, y) : K;
        ++terms;
        break;
      }
      case Variant::DCH_Quant2: {
        const auto [b1, b2] = closest_two_bins(e.phi, cfg.bins, cfg.mode);
        sum += fields.bin_nonempty[b1] ? fields.per_bin[b1].dist_at(x, y) : K;
        sum += fields.bin_nonempty[b2] ? fields.per_bin[b2].dist_at(x, y) : K;
        terms += 2;
        break;
      }
      case Variant::DCH_DT3: {
        const int b = snap_bin(e.phi, cfg.bins, cfg.mode);
        sum += fields.dt3.dist_at(x, y, b);
        ++terms;
        break;
      }
    }
  }
  return sum / static_cast<double>(terms);
}

std::vector<Correspondence> select_correspondences(const RimProjection& rim,
                                                   const ChamferFields& fields,
                                                   const Camera& cam) {
  if (rim.entries.empty())
    throw DegenerateError("select_correspondences: empty rim set");
  const ChamferConfig& cfg = fields.cfg;

  std::vector<Correspondence> out;
  out.reserve(rim.entries.size());
  auto emit = [&](const RimEntry& e, int32_t q) {
    if (q < 0) return;
    Correspondence c;
    c.vertex = e.vertex;
    c.camera = e.camera;
    c.target = fields.points[q];
    c.ray = backproject(c.target, cam);
    out.push_back(std::move(c));
  };

  for (const RimEntry& e : rim.entries) {
    const int x = std::clamp(static_cast<int>(std::lround(e.pixel.x())), 0, fields.width - 1);
    const int y = std::clamp(static_cast<int>(std::lround(e.pixel.y())), 0, fields.height - 1);
    switch (cfg.variant) {
      case Variant::CH:
        emit(e, fields.full.nearest_at(x, y));
        break;
      case Variant::DCH_Thres: {
        const int32_t q = fields.full.nearest_at(x, y);
        if (q >= 0 && circular_distance(e.phi, fields.phi[q], cfg.mode) < cfg.tau)
          emit(e, q);
        break;
      }
      case Variant::DCH_Quant: {
        const int b = snap_bin(e.phi, cfg.bins, cfg.mode);
        if (fields.bin_nonempty[b]) emit(e, fields.per_bin[b].nearest_at(x, y));
        break;
      }
      case Variant::DCH_Quant2: {
        const auto [b1, b2] = closest_two_bins(e.phi, cfg.bins, cfg.mode);
        if (fields.bin_nonempty[b1]) emit(e, fields.per_bin[b1].nearest_at(x, y));
        if (fields.bin_nonempty[b2]) emit(e, fields.per_bin[b2].nearest_at(x, y));
        break;
      }
      case Variant::DCH_DT3: {
        const int b = snap_bin(e.phi, cfg.bins, cfg.mode);
        emit(e, fields.dt3.nearest_at(x, y, b));
        break;
      }
    }
  }
  return out;
}

}  // namespace chamferpose
