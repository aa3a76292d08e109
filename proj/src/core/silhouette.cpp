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

#include "core/silhouette.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chamferpose {

namespace {

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0) a += 2.0 * kPi;
  return a;
}

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double shoelace(const std::vector<Vec2>& pts) {
  double a = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % pts.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

}  // namespace

size_t BinaryMask::area() const {
  return static_cast<size_t>(std::count(bits.begin(), bits.end(), uint8_t{1}));
}

BinaryMask render_silhouette(const std::vector<Vec3>& vertices,
                             const std::vector<std::array<int, 3>>& faces,
                             const Camera& cam) {
  BinaryMask mask;
  mask.width = cam.width;
  mask.height = cam.height;
  mask.bits.assign(static_cast<size_t>(cam.width) * cam.height, 0);

  // Project all vertices once. Triangles with a vertex at non-positive
  // depth are skipped (no near-plane clipping).
  std::vector<Vec2> proj(vertices.size());
  std::vector<uint8_t> front(vertices.size(), 0);
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Vec3 xc = cam.R * vertices[i] + cam.t;
    if (xc.z() > 0) {
      const Vec3 h = cam.K * xc;
      proj[i] = {h.x() / h.z(), h.y() / h.z()};
      front[i] = 1;
    }
  }

  for (const auto& f : faces) {
    if (!front[f[0]] || !front[f[1]] || !front[f[2]]) continue;
    Vec2 a = proj[f[0]], b = proj[f[1]], c = proj[f[2]];
    double area2 = cross2(b - a, c - a);
    if (area2 == 0) continue;
    if (area2 < 0) std::swap(b, c);  // orient so edge functions are >= 0 inside

    const int x0 = std::max(0, static_cast<int>(std::ceil(std::min({a.x(), b.x(), c.x()}))));
    const int x1 = std::min(cam.width - 1, static_cast<int>(std::floor(std::max({a.x(), b.x(), c.x()}))));
    const int y0 = std::max(0, static_cast<int>(std::ceil(std::min({a.y(), b.y(), c.y()}))));
    const int y1 = std::min(cam.height - 1, static_cast<int>(std::floor(std::max({a.y(), b.y(), c.y()}))));
    if (x0 > x1 || y0 > y1) continue;

    const Vec2 e0 = b - a, e1 = c - b, e2 = a - c;
    // Top-left fill rule for pixels exactly on an edge: a top edge is
    // horizontal with interior below it, a left edge points upwards.
    auto edge_counts_tie = [](const Vec2& e) {
      return (e.y() == 0 && e.x() > 0) || e.y() < 0;
    };
    const bool tie0 = edge_counts_tie(e0), tie1 = edge_counts_tie(e1), tie2 = edge_counts_tie(e2);

    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const Vec2 p(static_cast<double>(x), static_cast<double>(y));
        const double w0 = cross2(e0, p - a);
        const double w1 = cross2(e1, p - b);
        const double w2 = cross2(e2, p - c);
        const bool in0 = w0 > 0 || (w0 == 0 && tie0);
        const bool in1 = w1 > 0 || (w1 == 0 && tie1);
        const bool in2 = w2 > 0 || (w2 == 0 && tie2);
        if (in0 && in1 && in2) mask.set(x, y, 1);
      }
    }
  }

  if (mask.area() == 0)
    throw EmptyMaskError("render_silhouette: mesh projects to an empty mask");
  return mask;
}

namespace {

// Moore neighborhood in clockwise order starting west.
constexpr int kNbx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr int kNby[8] = {0, -1, -1, -1, 0, 1, 1, 1};

std::vector<Vec2> trace_border(const BinaryMask& mask, int sx, int sy) {
  auto fg = [&](int x, int y) { return mask.inside(x, y) && mask.at(x, y) != 0; };
  auto nb_index = [](int dx, int dy) {
    for (int k = 0; k < 8; ++k)
      if (kNbx[k] == dx && kNby[k] == dy) return k;
    return -1;
  };
  // One Moore step: scan the neighborhood clockwise starting just after the
  // backtrack cell; yields the next border pixel and its backtrack index
  // (the last background cell scanned, seen from the next pixel).
  auto step = [&](int px, int py, int back, int& nx, int& ny, int& nback) {
    for (int k = 1; k <= 8; ++k) {
      const int cand = (back + k) % 8;
      nx = px + kNbx[cand];
      ny = py + kNby[cand];
      if (!fg(nx, ny)) continue;
      const int lastbg = (cand + 7) % 8;
      nback = nb_index(px + kNbx[lastbg] - nx, py + kNby[lastbg] - ny);
      return true;
    }
    return false;
  };

  std::vector<Vec2> pts;
  pts.emplace_back(sx, sy);
  // The start is the topmost-leftmost pixel of its component, so its west
  // neighbor is background.
  int px = sx, py = sy, back = 0;
  int nx, ny, nback;
  if (!step(px, py, back, nx, ny, nback)) return pts;  // isolated pixel

  const size_t limit = mask.bits.size() * 4 + 16;
  while (pts.size() < limit) {
    if (nx == sx && ny == sy && pts.size() >= 2) {
      // The loop closes when the walk is about to repeat its first move.
      int qx, qy, qb;
      if (step(nx, ny, nback, qx, qy, qb) && qx == static_cast<int>(pts[1].x()) &&
          qy == static_cast<int>(pts[1].y()))
        break;
    }
    pts.emplace_back(nx, ny);
    px = nx;
    py = ny;
    back = nback;
    if (!step(px, py, back, nx, ny, nback)) break;
  }
  return pts;
}

}  // namespace

std::vector<Contour> extract_contour(const BinaryMask& mask) {
  if (mask.area() == 0) throw EmptyMaskError("extract_contour: empty mask");

  std::vector<int32_t> label(mask.bits.size(), -1);
  std::vector<Contour> out;
  int32_t next_label = 0;
  std::vector<std::pair<int, int>> stack;

  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.at(x, y) == 0 || label[static_cast<size_t>(y) * mask.width + x] >= 0)
        continue;
      // Flood-fill the component (8-connectivity); (x,y) is its
      // topmost-leftmost pixel by scan order.
      stack.clear();
      stack.emplace_back(x, y);
      label[static_cast<size_t>(y) * mask.width + x] = next_label;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int k = 0; k < 8; ++k) {
          const int nx = cx + kNbx[k], ny = cy + kNby[k];
          if (!mask.inside(nx, ny) || mask.at(nx, ny) == 0) continue;
          auto& l = label[static_cast<size_t>(ny) * mask.width + nx];
          if (l < 0) { l = next_label; stack.emplace_back(nx, ny); }
        }
      }
      ++next_label;

      Contour c;
      c.points = trace_border(mask, x, y);
      if (c.points.size() < 3) continue;  // sub-3-pixel components carry no loop
      if (shoelace(c.points) < 0)
        std::reverse(c.points.begin() + 1, c.points.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 < 1e-24) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Indices are positions in the cyclically extended point list.
void rdp(const std::vector<Vec2>& pts, int i, int j, double tol,
         std::vector<int>& breaks) {
  const int n = static_cast<int>(pts.size());
  const Vec2& a = pts[i % n];
  const Vec2& b = pts[j % n];
  double maxd = -1;
  int argmax = -1;
  for (int k = i + 1; k < j; ++k) {
    const double d = point_segment_distance(pts[k % n], a, b);
    if (d > maxd) { maxd = d; argmax = k; }
  }
  if (argmax >= 0 && maxd > tol) {
    rdp(pts, i, argmax, tol, breaks);
    breaks.push_back(argmax);
    rdp(pts, argmax, j, tol, breaks);
  }
}

}  // namespace

std::vector<PolySegment> fit_polyline(const Contour& c, double tol) {
  const int n = static_cast<int>(c.points.size());
  if (n < 3) throw InvalidArgumentError("fit_polyline: contour needs >= 3 points");

  // Split the closed loop at point 0 and the point farthest from it, then
  // simplify both halves.
  int far = 1;
  double best = -1;
  for (int i = 1; i < n; ++i) {
    const double d = (c.points[i] - c.points[0]).squaredNorm();
    if (d > best) { best = d; far = i; }
  }

  std::vector<int> breaks;
  breaks.push_back(0);
  rdp(c.points, 0, far, tol, breaks);
  breaks.push_back(far);
  rdp(c.points, far, n, tol, breaks);

  std::vector<PolySegment> segs;
  segs.reserve(breaks.size());
  for (size_t s = 0; s < breaks.size(); ++s) {
    const int i = breaks[s] % n;
    const int j = breaks[(s + 1) % breaks.size()] % n;
    const Vec2 d = c.points[j] - c.points[i];
    segs.push_back({i, j, wrap_2pi(std::atan2(d.y(), d.x()))});
  }
  return segs;
}

OrientedContour orient_contour(const Contour& c, double tol) {
  const int n = static_cast<int>(c.points.size());
  const auto segs = fit_polyline(c, tol);

  OrientedContour oc;
  oc.points = c.points;
  oc.phi.assign(n, 0.0);
  for (const auto& seg : segs) {
    // Points first..last-1 (cyclic) belong to this segment.
    for (int k = seg.first; k % n != seg.last; ++k) oc.phi[k % n] = seg.angle;
  }
  return oc;
}

OrientedContour orient_mask_contours(const BinaryMask& mask, double tol) {
  OrientedContour all;
  for (const auto& c : extract_contour(mask)) {
    OrientedContour oc = orient_contour(c, tol);
    all.points.insert(all.points.end(), oc.points.begin(), oc.points.end());
    all.phi.insert(all.phi.end(), oc.phi.begin(), oc.phi.end());
  }
  return all;
}

RimProjection rim_vertices_posed(const std::vector<Vec3>& posed_vertices,
                                 const SkinnedNormals& posed_normals,
                                 const std::vector<std::array<int, 3>>& faces,
                                 const Camera& cam, int camera_id,
                                 const RimParams& params) {
  const BinaryMask mask = render_silhouette(posed_vertices, faces, cam);
  const auto contours = extract_contour(mask);

  std::vector<uint8_t> border(mask.bits.size(), 0);
  for (const auto& c : contours)
    for (const Vec2& p : c.points)
      border[static_cast<size_t>(std::lround(p.y())) * mask.width +
             static_cast<size_t>(std::lround(p.x()))] = 1;

  const Vec3 c0 = cam.center();
  const double cos_gate = std::sin(params.perpendicular_slack);
  const double bd = params.border_distance;
  const int reach = static_cast<int>(std::ceil(bd));

  RimProjection rim;
  for (size_t v = 0; v < posed_vertices.size(); ++v) {
    if (!posed_normals.valid[v]) continue;
    const Vec3 xc = cam.R * posed_vertices[v] + cam.t;
    if (!(xc.z() > 0)) continue;
    const Vec3 h = cam.K * xc;
    const Vec2 q(h.x() / h.z(), h.y() / h.z());

    const int cx = static_cast<int>(std::lround(q.x()));
    const int cy = static_cast<int>(std::lround(q.y()));
    bool near_border = false;
    for (int dy = -reach; dy <= reach && !near_border; ++dy) {
      for (int dx = -reach; dx <= reach; ++dx) {
        const int bx = cx + dx, by = cy + dy;
        if (!mask.inside(bx, by) || !border[static_cast<size_t>(by) * mask.width + bx])
          continue;
        if ((q - Vec2(bx, by)).norm() <= bd) { near_border = true; break; }
      }
    }
    if (!near_border) continue;

    const Vec3& n = posed_normals.normals[v];
    const Vec3 ray = (posed_vertices[v] - c0).normalized();
    if (std::abs(n.dot(ray)) > cos_gate) continue;

    // Image-plane direction of the 3d normal via the projection Jacobian.
    const Vec3 nc = cam.R * n;
    const double z = xc.z();
    const double gx = (cam.K(0, 0) * nc.x() + cam.K(0, 1) * nc.y() +
                       (cam.K(0, 2) - q.x()) * nc.z()) / z;
    const double gy = (cam.K(1, 1) * nc.y() + (cam.K(1, 2) - q.y()) * nc.z()) / z;
    const double gn = std::hypot(gx, gy);
    if (gn < 1e-12) continue;
    // Rotate the outward normal by +90 degrees to the contour tangent.
    const double phi = wrap_2pi(std::atan2(gx / gn, -gy / gn));

    rim.entries.push_back({static_cast<int>(v), q, phi, camera_id});
  }

  if (rim.entries.empty())
    throw DegenerateError("rim_vertices: empty rim set");
  return rim;
}

RimProjection rim_vertices(const Skeleton& skel, const SkinnedMesh& mesh,
                           const PoseVector& pose, const Camera& cam,
                           int camera_id, const RimParams& params) {
  const auto transforms = bone_transforms(skel, pose);
  const auto posed = skin(mesh, transforms);
  const auto normals = skin_normals(mesh, transforms);
  return rim_vertices_posed(posed, normals, mesh.faces, cam, camera_id, params);
}

}  // namespace chamferpose
