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

#include "core/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace chamferpose {

using nlohmann::json;

namespace {

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json mat3_to_json(const Mat3& m) {
  json a = json::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a.push_back(m(r, c));
  return a;
}

Mat3 mat3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 9) throw ParseError("expected a row-major 3x3 matrix");
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = j[3 * r + c].get<double>();
  return m;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

}  // namespace

std::string model_to_json(const Model& model) {
  json doc;
  doc["bones"] = json::array();
  for (const Bone& b : model.skeleton.bones) {
    json jb;
    jb["id"] = b.id;
    jb["parent"] = b.parent < 0 ? json(nullptr) : json(b.parent);
    jb["twist"] = {{"omega", vec3_to_json(b.twist.omega)}, {"v", vec3_to_json(b.twist.v)}};
    jb["center"] = vec3_to_json(b.center);
    doc["bones"].push_back(jb);
  }
  doc["vertices"] = json::array();
  for (const Vec3& v : model.mesh.rest_vertices) doc["vertices"].push_back(vec3_to_json(v));
  doc["normals"] = json::array();
  for (const Vec3& n : model.mesh.rest_normals) doc["normals"].push_back(vec3_to_json(n));
  doc["faces"] = json::array();
  for (const auto& f : model.mesh.faces) doc["faces"].push_back(json::array({f[0], f[1], f[2]}));
  doc["weights"] = json::array();
  for (const auto& wv : model.mesh.weights) {
    json jw = json::array();
    for (const auto& [bone, alpha] : wv)
      jw.push_back(json::array({model.skeleton.bones[bone].id, alpha}));
    doc["weights"].push_back(jw);
  }
  return doc.dump(2) + "\n";
}

Model model_from_json(const std::string& text) {
  const json doc = parse(text);
  try {
    Model model;
    std::unordered_map<int, int> pos_of;
    for (const json& jb : doc.at("bones")) {
      Bone b;
      b.id = jb.at("id").get<int>();
      b.parent = jb.at("parent").is_null() ? -1 : jb.at("parent").get<int>();
      b.twist.omega = vec3_from_json(jb.at("twist").at("omega"));
      b.twist.v = vec3_from_json(jb.at("twist").at("v"));
      b.center = vec3_from_json(jb.at("center"));
      pos_of[b.id] = static_cast<int>(model.skeleton.bones.size());
      model.skeleton.bones.push_back(b);
    }
    for (const json& jv : doc.at("vertices"))
      model.mesh.rest_vertices.push_back(vec3_from_json(jv));
    for (const json& jn : doc.at("normals"))
      model.mesh.rest_normals.push_back(vec3_from_json(jn));
    for (const json& jf : doc.at("faces")) {
      if (jf.size() != 3) throw ParseError("face needs 3 indices");
      model.mesh.faces.push_back({jf[0].get<int>(), jf[1].get<int>(), jf[2].get<int>()});
    }
    for (const json& jw : doc.at("weights")) {
      std::vector<std::pair<int, double>> wv;
      for (const json& entry : jw) {
        if (entry.size() != 2) throw ParseError("weight entry needs [boneId, alpha]");
        const int id = entry[0].get<int>();
        const auto it = pos_of.find(id);
        if (it == pos_of.end())
          throw ParseError("weight references unknown bone id " + std::to_string(id));
        wv.emplace_back(it->second, entry[1].get<double>());
      }
      model.mesh.weights.push_back(std::move(wv));
    }
    model.skeleton.validate();
    model.mesh.validate(model.skeleton.dof_count());
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model document: ") + e.what());
  }
}

std::string rig_to_json(const Rig& rig) {
  json doc;
  doc["cameras"] = json::array();
  for (const Camera& c : rig.cameras) {
    json jc;
    jc["K"] = mat3_to_json(c.K);
    jc["R"] = mat3_to_json(c.R);
    jc["t"] = vec3_to_json(c.t);
    jc["width"] = c.width;
    jc["height"] = c.height;
    doc["cameras"].push_back(jc);
  }
  return doc.dump(2) + "\n";
}

Rig rig_from_json(const std::string& text) {
  const json doc = parse(text);
  try {
    Rig rig;
    for (const json& jc : doc.at("cameras")) {
      Camera c;
      c.K = mat3_from_json(jc.at("K"));
      c.R = mat3_from_json(jc.at("R"));
      c.t = vec3_from_json(jc.at("t"));
      c.width = jc.at("width").get<int>();
      c.height = jc.at("height").get<int>();
      c.validate();
      rig.cameras.push_back(c);
    }
    return rig;
  } catch (const json::exception& e) {
    throw ParseError(std::string("rig document: ") + e.what());
  }
}

std::string sequence_to_json(const Sequence& seq) {
  json doc;
  doc["model"] = seq.model_name;
  doc["fps"] = seq.fps;
  doc["frames"] = json::array();
  for (const PoseVector& f : seq.frames) {
    json jf = json::array();
    for (int i = 0; i < f.size(); ++i) jf.push_back(f[i]);
    doc["frames"].push_back(jf);
  }
  return doc.dump(2) + "\n";
}

Sequence sequence_from_json(const std::string& text) {
  const json doc = parse(text);
  try {
    Sequence seq;
    seq.model_name = doc.value("model", "synthetic");
    seq.fps = doc.value("fps", 25.0);
    for (const json& jf : doc.at("frames")) {
      PoseVector pose(jf.size());
      for (size_t i = 0; i < jf.size(); ++i) pose[static_cast<int>(i)] = jf[i].get<double>();
      seq.frames.push_back(std::move(pose));
    }
    return seq;
  } catch (const json::exception& e) {
    throw ParseError(std::string("sequence document: ") + e.what());
  }
}

namespace {

json chamfer_config_to_json_obj(const ChamferConfig& cfg) {
  json j;
  j["variant"] = variant_name(cfg.variant);
  j["tau_deg"] = cfg.tau * 180.0 / kPi;
  j["K"] = cfg.K > 0 ? json(cfg.K) : json(nullptr);
  j["lambda"] = cfg.lambda;
  j["bins"] = cfg.bins;
  j["mode"] = mode_name(cfg.mode);
  return j;
}

ChamferConfig chamfer_config_from_json_obj(const json& j) {
  ChamferConfig cfg;
  if (j.contains("variant")) cfg.variant = variant_from_name(j.at("variant").get<std::string>());
  if (j.contains("tau_deg") && !j.at("tau_deg").is_null())
    cfg.tau = j.at("tau_deg").get<double>() * kPi / 180.0;
  if (j.contains("K") && !j.at("K").is_null()) cfg.K = j.at("K").get<double>();
  if (j.contains("lambda") && !j.at("lambda").is_null()) cfg.lambda = j.at("lambda").get<double>();
  if (j.contains("bins") && !j.at("bins").is_null()) cfg.bins = j.at("bins").get<int>();
  if (j.contains("mode")) cfg.mode = mode_from_name(j.at("mode").get<std::string>());
  cfg.validate();
  return cfg;
}

json solver_config_to_json_obj(const SolverConfig& cfg) {
  json j;
  j["max_outer_iterations"] = cfg.max_outer_iterations;
  j["max_inner_iterations"] = cfg.max_inner_iterations;
  j["convergence_tol"] = cfg.convergence_tol;
  j["damping"] = cfg.damping;
  return j;
}

SolverConfig solver_config_from_json_obj(const json& j) {
  SolverConfig cfg;
  cfg.max_outer_iterations = j.value("max_outer_iterations", cfg.max_outer_iterations);
  cfg.max_inner_iterations = j.value("max_inner_iterations", cfg.max_inner_iterations);
  cfg.convergence_tol = j.value("convergence_tol", cfg.convergence_tol);
  cfg.damping = j.value("damping", cfg.damping);
  cfg.validate();
  return cfg;
}

json model_spec_to_json_obj(const SyntheticModelSpec& spec) {
  json j;
  j["chains"] = spec.chains;
  j["bones_per_chain"] = spec.bones_per_chain;
  j["capsule_radius_mm"] = spec.capsule_radius;
  j["capsule_length_mm"] = spec.capsule_length;
  j["chain_spacing_mm"] = spec.chain_spacing;
  j["cameras"] = spec.cameras;
  j["ring_radius_mm"] = spec.ring_radius;
  j["image_width"] = spec.image_width;
  j["image_height"] = spec.image_height;
  j["segments"] = spec.segments;
  j["rings"] = spec.rings;
  j["blend_zone"] = spec.blend_zone;
  return j;
}

SyntheticModelSpec model_spec_from_json_obj(const json& j) {
  SyntheticModelSpec spec;
  spec.chains = j.value("chains", spec.chains);
  spec.bones_per_chain = j.value("bones_per_chain", spec.bones_per_chain);
  spec.capsule_radius = j.value("capsule_radius_mm", spec.capsule_radius);
  spec.capsule_length = j.value("capsule_length_mm", spec.capsule_length);
  spec.chain_spacing = j.value("chain_spacing_mm", spec.chain_spacing);
  spec.cameras = j.value("cameras", spec.cameras);
  spec.ring_radius = j.value("ring_radius_mm", spec.ring_radius);
  spec.image_width = j.value("image_width", spec.image_width);
  spec.image_height = j.value("image_height", spec.image_height);
  spec.segments = j.value("segments", spec.segments);
  spec.rings = j.value("rings", spec.rings);
  spec.blend_zone = j.value("blend_zone", spec.blend_zone);
  spec.validate();
  return spec;
}

}  // namespace

std::string chamfer_config_to_json(const ChamferConfig& cfg) {
  return chamfer_config_to_json_obj(cfg).dump(2) + "\n";
}

ChamferConfig chamfer_config_from_json(const std::string& text) {
  return chamfer_config_from_json_obj(parse(text));
}

std::string solver_config_to_json(const SolverConfig& cfg) {
  return solver_config_to_json_obj(cfg).dump(2) + "\n";
}

SolverConfig solver_config_from_json(const std::string& text) {
  return solver_config_from_json_obj(parse(text));
}

std::string model_spec_to_json(const SyntheticModelSpec& spec) {
  return model_spec_to_json_obj(spec).dump(2) + "\n";
}

SyntheticModelSpec model_spec_from_json(const std::string& text) {
  return model_spec_from_json_obj(parse(text));
}

RunConfig default_run_config() {
  RunConfig cfg;
  ChamferConfig ch;
  ch.variant = Variant::CH;
  ChamferConfig thres;
  thres.variant = Variant::DCH_Thres;
  ChamferConfig quant;
  quant.variant = Variant::DCH_Quant;
  quant.bins = 8;
  ChamferConfig quant2;
  quant2.variant = Variant::DCH_Quant2;
  quant2.bins = 8;
  ChamferConfig dt3;
  dt3.variant = Variant::DCH_DT3;
  cfg.variants = {{"ch", ch},
                  {"dch-thres", thres},
                  {"dch-quant", quant},
                  {"dch-quant2", quant2},
                  {"dch-dt3", dt3}};
  return cfg;
}

std::string run_config_to_json(const RunConfig& cfg) {
  json doc;
  doc["model"] = model_spec_to_json_obj(cfg.model);
  doc["sequence"] = {{"frames", cfg.frames},
                     {"seed", cfg.motion.seed},
                     {"fps", cfg.motion.fps},
                     {"translation_amp_mm", cfg.motion.translation_amp},
                     {"rotation_amp_rad", cfg.motion.rotation_amp},
                     {"joint_amp_rad", cfg.motion.joint_amp},
                     {"base_period_frames", cfg.motion.base_period}};
  doc["pairs"] = {{"fraction", cfg.fraction}, {"gaps", cfg.gaps}, {"seed", cfg.pair_seed}};
  doc["variants"] = json::array();
  for (const auto& v : cfg.variants) {
    json jv = chamfer_config_to_json_obj(v.cfg);
    jv["label"] = v.label;
    doc["variants"].push_back(jv);
  }
  doc["solver"] = solver_config_to_json_obj(cfg.solver);
  doc["output_dir"] = cfg.output_dir;
  return doc.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text) {
  const json doc = parse(text);
  try {
    RunConfig cfg = default_run_config();
    if (doc.contains("model")) cfg.model = model_spec_from_json_obj(doc.at("model"));
    if (doc.contains("sequence")) {
      const json& js = doc.at("sequence");
      cfg.frames = js.value("frames", cfg.frames);
      cfg.motion.seed = js.value("seed", cfg.motion.seed);
      cfg.motion.fps = js.value("fps", cfg.motion.fps);
      cfg.motion.translation_amp = js.value("translation_amp_mm", cfg.motion.translation_amp);
      cfg.motion.rotation_amp = js.value("rotation_amp_rad", cfg.motion.rotation_amp);
      cfg.motion.joint_amp = js.value("joint_amp_rad", cfg.motion.joint_amp);
      cfg.motion.base_period = js.value("base_period_frames", cfg.motion.base_period);
    }
    if (doc.contains("pairs")) {
      const json& jp = doc.at("pairs");
      cfg.fraction = jp.value("fraction", cfg.fraction);
      if (jp.contains("gaps")) cfg.gaps = jp.at("gaps").get<std::vector<int>>();
      cfg.pair_seed = jp.value("seed", cfg.pair_seed);
    }
    if (doc.contains("variants")) {
      cfg.variants.clear();
      for (const json& jv : doc.at("variants")) {
        VariantSpec v;
        v.cfg = chamfer_config_from_json_obj(jv);
        v.label = jv.value("label", variant_name(v.cfg.variant));
        cfg.variants.push_back(std::move(v));
      }
    }
    if (doc.contains("solver")) cfg.solver = solver_config_from_json_obj(doc.at("solver"));
    cfg.output_dir = doc.value("output_dir", cfg.output_dir);
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(std::string("run config: ") + e.what());
  }
}

std::string records_to_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "pair_id,gap,variant,initial_mm,final_mm,time_s,converged\n";
  for (const PairRecord& r : report.records) {
    out << r.pair_id << ',' << r.gap << ',' << r.variant << ','
        << fmt("%.12g", r.initial_mm) << ',' << fmt("%.12g", r.final_mm) << ','
        << fmt("%.6f", r.time_s) << ',' << (r.converged ? 1 : 0) << '\n';
  }
  return out.str();
}

BenchmarkReport records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "pair_id,gap,variant,initial_mm,final_mm,time_s,converged")
    throw ParseError("records csv: bad or missing header");

  BenchmarkReport report;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    PairRecord r;
    try {
      std::getline(ls, field, ',');
      r.pair_id = std::stoi(field);
      std::getline(ls, field, ',');
      r.gap = std::stoi(field);
      std::getline(ls, r.variant, ',');
      std::getline(ls, field, ',');
      r.initial_mm = std::stod(field);
      std::getline(ls, field, ',');
      r.final_mm = std::stod(field);
      std::getline(ls, field, ',');
      r.time_s = std::stod(field);
      if (!std::getline(ls, field, ',')) throw ParseError("missing converged column");
      r.converged = field == "1" || field == "true";
    } catch (const std::exception&) {
      throw ParseError("records csv: malformed line " + std::to_string(lineno));
    }
    if (std::find(report.gaps.begin(), report.gaps.end(), r.gap) == report.gaps.end())
      report.gaps.push_back(r.gap);
    report.records.push_back(std::move(r));
  }
  std::sort(report.gaps.begin(), report.gaps.end());
  return report;
}

std::string curves_to_csv(const Summary& summary) {
  std::ostringstream out;
  out << "variant,threshold_mm,fraction\n";
  for (const auto& vs : summary.variants)
    for (const auto& [thr, frac] : vs.curve)
      out << vs.variant << ',' << fmt("%.1f", thr) << ',' << fmt("%.6f", frac) << '\n';
  return out.str();
}

std::string summary_to_json(const Summary& summary) {
  json doc;
  doc["variants"] = json::array();
  auto stats_json = [](const GapStats& s) {
    return json{{"gap", s.gap}, {"count", s.count}, {"mean_mm", s.mean}, {"stddev_mm", s.stddev}};
  };
  for (const auto& vs : summary.variants) {
    json jv;
    jv["variant"] = vs.variant;
    jv["per_gap"] = json::array();
    for (const auto& g : vs.per_gap) jv["per_gap"].push_back(stats_json(g));
    jv["overall"] = stats_json(vs.overall);
    jv["mean_time_s"] = vs.mean_time_s;
    doc["variants"].push_back(jv);
  }
  return doc.dump(2) + "\n";
}

std::string history_to_csv(const std::vector<double>& history) {
  std::ostringstream out;
  out << "iter,objective\n";
  for (size_t i = 0; i < history.size(); ++i)
    out << i << ',' << fmt("%.12g", history[i]) << '\n';
  return out.str();
}

std::string contour_to_csv(const OrientedContour& oc) {
  std::ostringstream out;
  out << "x,y,phi\n";
  for (size_t i = 0; i < oc.points.size(); ++i)
    out << fmt("%.12g", oc.points[i].x()) << ',' << fmt("%.12g", oc.points[i].y()) << ','
        << fmt("%.12g", oc.phi[i]) << '\n';
  return out.str();
}

std::string pose_to_json(const PoseVector& pose) {
  json doc;
  doc["theta"] = json::array();
  for (int i = 0; i < pose.size(); ++i) doc["theta"].push_back(pose[i]);
  return doc.dump(2) + "\n";
}

PoseVector pose_from_json(const std::string& text) {
  const json doc = parse(text);
  try {
    const json& theta = doc.at("theta");
    PoseVector pose(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) pose[static_cast<int>(i)] = theta[i].get<double>();
    return pose;
  } catch (const json::exception& e) {
    throw ParseError(std::string("pose document: ") + e.what());
  }
}

std::string mask_to_pbm(const BinaryMask& mask) {
  std::ostringstream out;
  out << "P4\n" << mask.width << " " << mask.height << "\n";
  const int stride = (mask.width + 7) / 8;
  std::string row(stride, '\0');
  for (int y = 0; y < mask.height; ++y) {
    std::fill(row.begin(), row.end(), '\0');
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) row[x / 8] |= static_cast<char>(0x80 >> (x % 8));
    out.write(row.data(), stride);
  }
  return out.str();
}

BinaryMask mask_from_pbm(const std::string& data) {
  std::istringstream in(data);
  std::string magic;
  in >> magic;
  if (magic != "P4") throw ParseError("mask: not a P4 bitmap");
  int w = 0, h = 0;
  in >> w >> h;
  in.get();  // single whitespace after the header
  if (w <= 0 || h <= 0) throw ParseError("mask: bad dimensions");
  BinaryMask mask;
  mask.width = w;
  mask.height = h;
  mask.bits.assign(static_cast<size_t>(w) * h, 0);
  const int stride = (w + 7) / 8;
  std::string row(stride, '\0');
  for (int y = 0; y < h; ++y) {
    in.read(row.data(), stride);
    if (in.gcount() != stride) throw ParseError("mask: truncated bitmap");
    for (int x = 0; x < w; ++x)
      mask.set(x, y, (row[x / 8] & (0x80 >> (x % 8))) ? 1 : 0);
  }
  return mask;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace chamferpose
