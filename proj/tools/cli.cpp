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

// chamferpose CLI: synth | match | bench | report. Talks to the library
// through the public C API only; file handling and the independent
// re-aggregation of `report` live here.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chamferpose.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitEstimation = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void die(int code, const std::string& message) {
  throw CliError{code, message};
}

void check(cpz_status st, int exit_code = kExitConfig) {
  if (st == CPZ_OK) return;
  if (st == CPZ_ERROR_ESTIMATION) die(kExitEstimation, cpz_last_error());
  die(exit_code, cpz_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kExitConfig, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die(kExitConfig, "cannot write '" + path + "'");
  out << contents;
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { cpz_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

using ModelPtr = std::unique_ptr<cpz_model, decltype(&cpz_model_free)>;
using RigPtr = std::unique_ptr<cpz_rig, decltype(&cpz_rig_free)>;
using SeqPtr = std::unique_ptr<cpz_sequence, decltype(&cpz_sequence_free)>;
using ResultPtr = std::unique_ptr<cpz_result, decltype(&cpz_result_free)>;
using ReportPtr = std::unique_ptr<cpz_report, decltype(&cpz_report_free)>;

std::vector<double> pose_from_file(const std::string& path, int dof) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    die(kExitConfig, std::string("pose file '") + path + "': " + e.what());
  }
  if (!doc.contains("theta") || !doc["theta"].is_array())
    die(kExitConfig, "pose file '" + path + "' has no theta array");
  std::vector<double> pose;
  for (const auto& v : doc["theta"]) pose.push_back(v.get<double>());
  if (static_cast<int>(pose.size()) != dof)
    die(kExitConfig, "pose length " + std::to_string(pose.size()) +
                         " does not match model dof " + std::to_string(dof));
  return pose;
}

// ---- synth ----------------------------------------------------------

struct SynthArgs {
  std::string spec_file;
  std::string out_dir = "out";
  int frames = 200;
  uint64_t seed = 7;
};

int cmd_synth(const SynthArgs& args) {
  std::string spec_json = "{}";
  if (!args.spec_file.empty()) spec_json = read_file(args.spec_file);

  cpz_model* model_raw = nullptr;
  cpz_rig* rig_raw = nullptr;
  check(cpz_synth_model(spec_json.c_str(), &model_raw, &rig_raw));
  ModelPtr model(model_raw, cpz_model_free);
  RigPtr rig(rig_raw, cpz_rig_free);

  const json motion = {{"frames", args.frames}, {"seed", args.seed}};
  cpz_sequence* seq_raw = nullptr;
  check(cpz_synth_sequence(model.get(), motion.dump().c_str(), args.frames, &seq_raw));
  SeqPtr seq(seq_raw, cpz_sequence_free);

  fs::create_directories(args.out_dir);
  OwnedString model_json, rig_json, seq_json;
  check(cpz_model_to_json(model.get(), &model_json.ptr));
  check(cpz_rig_to_json(rig.get(), &rig_json.ptr));
  check(cpz_sequence_to_json(seq.get(), &seq_json.ptr));
  write_file(args.out_dir + "/model.json", model_json.str());
  write_file(args.out_dir + "/cameras.json", rig_json.str());
  write_file(args.out_dir + "/sequence.json", seq_json.str());

  std::cout << "model: dof=" << cpz_model_dof(model.get())
            << " cameras=" << cpz_rig_camera_count(rig.get())
            << " frames=" << cpz_sequence_length(seq.get()) << "\n"
            << "wrote " << args.out_dir << "/{model,cameras,sequence}.json\n";
  return kExitOk;
}

// ---- match ----------------------------------------------------------

struct MatchArgs {
  std::string model_file;
  std::string cameras_file;
  std::string sequence_file;
  int start_frame = -1;
  int target_frame = -1;
  std::string start_pose_file;
  std::string target_pose_file;
  std::string out_dir = "match-out";
  std::string variant = "dch-thres";
  double tau_deg = 22.5;
  double lambda = 25.0;
  int bins = 16;
  std::string mode = "signed";
  double K = 0;
  int max_outer = 10;
  int max_inner = 5;
  double tol = 1e-4;
  double damping = 1e-3;
  bool dump_contours = false;
};

int cmd_match(const MatchArgs& args) {
  cpz_model* model_raw = nullptr;
  check(cpz_model_from_json(read_file(args.model_file).c_str(), &model_raw));
  ModelPtr model(model_raw, cpz_model_free);
  cpz_rig* rig_raw = nullptr;
  check(cpz_rig_from_json(read_file(args.cameras_file).c_str(), &rig_raw));
  RigPtr rig(rig_raw, cpz_rig_free);

  const int dof = cpz_model_dof(model.get());
  SeqPtr seq(nullptr, cpz_sequence_free);
  auto frame_pose = [&](int frame) {
    if (!seq) die(kExitConfig, "--sequence required with frame indices");
    std::vector<double> pose(dof);
    check(cpz_sequence_pose(seq.get(), frame, pose.data(), dof));
    return pose;
  };
  if (!args.sequence_file.empty()) {
    cpz_sequence* s = nullptr;
    check(cpz_sequence_from_json(read_file(args.sequence_file).c_str(), &s));
    seq.reset(s);
  }

  std::vector<double> start, target;
  if (!args.start_pose_file.empty()) start = pose_from_file(args.start_pose_file, dof);
  else if (args.start_frame >= 0) start = frame_pose(args.start_frame);
  else die(kExitConfig, "need --start-pose or --sequence/--start-frame");
  if (!args.target_pose_file.empty()) target = pose_from_file(args.target_pose_file, dof);
  else if (args.target_frame >= 0) target = frame_pose(args.target_frame);
  else die(kExitConfig, "need --target-pose or --sequence/--target-frame");

  json chamfer = {{"variant", args.variant}, {"tau_deg", args.tau_deg},
                  {"lambda", args.lambda},   {"bins", args.bins},
                  {"mode", args.mode},       {"K", args.K > 0 ? json(args.K) : json(nullptr)}};
  json solver = {{"max_outer_iterations", args.max_outer},
                 {"max_inner_iterations", args.max_inner},
                 {"convergence_tol", args.tol},
                 {"damping", args.damping}};

  OwnedString chamfer_echo, solver_echo;
  check(cpz_chamfer_config_echo_json(chamfer.dump().c_str(), &chamfer_echo.ptr));
  check(cpz_solver_config_echo_json(solver.dump().c_str(), &solver_echo.ptr));
  std::cout << "chamfer config: " << chamfer_echo.str() << "solver config: "
            << solver_echo.str();

  fs::create_directories(args.out_dir);
  const int cams = cpz_rig_camera_count(rig.get());
  auto dump_mask = [&](const std::vector<double>& pose, const std::string& stem) {
    for (int c = 0; c < cams; ++c) {
      char* data = nullptr;
      size_t size = 0;
      const cpz_status st = cpz_render_mask_pbm(model.get(), rig.get(), c, pose.data(),
                                                dof, &data, &size);
      if (st != CPZ_OK) continue;  // empty projection: skip this camera
      std::ofstream out(args.out_dir + "/" + stem + "_cam" + std::to_string(c) + ".pbm",
                        std::ios::binary);
      out.write(data, static_cast<std::streamsize>(size));
      cpz_string_free(data);
    }
  };
  dump_mask(target, "target");
  if (args.dump_contours) {
    for (int c = 0; c < cams; ++c) {
      OwnedString csv;
      if (cpz_contour_csv(model.get(), rig.get(), c, target.data(), dof, 1.0,
                          &csv.ptr) == CPZ_OK)
        write_file(args.out_dir + "/target_contour_cam" + std::to_string(c) + ".csv",
                   csv.str());
    }
  }

  cpz_result* result_raw = nullptr;
  const cpz_status st = cpz_estimate(model.get(), rig.get(), start.data(), target.data(),
                                     dof, chamfer.dump().c_str(), solver.dump().c_str(),
                                     &result_raw);
  if (st == CPZ_ERROR_ESTIMATION) {
    json pose_doc = {{"theta", start}};
    write_file(args.out_dir + "/pose.json", pose_doc.dump(2) + "\n");
    std::cerr << "estimation failed: " << cpz_last_error() << " (initial pose written)\n";
    return kExitEstimation;
  }
  check(st);
  ResultPtr result(result_raw, cpz_result_free);

  std::vector<double> estimated(dof);
  check(cpz_result_pose(result.get(), estimated.data(), dof));
  json pose_doc = {{"theta", estimated}};
  write_file(args.out_dir + "/pose.json", pose_doc.dump(2) + "\n");

  const int hist_len = cpz_result_history_length(result.get());
  std::vector<double> history(hist_len);
  check(cpz_result_history(result.get(), history.data(), hist_len));
  std::ostringstream hist_csv;
  hist_csv << "iter,objective\n";
  for (int i = 0; i < hist_len; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", history[i]);
    hist_csv << i << ',' << buf << '\n';
  }
  write_file(args.out_dir + "/history.csv", hist_csv.str());

  dump_mask(estimated, "final");

  double err = 0;
  check(cpz_joint_error(model.get(), estimated.data(), target.data(), dof, &err));
  std::cout << "converged: " << (cpz_result_converged(result.get()) ? "yes" : "no")
            << "  final joint error vs target: " << err << " mm\n"
            << "wrote " << args.out_dir << "/pose.json, history.csv, mask PBMs\n";
  return kExitOk;
}

// ---- bench ----------------------------------------------------------

struct BenchArgs {
  std::string config_file;
  std::string out_dir;
  bool timing = false;
  int jobs = 0;
};

int cmd_bench(const BenchArgs& args) {
  std::string config_text;
  if (!args.config_file.empty()) {
    config_text = read_file(args.config_file);
  } else {
    OwnedString def;
    check(cpz_default_run_config_json(&def.ptr));
    config_text = def.str();
  }

  json config;
  try {
    config = json::parse(config_text);
  } catch (const json::exception& e) {
    die(kExitConfig, std::string("run config: ") + e.what());
  }
  std::string out_dir = args.out_dir;
  if (out_dir.empty()) out_dir = config.value("output_dir", std::string("out"));

  const std::string model_spec = config.contains("model") ? config["model"].dump() : "{}";
  cpz_model* model_raw = nullptr;
  cpz_rig* rig_raw = nullptr;
  check(cpz_synth_model(model_spec.c_str(), &model_raw, &rig_raw));
  ModelPtr model(model_raw, cpz_model_free);
  RigPtr rig(rig_raw, cpz_rig_free);

  const json sequence_cfg = config.value("sequence", json::object());
  const int frames = sequence_cfg.value("frames", 200);
  cpz_sequence* seq_raw = nullptr;
  check(cpz_synth_sequence(model.get(), sequence_cfg.dump().c_str(), frames, &seq_raw));
  SeqPtr seq(seq_raw, cpz_sequence_free);

  cpz_report* report_raw = nullptr;
  check(cpz_benchmark_run(model.get(), rig.get(), seq.get(), config_text.c_str(),
                          args.timing ? 1 : 0, args.jobs, &report_raw));
  ReportPtr report(report_raw, cpz_report_free);

  fs::create_directories(out_dir);
  OwnedString records, summary, curves;
  check(cpz_report_records_csv(report.get(), &records.ptr));
  check(cpz_report_summary_json(report.get(), &summary.ptr));
  check(cpz_report_curves_csv(report.get(), &curves.ptr));
  write_file(out_dir + "/records.csv", records.str());
  write_file(out_dir + "/aggregate.json", summary.str());
  write_file(out_dir + "/curves.csv", curves.str());

  std::cout << "wrote " << out_dir << "/records.csv, aggregate.json, curves.csv\n";
  return kExitOk;
}

// ---- report ---------------------------------------------------------
// Independent re-aggregation of a records CSV; deliberately shares no
// code with the library's summarize().

struct RecordRow {
  int pair_id;
  int gap;
  std::string variant;
  double initial_mm;
  double final_mm;
  double time_s;
};

std::vector<RecordRow> parse_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) die(kExitConfig, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) ||
      line != "pair_id,gap,variant,initial_mm,final_mm,time_s,converged")
    die(kExitConfig, "records csv: bad or missing header");

  std::vector<RecordRow> rows;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    RecordRow row;
    std::string field;
    try {
      std::getline(ls, field, ',');
      row.pair_id = std::stoi(field);
      std::getline(ls, field, ',');
      row.gap = std::stoi(field);
      std::getline(ls, row.variant, ',');
      std::getline(ls, field, ',');
      row.initial_mm = std::stod(field);
      std::getline(ls, field, ',');
      row.final_mm = std::stod(field);
      std::getline(ls, field, ',');
      row.time_s = std::stod(field);
    } catch (const std::exception&) {
      die(kExitConfig, "records csv: malformed line " + std::to_string(lineno));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) die(kExitConfig, "records csv: no data rows");
  return rows;
}

std::string mean_std_cell(const std::vector<double>& values) {
  if (values.empty()) return "-";
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double stddev = std::sqrt(var / static_cast<double>(values.size()));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f+-%.1f", mean, stddev);
  return buf;
}

int cmd_report(const std::string& records_file, bool json_out) {
  const auto rows = parse_records_csv(records_file);

  std::vector<int> gaps;
  std::vector<std::string> variants;
  for (const auto& r : rows) {
    if (std::find(gaps.begin(), gaps.end(), r.gap) == gaps.end()) gaps.push_back(r.gap);
    if (std::find(variants.begin(), variants.end(), r.variant) == variants.end())
      variants.push_back(r.variant);
  }
  std::sort(gaps.begin(), gaps.end());

  auto collect = [&](const std::string& variant, std::optional<int> gap,
                     bool initial) {
    std::vector<double> vals;
    for (const auto& r : rows) {
      if (!variant.empty() && r.variant != variant) continue;
      if (gap && r.gap != *gap) continue;
      vals.push_back(initial ? r.initial_mm : r.final_mm);
    }
    return vals;
  };

  if (json_out) {
    json doc;
    doc["variants"] = json::array();
    for (const auto& v : variants) {
      json jv;
      jv["variant"] = v;
      jv["per_gap"] = json::array();
      for (int g : gaps) {
        const auto vals = collect(v, g, false);
        double mean = 0;
        for (double x : vals) mean += x;
        mean /= vals.empty() ? 1 : static_cast<double>(vals.size());
        double var = 0;
        for (double x : vals) var += (x - mean) * (x - mean);
        jv["per_gap"].push_back({{"gap", g},
                                 {"count", vals.size()},
                                 {"mean_mm", mean},
                                 {"stddev_mm", vals.empty() ? 0 : std::sqrt(var / vals.size())}});
      }
      const auto vals = collect(v, std::nullopt, false);
      double mean = 0;
      for (double x : vals) mean += x;
      mean /= static_cast<double>(vals.size());
      double var = 0;
      for (double x : vals) var += (x - mean) * (x - mean);
      jv["overall"] = {{"gap", -1},
                       {"count", vals.size()},
                       {"mean_mm", mean},
                       {"stddev_mm", std::sqrt(var / vals.size())}};
      double time_sum = 0;
      for (const auto& r : rows)
        if (r.variant == v) time_sum += r.time_s;
      jv["mean_time_s"] = time_sum / vals.size();
      doc["variants"].push_back(jv);
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  // Initial row: one entry per unique (pair, gap).
  std::map<std::pair<int, int>, double> initial_of;
  for (const auto& r : rows) initial_of[{r.pair_id, r.gap}] = r.initial_mm;

  const int name_w = 12, cell_w = 11;
  std::cout << std::left;
  auto print_cell = [&](const std::string& s) {
    std::cout << s << std::string(s.size() < cell_w ? cell_w - s.size() : 1, ' ');
  };
  std::cout << std::string(name_w, ' ');
  for (int g : gaps) print_cell(std::to_string(g));
  print_cell("All");
  print_cell("Time(s)");
  std::cout << "\n";

  {
    std::cout << "initial" << std::string(name_w - 7, ' ');
    for (int g : gaps) {
      std::vector<double> vals;
      for (const auto& [key, v] : initial_of)
        if (key.second == g) vals.push_back(v);
      print_cell(mean_std_cell(vals));
    }
    std::vector<double> all;
    for (const auto& [key, v] : initial_of) all.push_back(v);
    print_cell(mean_std_cell(all));
    print_cell("-");
    std::cout << "\n";
  }

  for (const auto& v : variants) {
    std::cout << v << std::string(v.size() < static_cast<size_t>(name_w)
                                      ? name_w - v.size() : 1, ' ');
    for (int g : gaps) print_cell(mean_std_cell(collect(v, g, false)));
    print_cell(mean_std_cell(collect(v, std::nullopt, false)));
    double time_sum = 0;
    int n = 0;
    for (const auto& r : rows)
      if (r.variant == v) { time_sum += r.time_s; ++n; }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", n ? time_sum / n : 0.0);
    print_cell(buf);
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"silhouette-based articulated pose estimation benchmark"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "generate model, cameras and motion");
  synth->add_option("--spec", synth_args.spec_file, "model spec JSON file");
  synth->add_option("--out", synth_args.out_dir, "output directory");
  synth->add_option("--frames", synth_args.frames, "sequence length");
  synth->add_option("--seed", synth_args.seed, "motion seed");

  MatchArgs match_args;
  auto* match = app.add_subcommand("match", "fit one start pose to a target frame");
  match->add_option("--model", match_args.model_file)->required();
  match->add_option("--cameras", match_args.cameras_file)->required();
  match->add_option("--sequence", match_args.sequence_file);
  match->add_option("--start-frame", match_args.start_frame);
  match->add_option("--target-frame", match_args.target_frame);
  match->add_option("--start-pose", match_args.start_pose_file);
  match->add_option("--target-pose", match_args.target_pose_file);
  match->add_option("--out", match_args.out_dir);
  match->add_option("--variant", match_args.variant,
                    "ch|dch-thres|dch-quant|dch-quant2|dch-dt3");
  match->add_option("--tau-deg", match_args.tau_deg);
  match->add_option("--lambda", match_args.lambda);
  match->add_option("--bins", match_args.bins);
  match->add_option("--mode", match_args.mode, "signed|unsigned");
  match->add_option("--K", match_args.K, "penalty, 0 = image diagonal");
  match->add_option("--max-outer", match_args.max_outer);
  match->add_option("--max-inner", match_args.max_inner);
  match->add_option("--tol", match_args.tol);
  match->add_option("--damping", match_args.damping);
  match->add_flag("--dump-contours", match_args.dump_contours);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "run the frame-pair benchmark");
  bench->add_option("--config", bench_args.config_file, "run config JSON");
  bench->add_option("--out", bench_args.out_dir, "override output directory");
  bench->add_flag("--timing", bench_args.timing, "sequential, populate time_s");
  bench->add_option("--jobs", bench_args.jobs, "worker threads (0 = all cores)");

  std::string records_file;
  bool report_json = false;
  auto* report = app.add_subcommand("report", "re-aggregate a records CSV");
  report->add_option("--records", records_file)->required();
  report->add_flag("--json", report_json, "emit JSON instead of the text table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_args);
    if (match->parsed()) return cmd_match(match_args);
    if (bench->parsed()) return cmd_bench(bench_args);
    if (report->parsed()) return cmd_report(records_file, report_json);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
