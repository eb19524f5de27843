// Copyright 2026 The akira-kit Authors
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

// akira_kit command-line front end.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O or parse error,
// 4 numeric failure, 1 anything unexpected. Every run ends with a status
// line on standard error; failed runs leave a FAILED marker next to (or
// inside) their output.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "akira/augment.hpp"
#include "akira/camera_io.hpp"
#include "akira/error.hpp"
#include "akira/flow.hpp"
#include "akira/flow_metrics.hpp"
#include "akira/image_io.hpp"
#include "akira/log.hpp"
#include "akira/parallel.hpp"
#include "akira/rng.hpp"
#include "akira/synth.hpp"
#include "akira/trajectory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string log_level = "warn";
  bool json = false;
};

// Where a failure marker goes if the command dies half-way.
std::optional<fs::path> g_marker;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw akira::IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw akira::IoError("cannot create " + path.string());
  out << text;
  if (!out) throw akira::IoError("write failed: " + path.string());
}

json read_json(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw akira::ConfigError(path.string() + ": " + e.what());
  }
}

void require_file(const fs::path& p, const char* what) {
  if (!fs::is_regular_file(p)) throw akira::IoError(std::string(what) + " not found: " + p.string());
}

void require_dir(const fs::path& p, const char* what) {
  if (!fs::is_directory(p)) throw akira::IoError(std::string(what) + " not found: " + p.string());
}

std::vector<fs::path> list_files(const fs::path& dir, const std::string& ext) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A .flo file, or every .flo in a directory (sorted by name).
std::vector<fs::path> flow_inputs(const fs::path& p) {
  if (fs::is_directory(p)) {
    auto files = list_files(p, ".flo");
    if (files.empty()) throw akira::IoError("no .flo files in " + p.string());
    return files;
  }
  require_file(p, "flow file");
  return {p};
}

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw akira::IoError("cannot create output directory " + dir.string());
  fs::remove(dir / "FAILED", ec);
  g_marker = dir / "FAILED";
}

void prepare_output_file(const fs::path& file) {
  const fs::path parent = file.parent_path().empty() ? fs::path(".") : file.parent_path();
  if (!fs::is_directory(parent)) throw akira::IoError("output directory not found: " + parent.string());
  std::error_code ec;
  fs::path marker = file;
  marker += ".FAILED";
  fs::remove(marker, ec);
  g_marker = marker;
}

std::uint64_t resolve_seed(const Globals& g, const json* config) {
  if (g.seed) return *g.seed;
  if (config && config->contains("seed")) {
    const auto& s = (*config)["seed"];
    if (!s.is_number_unsigned()) throw akira::ConfigError("config 'seed' must be a non-negative integer");
    return s.get<std::uint64_t>();
  }
  const std::uint64_t seed = akira::entropy_seed();
  std::cerr << "akira_kit: no seed given, using generated seed " << seed << "\n";
  return seed;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

// --- flow metric reports ----------------------------------------------------------

json flow_report(const char* metric, const akira::ClipScore& clip, double threshold) {
  json per = json::array();
  for (std::size_t i = 0; i < clip.per_frame.size(); ++i) {
    const auto& r = clip.per_frame[i];
    per.push_back({{"frame", i},
                   {"score", r.score},
                   {"valid_fraction", r.valid_fraction},
                   {"empty", r.empty}});
  }
  return {{"metric", metric},
          {"score", clip.score},
          {"score_x100", clip.score * 100.0},
          {"valid_fraction", clip.valid_fraction},
          {"threshold", threshold},
          {"empty", clip.empty},
          {"empty_frames", clip.empty_frames},
          {"per_frame", std::move(per)}};
}

void print_flow_report(const Globals& g, const json& report) {
  if (g.json) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::cout << "frame  score      x100     valid\n";
  for (const auto& f : report["per_frame"]) {
    const double s = f["score"].get<double>();
    std::cout << std::setw(5) << f["frame"].get<std::size_t>() << "  "
              << (f["empty"].get<bool>() ? std::string("   empty            ")
                                         : fixed(s, 6) + "  " + fixed(100.0 * s, 2))
              << "  " << fixed(f["valid_fraction"].get<double>(), 4) << "\n";
  }
  std::cout << report["metric"].get<std::string>() << ": "
            << fixed(report["score"].get<double>(), 6) << " (x100: "
            << fixed(report["score_x100"].get<double>(), 2) << ")"
            << (report["empty"].get<bool>() ? "  [empty mask]" : "") << "\n";
}

void maybe_write_report(const std::string& path, const json& report) {
  if (path.empty()) return;
  write_text(path, report.dump(2) + "\n");
}

// --- commands ---------------------------------------------------------------------

struct AugmentArgs {
  std::string input, output, config;
};

void cmd_augment(const Globals& g, const AugmentArgs& a) {
  const fs::path in(a.input), out(a.output);
  prepare_output_dir(out);
  require_dir(in / "frames", "input frames directory");
  const auto pngs = list_files(in / "frames", ".png");
  if (pngs.empty()) throw akira::IoError("no PNG frames in " + (in / "frames").string());

  json config_json = json::object();
  if (!a.config.empty()) {
    require_file(a.config, "config file");
    config_json = read_json(a.config);
  }
  const auto cfg = akira::AugmentConfig::from_json(config_json);
  const std::uint64_t seed = resolve_seed(g, &config_json);

  // Every input path is checked before any work starts.
  const bool bokeh_possible = cfg.allowed.bokeh && cfg.p > 0.0;
  std::vector<fs::path> disp_paths;
  bool have_all_disparity = true;
  for (const auto& p : pngs) {
    fs::path d = in / "disparity" / p.filename();
    d.replace_extension(".pfm");
    if (!fs::is_regular_file(d)) {
      if (bokeh_possible) {
        throw akira::ConfigError("bokeh is enabled but the disparity map is missing: " + d.string());
      }
      have_all_disparity = false;
    }
    disp_paths.push_back(d);
  }
  const fs::path camera_path = in / "camera.json";

  std::vector<akira::Frame> frames;
  for (std::size_t i = 0; i < pngs.size(); ++i) {
    akira::Frame f;
    f.pixels = akira::read_png(pngs[i]);
    if (have_all_disparity) f.disparity = akira::read_pfm(disp_paths[i]);
    frames.push_back(std::move(f));
  }
  akira::FrameCamera base = akira::FrameCamera::centered(frames[0].width(), frames[0].height());
  if (fs::is_regular_file(camera_path)) base = akira::read_camera_params(camera_path).at(0);

  const auto result = akira::augment_clip(frames, base, seed, cfg, g.threads);

  fs::create_directories(out / "frames");
  if (have_all_disparity) fs::create_directories(out / "disparity");
  for (std::size_t i = 0; i < result.frames.size(); ++i) {
    akira::write_png(out / "frames" / pngs[i].filename(), result.frames[i].pixels);
    if (have_all_disparity) {
      akira::write_pfm(out / "disparity" / disp_paths[i].filename(), *result.frames[i].disparity);
    }
  }
  if (!result.blur_maps.empty()) {
    fs::create_directories(out / "blur");
    for (std::size_t i = 0; i < result.blur_maps.size(); ++i) {
      akira::write_pfm(out / "blur" / akira::frame_name(i, ".pfm"), result.blur_maps[i]);
    }
  }
  akira::write_camera_params(out / "params.jsonl", result.cameras);
  std::string optical;
  for (const auto& f : result.trajectory.to_json()["frames"]) optical += f.dump() + "\n";
  write_text(out / "optical.jsonl", optical);

  std::vector<akira::CameraMap> maps(result.cameras.size());
  akira::parallel_for(maps.size(), g.threads, [&](std::size_t i) {
    const auto& c = result.cameras[i];
    maps[i] = akira::build_camera_map(c.pose, c.intrinsics, c.distortion, c.aperture,
                                      c.intrinsics.height, c.intrinsics.width,
                                      cfg.sigmoid_prescale);
  });
  akira::write_camera_maps(out / "cameramap.akmp", maps);
  json echo = cfg.to_json();
  echo["seed"] = seed;
  write_text(out / "config.json", echo.dump(2) + "\n");

  const auto& fl = result.trajectory.flags;
  json summary = {{"frames", result.frames.size()},
                  {"seed", seed},
                  {"effects", {{"bokeh", fl.bokeh}, {"distortion", fl.distortion}, {"zoom", fl.zoom}}}};
  if (g.json) {
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << "augmented " << result.frames.size() << " frames (seed " << seed << ")\n"
              << "effects: bokeh=" << fl.bokeh << " distortion=" << fl.distortion
              << " zoom=" << fl.zoom << "\n";
  }
}

struct CameraMapArgs {
  std::string params, output;
  double prescale = 1.0;
};

void cmd_cameramap(const Globals& g, const CameraMapArgs& a) {
  prepare_output_file(a.output);
  require_file(a.params, "camera params");
  const auto cams = akira::read_camera_params(a.params);
  if (cams.empty()) throw akira::ConfigError("no camera records in " + a.params);
  std::vector<akira::CameraMap> maps(cams.size());
  akira::parallel_for(cams.size(), g.threads, [&](std::size_t i) {
    const auto& c = cams[i];
    maps[i] = akira::build_camera_map(c.pose, c.intrinsics, c.distortion, c.aperture,
                                      c.intrinsics.height, c.intrinsics.width, a.prescale);
  });
  akira::write_camera_maps(a.output, maps);
  if (g.json) {
    std::cout << json{{"frames", maps.size()}, {"output", a.output}}.dump(2) << "\n";
  } else {
    std::cout << "wrote " << maps.size() << " camera maps to " << a.output << "\n";
  }
}

struct FlowArgs {
  std::string ref, gen, params, report;
  double threshold = 0.5;
};

void cmd_flowsim(const Globals& g, const FlowArgs& a) {
  if (!a.report.empty()) prepare_output_file(a.report);
  const auto ref_files = flow_inputs(a.ref);
  const auto gen_files = flow_inputs(a.gen);
  if (ref_files.size() != gen_files.size()) {
    throw akira::ConfigError("reference has " + std::to_string(ref_files.size()) +
                             " flows, generated has " + std::to_string(gen_files.size()));
  }
  akira::FlowSimConfig cfg{a.threshold, g.threads};
  std::vector<akira::FlowSimResult> per;
  for (std::size_t i = 0; i < ref_files.size(); ++i) {
    per.push_back(akira::flowsim(akira::read_flo(ref_files[i]), akira::read_flo(gen_files[i]), cfg));
  }
  const json report = flow_report("flowsim", akira::aggregate(std::move(per)), a.threshold);
  maybe_write_report(a.report, report);
  print_flow_report(g, report);
}

void cmd_paramsim(const Globals& g, const FlowArgs& a, bool zoom) {
  if (!a.report.empty()) prepare_output_file(a.report);
  require_file(a.params, "camera params");
  const auto gen_files = flow_inputs(a.gen);
  const auto cams = akira::read_camera_params(a.params);
  if (cams.size() != gen_files.size() + 1) {
    throw akira::ConfigError(std::to_string(cams.size()) + " camera records need " +
                             std::to_string(cams.size() - 1) + " flows, found " +
                             std::to_string(gen_files.size()));
  }
  akira::FlowSimConfig cfg{a.threshold, g.threads};
  std::vector<akira::FlowSimResult> per;
  for (std::size_t i = 0; i < gen_files.size(); ++i) {
    const auto flow = akira::read_flo(gen_files[i]);
    const auto& c0 = cams[i];
    const auto& c1 = cams[i + 1];
    if (zoom) {
      // Relative zoom between consecutive frames, expressed in frame-i pixels.
      per.push_back(akira::zoomsim(flow, c1.intrinsics.fx / c0.intrinsics.fx, 1.0, c0.intrinsics, cfg));
    } else {
      per.push_back(akira::distortsim(flow, c0.distortion, c1.distortion, c0.intrinsics, cfg));
    }
  }
  const char* metric = zoom ? "zoomsim" : "distortsim";
  const json report = flow_report(metric, akira::aggregate(std::move(per)), a.threshold);
  maybe_write_report(a.report, report);
  print_flow_report(g, report);
}

struct FocusArgs {
  std::string blur, report;
  double threshold = 1.0;
};

void cmd_focusarea(const Globals& g, const FocusArgs& a) {
  if (!a.report.empty()) prepare_output_file(a.report);
  std::vector<fs::path> files;
  if (fs::is_directory(a.blur)) {
    files = list_files(a.blur, ".pfm");
    if (files.empty()) throw akira::IoError("no .pfm blur maps in " + a.blur);
  } else {
    require_file(a.blur, "blur map");
    files.push_back(a.blur);
  }
  json per = json::array();
  double sum = 0.0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const double fa = akira::focus_area(akira::read_pfm(files[i]), a.threshold);
    sum += fa;
    per.push_back({{"frame", i}, {"focus_area", fa}});
  }
  const double mean = sum / static_cast<double>(files.size());
  const json report = {{"metric", "focus_area"},
                       {"score", mean},
                       {"score_x100", 100.0 * mean},
                       {"threshold", a.threshold},
                       {"per_frame", per}};
  maybe_write_report(a.report, report);
  if (g.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& f : per) {
      std::cout << std::setw(5) << f["frame"].get<std::size_t>() << "  "
                << fixed(f["focus_area"].get<double>(), 4) << "\n";
    }
    std::cout << "focus_area: " << fixed(mean, 6) << " (x100: " << fixed(100.0 * mean, 2) << ")\n";
  }
}

struct RpeArgs {
  std::string est, ref, report;
  bool scale_correct = false;
  bool se3 = false;
  bool with_ape = false;
};

void cmd_rpe(const Globals& g, const RpeArgs& a) {
  if (!a.report.empty()) prepare_output_file(a.report);
  require_file(a.est, "estimated trajectory");
  require_file(a.ref, "reference trajectory");
  const auto est = akira::read_tum(a.est);
  const auto ref = akira::read_tum(a.ref);
  akira::EvalOptions opts;
  opts.scale_correct = a.scale_correct;
  opts.mode = a.se3 ? akira::RpeMode::kSe3 : akira::RpeMode::kDifference;
  opts.with_ape = a.with_ape;
  const auto r = akira::align_and_evaluate(est, ref, opts);
  json report = r.to_json();
  report["metric"] = "rpe";
  report["mode"] = a.se3 ? "se3" : "difference";
  report["scale_corrected"] = a.scale_correct;
  maybe_write_report(a.report, report);
  if (g.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "poses: " << r.n << "  scale ratio: " << fixed(r.scale_ratio, 6) << "\n"
              << "RPE-t: " << fixed(r.rpe.trans, 6) << "\n"
              << "RPE-R: " << fixed(r.rpe.rot_deg, 6) << " deg\n";
    if (r.ape) {
      std::cout << "APE-t: " << fixed(r.ape->trans, 6) << "\n"
                << "APE-R: " << fixed(r.ape->rot_deg, 6) << " deg\n";
    }
  }
}

struct SynthArgs {
  std::string spec, output;
  bool dolly = false;
};

void cmd_synth(const Globals& g, const SynthArgs& a) {
  prepare_output_dir(a.output);
  require_file(a.spec, "scene description");
  const json j = read_json(a.spec);
  const auto spec = akira::SceneSpec::from_json(j);
  const std::uint64_t seed = resolve_seed(g, &j);
  json summary = {{"frames", spec.frames}, {"seed", seed}};
  if (a.dolly) {
    const auto d = akira::dolly_zoom_bundle(spec, seed, g.threads);
    akira::write_bundle(a.output, d.bundle);
    summary["l2_vs_pure_zoom"] = d.l2_vs_pure_zoom;
    summary["l2_vs_pure_translation"] = d.l2_vs_pure_translation;
  } else {
    akira::write_bundle(a.output, akira::render_scene(spec, seed, g.threads));
  }
  if (g.json) {
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << "wrote " << spec.frames << "-frame bundle to " << a.output << " (seed " << seed
              << ")\n";
    if (a.dolly) {
      std::cout << "camera-map L2 vs pure zoom: " << summary["l2_vs_pure_zoom"].get<double>()
                << ", vs pure translation: " << summary["l2_vs_pure_translation"].get<double>()
                << "\n";
    }
  }
}

int exit_code(akira::ErrorKind k) {
  switch (k) {
    case akira::ErrorKind::kConfig: return 2;
    case akira::ErrorKind::kIo: return 3;
    case akira::ErrorKind::kNumeric: return 4;
  }
  return 1;
}

const char* kind_name(akira::ErrorKind k) {
  switch (k) {
    case akira::ErrorKind::kConfig: return "config";
    case akira::ErrorKind::kIo: return "io";
    case akira::ErrorKind::kNumeric: return "numeric";
  }
  return "error";
}

int fail(int code, const char* kind, const std::string& message) {
  std::cerr << "akira_kit: error: " << message << "\n";
  if (g_marker) {
    std::ofstream marker(*g_marker, std::ios::trunc);
    marker << kind << ": " << message << "\n";
  }
  std::cerr << "status: FAILED (" << kind << ", exit " << code << ")\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camera-model, optical augmentation and flow/pose metric toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Root RNG seed (generated and printed if absent)");
  app.add_option("--threads", g.threads, "Worker threads (default: AKIRA_KIT_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--log-level", g.log_level, "debug|info|warn|error|off");
  app.add_flag("--json", g.json, "Machine-readable output on standard output");

  AugmentArgs aug;
  auto* c_aug = app.add_subcommand("augment", "Augment a clip (frames/*.png, disparity/*.pfm)");
  c_aug->add_option("-i,--input", aug.input, "Input clip directory")->required();
  c_aug->add_option("-o,--output", aug.output, "Output directory")->required();
  c_aug->add_option("-c,--config", aug.config, "Augmentation config JSON");

  CameraMapArgs cm;
  auto* c_cm = app.add_subcommand("cameramap", "Build 9-channel camera maps from camera params");
  c_cm->add_option("-p,--params", cm.params, "Camera params (JSON-lines or one JSON object)")->required();
  c_cm->add_option("-o,--output", cm.output, "Output .akmp file")->required();
  c_cm->add_option("--sigmoid-prescale", cm.prescale, "Scale applied to alpha inside the sigmoid");

  FlowArgs fa;
  auto* c_fs = app.add_subcommand("flowsim", "Direction similarity of two flow sets");
  c_fs->add_option("--ref", fa.ref, "Reference .flo file or directory")->required();
  c_fs->add_option("--gen", fa.gen, "Generated .flo file or directory")->required();
  c_fs->add_option("-t,--threshold", fa.threshold, "Magnitude threshold in pixels");
  c_fs->add_option("--report", fa.report, "Also write the JSON report here");

  FlowArgs za;
  auto* c_zs = app.add_subcommand("zoomsim", "Flow similarity against the zoom implied by camera params");
  c_zs->add_option("-p,--params", za.params, "Per-frame camera params (JSON-lines)")->required();
  c_zs->add_option("--gen", za.gen, "Generated .flo directory (one per consecutive pair)")->required();
  c_zs->add_option("-t,--threshold", za.threshold, "Magnitude threshold in pixels");
  c_zs->add_option("--report", za.report, "Also write the JSON report here");

  FlowArgs da;
  auto* c_ds = app.add_subcommand("distortsim", "Flow similarity against the distortion change implied by camera params");
  c_ds->add_option("-p,--params", da.params, "Per-frame camera params (JSON-lines)")->required();
  c_ds->add_option("--gen", da.gen, "Generated .flo directory (one per consecutive pair)")->required();
  c_ds->add_option("-t,--threshold", da.threshold, "Magnitude threshold in pixels");
  c_ds->add_option("--report", da.report, "Also write the JSON report here");

  FocusArgs fo;
  auto* c_fo = app.add_subcommand("focusarea", "Fraction of pixels with blur radius below a threshold");
  c_fo->add_option("--blur", fo.blur, "Blur-radius .pfm file or directory")->required();
  c_fo->add_option("-t,--threshold", fo.threshold, "Radius threshold in pixels");
  c_fo->add_option("--report", fo.report, "Also write the JSON report here");

  RpeArgs ra;
  auto* c_rpe = app.add_subcommand("rpe", "Relative (and optionally absolute) pose error of TUM trajectories");
  c_rpe->add_option("--est", ra.est, "Estimated trajectory (TUM)")->required();
  c_rpe->add_option("--ref", ra.ref, "Reference trajectory (TUM)")->required();
  c_rpe->add_flag("--scale-correct", ra.scale_correct, "Rescale the estimate to the reference path length");
  c_rpe->add_flag("--se3", ra.se3, "SE(3) relative error instead of translation differences");
  c_rpe->add_flag("--ape", ra.with_ape, "Also report absolute pose error");
  c_rpe->add_option("--report", ra.report, "Also write the JSON report here");

  SynthArgs sa;
  auto* c_syn = app.add_subcommand("synth", "Render a synthetic bundle from a scene description");
  c_syn->add_option("-s,--spec", sa.spec, "Scene description JSON")->required();
  c_syn->add_option("-o,--output", sa.output, "Output bundle directory")->required();
  c_syn->add_flag("--dolly", sa.dolly, "Also compare against pure-zoom and pure-translation variants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc == 0) return 0;  // --help
    std::cerr << "status: FAILED (config, exit 2)\n";
    return 2;
  }

  try {
    akira::log::set_level(akira::log::parse_level(g.log_level));
    if (*seed_opt) g.seed = seed_value;
    if (g.threads <= 0) g.threads = akira::default_thread_count();

    if (*c_aug) {
      cmd_augment(g, aug);
    } else if (*c_cm) {
      cmd_cameramap(g, cm);
    } else if (*c_fs) {
      cmd_flowsim(g, fa);
    } else if (*c_zs) {
      cmd_paramsim(g, za, true);
    } else if (*c_ds) {
      cmd_paramsim(g, da, false);
    } else if (*c_fo) {
      cmd_focusarea(g, fo);
    } else if (*c_rpe) {
      cmd_rpe(g, ra);
    } else if (*c_syn) {
      cmd_synth(g, sa);
    }
  } catch (const akira::Error& e) {
    return fail(exit_code(e.kind()), kind_name(e.kind()), e.what());
  } catch (const json::exception& e) {
    return fail(2, "config", e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(3, "io", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
  std::cerr << "status: OK\n";
  return 0;
}
