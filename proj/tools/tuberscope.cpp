/* Copyright 2026 The Tuberscope Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "tuberscope/cli.hpp"
#include "tuberscope/errors.hpp"

namespace cli = tuberscope::cli;

namespace {

std::array<double, 3> parse_triple(const std::string& text) {
  std::array<double, 3> out{};
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t next = text.find(',', pos);
    if ((k < 2) != (next != std::string::npos))
      throw tuberscope::DomainError("expected a,b,c but got '" + text + "'");
    const std::string item = text.substr(pos, next == std::string::npos ? next : next - pos);
    char* end = nullptr;
    out[k] = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0')
      throw tuberscope::DomainError("bad number '" + item + "' in '" + text + "'");
    pos = next + 1;
  }
  return out;
}

// "rmin-rmax,gmin-gmax,bmin-bmax"
tuberscope::ChannelThresholds parse_thresholds(const std::string& text) {
  tuberscope::ChannelThresholds t;
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    int lo = -1, hi = -1;
    char tail = 0;
    if (std::sscanf(item.c_str(), "%d-%d%c", &lo, &hi, &tail) != 2 || lo < 0 || hi > 255 || lo > hi)
      throw tuberscope::DomainError("bad threshold range '" + item + "'; expected lo-hi in 0..255");
    t.min[k] = static_cast<std::uint8_t>(lo);
    t.max[k] = static_cast<std::uint8_t>(hi);
    if (k < 2 && comma == std::string::npos)
      throw tuberscope::DomainError("thresholds need three channel ranges");
    pos = comma + 1;
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sweetpotato size and weight from 2D silhouettes"};
  app.require_subcommand(1);

  cli::SimulateConfig sim;
  std::vector<std::string> ellipsoid_specs;
  std::string mode = "plane";
  double roller_pitch = tuberscope::Rollers{}.pitch;
  double roller_radius = tuberscope::Rollers{}.radius;
  double weight = 0.0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo projection of meshes");
  simulate->add_option("--mesh", sim.meshes, "OBJ or ASCII PLY mesh in cm")->check(CLI::ExistingFile);
  simulate->add_option("--ellipsoid", ellipsoid_specs, "Synthetic ellipsoid semi-axes a,b,c in cm");
  simulate->add_option("--mode", mode, "Constraint mode")
      ->check(CLI::IsMember({"free", "plane", "rollers"}))
      ->capture_default_str();
  simulate->add_option("--trials", sim.trials, "Trials per mesh")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--pixel-size", sim.pixel_size, "Raster pixel size in cm")->capture_default_str();
  simulate->add_option("--density", sim.density, "Density in g/cm3")->capture_default_str();
  auto* weight_opt = simulate->add_option("--weight", weight, "Rescale each mesh to this weight in g");
  simulate->add_option("--subdivisions", sim.subdivisions, "Icosphere subdivisions for --ellipsoid")
      ->capture_default_str();
  simulate->add_option("--roller-pitch", roller_pitch, "Roller axis spacing in cm")->capture_default_str();
  simulate->add_option("--roller-radius", roller_radius, "Roller radius in cm")->capture_default_str();
  simulate->add_option("--out-dir", sim.out_dir, "Output directory")->capture_default_str();
  simulate->add_option("--threads", sim.threads, "Worker threads, 0 for all cores");

  cli::AnalyzeConfig ana;
  double px_per_cm = 0.0, tape_length = 0.0;
  std::string image, tape_preset = "blue", thresholds;
  auto* analyze = app.add_subcommand("analyze", "Measure roots from VIA polygon masks");
  analyze->add_option("--via", ana.via, "VIA annotation JSON")->required()->check(CLI::ExistingFile);
  auto* ppc_opt = analyze->add_option("--px-per-cm", px_per_cm, "Explicit calibration");
  auto* image_opt = analyze->add_option("--image", image, "Image containing the reference tape")
                        ->check(CLI::ExistingFile);
  analyze->add_option("--tape-preset", tape_preset, "Tape colour window")
      ->check(CLI::IsMember({"blue", "red"}))
      ->capture_default_str();
  auto* thr_opt = analyze->add_option("--thresholds", thresholds, "RGB window rlo-rhi,glo-ghi,blo-bhi");
  auto* tape_opt = analyze->add_option("--tape-length", tape_length, "Tape length in cm");
  analyze->add_flag("--no-filter", ana.no_filter, "Keep roots below the sorter minimums");
  analyze->add_option("--out-dir", ana.out_dir, "Output directory")->capture_default_str();

  cli::ValidateConfig val;
  std::string join = "plot";
  auto* validate = app.add_subcommand("validate", "Compare observations with sorter records");
  validate->add_option("--observations", val.observations, "Observations CSV")
      ->required()
      ->check(CLI::ExistingFile);
  validate->add_option("--sorter", val.sorter, "Sorter CSV")->required()->check(CLI::ExistingFile);
  validate->add_option("--join", join, "Join key")
      ->check(CLI::IsMember({"plot", "root"}))
      ->capture_default_str();
  validate->add_option("--length-bin", val.length_bin, "Length bin width in cm")->capture_default_str();
  validate->add_option("--width-bin", val.width_bin, "Width bin width in cm")->capture_default_str();
  validate->add_option("--weight-bin", val.weight_bin, "Weight bin width in g")->capture_default_str();
  validate->add_option("--bin-origin", val.bin_origin, "Histogram origin")->capture_default_str();
  validate->add_option("--min-count", val.min_count, "Minimum count per chi-square bin")
      ->capture_default_str();
  validate->add_option("--out", val.out, "Report CSV")->capture_default_str();

  cli::BudgetConfig bud;
  auto* budget = app.add_subcommand("budget", "Combine an error budget");
  budget->add_option("--terms", bud.terms, "Error-term CSV")->required()->check(CLI::ExistingFile);
  budget->add_option("--out", bud.out, "Budget CSV")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  try {
    if (simulate->parsed()) {
      for (const auto& s : ellipsoid_specs) sim.ellipsoids.push_back(parse_triple(s));
      if (mode == "free")
        sim.mode = tuberscope::FreeSpace{};
      else if (mode == "plane")
        sim.mode = tuberscope::Plane{};
      else
        sim.mode = tuberscope::Rollers{roller_pitch, roller_radius};
      if (weight_opt->count()) sim.weight = weight;
      cli::validate(sim);
    } else if (analyze->parsed()) {
      if (ppc_opt->count()) ana.px_per_cm = px_per_cm;
      if (image_opt->count()) ana.image = image;
      if (tape_opt->count()) ana.tape_length = tape_length;
      ana.thresholds = tape_preset == "red" ? tuberscope::ChannelThresholds::red_tape()
                                            : tuberscope::ChannelThresholds::blue_tape();
      if (thr_opt->count()) ana.thresholds = parse_thresholds(thresholds);
      cli::validate(ana);
    } else if (validate->parsed()) {
      val.join = join == "root" ? cli::JoinKey::Root : cli::JoinKey::Plot;
      cli::validate(val);
    } else {
      cli::validate(bud);
    }
  } catch (const tuberscope::Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return cli::kExitConfig;
  }

  try {
    if (simulate->parsed()) return cli::run_simulate(sim, std::cerr);
    if (analyze->parsed()) return cli::run_analyze(ana, std::cerr);
    if (validate->parsed()) return cli::run_validate(val, std::cerr);
    return cli::run_budget(bud, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFailure;
  }
}
