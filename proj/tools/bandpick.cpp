// bandpick: hyperspectral band selection by mutual information.
//
// Subcommands:
//   synth   generate a synthetic cube + ground truth on disk
//   rank    per-band MI with a reference map, descending CSV
//   select  greedy threshold-gated selection (single Th or sweep)
//   eval    nearest-centroid accuracy of a band subset
//   fano    error-probability bounds from H(C|X)
//
// All flags can also come from a JSON config file (--config); command-line
// flags override file values. Exit codes: 0 ok, 2 input/config error,
// 3 degenerate data (e.g. fewer than 2 labeled classes).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bandpick/cube_io.hpp"
#include "bandpick/evaluator.hpp"
#include "bandpick/image.hpp"
#include "bandpick/infotheory.hpp"
#include "bandpick/selector.hpp"
#include "bandpick/synthlab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bandpick;

namespace {

struct Options {
  std::string config_path;
  std::string cube_path;
  std::string gt_path;
  std::string approx_gt;  // "LO:HI"
  std::string out_dir = ".";
  int bins = 256;
  double threshold = 0.0;
  std::string thresholds;  // comma-separated sweep
  int max_bands = 0;       // 0 = all bands
  bool labeled_only = true;
  double train_fraction = 0.5;
  unsigned seed = 0;
  bool stratified = true;
  std::string bands;       // explicit list for eval
  std::string selection;   // selection JSON for eval
  std::string preset;      // synth
  std::string scene_spec;  // synth
  int size = 64;
  int band = -1;           // fano
};

template <typename T>
void cfg_get(const json& j, const CLI::App& app, const std::string& flag,
             const char* key, T& var) {
  const CLI::Option* opt =
      const_cast<CLI::App&>(app).get_option_no_throw(flag);
  const bool given = opt && opt->count() > 0;
  if (!given && j.contains(key)) var = j.at(key).get<T>();
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed config " + path + ": " + e.what());
  }
}

void apply_config(const CLI::App& app, Options& o) {
  const json j = load_config(o.config_path);
  cfg_get(j, app, "--cube", "cube", o.cube_path);
  cfg_get(j, app, "--gt", "gt", o.gt_path);
  cfg_get(j, app, "--approx-gt", "approx_gt", o.approx_gt);
  cfg_get(j, app, "--out", "out", o.out_dir);
  cfg_get(j, app, "--bins", "bins", o.bins);
  cfg_get(j, app, "--threshold", "threshold", o.threshold);
  cfg_get(j, app, "--thresholds", "thresholds", o.thresholds);
  cfg_get(j, app, "--max-bands", "max_bands", o.max_bands);
  cfg_get(j, app, "--labeled-only", "labeled_only", o.labeled_only);
  cfg_get(j, app, "--train-fraction", "train_fraction", o.train_fraction);
  cfg_get(j, app, "--seed", "seed", o.seed);
  cfg_get(j, app, "--stratified", "stratified", o.stratified);
  cfg_get(j, app, "--bands", "bands", o.bands);
  cfg_get(j, app, "--selection", "selection", o.selection);
  cfg_get(j, app, "--preset", "preset", o.preset);
  cfg_get(j, app, "--spec", "spec", o.scene_spec);
  cfg_get(j, app, "--size", "size", o.size);
  cfg_get(j, app, "--band", "band", o.band);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError(std::string("invalid ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError(std::string("empty ") + what + " list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError(std::string("invalid ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError(std::string("empty ") + what + " list");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ValidationError("--approx-gt expects LO:HI, got '" + text + "'");
  try {
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ValidationError("--approx-gt expects integer LO:HI, got '" + text + "'");
  }
}

fs::path ensure_out_dir(const Options& o) {
  const fs::path dir = fs::absolute(o.out_dir);
  fs::create_directories(dir);
  return dir;
}

HyperCube require_cube(const Options& o) {
  if (o.cube_path.empty()) throw ValidationError("--cube is required");
  return load_cube(o.cube_path);
}

GroundTruth require_gt(const Options& o) {
  if (o.gt_path.empty()) throw ValidationError("--gt is required");
  return load_gt(o.gt_path);
}

// Reference variable for rank/fano: the GT if given, otherwise the
// quantized band-range average.
QuantizedImage approx_reference(const HyperCube& cube, const Options& o) {
  const auto [lo, hi] = parse_range(o.approx_gt);
  return quantize(approx_gt_band_average(cube, lo, hi), o.bins);
}

SelectionConfig selection_config(const HyperCube& cube, const Options& o) {
  SelectionConfig cfg;
  cfg.threshold = o.threshold;
  cfg.max_bands = o.max_bands > 0 ? o.max_bands : cube.n_bands;
  cfg.n_bins = o.bins;
  cfg.labeled_only = o.labeled_only;
  return cfg;
}

std::string rank_csv(const std::vector<BandScore>& scores) {
  std::ostringstream out;
  out.precision(17);
  out << "band,mi\n";
  for (const auto& s : scores) out << s.band << ',' << s.mi_with_gt << '\n';
  return out.str();
}

int cmd_rank(const Options& o) {
  const HyperCube cube = require_cube(o);
  SelectionConfig cfg = selection_config(cube, o);
  std::vector<BandScore> scores;
  if (!o.gt_path.empty()) {
    scores = rank_bands(cube, load_gt(o.gt_path), cfg);
  } else if (!o.approx_gt.empty()) {
    scores = rank_bands(cube, approx_reference(cube, o), cfg);
  } else {
    throw ValidationError("rank needs --gt or --approx-gt");
  }
  const fs::path dir = ensure_out_dir(o);
  atomic_write_text(dir / "rank.csv", rank_csv(scores));
  json jscores = json::array();
  for (const auto& s : scores)
    jscores.push_back({{"band", s.band}, {"mi", s.mi_with_gt}});
  atomic_write_text(dir / "rank.json", json({{"scores", jscores}}).dump(2) + "\n");
  std::cout << "ranked " << scores.size() << " bands, top band " << scores.front().band
            << " (mi " << scores.front().mi_with_gt << ")\n";
  return 0;
}

int cmd_select(const Options& o) {
  const HyperCube cube = require_cube(o);
  const GroundTruth gt = require_gt(o);
  const fs::path dir = ensure_out_dir(o);
  SelectionConfig cfg = selection_config(cube, o);

  if (o.thresholds.empty()) {
    const SelectionResult result = select_bands(cube, gt, cfg);
    atomic_write_text(dir / "selection.json", result.to_json());
    atomic_write_text(dir / "selection.csv", result.to_csv());
    std::cout.precision(17);
    std::cout << "selected " << result.selected.size() << " of " << cube.n_bands
              << " bands, final MI = " << result.final_mi << "\n";
    return 0;
  }

  // Sweep: one selection per threshold plus an aggregate CSV
  // (threshold x bands retained x accuracy).
  const std::vector<double> thresholds = parse_double_list(o.thresholds, "threshold");
  SplitSpec split{o.train_fraction, o.seed, o.stratified};
  std::ostringstream sweep;
  sweep.precision(17);
  sweep << "threshold,bands_retained,final_mi,accuracy\n";
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    cfg.threshold = thresholds[i];
    const SelectionResult result = select_bands(cube, gt, cfg);
    const std::string tag = "th" + std::to_string(i);
    atomic_write_text(dir / ("selection_" + tag + ".json"), result.to_json());
    atomic_write_text(dir / ("selection_" + tag + ".csv"), result.to_csv());
    const EvalReport report = evaluate_subset(cube, gt, result.selected, split);
    sweep << thresholds[i] << ',' << result.selected.size() << ','
          << result.final_mi << ',' << report.overall_accuracy << '\n';
  }
  atomic_write_text(dir / "sweep.csv", sweep.str());
  std::cout << "swept " << thresholds.size() << " thresholds -> "
            << (dir / "sweep.csv").string() << "\n";
  return 0;
}

int cmd_eval(const Options& o) {
  const HyperCube cube = require_cube(o);
  const GroundTruth gt = require_gt(o);
  std::vector<int> bands;
  std::string source;
  if (!o.bands.empty()) {
    bands = parse_int_list(o.bands, "band");
    source = "explicit";
  } else if (!o.selection.empty()) {
    std::ifstream in(o.selection);
    if (!in) throw ValidationError("cannot open selection file " + o.selection);
    json j;
    try {
      in >> j;
      bands = j.at("selected").get<std::vector<int>>();
    } catch (const json::exception& e) {
      throw ValidationError("invalid selection file " + o.selection + ": " + e.what());
    }
    source = o.selection;
  } else {
    throw ValidationError("eval needs --bands or --selection");
  }
  SplitSpec split{o.train_fraction, o.seed, o.stratified};
  const EvalReport report = evaluate_subset(cube, gt, bands, split);
  const fs::path dir = ensure_out_dir(o);
  json j = json::parse(report.to_json());
  j["bands_source"] = source;
  atomic_write_text(dir / "eval.json", j.dump(2) + "\n");
  atomic_write_text(dir / "eval.csv", report.to_csv());
  std::cout.precision(17);
  std::cout << "accuracy " << report.overall_accuracy << "% on " << report.n_test
            << " test pixels with " << bands.size() << " bands\n";
  return 0;
}

int cmd_synth(const Options& o) {
  const fs::path dir = ensure_out_dir(o);
  HyperCube cube;
  GroundTruth gt;
  if (!o.scene_spec.empty()) {
    std::ifstream in(o.scene_spec);
    if (!in) throw ValidationError("cannot open scene spec " + o.scene_spec);
    std::stringstream buf;
    buf << in.rdbuf();
    const SceneFile scene = parse_scene_file(buf.str());
    gt = make_gt(scene.spec);
    std::vector<RealImage> bands;
    for (const auto& recipe : scene.bands) {
      IndicatorBand band =
          make_indicator_band(gt, recipe.class_fills, recipe.background,
                              recipe.noise_amplitude, recipe.seed);
      for (const auto& w : band.warnings) std::cerr << "note: " << w << "\n";
      bands.push_back(std::move(band.image));
    }
    cube = pack_cube(bands);
  } else if (o.preset == "table1") {
    Table1Scenario sc = table1_scenario(o.size);
    cube = std::move(sc.cube);
    gt = std::move(sc.gt);
  } else if (o.preset == "quadrants") {
    QuadrantScenario sc = quadrant_scenario(o.size, 3);
    cube = std::move(sc.cube);
    gt = std::move(sc.gt);
  } else if (o.preset.empty()) {
    throw ValidationError("synth needs --preset or --spec");
  } else {
    throw ValidationError("unknown preset '" + o.preset + "'");
  }
  write_cube(cube, dir / "cube.json");
  write_gt(gt, dir / "gt.csv");
  std::cout << "wrote " << cube.n_bands << "-band " << cube.width << "x"
            << cube.height << " cube to " << dir.string() << "\n";
  return 0;
}

int cmd_fano(const Options& o) {
  const HyperCube cube = require_cube(o);
  const GroundTruth gt = require_gt(o);
  QuantizedImage x;
  if (o.band >= 0) {
    x = quantize_band(cube, o.band, o.bins);
  } else if (!o.approx_gt.empty()) {
    x = approx_reference(cube, o);
  } else {
    throw ValidationError("fano needs --band or --approx-gt");
  }
  const FanoBounds b = fano_bounds(gt, x, o.labeled_only);
  const json j = {{"h_c", b.h_c},           {"h_c_given_x", b.h_c_given_x},
                  {"mi", b.mi},             {"n_classes", b.n_classes},
                  {"lower", b.lower},       {"upper", b.upper}};
  const fs::path dir = ensure_out_dir(o);
  atomic_write_text(dir / "fano.json", j.dump(2) + "\n");
  std::cout.precision(17);
  std::cout << "H(C)=" << b.h_c << " H(C|X)=" << b.h_c_given_x << " Pe in ["
            << b.lower << ", " << b.upper << "]\n";
  return 0;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "JSON config mirroring all flags");
  sub->add_option("--cube", o.cube_path, "cube header (JSON)");
  sub->add_option("--gt", o.gt_path, "ground truth CSV");
  sub->add_option("--bins", o.bins, "quantization bins");
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_flag("--labeled-only,!--no-labeled-only", o.labeled_only,
                "restrict MI to labeled pixels");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperspectral band selection by mutual information"};
  app.require_subcommand(1);
  Options o;

  CLI::App* rank = app.add_subcommand("rank", "rank bands by MI with a reference");
  add_common(rank, o);
  rank->add_option("--approx-gt", o.approx_gt,
                   "LO:HI band range averaged into an estimated reference");

  CLI::App* select = app.add_subcommand("select", "greedy threshold-gated selection");
  add_common(select, o);
  select->add_option("--threshold", o.threshold, "MI acceptance threshold Th");
  select->add_option("--thresholds", o.thresholds, "comma list; sweep mode");
  select->add_option("--max-bands", o.max_bands, "cap on selected bands (0 = all)");
  select->add_option("--train-fraction", o.train_fraction, "sweep eval train fraction");
  select->add_option("--seed", o.seed, "sweep eval split seed");
  select->add_flag("--stratified,!--no-stratified", o.stratified);

  CLI::App* eval = app.add_subcommand("eval", "classify with a band subset");
  add_common(eval, o);
  eval->add_option("--bands", o.bands, "comma list of band indices");
  eval->add_option("--selection", o.selection, "selection JSON from 'select'");
  eval->add_option("--train-fraction", o.train_fraction);
  eval->add_option("--seed", o.seed);
  eval->add_flag("--stratified,!--no-stratified", o.stratified);

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic scene");
  add_common(synth, o);
  synth->add_option("--preset", o.preset, "table1 | quadrants");
  synth->add_option("--spec", o.scene_spec, "scene spec JSON");
  synth->add_option("--size", o.size, "scene edge length");

  CLI::App* fano = app.add_subcommand("fano", "error-probability bounds");
  add_common(fano, o);
  fano->add_option("--band", o.band, "band index for X");
  fano->add_option("--approx-gt", o.approx_gt, "LO:HI averaged estimate for X");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config(*sub, o);
    if (sub == rank) return cmd_rank(o);
    if (sub == select) return cmd_select(o);
    if (sub == eval) return cmd_eval(o);
    if (sub == synth) return cmd_synth(o);
    return cmd_fano(o);
  } catch (const DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
