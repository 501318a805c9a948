// bubble: build, verify, evolve and classify convex bubble clusters.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bubbles/catalogue.hpp"
#include "bubbles/classify.hpp"
#include "bubbles/flow.hpp"
#include "bubbles/mesh_io.hpp"
#include "bubbles/variation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bubbles;

namespace {

// exit codes (stable contract, see README)
constexpr int kOk = 0;
constexpr int kRowFailures = 1;
constexpr int kFormatError = 2;
constexpr int kConstructorError = 3;
constexpr int kNonConvergence = 4;
constexpr int kMeshDegeneracy = 5;
constexpr int kVerifyResidual = 10;
constexpr int kVerifyAngles = 11;
constexpr int kVerifyMultipliers = 12;

int logLevel() {
  const char* env = std::getenv("BUBBLE_LOG");
  if (!env) return 1;
  const std::string v = env;
  if (v == "error") return 0;
  if (v == "warn") return 1;
  if (v == "info") return 2;
  if (v == "debug") return 3;
  return 1;
}

void logMsg(int level, const std::string& msg) {
  static const int verbosity = logLevel();
  if (level <= verbosity) {
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::cerr << "[" << names[level] << "] " << msg << "\n";
  }
}

json readJsonFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open: " + path);
  return json::parse(is);  // parse_error carries the byte offset
}

void writeTextFile(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open for writing: " + path);
  os << content;
}

FlowParams parseFlowParams(const json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> allowed = {
        "max_steps",        "step_rule",          "initial_step",
        "volume_projection_tol", "convergence_residual_rel",
        "remesh_interval",  "seed"};
    if (!allowed.count(it.key())) {
      throw FormatError("unknown key '" + it.key() + "' in flow params");
    }
  }
  FlowParams p;
  if (j.contains("max_steps")) p.max_steps = j["max_steps"].get<int>();
  if (j.contains("step_rule")) {
    const std::string s = j["step_rule"].get<std::string>();
    if (s == "fixed") p.step_rule = FlowParams::StepRule::Fixed;
    else if (s == "backtracking") p.step_rule = FlowParams::StepRule::Backtracking;
    else throw FormatError("unknown step_rule: " + s);
  }
  if (j.contains("initial_step")) p.initial_step = j["initial_step"].get<double>();
  if (j.contains("volume_projection_tol")) {
    p.volume_projection_tol = j["volume_projection_tol"].get<double>();
  }
  if (j.contains("convergence_residual_rel")) {
    p.convergence_residual_rel = j["convergence_residual_rel"].get<double>();
  }
  if (j.contains("remesh_interval")) {
    p.remesh_interval = j["remesh_interval"].get<int>();
  }
  if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
  return p;
}

Cluster clusterFromMeshFile(const std::string& path,
                            const std::string& profile) {
  Cluster c;
  c.mesh = readOff(path);
  c.k = c.mesh.regionCount();
  c.tolerances = toleranceProfile(profile);
  for (int i = 1; i <= c.k; ++i) {
    c.target_volumes.push_back(computeVolume(c.mesh, i));
  }
  return c;
}

struct VerifyOutcome {
  VariationReport report;
  int exit_code = kOk;
  std::string failed;
};

VerifyOutcome verifyCluster(const Cluster& cluster) {
  VerifyOutcome out;
  out.report = fitMultipliers(cluster);
  const ToleranceProfile& tol = cluster.tolerances;
  if (out.report.residual_rel > tol.residual_rel) {
    out.exit_code = kVerifyResidual;
    out.failed = "residual_rel " + std::to_string(out.report.residual_rel) +
                 " > " + std::to_string(tol.residual_rel);
    return out;
  }
  for (const auto& junction : out.report.junctions) {
    if (junction.worstDeviationFrom(120.0) > tol.angle_deg) {
      out.exit_code = kVerifyAngles;
      out.failed = "junction dihedral off 120 degrees by " +
                   std::to_string(junction.worstDeviationFrom(120.0));
      return out;
    }
  }
  const InteractionGraph graph =
      buildInteractionGraph(cluster.mesh, 1e-6 * totalArea(cluster.mesh));
  for (int i = 1; i <= cluster.k; ++i) {
    for (int j = i + 1; j <= cluster.k; ++j) {
      if (!graph.edge(i, j)) continue;
      const double li = out.report.lambdas[i - 1];
      const double lj = out.report.lambdas[j - 1];
      const double scale = std::max(std::abs(li), std::abs(lj));
      if (scale > 0 && std::abs(li - lj) / scale > tol.multiplier_rel) {
        out.exit_code = kVerifyMultipliers;
        out.failed = "multipliers differ across interface " +
                     std::to_string(i) + "-" + std::to_string(j);
        return out;
      }
    }
  }
  return out;
}

int cmdBuild(const std::string& spec_path, const std::string& out_dir,
             const std::string& profile, std::optional<std::uint64_t> seed) {
  ConfigurationSpec spec;
  try {
    spec = parseConfigurationSpec(readJsonFile(spec_path));
  } catch (const json::exception& e) {
    logMsg(0, e.what());
    return kFormatError;
  } catch (const FormatError& e) {
    logMsg(0, e.what());
    return kFormatError;
  }
  if (seed) spec.seed = *seed;
  try {
    BuildReport report;
    Cluster cluster = buildCluster(spec, &report);
    cluster.tolerances = toleranceProfile(profile);
    fs::create_directories(out_dir);
    writeOff((fs::path(out_dir) / "cluster.off").string(), cluster.mesh);
    writeObj((fs::path(out_dir) / "cluster.obj").string(), cluster.mesh);
    nlohmann::ordered_json rj = report.toJson();
    rj["spec"] = configurationSpecToJson(spec);
    writeTextFile((fs::path(out_dir) / "build_report.json").string(),
                  rj.dump(2) + "\n");
    logMsg(2, "built " + kindName(spec.kind) + " (branch " + report.branch +
                   ") with " + std::to_string(report.faces) + " faces");
    return kOk;
  } catch (const Error& e) {
    logMsg(0, e.what());
    return kConstructorError;
  }
}

int cmdVerify(const std::string& mesh_path, const std::string& out_dir,
              const std::string& profile) {
  Cluster cluster;
  try {
    cluster = clusterFromMeshFile(mesh_path, profile);
    validateMesh(cluster.mesh);
  } catch (const Error& e) {
    logMsg(0, e.what());
    return kFormatError;
  }
  VerifyOutcome out = verifyCluster(cluster);
  const std::string text = out.report.toJson().dump(2) + "\n";
  if (out_dir.empty()) {
    std::cout << text;
  } else {
    fs::create_directories(out_dir);
    writeTextFile((fs::path(out_dir) / "variation_report.json").string(), text);
  }
  if (out.exit_code != kOk) logMsg(0, "verification failed: " + out.failed);
  return out.exit_code;
}

int cmdClassify(const std::string& mesh_path, const std::string& out_dir,
                const std::string& profile) {
  Cluster cluster;
  try {
    cluster = clusterFromMeshFile(mesh_path, profile);
  } catch (const Error& e) {
    logMsg(0, e.what());
    return kFormatError;
  }
  try {
    const Classification c = classify(cluster);
    const std::string text = c.toJson().dump(2) + "\n";
    if (out_dir.empty()) {
      std::cout << text;
    } else {
      fs::create_directories(out_dir);
      writeTextFile((fs::path(out_dir) / "classification.json").string(), text);
    }
    return c.configuration == Configuration::Unclassified ? kRowFailures : kOk;
  } catch (const Error& e) {
    logMsg(0, e.what());
    return kConstructorError;
  }
}

int cmdEvolve(const std::string& spec_path, const std::string& mesh_path,
              const std::string& params_path, const std::string& out_dir,
              const std::string& profile, std::optional<std::uint64_t> seed) {
  Cluster cluster;
  FlowParams params;
  try {
    if (!params_path.empty()) params = parseFlowParams(readJsonFile(params_path));
    if (!spec_path.empty()) {
      ConfigurationSpec spec = parseConfigurationSpec(readJsonFile(spec_path));
      if (seed) spec.seed = *seed;
      cluster = buildCluster(spec, nullptr);
      cluster.tolerances = toleranceProfile(profile);
    } else {
      cluster = clusterFromMeshFile(mesh_path, profile);
    }
  } catch (const json::exception& e) {
    logMsg(0, e.what());
    return kFormatError;
  } catch (const FormatError& e) {
    logMsg(0, e.what());
    return kFormatError;
  } catch (const Error& e) {
    logMsg(0, e.what());
    return kConstructorError;
  }
  fs::create_directories(out_dir);
  FlowResult result;
  try {
    result = evolve(cluster, params);
  } catch (const Error& e) {
    logMsg(0, e.what());
    return kMeshDegeneracy;
  }
  writeOff((fs::path(out_dir) / "final.off").string(), result.cluster.mesh);
  {
    std::ostringstream csv;
    writeTraceCsv(csv, result.trace);
    writeTextFile((fs::path(out_dir) / "trace.csv").string(), csv.str());
  }
  std::string cls_name = "unclassified";
  bool classified = false;
  try {
    const Classification c = classify(result.cluster);
    writeTextFile((fs::path(out_dir) / "classification.json").string(),
                  c.toJson().dump(2) + "\n");
    classified = c.configuration != Configuration::Unclassified;
    cls_name = configurationName(c.configuration);
  } catch (const Error& e) {
    logMsg(1, std::string("classification failed: ") + e.what());
  }
  logMsg(2, "flow finished: " + cls_name + ", trace length " +
                 std::to_string(result.trace.size()));
  if (result.status == FlowStatus::MeshDegeneracy) return kMeshDegeneracy;
  if (result.status != FlowStatus::Converged || !classified) {
    return kNonConvergence;
  }
  return kOk;
}

std::vector<ConfigurationSpec> defaultSweepGrid() {
  std::vector<ConfigurationSpec> rows;
  const std::vector<double> volumes = {0.5, 1.0, 2.0};
  const std::vector<double> rel_res = {1.0 / 12.0, 1.0 / 18.0};
  auto radius_scale = [](double v) { return std::cbrt(v); };
  for (double v : volumes) {
    for (double rr : rel_res) {
      const double res = rr * radius_scale(v);
      ConfigurationSpec s;
      s.resolution = res;

      s.kind = ConfigKind::DisjointBalls;
      s.volumes = {v, 1.7 * v, 0.6 * v};  // unequal radii on purpose
      rows.push_back(s);

      s.kind = ConfigKind::StandardDoubleBubble;
      s.volumes = {v, v};
      rows.push_back(s);

      s.kind = ConfigKind::BallPlusDoubleBubble;
      s.volumes = {v, v, 0.8 * v};
      rows.push_back(s);

      const double v_star =
          linedUpSphericalMiddleVolume(solveDoubleBubbleRadius(v));
      s.kind = ConfigKind::LinedUpTriple;
      s.volumes = {v, v_star, v};
      s.branch = LinedUpBranch::NonParallel;
      rows.push_back(s);
      s.branch = LinedUpBranch::PointContact;
      rows.push_back(s);
      s.branch = LinedUpBranch::Parallel;
      rows.push_back(s);
      s.branch = LinedUpBranch::Auto;

      s.kind = ConfigKind::StandardTriple;
      s.volumes = {v, v, v};
      rows.push_back(s);
    }
  }
  return rows;
}

Configuration expectedConfiguration(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::DisjointBalls: return Configuration::DisjointBalls;
    case ConfigKind::StandardDoubleBubble:
      return Configuration::StandardDoubleBubble;
    case ConfigKind::BallPlusDoubleBubble:
      return Configuration::BallPlusDoubleBubble;
    case ConfigKind::LinedUpTriple: return Configuration::LinedUpTriple;
    case ConfigKind::StandardTriple: return Configuration::StandardTriple;
  }
  throw Error("unreachable");
}

int expectedCase(ConfigKind kind, int k) {
  switch (kind) {
    case ConfigKind::DisjointBalls: return 1;
    case ConfigKind::StandardDoubleBubble: return 2;
    case ConfigKind::BallPlusDoubleBubble: return 2;
    case ConfigKind::LinedUpTriple: return 3;
    case ConfigKind::StandardTriple: return 4;
  }
  (void)k;
  throw Error("unreachable");
}

int cmdSweep(const std::string& grid_path, const std::string& out_dir,
             const std::string& profile) {
  std::vector<ConfigurationSpec> rows;
  try {
    if (grid_path.empty()) {
      rows = defaultSweepGrid();
    } else {
      const json grid = readJsonFile(grid_path);
      if (!grid.is_object() || !grid.contains("rows")) {
        throw FormatError("grid JSON must carry a 'rows' array");
      }
      for (const auto& row : grid["rows"]) {
        rows.push_back(parseConfigurationSpec(row));
      }
    }
  } catch (const json::exception& e) {
    logMsg(0, e.what());
    return kFormatError;
  } catch (const FormatError& e) {
    logMsg(0, e.what());
    return kFormatError;
  }
  fs::create_directories(out_dir);
  std::ostringstream csv;
  csv << "kind,branch,volumes,resolution,status,residual_rel,lambda_spread_rel,"
         "angle_worst_dev_deg,max_volume_err_rel,case,configuration,pass\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    csv << buf;
  };
  bool all_pass = true;
  for (const auto& spec : rows) {
    csv << kindName(spec.kind) << ',' << branchName(spec.branch) << ',';
    csv << '"';
    for (std::size_t i = 0; i < spec.volumes.size(); ++i) {
      if (i) csv << ';';
      put(spec.volumes[i]);
    }
    csv << '"' << ',';
    put(spec.resolution);
    csv << ',';
    Cluster cluster;
    try {
      cluster = buildCluster(spec, nullptr);
      cluster.tolerances = toleranceProfile(profile);
    } catch (const VolumeOutOfRange& e) {
      csv << "volume_out_of_range,,,,,,," << "fail\n";
      all_pass = false;
      logMsg(0, std::string("row failed: ") + e.what());
      continue;
    } catch (const Error& e) {
      csv << "build_error,,,,,,," << "fail\n";
      all_pass = false;
      logMsg(0, std::string("row failed: ") + e.what());
      continue;
    }
    const VariationReport rep = fitMultipliers(cluster);
    double angle_dev = 0;
    for (const auto& jn : rep.junctions) {
      angle_dev = std::max(angle_dev, jn.worstDeviationFrom(120.0));
    }
    const InteractionGraph graph =
        buildInteractionGraph(cluster.mesh, 1e-6 * totalArea(cluster.mesh));
    double spread = 0;
    bool spread_applicable = false;
    const bool delaunay_middle =
        spec.kind == ConfigKind::LinedUpTriple &&
        spec.branch == LinedUpBranch::Parallel &&
        std::abs(spec.volumes[1] -
                 linedUpSphericalMiddleVolume(
                     solveDoubleBubbleRadius(spec.volumes[0]))) >
            1e-6 * spec.volumes[1];
    for (int i = 1; i <= cluster.k; ++i) {
      for (int j = i + 1; j <= cluster.k; ++j) {
        if (!graph.edge(i, j)) continue;
        if (delaunay_middle) continue;  // multiplier law holds only on the
                                        // sphere member of that family
        spread_applicable = true;
        const double li = rep.lambdas[i - 1], lj = rep.lambdas[j - 1];
        spread = std::max(spread,
                          std::abs(li - lj) /
                              std::max(std::abs(li), std::abs(lj)));
      }
    }
    double vol_err = 0;
    for (int i = 0; i < cluster.k; ++i) {
      vol_err = std::max(
          vol_err, std::abs(computeVolumeUnchecked(cluster.mesh, i + 1) -
                            cluster.target_volumes[i]) /
                       cluster.target_volumes[i]);
    }
    Classification cls;
    bool pass = true;
    try {
      cls = classify(cluster);
    } catch (const Error& e) {
      logMsg(0, std::string("classification raised: ") + e.what());
      pass = false;
    }
    const ToleranceProfile tol = cluster.tolerances;
    if (rep.residual_rel > tol.residual_rel) pass = false;
    if (angle_dev > tol.angle_deg) pass = false;
    if (spread_applicable && spread > tol.multiplier_rel) pass = false;
    if (vol_err > tol.volume_rel) pass = false;
    if (cls.configuration != expectedConfiguration(spec.kind)) pass = false;
    if (cls.case_label != expectedCase(spec.kind, cluster.k)) pass = false;
    csv << "ok,";
    put(rep.residual_rel);
    csv << ',';
    put(spread);
    csv << ',';
    put(angle_dev);
    csv << ',';
    put(vol_err);
    csv << ',' << cls.case_label << ',' << configurationName(cls.configuration)
        << ',' << (pass ? "pass" : "fail") << "\n";
    if (!pass) {
      all_pass = false;
      std::string failures;
      for (const auto& f : cls.failed_predicates) failures += f + " ";
      logMsg(0, "row failed: " + kindName(spec.kind) + " " + failures);
    }
  }
  writeTextFile((fs::path(out_dir) / "sweep.csv").string(), csv.str());
  return all_pass ? kOk : kRowFailures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stationary convex bubble clusters: catalogue, verification, "
               "flow and classification"};
  app.require_subcommand(1);
  std::string profile = "default";
  app.add_option("--tolerance-profile", profile,
                 "tolerance profile: default|strict|coarse");
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "override the spec seed");

  std::string spec_path, mesh_path, params_path, grid_path, out_dir;

  auto* build = app.add_subcommand("build", "mesh a catalogue configuration");
  build->add_option("--spec", spec_path, "configuration spec JSON")->required();
  build->add_option("--out", out_dir, "output directory")->required();

  auto* verify = app.add_subcommand("verify", "stationarity report for a mesh");
  verify->add_option("--mesh", mesh_path, "labeled OFF mesh")->required();
  verify->add_option("--out", out_dir, "output directory (default: stdout)");

  auto* cls = app.add_subcommand("classify", "classify a labeled OFF mesh");
  cls->add_option("--mesh", mesh_path, "labeled OFF mesh")->required();
  cls->add_option("--out", out_dir, "output directory (default: stdout)");

  auto* evo = app.add_subcommand("evolve", "volume-constrained area descent");
  evo->add_option("--spec", spec_path, "configuration spec JSON");
  evo->add_option("--mesh", mesh_path, "labeled OFF mesh");
  evo->add_option("--params", params_path, "flow parameters JSON");
  evo->add_option("--out", out_dir, "output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "catalogue sweep regression table");
  sweep->add_option("--grid", grid_path, "grid JSON (default: builtin grid)");
  sweep->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmdBuild(spec_path, out_dir, profile, seed);
    if (verify->parsed()) return cmdVerify(mesh_path, out_dir, profile);
    if (cls->parsed()) return cmdClassify(mesh_path, out_dir, profile);
    if (evo->parsed()) {
      if (spec_path.empty() == mesh_path.empty()) {
        logMsg(0, "evolve needs exactly one of --spec or --mesh");
        return kFormatError;
      }
      return cmdEvolve(spec_path, mesh_path, params_path, out_dir, profile,
                       seed);
    }
    if (sweep->parsed()) return cmdSweep(grid_path, out_dir, profile);
  } catch (const std::exception& e) {
    logMsg(0, e.what());
    return kFormatError;
  }
  return kFormatError;
}
