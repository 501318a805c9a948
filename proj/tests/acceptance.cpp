// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bubbles/catalogue.hpp"
#include "bubbles/classify.hpp"
#include "bubbles/delaunay.hpp"
#include "bubbles/flow.hpp"
#include "bubbles/mesh_io.hpp"
#include "bubbles/meshing.hpp"
#include "bubbles/variation.hpp"
#include "oracles.hpp"

using namespace bubbles;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Criterion {
  const char* name;
  std::vector<std::string> notes;
  bool ok = true;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  explicit Criterion(const char* n) : name(n) {}
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
  void finish() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %s (%.1f s)\n", ok ? "PASS" : "FAIL", name, secs);
    for (const auto& n : notes) std::printf("        %s\n", n.c_str());
    if (!ok) ++g_failures;
    std::fflush(stdout);
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

double meanEdge(const LabeledMesh& m) {
  double acc = 0;
  std::size_t n = 0;
  for (const auto& [e, fs] : buildEdgeIncidence(m)) {
    acc += (m.vertices[e.a] - m.vertices[e.b]).norm();
    ++n;
  }
  return acc / n;
}

ConfigurationSpec makeSpec(ConfigKind kind, std::vector<double> volumes,
                           double resolution) {
  ConfigurationSpec s;
  s.kind = kind;
  s.volumes = std::move(volumes);
  s.resolution = resolution;
  return s;
}

// ---------------------------------------------------------------------------

void criterion1_gradients() {
  Criterion c("1. gradient exactness vs finite differences, 100 random meshes");
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    LabeledMesh m = oracles::randomClosedMesh(seed);
    if (m.vertexCount() > 200) {
      c.require(false, "test mesh exceeds 200 vertices");
      break;
    }
    const GradientField ga = areaGradient(m);
    const GradientField gv = volumeGradient(m, 1);
    const double h = 1e-5 * meanEdge(m);
    const double scale_a = fieldNorm(ga) / std::sqrt(double(m.vertexCount()));
    const double scale_v = fieldNorm(gv) / std::sqrt(double(m.vertexCount()));
    for (std::size_t v = 0; v < m.vertexCount(); ++v) {
      for (int k = 0; k < 3; ++k) {
        const double fda = oracles::finiteDifference(
            m, [](const LabeledMesh& mm) { return totalArea(mm); },
            static_cast<int>(v), k, h);
        const double fdv = oracles::finiteDifference(
            m,
            [](const LabeledMesh& mm) { return computeVolumeUnchecked(mm, 1); },
            static_cast<int>(v), k, h);
        worst = std::max(worst, std::abs(ga[v][k] - fda) /
                                    (std::abs(fda) + scale_a));
        worst = std::max(worst, std::abs(gv[v][k] - fdv) /
                                    (std::abs(fdv) + scale_v));
      }
    }
  }
  c.note("worst relative deviation " + fmt(worst) + " (bound 1e-6)");
  c.require(worst <= 1e-6, "gradient mismatch above 1e-6");
  c.finish();
}

void criterion2_sphere() {
  Criterion c("2. sphere stationarity at subdivision 4");
  LabeledMesh m;
  icosphere(m, Vec3::Zero(), 1.0, 4, RegionPair(0, 1));
  Cluster cl{1, {computeVolume(m, 1)}, m, toleranceProfile("default")};
  const auto rep = fitMultipliers(cl);
  c.note("lambda " + fmt(rep.lambdas[0]) + ", residual_rel " +
         fmt(rep.residual_rel));
  c.require(std::abs(rep.lambdas[0] - 2.0) <= 0.04, "lambda not 2 within 2%");
  c.require(rep.residual_rel <= 0.02, "residual_rel above 2%");
  const auto proj =
      projectVolumePreserving(areaGradient(m), {volumeGradient(m, 1)});
  const double ratio = fieldNorm(proj) / fieldNorm(areaGradient(m));
  c.note("projection ratio " + fmt(ratio));
  c.require(ratio <= 0.02, "volume-preserving projection ratio above 2%");
  c.finish();
}

void criterion3_double_bubble() {
  Criterion c("3. standard double bubble at resolution r/20");
  const double r = solveDoubleBubbleRadius(1.0);
  Cluster fine = buildStandardDoubleBubble(
      makeSpec(ConfigKind::StandardDoubleBubble, {1.0, 1.0}, r / 20), nullptr);
  for (int i = 1; i <= 2; ++i) {
    const double v = computeVolume(fine.mesh, i);
    c.require(std::abs(v - 1.0) <= 0.005,
              "region " + std::to_string(i) + " volume off by " +
                  fmt(std::abs(v - 1.0)));
    const auto mc = oracles::monteCarloMeshVolume(fine.mesh, i, 10000000,
                                                  1000 + i);
    c.note("region " + std::to_string(i) + ": volume " + fmt(v) +
           ", Monte Carlo " + fmt(mc.volume) + " +- " + fmt(mc.sigma));
    c.require(std::abs(mc.volume - v) <= 3 * mc.sigma,
              "Monte-Carlo volume disagrees beyond 3 sigma");
  }
  const auto curves = extractJunctionCurves(fine.mesh);
  c.require(curves.size() == 1, "expected a single junction loop");
  const auto stats = junctionAngles(fine, curves.front());
  for (const auto& p : stats.pairs) {
    c.require(std::abs(p.median_deg - 120.0) <= 1.0,
              "junction median " + fmt(p.median_deg));
  }
  const auto rep = fitMultipliers(fine);
  c.note("lambdas " + fmt(rep.lambdas[0]) + ", " + fmt(rep.lambdas[1]) +
         "; residual_rel " + fmt(rep.residual_rel));
  c.require(std::abs(rep.lambdas[0] - rep.lambdas[1]) <=
                0.01 * std::abs(rep.lambdas[0]),
            "multipliers differ beyond 1%");
  c.require(rep.residual_rel <= 0.02, "residual_rel above 2%");
  Cluster coarse = buildStandardDoubleBubble(
      makeSpec(ConfigKind::StandardDoubleBubble, {1.0, 1.0}, r / 10), nullptr);
  const double coarse_res = fitMultipliers(coarse).residual_rel;
  c.note("refinement: residual " + fmt(coarse_res) + " -> " +
         fmt(rep.residual_rel) + " (factor " +
         fmt(coarse_res / rep.residual_rel) + ")");
  c.require(coarse_res / rep.residual_rel >= 1.5,
            "refinement improves residual by less than 1.5x");
  c.finish();
}

void criterion4_standard_triple() {
  Criterion c("4. standard triple bubble");
  const double v = 1.0;
  BuildReport report;
  Cluster cl = buildStandardTriple(
      makeSpec(ConfigKind::StandardTriple, {v, v, v}, 0.045), &report);
  const auto rep = fitMultipliers(cl);
  c.note("lambdas " + fmt(rep.lambdas[0]) + ", " + fmt(rep.lambdas[1]) + ", " +
         fmt(rep.lambdas[2]));
  for (int i = 0; i < 3; ++i) {
    const double a = rep.lambdas[i], b = rep.lambdas[(i + 1) % 3];
    c.require(std::abs(a - b) <= 0.01 * std::abs(a),
              "multipliers differ beyond 1%");
  }
  // interface planes pairwise at 120 degrees about the common line
  // (undirected plane normals then meet at 60 degrees)
  std::map<std::pair<int, int>, PlaneFit> planes;
  for (auto pair : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
    std::vector<Vec3> pts;
    for (std::size_t f = 0; f < cl.mesh.faceCount(); ++f) {
      if (cl.mesh.labels[f] == RegionPair(pair.first, pair.second)) {
        for (int i : cl.mesh.faces[f]) pts.push_back(cl.mesh.vertices[i]);
      }
    }
    planes[pair] = fitPlane(pts);
  }
  for (auto it = planes.begin(); it != planes.end(); ++it) {
    for (auto jt = std::next(it); jt != planes.end(); ++jt) {
      const double ang = deg(std::acos(std::clamp(
          std::abs(it->second.normal.dot(jt->second.normal)), 0.0, 1.0)));
      c.note("plane line-angle " + fmt(ang) + " deg (half-planes at " +
             fmt(180 - ang) + ")");
      c.require(std::abs((180.0 - ang) - 120.0) <= 0.5,
                "interface half-planes not at 120 +- 0.5 degrees");
    }
  }
  const Classification cls = classify(cl);
  c.require(cls.case_label == 4, "case label is not 4");
  c.require(cls.configuration == Configuration::StandardTriple,
            "configuration is not standard_triple: " +
                configurationName(cls.configuration));
  c.finish();
}

void criterion5_lined_up() {
  Criterion c("5. lined-up triple: all three branches");
  const double r = solveDoubleBubbleRadius(1.0);
  const double vstar = linedUpSphericalMiddleVolume(r);
  // non-parallel
  {
    ConfigurationSpec s =
        makeSpec(ConfigKind::LinedUpTriple, {1.0, vstar, 1.0}, r / 16);
    s.branch = LinedUpBranch::NonParallel;
    Cluster cl = buildLinedUpTriple(s, nullptr);
    const Classification cls = classify(cl);
    c.require(cls.case_label == 3 &&
                  cls.configuration == Configuration::LinedUpTriple,
              "non-parallel branch did not classify as (Case 3, Config 3)");
  }
  // point contact: wedge opening 60 +- 0.5 regardless of the outer volume
  for (double vo : {0.5, 1.0, 2.5}) {
    const double ro = solveDoubleBubbleRadius(vo);
    ConfigurationSpec s = makeSpec(
        ConfigKind::LinedUpTriple,
        {vo, linedUpSphericalMiddleVolume(ro), vo}, ro / 16);
    s.branch = LinedUpBranch::PointContact;
    Cluster cl = buildLinedUpTriple(s, nullptr);
    std::vector<Vec3> pts12, pts23;
    for (std::size_t f = 0; f < cl.mesh.faceCount(); ++f) {
      if (cl.mesh.labels[f] == RegionPair(1, 2)) {
        for (int i : cl.mesh.faces[f]) pts12.push_back(cl.mesh.vertices[i]);
      }
      if (cl.mesh.labels[f] == RegionPair(2, 3)) {
        for (int i : cl.mesh.faces[f]) pts23.push_back(cl.mesh.vertices[i]);
      }
    }
    const double ang = deg(std::acos(std::clamp(
        std::abs(fitPlane(pts12).normal.dot(fitPlane(pts23).normal)), 0.0,
        1.0)));
    const double opening = 180.0 - ang;
    c.note("point contact at V_outer " + fmt(vo) + ": wedge opening " +
           fmt(opening) + " deg");
    c.require(std::abs(opening - 60.0) <= 0.5,
              "point-contact wedge opening not 60 +- 0.5");
    const Classification cls = classify(cl);
    c.require(cls.case_label == 3 &&
                  cls.configuration == Configuration::LinedUpTriple,
              "point-contact branch did not classify as (Case 3, Config 3)");
  }
  // parallel: unduloid and nodoid members
  for (double scale : {1.25, 0.7}) {
    ConfigurationSpec s = makeSpec(ConfigKind::LinedUpTriple,
                                   {1.0, scale * vstar, 1.0}, r / 16);
    s.branch = LinedUpBranch::Parallel;
    BuildReport report;
    Cluster cl = buildLinedUpTriple(s, &report);
    // CMC residual of the middle profile, pointwise below 1e-8
    DelaunayProfile prof = generateDelaunayProfile(
        report.middle_lambda, report.middle_shape,
        -0.9 * kPi / report.middle_lambda, 0.9 * kPi / report.middle_lambda);
    c.note(report.branch + ": profile CMC residual " +
           fmt(prof.cmc_residual_max));
    c.require(prof.cmc_residual_max <= 1e-8,
              "Delaunay CMC residual above 1e-8");
    // 120-degree contact at both planes, from the mesh junction angles
    double worst = 0;
    for (const auto& curve : extractJunctionCurves(cl.mesh)) {
      worst = std::max(worst,
                       junctionAngles(cl, curve).worstDeviationFrom(120.0));
    }
    c.note(report.branch + ": worst junction median deviation " + fmt(worst) +
           " deg");
    c.require(worst <= 0.5, "contact angles not 120 +- 0.5 degrees");
    const Classification cls = classify(cl);
    c.require(cls.case_label == 3 &&
                  cls.configuration == Configuration::LinedUpTriple,
              "parallel branch did not classify as (Case 3, Config 3)");
  }
  c.finish();
}

void criterion6_ycone() {
  Criterion c("6. Y-cone balance law");
  auto coplanar = [](double a0, double a1, double a2) {
    return std::array<Vec3, 3>{
        Vec3(std::cos(rad(a0)), std::sin(rad(a0)), 0),
        Vec3(std::cos(rad(a1)), std::sin(rad(a1)), 0),
        Vec3(std::cos(rad(a2)), std::sin(rad(a2)), 0)};
  };
  {
    const auto v = coplanar(0, 120, 240);
    const auto res = yConeStationarity(v[0], v[1], v[2]);
    c.note("mutual 120: defect " + fmt(res.defect));
    c.require(res.defect <= 1e-12 && res.stationary,
              "mutual 120 defect above 1e-12");
  }
  // triples whose pairwise angles all deviate by >= 10 degrees
  double min_defect = std::numeric_limits<double>::max();
  for (double d1 : {-20.0, -15.0, -10.0, 10.0, 15.0, 20.0}) {
    for (double d2 : {-20.0, -15.0, -10.0, 10.0, 15.0, 20.0}) {
      const double d3 = -(d1 + d2);
      if (std::abs(d3) < 10.0) continue;
      const auto v = coplanar(0, 120 + d1, 240 + d1 + d2);
      min_defect = std::min(min_defect,
                            yConeStationarity(v[0], v[1], v[2]).defect);
    }
  }
  c.note("min defect over >=10-degree deviations: " + fmt(min_defect));
  c.require(min_defect > 0.25, "deviating triple with defect <= 0.25");
  // brute-force sign enumeration oracle on 1000 random triples
  SplitMix64 rng(2718);
  auto randUnit = [&]() {
    const double z = 2 * rng.uniform() - 1;
    const double phi = 2 * kPi * rng.uniform();
    const double s = std::sqrt(std::max(0.0, 1 - z * z));
    return Vec3(s * std::cos(phi), s * std::sin(phi), z);
  };
  bool all_match = true;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 a = randUnit(), b = randUnit(), d = randUnit();
    double brute = std::numeric_limits<double>::max();
    for (int sa : {1, -1})
      for (int sb : {1, -1})
        for (int sc : {1, -1})
          brute = std::min(brute, (sa * a + sb * b + sc * d).norm());
    if (std::abs(yConeStationarity(a, b, d).defect - brute) > 1e-12) {
      all_match = false;
    }
  }
  c.require(all_match, "sign-enumeration oracle disagrees");
  c.finish();
}

void criterion7_heintze_karcher() {
  Criterion c("7. Heintze-Karcher gap");
  LabeledMesh sphere;
  icosphere(sphere, Vec3::Zero(), 1.0, 4, RegionPair(0, 1));
  const auto hk1 = heintzeKarcherCheck(sphere, 1);
  c.note("icosphere gap_rel " + fmt(hk1.gap_rel));
  c.require(std::abs(hk1.gap_rel) <= 0.02, "icosphere gap above 2%");
  LabeledMesh ell = sphere;
  for (auto& v : ell.vertices) v.z() *= 2.0;
  const auto hk2 = heintzeKarcherCheck(ell, 1);
  const auto oracle = oracles::ellipsoidInverseCurvatureIntegral(1, 1, 2);
  const double rhs_exact = 2.0 / 3.0 * oracle.integral_inv_H;
  c.note("ellipsoid gap_rel " + fmt(hk2.gap_rel) + "; rhs " + fmt(hk2.rhs) +
         " vs quadrature " + fmt(rhs_exact));
  c.require(hk2.gap_rel > 0.05, "ellipsoid gap not above 5%");
  c.require(std::abs(hk2.rhs - rhs_exact) / rhs_exact <= 0.10,
            "discrete rhs misses the analytic quadrature by more than 10%");
  c.finish();
}

void criterion8_flow_recovery() {
  Criterion c("8. flow recovery from a 5% jitter");
  const double r = solveDoubleBubbleRadius(1.0);
  {
    ConfigurationSpec s =
        makeSpec(ConfigKind::StandardDoubleBubble, {1.0, 1.0}, r / 12);
    s.jitter_rel = 0.05;
    s.seed = 2026;
    Cluster cl = buildStandardDoubleBubble(s, nullptr);
    FlowParams params;
    params.max_steps = 2000;
    params.convergence_residual_rel = 1e-4;
    params.volume_projection_tol = 1e-9;
    const FlowResult res = evolve(cl, params);
    const double r0 = res.trace.front().residual_rel;
    const double r1 = res.trace.back().residual_rel;
    c.note("double bubble: residual " + fmt(r0) + " -> " + fmt(r1) + " in " +
           std::to_string(res.trace.size() - 1) + " accepted steps");
    c.require(r1 <= r0 / 10.0, "residual not reduced 10x");
    for (int i = 1; i <= 2; ++i) {
      const double v = computeVolumeUnchecked(res.cluster.mesh, i);
      c.require(std::abs(v - 1.0) <= 0.005, "volume drifted beyond 0.5%");
    }
    const Classification cls = classify(res.cluster);
    c.require(cls.configuration == Configuration::StandardDoubleBubble,
              "flowed cluster not classified standard_double_bubble (" +
                  configurationName(cls.configuration) + ")");
  }
  {
    LabeledMesh m;
    icosphere(m, Vec3::Zero(), 1.0, 3, RegionPair(0, 1));
    const double v0 = computeVolume(m, 1);
    jitterMesh(m, 0.05, 7);
    Cluster cl{1, {v0}, m, toleranceProfile("default")};
    FlowParams params;
    params.max_steps = 2000;
    params.convergence_residual_rel = 1e-4;
    const FlowResult res = evolve(cl, params);
    const double bound = std::cbrt(36 * kPi * v0 * v0);
    c.note("sphere: final area " + fmt(res.trace.back().area) +
           " vs isoperimetric " + fmt(bound));
    c.require(res.trace.back().area <= 1.01 * bound,
              "final area above 1.01x the isoperimetric bound");
  }
  c.finish();
}

void criterion9_sweep() {
  Criterion c("9. classification totality over the default sweep grid");
  const fs::path dir = fs::temp_directory_path() / "bubble_acceptance_sweep";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = std::string(BUBBLE_CLI) + " sweep --out " +
                          (dir / "out").string() + " 2>/dev/null";
  const int rc = WEXITSTATUS(std::system(cmd.c_str()));
  c.require(rc == 0, "bubble sweep exited with code " + std::to_string(rc));
  std::ifstream csv(dir / "out" / "sweep.csv");
  c.require(csv.good(), "sweep.csv missing");
  std::string line;
  std::getline(csv, line);  // header
  int rows = 0;
  const std::map<std::string, std::string> pairing = {
      {"1", "disjoint_balls"},
      {"2", "ball_plus_double_bubble"},
      {"3", "lined_up_triple"},
      {"4", "standard_triple"},
  };
  while (std::getline(csv, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    bool quoted = false;
    std::string acc;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      else if (ch == ',' && !quoted) {
        cols.push_back(acc);
        acc.clear();
      } else acc += ch;
    }
    cols.push_back(acc);
    c.require(cols.back() == "pass", "row failed: " + line);
    const std::string& kind = cols[0];
    const std::string& caze = cols[cols.size() - 3];
    const std::string& config = cols[cols.size() - 2];
    if (kind == "standard_double_bubble") {
      c.require(caze == "2" && config == "standard_double_bubble",
                "double-bubble pairing broken: " + line);
    } else if (pairing.count(caze)) {
      c.require(config == pairing.at(caze),
                "case/configuration bijection broken: " + line);
    }
  }
  c.note(std::to_string(rows) + " rows");
  c.require(rows >= 42, "default grid smaller than expected");
  // unequal disjoint balls verify as stationary (the recorded Open Question)
  Cluster balls = buildDisjointBalls(
      makeSpec(ConfigKind::DisjointBalls, {1.0, 2.4, 0.5}, 0.05), nullptr);
  const auto rep = fitMultipliers(balls);
  c.note("unequal balls: residual_rel " + fmt(rep.residual_rel));
  c.require(rep.residual_rel <= 0.02,
            "unequal disjoint balls fail the stationarity residual");
  c.finish();
}

void criterion10_determinism() {
  Criterion c("10. determinism and byte-exact formats");
  const fs::path dir = fs::temp_directory_path() / "bubble_acceptance_det";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"kind":"standard_double_bubble","volumes":[1.0,1.0],)"


         << R"("resolution":0.06,"seed":9,"jitter_rel":0.03})";
  }
  {
    std::ofstream params(dir / "params.json");
    params << R"({"max_steps":40})";
  }
  auto run = [&](const std::string& sub) {
    const std::string cmd = std::string(BUBBLE_CLI) + " " + sub + " 2>/dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  auto slurp = [&](const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  const std::string spec = (dir / "spec.json").string();
  const std::string params = (dir / "params.json").string();
  run("evolve --spec " + spec + " --params " + params + " --out " +
      (dir / "a").string());
  run("evolve --spec " + spec + " --params " + params + " --out " +
      (dir / "b").string());
  c.require(slurp(dir / "a" / "final.off") == slurp(dir / "b" / "final.off"),
            "final OFF files differ between identical runs");
  c.require(slurp(dir / "a" / "trace.csv") == slurp(dir / "b" / "trace.csv"),
            "trace CSV files differ between identical runs");
  // OFF round trip byte-identical
  const std::string off1 = slurp(dir / "a" / "final.off");
  {
    LabeledMesh m = readOff((dir / "a" / "final.off").string());
    writeOff((dir / "roundtrip.off").string(), m);
  }
  c.require(off1 == slurp(dir / "roundtrip.off"),
            "OFF round trip not byte-identical");
  c.finish();
}

}  // namespace

int main() {
  criterion1_gradients();
  criterion2_sphere();
  criterion3_double_bubble();
  criterion4_standard_triple();
  criterion5_lined_up();
  criterion6_ycone();
  criterion7_heintze_karcher();
  criterion8_flow_recovery();
  criterion9_sweep();
  criterion10_determinism();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
