#include <set>

#include <nlohmann/json.hpp>

#include "bubbles/catalogue.hpp"

namespace bubbles {

using nlohmann::json;

namespace {

void rejectUnknownKeys(const json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw FormatError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

Vec3 parseVec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) {
    throw FormatError(where + " must be an array of three numbers");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Placement parsePlacement(const json& j, ConfigKind kind) {
  rejectUnknownKeys(j,
                    {"translate", "rotate_axis", "rotate_deg", "tangent",
                     "centers", "direction", "gap"},
                    "placement");
  Placement p;
  if (j.contains("translate")) p.translate = parseVec3(j["translate"], "translate");
  if (j.contains("rotate_axis")) {
    p.rotate_axis = parseVec3(j["rotate_axis"], "rotate_axis");
  }
  if (j.contains("rotate_deg")) p.rotate_deg = j["rotate_deg"].get<double>();
  if (j.contains("tangent")) {
    if (kind != ConfigKind::DisjointBalls) {
      throw FormatError("placement.tangent only applies to disjoint_balls");
    }
    p.tangent = j["tangent"].get<bool>();
  }
  if (j.contains("centers")) {
    if (kind != ConfigKind::DisjointBalls) {
      throw FormatError("placement.centers only applies to disjoint_balls");
    }
    std::vector<Vec3> cs;
    for (const auto& c : j["centers"]) cs.push_back(parseVec3(c, "centers[i]"));
    p.centers = std::move(cs);
  }
  if (j.contains("direction")) {
    if (kind != ConfigKind::BallPlusDoubleBubble) {
      throw FormatError("placement.direction only applies to ball_plus_double_bubble");
    }
    p.direction = parseVec3(j["direction"], "direction");
  }
  if (j.contains("gap")) {
    if (kind != ConfigKind::BallPlusDoubleBubble) {
      throw FormatError("placement.gap only applies to ball_plus_double_bubble");
    }
    p.gap = j["gap"].get<double>();
    if (p.gap < 0) throw FormatError("placement.gap must be >= 0");
  }
  return p;
}

}  // namespace

ConfigurationSpec parseConfigurationSpec(const json& j) {
  if (!j.is_object()) throw FormatError("configuration spec must be an object");
  rejectUnknownKeys(j,
                    {"kind", "volumes", "resolution", "seed", "placement",
                     "branch", "opening_deg", "jitter_rel"},
                    "configuration spec");
  for (const char* req : {"kind", "volumes", "resolution"}) {
    if (!j.contains(req)) {
      throw FormatError(std::string("missing required key '") + req + "'");
    }
  }
  ConfigurationSpec spec;
  spec.kind = kindFromName(j["kind"].get<std::string>());
  if (!j["volumes"].is_array() || j["volumes"].empty()) {
    throw FormatError("volumes must be a non-empty array");
  }
  for (const auto& v : j["volumes"]) {
    spec.volumes.push_back(v.get<double>());
  }
  spec.resolution = j["resolution"].get<double>();
  if (!(spec.resolution > 0)) throw FormatError("resolution must be positive");
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("branch")) {
    if (spec.kind != ConfigKind::LinedUpTriple) {
      throw FormatError("branch only applies to lined_up_triple");
    }
    const std::string b = j["branch"].get<std::string>();
    if (b == "non_parallel") spec.branch = LinedUpBranch::NonParallel;
    else if (b == "parallel") spec.branch = LinedUpBranch::Parallel;
    else if (b == "point_contact") spec.branch = LinedUpBranch::PointContact;
    else if (b == "auto") spec.branch = LinedUpBranch::Auto;
    else throw FormatError("unknown branch: " + b);
  }
  if (j.contains("opening_deg")) {
    if (spec.kind != ConfigKind::LinedUpTriple) {
      throw FormatError("opening_deg only applies to lined_up_triple");
    }
    spec.opening_deg = j["opening_deg"].get<double>();
  }
  if (j.contains("jitter_rel")) {
    spec.jitter_rel = j["jitter_rel"].get<double>();
    if (spec.jitter_rel < 0) throw FormatError("jitter_rel must be >= 0");
  }
  if (j.contains("placement")) {
    spec.placement = parsePlacement(j["placement"], spec.kind);
  }
  // volume count per kind
  const std::size_t n = spec.volumes.size();
  switch (spec.kind) {
    case ConfigKind::DisjointBalls:
      if (n < 1 || n > 3) throw FormatError("disjoint_balls takes 1-3 volumes");
      break;
    case ConfigKind::StandardDoubleBubble:
      if (n != 2) throw FormatError("standard_double_bubble takes 2 volumes");
      break;
    default:
      if (n != 3) throw FormatError(kindName(spec.kind) + " takes 3 volumes");
  }
  return spec;
}

nlohmann::ordered_json configurationSpecToJson(const ConfigurationSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = kindName(spec.kind);
  j["volumes"] = spec.volumes;
  j["resolution"] = spec.resolution;
  j["seed"] = spec.seed;
  if (spec.branch != LinedUpBranch::Auto) j["branch"] = branchName(spec.branch);
  if (spec.opening_deg) j["opening_deg"] = *spec.opening_deg;
  if (spec.jitter_rel > 0) j["jitter_rel"] = spec.jitter_rel;
  return j;
}

nlohmann::ordered_json BuildReport::toJson() const {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["branch"] = branch;
  j["r"] = r;
  j["lambda"] = lambda;
  j["target_volumes"] = target_volumes;
  j["achieved_volumes"] = achieved_volumes;
  j["vertices"] = vertices;
  j["faces"] = faces;
  if (middle_lambda != 0) {
    j["middle_lambda"] = middle_lambda;
    j["middle_shape"] = middle_shape;
  }
  if (wedge_opening_deg != 0) j["wedge_opening_deg"] = wedge_opening_deg;
  return j;
}

}  // namespace bubbles
