#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homolink/grid.hpp"
#include "homolink/planner.hpp"
#include "homolink/quotient.hpp"
#include "homolink/samplers.hpp"

namespace homolink {

/// Syntax error with the position resolved to line/column.
class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(std::string msg, int line, int column)
      : std::runtime_error("scenario syntax error at line " +
                           std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// Semantic error naming the offending field path.
class ScenarioFieldError : public std::runtime_error {
 public:
  ScenarioFieldError(std::string field, const std::string& msg)
      : std::runtime_error("scenario field '" + field + "': " + msg),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Tolerances {
  double eps_int = 0.05;
  double eps_key = 0.5;
  double eps_sing = 1e-6;
  double eps_q = 0.05;
};

/// One skeleton or candidate entry: a preset with parameters, or an external
/// mesh file. Axis numbers are 1-based.
struct GeometrySpec {
  std::string label;
  std::string type;  // point | polyline-loop | sphere | torus | mesh
  Vec at;                       // point
  std::vector<Vec> points;      // polyline-loop
  bool closed = true;           // polyline-loop
  double radius = 1.0;          // sphere
  double r = 0.0, R = 0.0;      // torus
  std::array<int, 2> res{16, 32};
  std::array<int, 3> axes{1, 2, 3};
  Vec offset;                   // empty = origin
  int orientation = +1;
  std::string file;             // mesh
};

struct GridSpec {
  Vec min, max;
  std::vector<int> res;
  std::vector<Box> blocked;
};

struct ModeSpec {
  std::string type = "enumerate";  // enumerate | target
  int k = 1;
  std::vector<double> target;
};

struct SubspaceConfig {
  std::vector<Box> boxes;
  std::vector<std::vector<Vec>> generators;
  bool auto_generators = true;
  double eps_w_scale = 1e-6;
};

struct Scenario {
  int version = 1;
  int D = 0;
  int N = 0;
  std::vector<GeometrySpec> skeletons;
  std::vector<GeometrySpec> candidates;
  std::optional<GridSpec> grid;
  Vec start, goal;
  bool has_endpoints = false;
  ModeSpec mode;
  std::optional<SubspaceConfig> subspace;
  Tolerances tol;
  int quad_order = 4;
  int quad_depth = 12;
  double quad_split_ratio = 0.5;
  int threads = 0;
  unsigned seed = 0;

  QuadConfig quad_config() const {
    QuadConfig q;
    q.order = quad_order;
    q.max_depth = quad_depth;
    q.split_ratio = quad_split_ratio;
    q.eps_sing = tol.eps_sing;
    return q;
  }
  EngineConfig engine_config(EngineStats* stats = nullptr) const {
    EngineConfig cfg;
    cfg.quad = quad_config();
    cfg.threads = threads;
    cfg.stats = stats;
    return cfg;
  }
};

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ScenarioFieldError(path.empty() ? key : path + "." + key,
                               "unknown key");
}

inline Vec parse_vec(const json& arr, const std::string& path,
                     int expect_dim = -1) {
  if (!arr.is_array())
    throw ScenarioFieldError(path, "expected an array of numbers");
  if (expect_dim >= 0 && static_cast<int>(arr.size()) != expect_dim)
    throw ScenarioFieldError(
        path, "expected " + std::to_string(expect_dim) + " numbers");
  if (static_cast<int>(arr.size()) > kMaxDim)
    throw ScenarioFieldError(path, "dimension exceeds the supported maximum");
  Vec v(static_cast<int>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw ScenarioFieldError(path, "expected numbers");
    v[static_cast<int>(i)] = arr[i].get<double>();
  }
  return v;
}

inline Box parse_box(const json& obj, const std::string& path, int D) {
  reject_unknown_keys(obj, path, {"min", "max"});
  if (!obj.contains("min") || !obj.contains("max"))
    throw ScenarioFieldError(path, "box needs 'min' and 'max'");
  Box b{parse_vec(obj["min"], path + ".min", D),
        parse_vec(obj["max"], path + ".max", D)};
  for (int d = 0; d < D; ++d)
    if (!(b.min[d] <= b.max[d]))
      throw ScenarioFieldError(path, "box min exceeds max");
  return b;
}

inline GeometrySpec parse_geometry(const json& obj, const std::string& path,
                                   int D, int expected_dim) {
  reject_unknown_keys(obj, path,
                      {"label", "type", "at", "points", "closed", "radius",
                       "r", "R", "res", "axes", "offset", "orientation",
                       "file"});
  GeometrySpec g;
  if (!obj.contains("type"))
    throw ScenarioFieldError(path + ".type", "missing");
  g.type = obj["type"].get<std::string>();
  g.label = obj.value("label", g.type);
  g.orientation = obj.value("orientation", 1);
  if (g.orientation != 1 && g.orientation != -1)
    throw ScenarioFieldError(path + ".orientation", "must be +1 or -1");

  int intrinsic = -1;
  if (g.type == "point") {
    if (!obj.contains("at")) throw ScenarioFieldError(path + ".at", "missing");
    g.at = parse_vec(obj["at"], path + ".at", D);
    intrinsic = 0;
  } else if (g.type == "polyline-loop") {
    if (!obj.contains("points"))
      throw ScenarioFieldError(path + ".points", "missing");
    for (std::size_t i = 0; i < obj["points"].size(); ++i)
      g.points.push_back(parse_vec(obj["points"][i],
                                   path + ".points[" + std::to_string(i) + "]",
                                   D));
    g.closed = obj.value("closed", true);
    intrinsic = 1;
  } else if (g.type == "sphere" || g.type == "torus") {
    if (g.type == "sphere") {
      g.radius = obj.value("radius", 1.0);
    } else {
      if (!obj.contains("r") || !obj.contains("R"))
        throw ScenarioFieldError(path, "torus needs 'r' and 'R'");
      g.r = obj["r"].get<double>();
      g.R = obj["R"].get<double>();
    }
    if (obj.contains("res")) {
      if (!obj["res"].is_array() || obj["res"].size() != 2)
        throw ScenarioFieldError(path + ".res", "expected [n1, n2]");
      g.res = {obj["res"][0].get<int>(), obj["res"][1].get<int>()};
    }
    if (obj.contains("axes")) {
      if (!obj["axes"].is_array() || obj["axes"].size() != 3)
        throw ScenarioFieldError(path + ".axes", "expected three axis numbers");
      for (int i = 0; i < 3; ++i) {
        g.axes[i] = obj["axes"][i].get<int>();
        if (g.axes[i] < 1 || g.axes[i] > D)
          throw ScenarioFieldError(path + ".axes", "axis out of range");
      }
    } else if (g.type == "torus") {
      g.axes = D >= 5 ? std::array<int, 3>{3, 4, 5} : std::array<int, 3>{1, 2, 3};
    }
    if (obj.contains("offset"))
      g.offset = parse_vec(obj["offset"], path + ".offset", D);
    intrinsic = 2;
  } else if (g.type == "mesh") {
    if (!obj.contains("file"))
      throw ScenarioFieldError(path + ".file", "missing");
    g.file = obj["file"].get<std::string>();
    intrinsic = -1;  // checked when the file is loaded
  } else {
    throw ScenarioFieldError(path + ".type", "unknown preset '" + g.type + "'");
  }

  if (intrinsic >= 0 && expected_dim >= 0 && intrinsic != expected_dim)
    throw ScenarioFieldError(
        path, "preset '" + g.type + "' builds a " + std::to_string(intrinsic) +
                  "-chain, but the scenario requires dimension " +
                  std::to_string(expected_dim));
  return g;
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // resolve byte offset to line/column
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ScenarioParseError(e.what(), line, col);
  }
  if (!root.is_object())
    throw ScenarioFieldError("", "scenario must be a JSON object");
  detail::reject_unknown_keys(
      root, "",
      {"version", "D", "N", "skeletons", "candidates", "grid", "start",
       "goal", "mode", "subspace", "tolerances", "quadrature", "threads",
       "seed"});

  Scenario s;
  s.version = root.value("version", 1);
  if (!root.contains("D")) throw ScenarioFieldError("D", "missing");
  if (!root.contains("N")) throw ScenarioFieldError("N", "missing");
  s.D = root["D"].get<int>();
  s.N = root["N"].get<int>();
  if (s.D < 2 || s.D > kMaxDim)
    throw ScenarioFieldError("D", "must be in [2, " +
                                      std::to_string(kMaxDim) + "]");
  if (s.N < 2 || s.N > s.D)
    throw ScenarioFieldError("N", "must be in [2, D]");

  const int skel_dim = s.D - s.N;
  const int cand_dim = s.N - 1;
  if (root.contains("skeletons")) {
    const auto& arr = root["skeletons"];
    for (std::size_t i = 0; i < arr.size(); ++i)
      s.skeletons.push_back(detail::parse_geometry(
          arr[i], "skeletons[" + std::to_string(i) + "]", s.D, skel_dim));
  }
  if (root.contains("candidates")) {
    const auto& arr = root["candidates"];
    for (std::size_t i = 0; i < arr.size(); ++i)
      s.candidates.push_back(detail::parse_geometry(
          arr[i], "candidates[" + std::to_string(i) + "]", s.D, cand_dim));
  }

  if (root.contains("grid")) {
    const auto& g = root["grid"];
    detail::reject_unknown_keys(g, "grid", {"min", "max", "res", "blocked"});
    GridSpec spec;
    if (!g.contains("min") || !g.contains("max") || !g.contains("res"))
      throw ScenarioFieldError("grid", "needs 'min', 'max' and 'res'");
    spec.min = detail::parse_vec(g["min"], "grid.min", s.D);
    spec.max = detail::parse_vec(g["max"], "grid.max", s.D);
    if (!g["res"].is_array() || static_cast<int>(g["res"].size()) != s.D)
      throw ScenarioFieldError("grid.res", "expected D integers");
    for (const auto& v : g["res"]) spec.res.push_back(v.get<int>());
    if (g.contains("blocked")) {
      const auto& blocked = g["blocked"];
      for (std::size_t i = 0; i < blocked.size(); ++i)
        spec.blocked.push_back(detail::parse_box(
            blocked[i], "grid.blocked[" + std::to_string(i) + "]", s.D));
    }
    s.grid = std::move(spec);
  }

  if (root.contains("start") || root.contains("goal")) {
    if (!root.contains("start") || !root.contains("goal"))
      throw ScenarioFieldError("start", "start and goal must come together");
    s.start = detail::parse_vec(root["start"], "start", s.D);
    s.goal = detail::parse_vec(root["goal"], "goal", s.D);
    s.has_endpoints = true;
  }

  if (root.contains("mode")) {
    const auto& m = root["mode"];
    detail::reject_unknown_keys(m, "mode", {"type", "k", "signature"});
    s.mode.type = m.value("type", std::string("enumerate"));
    if (s.mode.type == "enumerate") {
      s.mode.k = m.value("k", 1);
      if (s.mode.k < 1) throw ScenarioFieldError("mode.k", "must be >= 1");
    } else if (s.mode.type == "target") {
      if (!m.contains("signature"))
        throw ScenarioFieldError("mode.signature", "missing");
      for (const auto& v : m["signature"])
        s.mode.target.push_back(v.get<double>());
    } else {
      throw ScenarioFieldError("mode.type", "must be enumerate or target");
    }
  }

  if (root.contains("subspace")) {
    const auto& sub = root["subspace"];
    detail::reject_unknown_keys(
        sub, "subspace",
        {"boxes", "generators", "auto_generators", "eps_w_scale"});
    SubspaceConfig cfg;
    if (sub.contains("boxes"))
      for (std::size_t i = 0; i < sub["boxes"].size(); ++i)
        cfg.boxes.push_back(detail::parse_box(
            sub["boxes"][i], "subspace.boxes[" + std::to_string(i) + "]",
            s.D));
    if (sub.contains("generators")) {
      for (std::size_t i = 0; i < sub["generators"].size(); ++i) {
        std::vector<Vec> loop;
        const auto& pts = sub["generators"][i];
        for (std::size_t p = 0; p < pts.size(); ++p)
          loop.push_back(detail::parse_vec(
              pts[p],
              "subspace.generators[" + std::to_string(i) + "][" +
                  std::to_string(p) + "]",
              s.D));
        cfg.generators.push_back(std::move(loop));
      }
      cfg.auto_generators = false;
    }
    cfg.auto_generators = sub.value("auto_generators", cfg.auto_generators);
    cfg.eps_w_scale = sub.value("eps_w_scale", 1e-6);
    s.subspace = std::move(cfg);
  }

  if (root.contains("tolerances")) {
    const auto& t = root["tolerances"];
    detail::reject_unknown_keys(t, "tolerances",
                                {"eps_int", "eps_key", "eps_sing", "eps_q"});
    s.tol.eps_int = t.value("eps_int", 0.05);
    s.tol.eps_key = t.value("eps_key", 10.0 * s.tol.eps_int);
    s.tol.eps_sing = t.value("eps_sing", 1e-6);
    s.tol.eps_q = t.value("eps_q", 0.05);
  }
  if (root.contains("quadrature")) {
    const auto& q = root["quadrature"];
    detail::reject_unknown_keys(q, "quadrature",
                                {"order", "max_depth", "split_ratio"});
    s.quad_order = q.value("order", 4);
    s.quad_depth = q.value("max_depth", 12);
    s.quad_split_ratio = q.value("split_ratio", 0.5);
  }
  s.threads = root.value("threads", 0);
  s.seed = root.value("seed", 0u);
  s.quad_config().validate();
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization back to canonical JSON (defaults spelled out, keys ordered).
// ---------------------------------------------------------------------------

namespace detail {

inline json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (int i = 0; i < v.dim(); ++i) arr.push_back(v[i]);
  return arr;
}

inline json geometry_to_json(const GeometrySpec& g, int D) {
  json o;
  o["label"] = g.label;
  o["type"] = g.type;
  if (g.type == "point") o["at"] = vec_to_json(g.at);
  if (g.type == "polyline-loop") {
    json pts = json::array();
    for (const Vec& p : g.points) pts.push_back(vec_to_json(p));
    o["points"] = pts;
    o["closed"] = g.closed;
  }
  if (g.type == "sphere") o["radius"] = g.radius;
  if (g.type == "torus") {
    o["r"] = g.r;
    o["R"] = g.R;
  }
  if (g.type == "sphere" || g.type == "torus") {
    o["res"] = json::array({g.res[0], g.res[1]});
    o["axes"] = json::array({g.axes[0], g.axes[1], g.axes[2]});
    o["offset"] = vec_to_json(g.offset.dim() == D ? g.offset : Vec(D));
  }
  if (g.type == "mesh") o["file"] = g.file;
  o["orientation"] = g.orientation;
  return o;
}

}  // namespace detail

inline std::string serialize_scenario(const Scenario& s) {
  using detail::json;
  json root;
  root["version"] = s.version;
  root["D"] = s.D;
  root["N"] = s.N;
  json skels = json::array();
  for (const auto& g : s.skeletons)
    skels.push_back(detail::geometry_to_json(g, s.D));
  root["skeletons"] = skels;
  json cands = json::array();
  for (const auto& g : s.candidates)
    cands.push_back(detail::geometry_to_json(g, s.D));
  root["candidates"] = cands;
  if (s.grid) {
    json g;
    g["min"] = detail::vec_to_json(s.grid->min);
    g["max"] = detail::vec_to_json(s.grid->max);
    g["res"] = s.grid->res;
    json blocked = json::array();
    for (const Box& b : s.grid->blocked)
      blocked.push_back(json{{"min", detail::vec_to_json(b.min)},
                             {"max", detail::vec_to_json(b.max)}});
    g["blocked"] = blocked;
    root["grid"] = g;
  }
  if (s.has_endpoints) {
    root["start"] = detail::vec_to_json(s.start);
    root["goal"] = detail::vec_to_json(s.goal);
  }
  if (s.mode.type == "enumerate")
    root["mode"] = detail::json{{"type", "enumerate"}, {"k", s.mode.k}};
  else
    root["mode"] =
        detail::json{{"type", "target"}, {"signature", s.mode.target}};
  if (s.subspace) {
    json sub;
    json boxes = json::array();
    for (const Box& b : s.subspace->boxes)
      boxes.push_back(json{{"min", detail::vec_to_json(b.min)},
                           {"max", detail::vec_to_json(b.max)}});
    sub["boxes"] = boxes;
    json gens = json::array();
    for (const auto& loop : s.subspace->generators) {
      json pts = json::array();
      for (const Vec& p : loop) pts.push_back(detail::vec_to_json(p));
      gens.push_back(pts);
    }
    sub["generators"] = gens;
    sub["auto_generators"] = s.subspace->auto_generators;
    sub["eps_w_scale"] = s.subspace->eps_w_scale;
    root["subspace"] = sub;
  }
  root["tolerances"] = detail::json{{"eps_int", s.tol.eps_int},
                                    {"eps_key", s.tol.eps_key},
                                    {"eps_sing", s.tol.eps_sing},
                                    {"eps_q", s.tol.eps_q}};
  root["quadrature"] = detail::json{{"order", s.quad_order},
                                    {"max_depth", s.quad_depth},
                                    {"split_ratio", s.quad_split_ratio}};
  root["threads"] = s.threads;
  root["seed"] = s.seed;
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Instantiation
// ---------------------------------------------------------------------------

/// Build the chain described by a geometry entry. `base_dir` resolves mesh
/// file references.
inline Chain build_geometry(const GeometrySpec& g, int D,
                            const std::string& base_dir = ".") {
  if (g.type == "point") return make_point_chain(g.at, g.orientation);
  if (g.type == "polyline-loop")
    return sample_polyline_loop(g.points, g.closed, g.orientation);
  if (g.type == "sphere")
    return sample_sphere(g.radius, D, g.axes,
                         g.offset.dim() == D ? g.offset : Vec(D), g.res[0],
                         g.res[1], g.orientation);
  if (g.type == "torus")
    return sample_torus(g.r, g.R, D, g.axes,
                        g.offset.dim() == D ? g.offset : Vec(D), g.res[0],
                        g.res[1], g.orientation);
  if (g.type == "mesh") {
    const std::string path =
        g.file.starts_with("/") ? g.file : base_dir + "/" + g.file;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);
    Chain c = read_mesh(in);
    if (g.orientation == -1) c = c.negated();
    return c;
  }
  throw ScenarioFieldError("type", "unknown preset '" + g.type + "'");
}

/// Instantiate all skeletons; verifies chain dimensions against D - N.
inline SkeletonSet build_skeleton_set(const Scenario& s,
                                      const std::string& base_dir = ".") {
  SkeletonSet set;
  for (const auto& g : s.skeletons) {
    Chain c = build_geometry(g, s.D, base_dir);
    if (!c.empty() && c.dim() != s.D - s.N)
      throw ScenarioFieldError(
          "skeletons", "'" + g.label + "' has dimension " +
                           std::to_string(c.dim()) + ", expected D - N = " +
                           std::to_string(s.D - s.N));
    if (!c.empty() && c.ambient_dim() != s.D)
      throw ScenarioFieldError("skeletons",
                               "'" + g.label + "' is not embedded in R^D");
    set.skeletons.push_back(std::move(c));
    set.labels.push_back(g.label);
  }
  return set;
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct CandidateResult {
  std::string label;
  Signature signature;
};

struct ResultBundle {
  std::vector<std::string> skeleton_labels;
  std::vector<CandidateResult> signatures;  // invariant mode
  std::vector<ClassResult> classes;         // plan modes
  std::vector<std::vector<Vec>> class_positions;
  std::uint64_t expansions = 0;
  std::uint64_t quadrature_leaf_pairs = 0;
  std::uint64_t quadrature_subdivisions = 0;
  bool budget_exhausted = false;
};

inline std::string serialize_results(const ResultBundle& r) {
  using detail::json;
  json root;
  root["version"] = 1;
  root["skeletons"] = r.skeleton_labels;
  json sigs = json::array();
  for (const auto& cr : r.signatures) {
    json o;
    o["candidate"] = cr.label;
    o["signature"] = cr.signature.values;
    json rounded = json::array();
    for (double v : cr.signature.values)
      rounded.push_back(static_cast<long long>(std::llround(v)));
    o["rounded"] = rounded;
    sigs.push_back(o);
  }
  root["signatures"] = sigs;
  json classes = json::array();
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& cls = r.classes[i];
    json o;
    o["rank"] = cls.rank;
    o["signature"] = cls.signature.values;
    o["raw_signature"] = cls.raw_signature.values;
    o["cost"] = cls.cost;
    json path = json::array();
    if (i < r.class_positions.size())
      for (const Vec& p : r.class_positions[i])
        path.push_back(detail::vec_to_json(p));
    o["path"] = path;
    classes.push_back(o);
  }
  root["classes"] = classes;
  root["diagnostics"] =
      json{{"expansions", r.expansions},
           {"quadrature_leaf_pairs", r.quadrature_leaf_pairs},
           {"quadrature_subdivisions", r.quadrature_subdivisions},
           {"budget_exhausted", r.budget_exhausted}};
  return root.dump(2) + "\n";
}

/// One row per path vertex: class rank, sequence number, coordinates.
inline std::string paths_to_csv(const ResultBundle& r) {
  std::ostringstream os;
  os << "class,seq";
  const int D = r.class_positions.empty() || r.class_positions[0].empty()
                    ? 0
                    : r.class_positions[0][0].dim();
  for (int d = 1; d <= D; ++d) os << ",x" << d;
  os << "\n";
  char buf[64];
  for (std::size_t i = 0; i < r.class_positions.size(); ++i) {
    for (std::size_t s = 0; s < r.class_positions[i].size(); ++s) {
      os << r.classes[i].rank << ',' << s;
      for (int d = 0; d < D; ++d) {
        std::snprintf(buf, sizeof buf, "%.17g", r.class_positions[i][s][d]);
        os << ',' << buf;
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace homolink
