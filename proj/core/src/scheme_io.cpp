#include "papersurf/scheme_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace papersurf {

using nlohmann::json;

namespace {

// Unit square; bottom glued to top, right side folded, left side carries an
// infinite W with a_i = b_i = 2^-(i+3).
constexpr const char* kExample13 = R"({
  "format": 1,
  "metric": "max",
  "polygons": [{"id": "P", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}],
  "pairings": [
    {"type": "segment", "a": {"polygon": "P", "start": 0, "len": 1}, "b": {"polygon": "P", "start": 2}},
    {"type": "segment", "a": {"polygon": "P", "start": 1, "len": 0.5}, "b": {"polygon": "P", "start": 1.5}},
    {"type": "w", "polygon": "P", "side_start": 3, "side_len": 1,
     "a": {"kind": "geometric", "first": 0.125, "ratio": 2},
     "b": {"kind": "geometric", "first": 0.125, "ratio": 2}, "depth": 24}
  ]
})";

constexpr const char* kTorus = R"({
  "format": 1,
  "metric": "euclidean",
  "polygons": [{"id": "P", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}],
  "pairings": [
    {"type": "segment", "a": {"polygon": "P", "start": 0, "len": 1}, "b": {"polygon": "P", "start": 2}},
    {"type": "segment", "a": {"polygon": "P", "start": 1, "len": 1}, "b": {"polygon": "P", "start": 3}}
  ]
})";

// Folds of lengths 1/2, 1/4, ... run from (1,1) over the top and left sides
// and, mirrored, from (1,1) down the right side and along the bottom. Every
// fold endpoint lands in one class accumulating at (0,0).
constexpr const char* kTightHorseshoe = R"({
  "format": 1,
  "metric": "max",
  "polygons": [{"id": "P", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}],
  "pairings": [
    {"type": "w", "polygon": "P", "side_start": 2, "side_len": 2,
     "a": {"kind": "list", "values": []},
     "b": {"kind": "geometric", "first": 0.5, "ratio": 2}, "depth": 24},
    {"type": "w", "polygon": "P", "side_start": 0, "side_len": 2,
     "a": {"kind": "list", "values": []},
     "b": {"kind": "geometric", "first": 0.5, "ratio": 2}, "depth": 24, "reversed": true}
  ]
})";

// Four unit squares in a row, joined by translations between neighbours.
constexpr const char* kFourRectangle = R"({
  "format": 1,
  "metric": "max",
  "polygons": [
    {"id": "R0", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
    {"id": "R1", "vertices": [[2, 0], [3, 0], [3, 1], [2, 1]]},
    {"id": "R2", "vertices": [[4, 0], [5, 0], [5, 1], [4, 1]]},
    {"id": "R3", "vertices": [[6, 0], [7, 0], [7, 1], [6, 1]]}
  ],
  "pairings": [
    {"type": "segment", "a": {"polygon": "R0", "start": 1, "len": 1}, "b": {"polygon": "R1", "start": 3}},
    {"type": "segment", "a": {"polygon": "R1", "start": 1, "len": 1}, "b": {"polygon": "R2", "start": 3}},
    {"type": "segment", "a": {"polygon": "R2", "start": 1, "len": 1}, "b": {"polygon": "R3", "start": 3}},
    {"type": "segment", "a": {"polygon": "R0", "start": 0, "len": 1}, "b": {"polygon": "R0", "start": 2}},
    {"type": "segment", "a": {"polygon": "R2", "start": 0, "len": 1}, "b": {"polygon": "R2", "start": 2}},
    {"type": "segment", "a": {"polygon": "R3", "start": 0, "len": 1}, "b": {"polygon": "R3", "start": 2}},
    {"type": "segment", "a": {"polygon": "R1", "start": 0, "len": 0.5}, "b": {"polygon": "R1", "start": 0.5}},
    {"type": "segment", "a": {"polygon": "R1", "start": 2, "len": 0.5}, "b": {"polygon": "R1", "start": 2.5}},
    {"type": "segment", "a": {"polygon": "R3", "start": 1, "len": 0.5}, "b": {"polygon": "R3", "start": 1.5}},
    {"type": "w", "polygon": "R0", "side_start": 3, "side_len": 1,
     "a": {"kind": "geometric", "first": 0.125, "ratio": 2},
     "b": {"kind": "geometric", "first": 0.125, "ratio": 2}, "depth": 24}
  ]
})";

// Same square as example-1.3 with a three-term W on the left side.
constexpr const char* kFiniteW = R"({
  "format": 1,
  "metric": "max",
  "polygons": [{"id": "P", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}],
  "pairings": [
    {"type": "segment", "a": {"polygon": "P", "start": 0, "len": 1}, "b": {"polygon": "P", "start": 2}},
    {"type": "segment", "a": {"polygon": "P", "start": 1, "len": 0.5}, "b": {"polygon": "P", "start": 1.5}},
    {"type": "w", "polygon": "P", "side_start": 3, "side_len": 1,
     "a": {"kind": "list", "values": [0.125, 0.0625, 0.0625]},
     "b": {"kind": "list", "values": [0.125, 0.0625, 0.0625]}}
  ]
})";

const std::map<std::string, const char*>& builtins() {
  static const std::map<std::string, const char*> table{
      {"torus", kTorus},
      {"example-1.3", kExample13},
      {"tight-horseshoe", kTightHorseshoe},
      {"four-rectangle", kFourRectangle},
      {"finite-w", kFiniteW},
  };
  return table;
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

SequenceSpec parse_sequence(const json& j, const std::string& where) {
  const std::string kind = text(j, "kind", where);
  if (kind == "geometric") return SequenceSpec::geometric_of(number(j, "first", where), number(j, "ratio", where));
  if (kind == "list") {
    const auto& vals = field(j, "values", where);
    if (!vals.is_array()) throw ParseError(where + ".values: expected an array");
    std::vector<double> v;
    for (const auto& x : vals) {
      if (!x.is_number()) throw ParseError(where + ".values: expected numbers");
      v.push_back(x.get<double>());
    }
    return SequenceSpec::list_of(std::move(v));
  }
  throw ParseError(where + ".kind: unknown sequence kind '" + kind + "'");
}

json sequence_json(const SequenceSpec& s) {
  if (s.kind == SequenceSpec::Kind::geometric) return {{"kind", "geometric"}, {"first", s.first}, {"ratio", s.ratio}};
  return {{"kind", "list"}, {"values", s.values}};
}

}  // namespace

SchemeFile parse_scheme(const std::string& source) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be an object");
  if (j.contains("format") && (!j["format"].is_number_integer() || j["format"].get<int>() != 1)) {
    throw ParseError("unsupported format version");
  }
  std::vector<std::string> warnings;
  const auto& pj = field(j, "polygons", "scheme");
  if (!pj.is_array() || pj.empty()) throw ParseError("scheme.polygons: expected a non-empty array");
  std::vector<Polygon> polygons;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string where = "polygons[" + std::to_string(i) + "]";
    const std::string id = text(pj[i], "id", where);
    const auto& vj = field(pj[i], "vertices", where);
    if (!vj.is_array()) throw ParseError(where + ".vertices: expected an array");
    std::vector<Point2> verts;
    for (const auto& v : vj) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ParseError(where + ".vertices: expected [x, y] pairs");
      }
      verts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    polygons.push_back(Polygon::create(id, std::move(verts)));
    if (polygons.back().was_reversed()) warnings.push_back("polygon '" + id + "' was clockwise; reversed");
  }
  MultiPolygon domain(std::move(polygons));
  const auto poly_index = [&](const std::string& id, const std::string& where) {
    auto idx = domain.find(id);
    if (!idx) throw DomainError(where + ": unknown polygon '" + id + "'");
    return *idx;
  };

  std::vector<SegmentPairing> basic;
  std::vector<TypeWSpec> ws;
  const auto& prs = field(j, "pairings", "scheme");
  if (!prs.is_array()) throw ParseError("scheme.pairings: expected an array");
  for (std::size_t i = 0; i < prs.size(); ++i) {
    const std::string where = "pairings[" + std::to_string(i) + "]";
    const std::string type = text(prs[i], "type", where);
    if (type == "segment") {
      const auto& a = field(prs[i], "a", where);
      const auto& b = field(prs[i], "b", where);
      SegmentPairing e;
      e.a_polygon = poly_index(text(a, "polygon", where + ".a"), where + ".a");
      e.a_start = number(a, "start", where + ".a");
      e.len = number(a, "len", where + ".a");
      e.b_polygon = poly_index(text(b, "polygon", where + ".b"), where + ".b");
      e.b_start = number(b, "start", where + ".b");
      if (!(e.len > 0.0)) throw DomainError(where + ".a.len: must be positive");
      basic.push_back(e);
    } else if (type == "w") {
      TypeWSpec w;
      w.polygon = poly_index(text(prs[i], "polygon", where), where);
      w.side_start = number(prs[i], "side_start", where);
      w.side_len = number(prs[i], "side_len", where);
      w.a = parse_sequence(field(prs[i], "a", where), where + ".a");
      w.b = parse_sequence(field(prs[i], "b", where), where + ".b");
      if (prs[i].contains("depth")) {
        if (!prs[i]["depth"].is_number_integer() || prs[i]["depth"].get<long long>() < 1) {
          throw ParseError(where + ".depth: expected a positive integer");
        }
        w.depth = prs[i]["depth"].get<std::size_t>();
      }
      if (prs[i].contains("reversed")) {
        if (!prs[i]["reversed"].is_boolean()) throw ParseError(where + ".reversed: expected a boolean");
        w.reversed = prs[i]["reversed"].get<bool>();
      }
      ws.push_back(std::move(w));
    } else {
      throw ParseError(where + ".type: unknown pairing type '" + type + "'");
    }
  }
  Metric metric = Metric::max;
  if (j.contains("metric")) {
    if (!j["metric"].is_string()) throw ParseError("scheme.metric: expected a string");
    try {
      metric = metric_from_string(j["metric"].get<std::string>());
    } catch (const DomainError& e) {
      throw ParseError(std::string("scheme.metric: ") + e.what());
    }
  }
  std::optional<std::uint64_t> seed;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError("scheme.seed: expected a non-negative integer");
    seed = j["seed"].get<std::uint64_t>();
  }
  return SchemeFile{PairingScheme(std::move(domain), std::move(basic), std::move(ws)), metric, seed,
                    std::move(warnings)};
}

SchemeFile load_scheme(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scheme(ss.str());
}

std::string serialize_scheme(const PairingScheme& scheme, Metric metric, std::optional<std::uint64_t> seed) {
  json j;
  j["format"] = 1;
  j["metric"] = to_string(metric);
  json polys = json::array();
  for (const auto& p : scheme.domain().polygons()) {
    json verts = json::array();
    for (const auto& v : p.vertices()) verts.push_back({v.x, v.y});
    polys.push_back({{"id", p.id()}, {"vertices", verts}});
  }
  j["polygons"] = polys;
  const auto id = [&](std::size_t i) { return scheme.polygon(i).id(); };
  json prs = json::array();
  for (const auto& e : scheme.basic()) {
    prs.push_back({{"type", "segment"},
                   {"a", {{"polygon", id(e.a_polygon)}, {"start", e.a_start}, {"len", e.len}}},
                   {"b", {{"polygon", id(e.b_polygon)}, {"start", e.b_start}}}});
  }
  for (const auto& w : scheme.w_specs()) {
    json wj{{"type", "w"},
            {"polygon", id(w.polygon)},
            {"side_start", w.side_start},
            {"side_len", w.side_len},
            {"a", sequence_json(w.a)},
            {"b", sequence_json(w.b)},
            {"depth", w.depth}};
    if (w.reversed) wj["reversed"] = true;
    prs.push_back(wj);
  }
  j["pairings"] = prs;
  if (seed) j["seed"] = *seed;
  return j.dump(2);
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, src] : builtins()) out.push_back(name);
  return out;
}

std::string builtin_source(const std::string& name) {
  auto it = builtins().find(name);
  if (it == builtins().end()) throw DomainError("unknown builtin scheme '" + name + "'");
  return it->second;
}

PairingScheme builtin_scheme(const std::string& name) { return parse_scheme(builtin_source(name)).scheme; }

SchemeFile load_scheme_or_builtin(const std::string& spec) {
  if (builtins().count(spec)) return parse_scheme(builtin_source(spec));
  return load_scheme(spec);
}

}  // namespace papersurf
