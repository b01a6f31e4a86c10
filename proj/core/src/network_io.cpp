#include "dalnet/network_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dalnet/error.hpp"

namespace dalnet {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(Errc::ParseError, where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw Error(Errc::ParseError, "unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T required(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw Error(Errc::ParseError, std::string("missing key '") + key + "' in " + where);
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad value for '") + key + "' in " + where + ": " + e.what());
  }
}

}  // namespace

NetworkSpec parse_network_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  reject_unknown_keys(doc, {"root", "vertices", "segments"}, "network");

  NetworkSpec spec;
  if (doc.contains("root") && !doc["root"].is_null()) spec.root = required<VertexId>(doc, "root", "network");

  if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw Error(Errc::ParseError, "network needs a 'vertices' array");
  }
  for (const auto& v : doc["vertices"]) {
    reject_unknown_keys(v, {"id", "coords"}, "vertex");
    VertexSpec vs;
    vs.id = required<VertexId>(v, "id", "vertex");
    if (v.contains("coords") && !v["coords"].is_null()) {
      vs.coords = required<std::vector<double>>(v, "coords", "vertex " + std::to_string(vs.id));
    }
    spec.vertices.push_back(std::move(vs));
  }

  if (!doc.contains("segments") || !doc["segments"].is_array()) {
    throw Error(Errc::ParseError, "network needs a 'segments' array");
  }
  for (const auto& s : doc["segments"]) {
    reject_unknown_keys(s, {"id", "from", "to", "length"}, "segment");
    SegmentSpec ss;
    ss.id = required<SegmentId>(s, "id", "segment");
    const std::string where = "segment " + std::to_string(ss.id);
    ss.from = required<VertexId>(s, "from", where);
    ss.to = required<VertexId>(s, "to", where);
    if (s.contains("length") && !s["length"].is_null()) ss.length = required<double>(s, "length", where);
    spec.segments.push_back(ss);
  }
  return spec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path.string());
  out << text;
}

NetworkSpec read_network_spec(const std::filesystem::path& path) {
  return parse_network_json(read_text_file(path));
}

Network read_network(const std::filesystem::path& path) { return Network::build(read_network_spec(path)); }

std::string network_to_json(const Network& net) {
  const NetworkSpec spec = net.to_spec();
  json doc;
  doc["root"] = spec.root ? json(*spec.root) : json(nullptr);
  doc["vertices"] = json::array();
  for (const auto& v : spec.vertices) {
    json jv{{"id", v.id}};
    if (v.coords) jv["coords"] = *v.coords;
    doc["vertices"].push_back(std::move(jv));
  }
  doc["segments"] = json::array();
  for (const auto& s : spec.segments) {
    doc["segments"].push_back({{"id", s.id}, {"from", s.from}, {"to", s.to}, {"length", *s.length}});
  }
  return doc.dump(2) + "\n";
}

void write_network(const Network& net, const std::filesystem::path& path) {
  write_text_file(path, network_to_json(net));
}

}  // namespace dalnet
