#include <fstream>
#include <sstream>

#include "weylns/config_io.hpp"
#include "weylns/error.hpp"

namespace weylns {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, "config: " + where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) bad(where, std::string("missing '") + key + "'");
  return obj.at(key);
}

Int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where, "expected an integer");
  return v.get<Int>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

} // namespace

SurfaceConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
  if (!doc.is_object()) bad("$", "expected an object");
  for (const auto& [key, value] : doc.items())
    if (key != "fibers" && key != "sections" && key != "mordell_weil") bad("$", "unknown key '" + key + "'");

  const auto& fibers_json = field(doc, "fibers", "$");
  if (!fibers_json.is_array()) bad("$.fibers", "expected an array");
  std::vector<FiberSpec> fibers;
  for (std::size_t i = 0; i < fibers_json.size(); ++i) {
    const std::string where = "$.fibers[" + std::to_string(i) + "]";
    const auto& f = fibers_json[i];
    if (!f.is_object()) bad(where, "expected an object");
    fibers.push_back({text(field(f, "name", where), where + ".name"),
                      static_cast<int>(integer(field(f, "n", where), where + ".n"))});
  }

  std::vector<SectionSpec> sections;
  if (doc.contains("sections")) {
    const auto& sj = doc["sections"];
    if (!sj.is_array()) bad("$.sections", "expected an array");
    for (std::size_t i = 0; i < sj.size(); ++i) {
      const std::string where = "$.sections[" + std::to_string(i) + "]";
      const auto& s = sj[i];
      if (!s.is_object()) bad(where, "expected an object");
      SectionSpec spec;
      spec.name = text(field(s, "name", where), where + ".name");
      if (s.contains("components")) {
        if (!s["components"].is_object()) bad(where + ".components", "expected an object");
        for (const auto& [k, v] : s["components"].items())
          spec.components[k] = static_cast<int>(integer(v, where + ".components." + k));
      }
      if (s.contains("order") && !s["order"].is_null())
        spec.order = static_cast<int>(integer(s["order"], where + ".order"));
      if (s.contains("pairings")) {
        if (!s["pairings"].is_object()) bad(where + ".pairings", "expected an object");
        for (const auto& [k, v] : s["pairings"].items()) spec.pairings[k] = integer(v, where + ".pairings." + k);
      }
      if (s.contains("mw") && !s["mw"].is_null()) {
        if (!s["mw"].is_array()) bad(where + ".mw", "expected an array");
        std::vector<Int> mw;
        for (std::size_t j = 0; j < s["mw"].size(); ++j)
          mw.push_back(integer(s["mw"][j], where + ".mw[" + std::to_string(j) + "]"));
        spec.mw = std::move(mw);
      }
      sections.push_back(std::move(spec));
    }
  }

  std::optional<MordellWeilSpec> mw;
  if (doc.contains("mordell_weil") && !doc["mordell_weil"].is_null()) {
    const auto& g = doc["mordell_weil"];
    if (!g.is_object()) bad("$.mordell_weil", "expected an object");
    MordellWeilSpec spec;
    if (g.contains("rank")) spec.rank = static_cast<int>(integer(g["rank"], "$.mordell_weil.rank"));
    if (g.contains("torsion")) {
      if (!g["torsion"].is_array()) bad("$.mordell_weil.torsion", "expected an array");
      for (std::size_t j = 0; j < g["torsion"].size(); ++j)
        spec.torsion.push_back(
            static_cast<int>(integer(g["torsion"][j], "$.mordell_weil.torsion[" + std::to_string(j) + "]")));
    }
    mw = std::move(spec);
  }
  return SurfaceConfig(std::move(fibers), std::move(sections), std::move(mw));
}

SurfaceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

nlohmann::json to_json(const SurfaceConfig& config) {
  json fibers = json::array();
  for (const auto& f : config.fibers()) fibers.push_back({{"name", f.name}, {"n", f.n}});
  json sections = json::array();
  for (const auto& s : config.sections()) {
    json entry = {{"name", s.name}, {"components", s.components}, {"pairings", s.pairings}};
    if (s.order) entry["order"] = *s.order;
    if (s.mw) entry["mw"] = *s.mw;
    sections.push_back(std::move(entry));
  }
  json doc = {{"fibers", fibers}, {"sections", sections}};
  if (const auto& g = config.mordell_weil()) doc["mordell_weil"] = {{"rank", g->rank}, {"torsion", g->torsion}};
  return doc;
}

} // namespace weylns
