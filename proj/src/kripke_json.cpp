#include "wgrz/kripke_json.hpp"

#include "wgrz/error.hpp"

namespace wgrz {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json frame_to_json(const KripkeFrame& frame) {
  ordered_json doc;
  doc["worlds"] = ordered_json::array();
  for (const auto& w : frame.worlds()) doc["worlds"].push_back(w.tag());
  doc["relation"] = ordered_json::array();
  for (const auto& [i, j] : frame.edges()) doc["relation"].push_back({frame.world(i).tag(), frame.world(j).tag()});
  return doc;
}

ordered_json model_to_json(const KripkeModel& model) {
  ordered_json doc = frame_to_json(model.frame());
  ordered_json valuation = ordered_json::object();
  for (const auto& [var, set] : model.valuation()) {
    ordered_json worlds = ordered_json::array();
    for (auto w = set.find_first(); w != WorldSet::npos; w = set.find_next(w)) {
      worlds.push_back(model.frame().world(w).tag());
    }
    valuation["p" + std::to_string(var)] = std::move(worlds);
  }
  doc["valuation"] = std::move(valuation);
  doc["root"] = model.root_world().tag();
  return doc;
}

namespace {

std::size_t lookup(const KripkeFrame& frame, const json& id) {
  if (!id.is_string()) throw PreconditionError("world ids must be strings");
  const auto tag = id.get<std::string>();
  auto idx = frame.find(tag);
  if (!idx) throw UnknownWorld(tag);
  return *idx;
}

int variable_index(const std::string& key) {
  if (key.size() < 2 || key[0] != 'p') throw PreconditionError("valuation key must look like p<digits>: " + key);
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(key.substr(1), &used);
  } catch (const std::exception&) {
    throw PreconditionError("valuation key must look like p<digits>: " + key);
  }
  if (used != key.size() - 1 || value < 1) throw PreconditionError("valuation key must look like p<digits>: " + key);
  return value;
}

}  // namespace

KripkeFrame frame_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("worlds")) throw PreconditionError("frame JSON needs a \"worlds\" array");
  std::vector<WorldId> worlds;
  for (const auto& w : doc.at("worlds")) {
    if (!w.is_string()) throw PreconditionError("world ids must be strings");
    worlds.push_back(WorldId::parse(w.get<std::string>()));
  }
  KripkeFrame bare(worlds, {});
  std::vector<Edge> edges;
  if (doc.contains("relation")) {
    for (const auto& pair : doc.at("relation")) {
      if (!pair.is_array() || pair.size() != 2) throw PreconditionError("relation entries are [from, to] pairs");
      edges.emplace_back(lookup(bare, pair[0]), lookup(bare, pair[1]));
    }
  }
  return KripkeFrame(std::move(worlds), edges);
}

KripkeModel model_from_json(const json& doc) {
  KripkeFrame frame = frame_from_json(doc);
  std::map<int, std::vector<std::size_t>> valuation;
  if (doc.contains("valuation")) {
    for (const auto& [key, worlds] : doc.at("valuation").items()) {
      auto& target = valuation[variable_index(key)];
      for (const auto& w : worlds) target.push_back(lookup(frame, w));
    }
  }
  if (!doc.contains("root")) throw PreconditionError("model JSON needs a \"root\"");
  const std::size_t root = lookup(frame, doc.at("root"));
  return KripkeModel(std::move(frame), valuation, root);
}

std::string dump_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace wgrz
