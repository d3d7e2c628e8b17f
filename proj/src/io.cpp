// Copyright 2026 The amsplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "amsplace/io.hpp"

#include <fstream>
#include <sstream>

#include "amsplace/errors.hpp"
#include "json.hpp"

namespace amsplace {

namespace {

using Json = nlohmann::ordered_json;

// A JSON node plus the path used in error messages.
class Node {
 public:
  Node(const Json& json, std::string path)
      : json_(json), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  bool has(const char* key) const {
    return json_.is_object() && json_.contains(key);
  }

  Node operator[](const char* key) const {
    if (!json_.is_object()) fail("expected an object");
    auto it = json_.find(key);
    if (it == json_.end()) {
      throw ParseError(path_ + "." + key + ": missing field");
    }
    return Node(*it, path_ + "." + key);
  }

  Node operator[](std::size_t index) const {
    return Node(json_.at(index), path_ + "[" + std::to_string(index) + "]");
  }

  std::size_t size() const {
    if (!json_.is_array()) fail("expected an array");
    return json_.size();
  }

  double number() const {
    if (!json_.is_number()) fail("expected a number");
    return json_.get<double>();
  }

  int integer() const {
    if (!json_.is_number_integer()) fail("expected an integer");
    return json_.get<int>();
  }

  bool boolean() const {
    if (!json_.is_boolean()) fail("expected true or false");
    return json_.get<bool>();
  }

  std::string string() const {
    if (!json_.is_string()) fail("expected a string");
    return json_.get<std::string>();
  }

  std::vector<int> integers() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].integer());
    return out;
  }

  const Json& raw() const { return json_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_ + ": " + what);
  }

 private:
  const Json& json_;
  std::string path_;
};

Json parseJson(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

Json instanceToJson(const Instance& instance) {
  Json out;
  out["name"] = instance.name;
  Json rects = Json::array();
  for (const auto& r : instance.rectangles) {
    Json variants = Json::array();
    for (const auto& v : r.variants) {
      variants.push_back(Json{{"w", v.width}, {"h", v.height}});
    }
    rects.push_back(
        Json{{"id", r.id}, {"selectable", r.selectable}, {"variants", variants}});
  }
  out["rectangles"] = rects;
  Json nets = Json::array();
  for (const auto& net : instance.nets) {
    nets.push_back(Json{{"cost", net.cost}, {"members", net.members}});
  }
  out["nets"] = nets;
  Json overrides = Json::array();
  for (const auto& [key, a] : instance.distances.overrides()) {
    overrides.push_back(Json{{"i", key.first}, {"j", key.second}, {"a", a}});
  }
  out["distance"] = Json{{"default", instance.distances.defaultDistance()},
                         {"overrides", overrides}};
  Json groups = Json::array();
  for (const auto& g : instance.symmetryGroups) {
    Json pairs = Json::array();
    for (const auto& [i, j] : g.pairs) pairs.push_back(Json::array({i, j}));
    groups.push_back(Json{{"pairs", pairs}, {"self", g.selfSymmetric}});
  }
  out["symmetry"] = groups;
  Json blockages = Json::array();
  for (const auto& b : instance.blockages) {
    blockages.push_back(Json{{"x", b.x}, {"y", b.y}, {"w", b.width},
                             {"h", b.height}, {"blocked", b.blockedIds}});
  }
  out["blockages"] = blockages;
  out["aspect"] = Json{{"l", instance.aspect.lower}, {"u", instance.aspect.upper}};
  if (!instance.genspec.empty()) {
    out["genspec"] = parseJson(instance.genspec, "genspec");
  }
  return out;
}

Instance instanceFromJson(const Json& json) {
  const Node root(json, "instance");
  Instance inst;
  inst.name = root["name"].string();

  const Node rects = root["rectangles"];
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Node r = rects[i];
    Rectangle rect;
    rect.id = r["id"].integer();
    rect.selectable = r.has("selectable") ? r["selectable"].boolean() : true;
    const Node variants = r["variants"];
    for (std::size_t k = 0; k < variants.size(); ++k) {
      rect.variants.push_back(
          {variants[k]["w"].number(), variants[k]["h"].number()});
    }
    inst.rectangles.push_back(std::move(rect));
  }

  if (root.has("nets")) {
    const Node nets = root["nets"];
    for (std::size_t e = 0; e < nets.size(); ++e) {
      Net net;
      net.cost = nets[e]["cost"].number();
      net.members = nets[e]["members"].integers();
      inst.nets.push_back(std::move(net));
    }
  }

  if (root.has("distance")) {
    const Node d = root["distance"];
    inst.distances.setDefaultDistance(d["default"].number());
    if (d.has("overrides")) {
      const Node ov = d["overrides"];
      for (std::size_t k = 0; k < ov.size(); ++k) {
        inst.distances.setOverride(ov[k]["i"].integer(), ov[k]["j"].integer(),
                                   ov[k]["a"].number());
      }
    }
  }

  if (root.has("symmetry")) {
    const Node groups = root["symmetry"];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      SymmetryGroup group;
      if (groups[g].has("pairs")) {
        const Node pairs = groups[g]["pairs"];
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          const auto ids = pairs[p].integers();
          if (ids.size() != 2) pairs[p].fail("a pair needs exactly two ids");
          group.pairs.emplace_back(ids[0], ids[1]);
        }
      }
      if (groups[g].has("self")) group.selfSymmetric = groups[g]["self"].integers();
      inst.symmetryGroups.push_back(std::move(group));
    }
  }

  if (root.has("blockages")) {
    const Node areas = root["blockages"];
    std::vector<RectId> dummies;
    for (const auto& r : inst.rectangles) {
      if (!r.selectable) dummies.push_back(r.id);
    }
    if (!dummies.empty() && dummies.size() != areas.size()) {
      areas.fail("count differs from non-selectable rectangles");
    }
    for (std::size_t b = 0; b < areas.size(); ++b) {
      BlockageArea area;
      area.x = areas[b]["x"].number();
      area.y = areas[b]["y"].number();
      area.width = areas[b]["w"].number();
      area.height = areas[b]["h"].number();
      area.blockedIds = areas[b]["blocked"].integers();
      if (dummies.empty()) {
        addBlockage(inst, std::move(area));
      } else {
        area.rectangleId = dummies[b];
        inst.blockages.push_back(std::move(area));
      }
    }
  }

  if (root.has("aspect")) {
    inst.aspect.lower = root["aspect"]["l"].number();
    inst.aspect.upper = root["aspect"]["u"].number();
  }
  if (root.has("genspec")) inst.genspec = root["genspec"].raw().dump();

  checkInstance(inst);
  return inst;
}

}  // namespace

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

Instance parseInstance(const std::string& text) {
  return instanceFromJson(parseJson(text, "instance"));
}

std::string serializeInstance(const Instance& instance) {
  return instanceToJson(instance).dump(2) + "\n";
}

Instance readInstance(const std::filesystem::path& path) {
  return parseInstance(readTextFile(path));
}

void writeInstance(const Instance& instance,
                   const std::filesystem::path& path) {
  writeTextFile(path, serializeInstance(instance));
}

std::string serializePlacement(const Instance& instance,
                               const Placement& placement,
                               const CriterionWeights& weights) {
  Json out;
  out["instance"] = instance.name;
  Json rects = Json::array();
  for (std::size_t i = 0; i < placement.rects.size(); ++i) {
    const auto& r = placement.rects[i];
    rects.push_back(Json{{"id", static_cast<int>(i)}, {"x", r.x}, {"y", r.y},
                         {"variant", r.variant}});
  }
  out["rects"] = rects;
  out["W"] = placement.width;
  out["H"] = placement.height;
  out["axes"] = placement.axes;
  const auto metrics = evaluate(instance, placement, weights);
  out["hpwl"] = metrics.connectivity;
  out["area"] = placement.width * placement.height;
  out["criterion"] = metrics.value;
  out["weights"] = Json{{"cA", weights.area}, {"cC", weights.connectivity}};
  return out.dump(2) + "\n";
}

void writePlacement(const Instance& instance, const Placement& placement,
                    const CriterionWeights& weights,
                    const std::filesystem::path& path) {
  writeTextFile(path, serializePlacement(instance, placement, weights));
}

PlacementFile parsePlacement(const std::string& text, const Instance* instance) {
  const Json json = parseJson(text, "placement");
  const Node root(json, "placement");
  PlacementFile file;
  file.instanceName = root["instance"].string();
  const Node rects = root["rects"];
  std::vector<std::optional<PlacedRect>> slots(rects.size());
  for (std::size_t k = 0; k < rects.size(); ++k) {
    const Node r = rects[k];
    const int id = r["id"].integer();
    if (id < 0 || id >= static_cast<int>(slots.size()) || slots[id]) {
      throw ReferenceError(r.path() + ".id: bad or repeated id " +
                           std::to_string(id));
    }
    slots[id] = PlacedRect{r["x"].number(), r["y"].number(),
                           r["variant"].integer()};
  }
  for (const auto& slot : slots) file.placement.rects.push_back(*slot);
  file.placement.width = root["W"].number();
  file.placement.height = root["H"].number();
  if (root.has("axes")) {
    const Node axes = root["axes"];
    for (std::size_t g = 0; g < axes.size(); ++g) {
      file.placement.axes.push_back(axes[g].number());
    }
  }
  if (root.has("hpwl")) file.hpwl = root["hpwl"].number();
  if (root.has("area")) file.area = root["area"].number();
  if (root.has("criterion")) file.criterion = root["criterion"].number();
  if (root.has("weights")) {
    file.weights = CriterionWeights{root["weights"]["cA"].number(),
                                    root["weights"]["cC"].number()};
  }

  if (instance != nullptr) {
    if (file.placement.rects.size() != instance->rectangles.size()) {
      throw ReferenceError("placement.rects: " +
                           std::to_string(file.placement.rects.size()) +
                           " entries for an instance of " +
                           std::to_string(instance->rectangles.size()));
    }
    if (file.placement.axes.size() != instance->symmetryGroups.size()) {
      throw ReferenceError("placement.axes: count differs from symmetry groups");
    }
  }
  return file;
}

PlacementFile readPlacement(const std::filesystem::path& path,
                            const Instance* instance) {
  return parsePlacement(readTextFile(path), instance);
}

}  // namespace amsplace
