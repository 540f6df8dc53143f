#include "acr/graph.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "acr/error.hpp"

namespace acr {

namespace {
using nlohmann::json;
const LabelSet kEmpty;
}  // namespace

void AcrGraph::ingest(const ActionCode& code) {
  LabelSet targets;
  for (const auto& o : code.objects) {
    if (o == kAgentObject) continue;
    targets.insert(o);
  }
  objects_.insert(targets.begin(), targets.end());
  for (const auto& a : code.actions) {
    if (actions_.insert(a).second) {
      action_order_.push_back(a);
      adjacency_[a];
    }
    adjacency_[a].insert(targets.begin(), targets.end());
  }
}

const LabelSet& AcrGraph::neighborhood(const std::string& action) const {
  auto it = adjacency_.find(action);
  return it == adjacency_.end() ? kEmpty : it->second;
}

std::vector<std::pair<std::string, std::string>> AcrGraph::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [action, objs] : adjacency_) {
    for (const auto& o : objs) out.emplace_back(action, o);
  }
  return out;
}

std::size_t AcrGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& [action, objs] : adjacency_) n += objs.size();
  return n;
}

AcrGraph ingest(AcrGraph graph, const ActionCode& code) {
  graph.ingest(code);
  return graph;
}

AcrGraph build_graph(const ObservationLog& log) {
  AcrGraph g;
  for (const auto& code : log) g.ingest(code);
  return g;
}

const ActionCategory* CategorySet::find(int id) const {
  for (const auto& c : categories) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

LabelSet CategorySet::all_actions() const {
  LabelSet out;
  for (const auto& c : categories) out.insert(c.actions.begin(), c.actions.end());
  return out;
}

std::vector<ActionCategory> CategorySet::object_categories() const {
  std::vector<ActionCategory> out;
  for (const auto& c : categories) {
    if (!c.is_agent_category()) out.push_back(c);
  }
  return out;
}

CategorySet derive_categories(const AcrGraph& graph) {
  CategorySet cs;
  std::map<LabelSet, std::size_t> by_neighborhood;
  for (const auto& action : graph.actions_in_discovery_order()) {
    const LabelSet& hood = graph.neighborhood(action);
    auto [it, inserted] = by_neighborhood.emplace(hood, cs.categories.size());
    if (inserted) {
      cs.categories.push_back(
          ActionCategory{static_cast<int>(cs.categories.size()), {}, hood});
    }
    cs.categories[it->second].actions.insert(action);
  }
  return cs;
}

std::vector<ActionCategory> categories_of(const CategorySet& cs,
                                          std::string_view object) {
  std::vector<ActionCategory> out;
  for (const auto& c : cs.categories) {
    if (c.objects.contains(std::string(object))) out.push_back(c);
  }
  return out;
}

LabelSet allowed_actions(const CategorySet& cs, const LabelSet& objects) {
  LabelSet out;
  for (const auto& c : cs.categories) {
    bool linked = std::any_of(objects.begin(), objects.end(),
                              [&](const auto& o) { return c.objects.contains(o); });
    if (linked) out.insert(c.actions.begin(), c.actions.end());
  }
  return out;
}

LabelSet non_object_actions(const CategorySet& cs, const LabelSet& all_actions) {
  for (const auto& c : cs.categories) {
    for (const auto& a : c.actions) {
      if (!all_actions.contains(a)) {
        throw ContractError("categorized action '" + a +
                            "' is missing from the action set");
      }
    }
  }
  LabelSet out = all_actions;
  for (const auto& c : cs.categories) {
    if (c.is_agent_category()) continue;
    for (const auto& a : c.actions) out.erase(a);
  }
  return out;
}

std::string export_json(const AcrGraph& graph, const CategorySet& cs) {
  json doc;
  doc["actions"] = graph.actions();
  doc["objects"] = graph.objects();
  json edges = json::array();
  for (const auto& [a, o] : graph.edges()) edges.push_back({a, o});
  doc["edges"] = edges;
  json cats = json::array();
  for (const auto& c : cs.categories) {
    cats.push_back({{"id", c.id}, {"actions", c.actions}, {"objects", c.objects}});
  }
  doc["categories"] = cats;
  return doc.dump(2) + "\n";
}

AcrDocument import_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed ACR document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("categories")) {
    throw ValidationError("ACR document needs a \"categories\" array");
  }

  AcrDocument out;
  try {
    for (const auto& c : doc.at("categories")) {
      ActionCategory cat;
      cat.id = c.at("id").get<int>();
      for (const auto& a : c.at("actions")) cat.actions.insert(a.get<std::string>());
      for (const auto& o : c.at("objects")) cat.objects.insert(o.get<std::string>());
      if (cat.actions.empty()) {
        throw ValidationError("category " + std::to_string(cat.id) +
                              " has no actions");
      }
      ActionCode code;
      code.actions.assign(cat.actions.begin(), cat.actions.end());
      if (cat.objects.empty()) {
        code.objects = {std::string(kAgentObject)};
      } else {
        code.objects.assign(cat.objects.begin(), cat.objects.end());
      }
      out.graph.ingest(code);
      out.categories.categories.push_back(std::move(cat));
    }
    if (doc.contains("edges")) {
      std::vector<std::pair<std::string, std::string>> edges;
      for (const auto& e : doc.at("edges")) {
        edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
      }
      std::sort(edges.begin(), edges.end());
      if (edges != out.graph.edges()) {
        throw ValidationError("edge list disagrees with the category table");
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad ACR document: ") + e.what());
  }
  return out;
}

std::string format_category_table(const CategorySet& cs) {
  auto join = [](const LabelSet& s) {
    std::string out;
    for (const auto& x : s) {
      if (!out.empty()) out += ", ";
      out += x;
    }
    return out;
  };
  std::ostringstream os;
  os << "category  actions                         objects\n";
  for (const auto& c : cs.categories) {
    std::string name = "A^c" + std::to_string(c.id + 1);
    std::string actions = "{" + join(c.actions) + "}";
    std::string objects = c.is_agent_category() ? "(agent)" : "{" + join(c.objects) + "}";
    os << name << std::string(name.size() < 10 ? 10 - name.size() : 1, ' ')
       << actions
       << std::string(actions.size() < 32 ? 32 - actions.size() : 1, ' ')
       << objects << "\n";
  }
  return os.str();
}

}  // namespace acr
