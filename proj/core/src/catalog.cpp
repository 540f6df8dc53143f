#include "acr/catalog.hpp"

#include <set>

#include <json.hpp>

#include "acr/error.hpp"

namespace acr::planner {

namespace {

using nlohmann::json;

constexpr std::string_view kCanonicalCatalog = R"({
  "actions": ["attack", "build", "gather", "hold", "move", "patrol", "repair", "research", "train"],
  "categories": [
    {"id": 0, "actions": ["build", "gather", "repair"],
     "objects": ["drone", "probe", "scv"]},
    {"id": 1, "actions": ["attack", "hold", "move", "patrol"],
     "objects": ["dragoon", "hydralisk", "marine", "zealot", "zergling"]},
    {"id": 2, "actions": ["train"],
     "objects": ["barracks", "command_center", "gateway", "hatchery", "nexus"]},
    {"id": 3, "actions": ["research"],
     "objects": ["academy", "cybernetics_core", "evolution_chamber"]}
  ],
  "known_objects": ["academy", "barracks", "command_center", "marine", "scv"],
  "build_orders": {
    "terran": ["scv", "scv", "command_center", "barracks", "marine", "marine", "academy"],
    "protoss": ["probe", "probe", "nexus", "gateway", "zealot", "cybernetics_core", "dragoon"],
    "zerg": ["drone", "drone", "hatchery", "zergling", "evolution_chamber", "hydralisk"]
  }
}
)";

}  // namespace

HypothesisSet SyntheticCatalog::known_categories() const {
  HypothesisSet out;
  for (const auto& c : categories.categories) {
    bool known = false;
    for (const auto& o : c.objects) known = known || known_objects.contains(o);
    if (known) out.push_back(c);
  }
  return out;
}

const ActionCategory& SyntheticCatalog::true_category(const std::string& kind) const {
  auto it = object_category.find(kind);
  if (it == object_category.end()) {
    throw ValidationError("unknown object kind '" + kind + "'");
  }
  return *categories.find(it->second);
}

ProbeOracle SyntheticCatalog::oracle(const std::string& kind) const {
  LabelSet truth = true_category(kind).actions;
  return [truth](const std::string& a) { return truth.contains(a); };
}

SyntheticCatalog parse_catalog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed catalog: ") + e.what());
  }
  // Categories and edges go through the ACR importer so both layouts agree.
  AcrDocument acr = import_json(json_text);

  SyntheticCatalog cat;
  cat.categories = acr.categories;
  try {
    if (doc.contains("actions")) {
      for (const auto& a : doc.at("actions")) cat.actions.insert(a.get<std::string>());
    } else {
      cat.actions = cat.categories.all_actions();
    }
    const json known = doc.value("known_objects", json::array());
    for (const auto& o : known) cat.known_objects.insert(o.get<std::string>());
    const json orders = doc.value("build_orders", json::object());
    for (const auto& [name, order] : orders.items()) {
      auto& out = cat.build_orders[name];
      for (const auto& k : order) out.push_back(k.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad catalog: ") + e.what());
  }

  LabelSet covered;
  std::set<int> ids;
  for (const auto& c : cat.categories.categories) {
    if (!ids.insert(c.id).second) {
      throw ValidationError("duplicate category id " + std::to_string(c.id));
    }
    for (const auto& a : c.actions) {
      if (!cat.actions.contains(a)) {
        throw ValidationError("category action '" + a + "' is not in \"actions\"");
      }
      if (!covered.insert(a).second) {
        throw ValidationError("action '" + a + "' appears in two categories");
      }
    }
    for (const auto& o : c.objects) {
      if (!cat.object_category.emplace(o, c.id).second) {
        throw ValidationError("object kind '" + o + "' maps to two categories");
      }
    }
  }
  if (covered != cat.actions) {
    throw ValidationError("categories do not cover every action");
  }
  for (const auto& o : cat.known_objects) {
    if (!cat.object_category.contains(o)) {
      throw ValidationError("known object '" + o + "' has no category");
    }
  }
  for (const auto& [name, order] : cat.build_orders) {
    for (const auto& k : order) {
      if (!cat.object_category.contains(k)) {
        throw ValidationError("build order '" + name + "' names unknown kind '" + k + "'");
      }
    }
  }
  return cat;
}

std::string catalog_to_json(const SyntheticCatalog& catalog) {
  AcrGraph g;
  for (const auto& c : catalog.categories.categories) {
    ActionCode code;
    code.actions.assign(c.actions.begin(), c.actions.end());
    code.objects.assign(c.objects.begin(), c.objects.end());
    if (code.objects.empty()) code.objects = {std::string(kAgentObject)};
    g.ingest(code);
  }
  json doc = json::parse(export_json(g, catalog.categories));
  doc["actions"] = catalog.actions;
  doc["known_objects"] = catalog.known_objects;
  json orders = json::object();
  for (const auto& [name, order] : catalog.build_orders) orders[name] = order;
  doc["build_orders"] = orders;
  return doc.dump(2) + "\n";
}

std::string_view canonical_catalog_json() { return kCanonicalCatalog; }

const SyntheticCatalog& canonical_catalog() {
  static const SyntheticCatalog catalog = parse_catalog(kCanonicalCatalog);
  return catalog;
}

ProbeReport infer_kind(const SyntheticCatalog& catalog, const std::string& kind,
                       ProbeStrategy strategy) {
  return infer_category(catalog.oracle(kind), catalog.known_categories(), catalog.actions,
                        strategy);
}

ExplorationResult exploration_phase(const std::vector<std::string>& build_order,
                                    const SyntheticCatalog& catalog, bool use_acr,
                                    ProbeStrategy strategy) {
  ExplorationResult out;
  LabelSet seen = catalog.known_objects;
  for (const auto& kind : build_order) {
    catalog.true_category(kind);  // rejects unknown kinds
    if (!seen.insert(kind).second) continue;
    ProbeReport report =
        use_acr ? infer_kind(catalog, kind, strategy)
                : match_known(baseline_probe(catalog.oracle(kind), catalog.actions),
                              catalog.known_categories());
    ++out.unseen_kinds;
    out.total_a_obj += report.a_obj();
    out.reports.emplace_back(kind, std::move(report));
  }
  return out;
}

ExplorationResult exploration_phase(const std::string& build_order_name,
                                    const SyntheticCatalog& catalog, bool use_acr,
                                    ProbeStrategy strategy) {
  auto it = catalog.build_orders.find(build_order_name);
  if (it == catalog.build_orders.end()) {
    throw ValidationError("unknown build order '" + build_order_name + "'");
  }
  return exploration_phase(it->second, catalog, use_acr, strategy);
}

}  // namespace acr::planner
