#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "acr/action_code.hpp"

namespace acr {

using LabelSet = std::set<std::string>;

// Bipartite action/object graph built incrementally from action codes.
//
// Besides the vertex and edge sets the graph remembers the order in which
// actions were first seen; category ids are derived from it. Equality ignores
// that order, so two logs with the same distinct codes give equal graphs.
class AcrGraph {
 public:
  AcrGraph() = default;

  // Adds the code's vertices and its full action x object edge product.
  // Re-ingesting a code is a no-op.
  void ingest(const ActionCode& code);

  const LabelSet& objects() const { return objects_; }
  const LabelSet& actions() const { return actions_; }
  const std::vector<std::string>& actions_in_discovery_order() const {
    return action_order_;
  }
  // Objects linked to the action; empty for unknown actions.
  const LabelSet& neighborhood(const std::string& action) const;
  // Sorted (action, object) pairs.
  std::vector<std::pair<std::string, std::string>> edges() const;
  std::size_t edge_count() const;

  bool empty() const { return actions_.empty() && objects_.empty(); }

  friend bool operator==(const AcrGraph& a, const AcrGraph& b) {
    return a.objects_ == b.objects_ && a.actions_ == b.actions_ &&
           a.adjacency_ == b.adjacency_;
  }

 private:
  LabelSet objects_;
  LabelSet actions_;
  std::vector<std::string> action_order_;
  std::map<std::string, LabelSet> adjacency_;
};

// Functional form of AcrGraph::ingest.
AcrGraph ingest(AcrGraph graph, const ActionCode& code);
AcrGraph build_graph(const ObservationLog& log);

// Actions sharing an identical object neighborhood. An empty object set marks
// the agent-action pseudo-category.
struct ActionCategory {
  int id = 0;
  LabelSet actions;
  LabelSet objects;

  bool is_agent_category() const { return objects.empty(); }
  friend bool operator==(const ActionCategory&, const ActionCategory&) = default;
};

struct CategorySet {
  std::vector<ActionCategory> categories;

  std::size_t size() const { return categories.size(); }
  bool empty() const { return categories.empty(); }
  const ActionCategory* find(int id) const;
  // Union of every category's actions.
  LabelSet all_actions() const;
  // Categories linked to at least one object.
  std::vector<ActionCategory> object_categories() const;

  friend bool operator==(const CategorySet&, const CategorySet&) = default;
};

// Partitions the graph's actions by exact neighborhood equality. Ids follow
// the first appearance of any member action in ingestion order.
CategorySet derive_categories(const AcrGraph& graph);

// Categories containing the object, in id order.
std::vector<ActionCategory> categories_of(const CategorySet& cs,
                                          std::string_view object);

// Union of the action sets of all categories linked to any of the objects.
LabelSet allowed_actions(const CategorySet& cs, const LabelSet& objects);

// all_actions minus every object-linked category's actions. Throws
// ContractError naming the first categorized action missing from all_actions.
LabelSet non_object_actions(const CategorySet& cs, const LabelSet& all_actions);

// Canonical JSON export: sorted actions/objects/edges, categories in id order.
std::string export_json(const AcrGraph& graph, const CategorySet& cs);

struct AcrDocument {
  AcrGraph graph;
  CategorySet categories;
};
// Reads an export back. The graph is rebuilt from the edge list (actions
// without edges are kept as vertices); categories are taken verbatim.
AcrDocument import_json(std::string_view text);

// Human-readable table, one category per row.
std::string format_category_table(const CategorySet& cs);

}  // namespace acr
