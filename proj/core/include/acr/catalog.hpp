#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "acr/graph.hpp"
#include "acr/inference.hpp"

namespace acr::planner {

// Object kinds with their true action categories, the kinds already known
// from a demonstration, and named build orders.
//
// JSON form: the ACR export layout ("actions", "objects", "edges",
// "categories", where categories hold the true object mapping) plus
// "known_objects": [...] and "build_orders": {"name": [kind, ...]}.
struct SyntheticCatalog {
  LabelSet actions;
  CategorySet categories;
  std::map<std::string, int> object_category;
  LabelSet known_objects;
  std::map<std::string, std::vector<std::string>> build_orders;

  // Categories linked to a known object: what an agent has learned before
  // exploring.
  HypothesisSet known_categories() const;
  // Oracle answering whether an action is associated with the kind.
  ProbeOracle oracle(const std::string& kind) const;
  const ActionCategory& true_category(const std::string& kind) const;
};

// Throws ParseError or ValidationError: categories must partition the actions
// and every kind, known object and build-order entry must map to a category.
SyntheticCatalog parse_catalog(std::string_view json_text);
std::string catalog_to_json(const SyntheticCatalog& catalog);

// Nine actions in four categories over sixteen kinds; the Terran kinds are
// known, and there are Terran, Protoss and Zerg build orders.
std::string_view canonical_catalog_json();
const SyntheticCatalog& canonical_catalog();

struct ExplorationResult {
  std::size_t unseen_kinds = 0;
  std::size_t total_a_obj = 0;
  std::vector<std::pair<std::string, ProbeReport>> reports;  // unseen kinds in order
};

// Probes every kind of the build order the first time it appears, unless it
// is known already. use_acr runs category inference against the known
// categories; otherwise every action is tried.
ExplorationResult exploration_phase(const std::vector<std::string>& build_order,
                                    const SyntheticCatalog& catalog, bool use_acr,
                                    ProbeStrategy strategy = ProbeStrategy::kPaperMinEntropy);
ExplorationResult exploration_phase(const std::string& build_order_name,
                                    const SyntheticCatalog& catalog, bool use_acr,
                                    ProbeStrategy strategy = ProbeStrategy::kPaperMinEntropy);

// Category inference for a single kind against the known categories.
ProbeReport infer_kind(const SyntheticCatalog& catalog, const std::string& kind,
                       ProbeStrategy strategy);

}  // namespace acr::planner
