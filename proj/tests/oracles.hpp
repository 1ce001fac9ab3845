#ifndef COPRI_TESTS_ORACLES_HPP
#define COPRI_TESTS_ORACLES_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "copri/analysis.hpp"
#include "copri/model.hpp"

// Naive reference implementations, written straight from the check
// definitions. They only touch the graph's raw element/record/edge
// collections and recompute every closure by fixpoint scans, so a bug in the
// engine's indexes or memoization cannot hide here.
namespace oracle {

std::set<std::string> role_closure(const copri::ModelGraph& g, const std::string& actor);
std::set<std::string> parts(const copri::ModelGraph& g, const std::string& whole);
std::optional<std::string> owner(const copri::ModelGraph& g, const std::string& info);
std::set<std::pair<copri::UseType, std::string>> permissions(const copri::ModelGraph& g,
                                                             const std::string& actor,
                                                             bool parts_inherit);
std::set<std::string> goal_actors(const copri::ModelGraph& g, const std::string& goal);

// The element tuples the given check should produce under `config`,
// sorted, with the same multiplicity as the engine's findings.
std::vector<std::vector<std::string>> rows(const copri::ModelGraph& g,
                                           copri::analysis::CheckId check,
                                           const copri::analysis::RunConfig& config);

// Directed cycle detection over nodes 0..node_count-1 by boolean
// reachability closure.
bool has_cycle(int node_count, const std::vector<std::pair<int, int>>& edges);
// All nodes that can reach themselves through at least one edge.
std::set<int> nodes_on_cycles(int node_count, const std::vector<std::pair<int, int>>& edges);

}  // namespace oracle

#endif
