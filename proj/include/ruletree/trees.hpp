// Decision artifacts: o- and e-flavor decision trees, acyclic decision
// graphs, and decision graphs with writing, plus their evaluation on value
// tuples and the depth / node-count / distinct-terminal-label metrics.

#ifndef RULETREE_TREES_HPP
#define RULETREE_TREES_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ruletree/core.hpp"

namespace ruletree {

enum class Flavor { ordinary, extended };  // o-trees vs e-trees

using NodeId = std::uint32_t;

struct TreeEdge {
    Value value;
    NodeId target;
};

// Queries an attribute; one leaving edge per value of V_S(a) (o-flavor)
// or EV_S(a) (e-flavor), labels pairwise different.
struct WorkingNode {
    Attribute attribute;
    std::vector<TreeEdge> edges;  // sorted by value, the * edge last
};

// Labeled with a set of rule indices into the source system.
struct TerminalNode {
    std::vector<std::size_t> rule_set;  // sorted
};

// Appends one rule to the running result set W, then continues.
struct WritingNode {
    std::size_t rule;
    NodeId next;
};

using TreeNode = std::variant<WorkingNode, TerminalNode>;
using GraphNode = std::variant<WorkingNode, TerminalNode, WritingNode>;

class DecisionTree {
public:
    DecisionTree(Flavor flavor, std::vector<TreeNode> nodes, NodeId root);

    Flavor flavor() const { return flavor_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    NodeId root() const { return root_; }

private:
    Flavor flavor_;
    std::vector<TreeNode> nodes_;
    NodeId root_;
};

class DecisionGraph {
public:
    DecisionGraph(Flavor flavor, std::vector<TreeNode> nodes, NodeId root);

    Flavor flavor() const { return flavor_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    NodeId root() const { return root_; }

private:
    Flavor flavor_;
    std::vector<TreeNode> nodes_;
    NodeId root_;
};

class DecisionGraphWithWriting {
public:
    DecisionGraphWithWriting(Flavor flavor, std::vector<GraphNode> nodes, NodeId root);

    Flavor flavor() const { return flavor_; }
    const std::vector<GraphNode>& nodes() const { return nodes_; }
    NodeId root() const { return root_; }

private:
    Flavor flavor_;
    std::vector<GraphNode> nodes_;
    NodeId root_;
};

// A root-to-terminal walk: the visited nodes, the edge values taken, and
// the derived A(xi), K(xi), tau(xi), h(xi).
struct CompletePath {
    std::vector<NodeId> nodes;             // v_1 .. v_{m+1}
    std::vector<Attribute> attributes;     // attribute queried at v_1 .. v_m
    std::vector<Value> edge_values;        // d_1 .. d_m
    std::vector<std::size_t> label;        // tau(xi)

    std::size_t depth() const { return edge_values.size(); }  // h(xi)
    EquationSystem equations() const;                         // K(xi)
};

struct TreeMetrics {
    std::size_t depth = 0;                     // h
    std::size_t node_count = 0;                // L
    std::size_t distinct_terminal_labels = 0;  // T
};

// Follows the tuple from the root; at a working node takes the edge whose
// label equals the tuple's value for that attribute.  In an e-flavor
// artifact a value with no matching edge routes along the * edge; in an
// o-flavor artifact it is an error.
CompletePath eval_tree(const DecisionTree& tree, const RuleSystem& s, const ValueTuple& t);
std::vector<std::size_t> eval_graph(const DecisionGraph& g, const RuleSystem& s,
                                    const ValueTuple& t);
// The accumulated W at the terminal.
std::vector<std::size_t> eval_graph_writing(const DecisionGraphWithWriting& g,
                                            const RuleSystem& s, const ValueTuple& t);

TreeMetrics metrics(const DecisionTree& tree);
TreeMetrics metrics(const DecisionGraph& g);
TreeMetrics metrics(const DecisionGraphWithWriting& g);

// All complete paths of a tree, in depth-first edge order.
std::vector<CompletePath> complete_paths(const DecisionTree& tree);

// o(Gamma): drops every node below a *-labeled edge of an e-tree.
DecisionTree prune_star(const DecisionTree& tree);

// Structural conformance of an artifact to a system: working-node
// attributes belong to A(S), fan-out is exactly V_S(a) resp. EV_S(a), rule
// indices are in range.  On failure `reason`, when given, says why.
bool conforms_to(const DecisionTree& tree, const RuleSystem& s, std::string* reason = nullptr);
bool conforms_to(const DecisionGraph& g, const RuleSystem& s, std::string* reason = nullptr);
bool conforms_to(const DecisionGraphWithWriting& g, const RuleSystem& s,
                 std::string* reason = nullptr);

}  // namespace ruletree

#endif  // RULETREE_TREES_HPP
