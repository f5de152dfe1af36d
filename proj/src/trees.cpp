#include "ruletree/trees.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace ruletree {

namespace {

// Shared structural checks for node vectors: ids in range, edge labels
// strictly increasing, terminal labels sorted and unique.
template <typename Node>
void check_nodes(const std::vector<Node>& nodes, NodeId root) {
    if (nodes.empty()) throw std::invalid_argument("artifact has no nodes");
    if (root >= nodes.size()) throw std::invalid_argument("artifact root id out of range");
    for (const auto& node : nodes) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, WorkingNode>) {
                    if (n.edges.empty()) {
                        throw std::invalid_argument("working node with no leaving edges");
                    }
                    for (std::size_t i = 0; i < n.edges.size(); ++i) {
                        if (n.edges[i].target >= nodes.size()) {
                            throw std::invalid_argument("edge target out of range");
                        }
                        if (i > 0 && !(n.edges[i - 1].value < n.edges[i].value)) {
                            throw std::invalid_argument("edge labels must be distinct and sorted");
                        }
                    }
                } else if constexpr (std::is_same_v<T, TerminalNode>) {
                    if (!std::is_sorted(n.rule_set.begin(), n.rule_set.end()) ||
                        std::adjacent_find(n.rule_set.begin(), n.rule_set.end()) !=
                            n.rule_set.end()) {
                        throw std::invalid_argument("terminal label must be a sorted set");
                    }
                } else {
                    if (n.next >= nodes.size()) {
                        throw std::invalid_argument("writing-node edge target out of range");
                    }
                }
            },
            node);
    }
}

template <typename Node>
std::vector<NodeId> targets_of(const Node& node) {
    std::vector<NodeId> out;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WorkingNode>) {
                for (const auto& e : n.edges) out.push_back(e.target);
            } else if constexpr (std::is_same_v<T, WritingNode>) {
                out.push_back(n.next);
            }
        },
        node);
    return out;
}

// No directed cycle anywhere, no edge into the root, and for trees exactly
// one entering edge per non-root node (which also forces reachability).
// Graphs may carry unreachable nodes: a chained gadget whose fall-through
// edges all coincide with match edges keeps its fall-through terminal.
template <typename Node>
void check_shape(const std::vector<Node>& nodes, NodeId root, bool require_tree) {
    std::vector<int> indegree(nodes.size(), 0);
    for (const auto& node : nodes) {
        for (NodeId t : targets_of(node)) indegree[t]++;
    }
    if (indegree[root] != 0) throw std::invalid_argument("root has an entering edge");
    if (require_tree) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (i != root && indegree[i] != 1) {
                throw std::invalid_argument("tree node must have exactly one entering edge");
            }
        }
    }
    // Cycle detection by coloring.
    std::vector<int> color(nodes.size(), 0);
    std::function<void(NodeId)> visit = [&](NodeId v) {
        if (color[v] == 1) throw std::invalid_argument("artifact contains a directed cycle");
        if (color[v] == 2) return;
        color[v] = 1;
        for (NodeId t : targets_of(nodes[v])) visit(t);
        color[v] = 2;
    };
    visit(root);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (color[i] == 0) visit(static_cast<NodeId>(i));
    }
    if (require_tree) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (color[i] != 2) throw std::invalid_argument("tree has an unreachable node");
        }
    }
}

const WorkingNode* as_working(const TreeNode& n) { return std::get_if<WorkingNode>(&n); }
const TerminalNode* as_terminal(const TreeNode& n) { return std::get_if<TerminalNode>(&n); }

// Edge lookup shared by every evaluator: exact match first, then the * edge
// for e-flavor artifacts.
NodeId follow_edge(const WorkingNode& node, Value v, Flavor flavor, Value* taken) {
    for (const auto& e : node.edges) {
        if (e.value == v) {
            *taken = e.value;
            return e.target;
        }
    }
    if (flavor == Flavor::extended) {
        for (const auto& e : node.edges) {
            if (e.value.is_star()) {
                *taken = e.value;
                return e.target;
            }
        }
    }
    throw std::invalid_argument("no edge labeled " + to_string(v) + " at attribute " +
                                to_string(node.attribute));
}

}  // namespace

DecisionTree::DecisionTree(Flavor flavor, std::vector<TreeNode> nodes, NodeId root)
    : flavor_(flavor), nodes_(std::move(nodes)), root_(root) {
    check_nodes(nodes_, root_);
    check_shape(nodes_, root_, /*require_tree=*/true);
}

DecisionGraph::DecisionGraph(Flavor flavor, std::vector<TreeNode> nodes, NodeId root)
    : flavor_(flavor), nodes_(std::move(nodes)), root_(root) {
    check_nodes(nodes_, root_);
    check_shape(nodes_, root_, /*require_tree=*/false);
}

DecisionGraphWithWriting::DecisionGraphWithWriting(Flavor flavor, std::vector<GraphNode> nodes,
                                                   NodeId root)
    : flavor_(flavor), nodes_(std::move(nodes)), root_(root) {
    check_nodes(nodes_, root_);
    check_shape(nodes_, root_, /*require_tree=*/false);
    std::size_t terminals = 0;
    for (const auto& n : nodes_) {
        if (std::holds_alternative<TerminalNode>(n)) ++terminals;
    }
    if (terminals != 1) {
        throw std::invalid_argument("a decision graph with writing has exactly one terminal");
    }
}

EquationSystem CompletePath::equations() const {
    std::vector<Equation> eqs;
    eqs.reserve(attributes.size());
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        eqs.push_back(Equation{attributes[i], edge_values[i]});
    }
    return EquationSystem(std::move(eqs));
}

CompletePath eval_tree(const DecisionTree& tree, const RuleSystem&, const ValueTuple& t) {
    CompletePath path;
    NodeId at = tree.root();
    while (true) {
        path.nodes.push_back(at);
        if (const auto* term = as_terminal(tree.nodes()[at])) {
            path.label = term->rule_set;
            return path;
        }
        const auto& work = *as_working(tree.nodes()[at]);
        auto v = t.value_of(work.attribute);
        if (!v) {
            throw std::invalid_argument("tuple assigns no value to " + to_string(work.attribute));
        }
        Value taken;
        NodeId next = follow_edge(work, *v, tree.flavor(), &taken);
        path.attributes.push_back(work.attribute);
        path.edge_values.push_back(taken);
        at = next;
    }
}

std::vector<std::size_t> eval_graph(const DecisionGraph& g, const RuleSystem&,
                                    const ValueTuple& t) {
    NodeId at = g.root();
    while (true) {
        if (const auto* term = as_terminal(g.nodes()[at])) return term->rule_set;
        const auto& work = *as_working(g.nodes()[at]);
        auto v = t.value_of(work.attribute);
        if (!v) {
            throw std::invalid_argument("tuple assigns no value to " + to_string(work.attribute));
        }
        Value taken;
        at = follow_edge(work, *v, g.flavor(), &taken);
    }
}

std::vector<std::size_t> eval_graph_writing(const DecisionGraphWithWriting& g,
                                            const RuleSystem&, const ValueTuple& t) {
    std::vector<std::size_t> written;
    NodeId at = g.root();
    while (true) {
        const auto& node = g.nodes()[at];
        if (std::holds_alternative<TerminalNode>(node)) {
            std::sort(written.begin(), written.end());
            written.erase(std::unique(written.begin(), written.end()), written.end());
            return written;
        }
        if (const auto* w = std::get_if<WritingNode>(&node)) {
            written.push_back(w->rule);
            at = w->next;
            continue;
        }
        const auto& work = std::get<WorkingNode>(node);
        auto v = t.value_of(work.attribute);
        if (!v) {
            throw std::invalid_argument("tuple assigns no value to " + to_string(work.attribute));
        }
        Value taken;
        at = follow_edge(work, *v, g.flavor(), &taken);
    }
}

namespace {

// h over a DAG: longest root-to-terminal path counted in working nodes.
template <typename Node>
std::size_t max_working_depth(const std::vector<Node>& nodes, NodeId root) {
    std::vector<std::int64_t> memo(nodes.size(), -1);
    std::function<std::size_t(NodeId)> depth_of = [&](NodeId v) -> std::size_t {
        if (memo[v] >= 0) return static_cast<std::size_t>(memo[v]);
        std::size_t best = 0;
        bool is_working = false;
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, WorkingNode>) {
                    is_working = true;
                    for (const auto& e : n.edges) best = std::max(best, depth_of(e.target));
                } else if constexpr (std::is_same_v<T, WritingNode>) {
                    best = depth_of(n.next);
                }
            },
            nodes[v]);
        std::size_t result = best + (is_working ? 1 : 0);
        memo[v] = static_cast<std::int64_t>(result);
        return result;
    };
    return depth_of(root);
}

template <typename Node>
std::size_t count_distinct_terminal_labels(const std::vector<Node>& nodes) {
    std::set<std::vector<std::size_t>> labels;
    for (const auto& n : nodes) {
        if (const auto* term = std::get_if<TerminalNode>(&n)) labels.insert(term->rule_set);
    }
    return labels.size();
}

}  // namespace

TreeMetrics metrics(const DecisionTree& tree) {
    return TreeMetrics{max_working_depth(tree.nodes(), tree.root()), tree.nodes().size(),
                       count_distinct_terminal_labels(tree.nodes())};
}

TreeMetrics metrics(const DecisionGraph& g) {
    return TreeMetrics{max_working_depth(g.nodes(), g.root()), g.nodes().size(),
                       count_distinct_terminal_labels(g.nodes())};
}

TreeMetrics metrics(const DecisionGraphWithWriting& g) {
    return TreeMetrics{max_working_depth(g.nodes(), g.root()), g.nodes().size(),
                       count_distinct_terminal_labels(g.nodes())};
}

std::vector<CompletePath> complete_paths(const DecisionTree& tree) {
    std::vector<CompletePath> out;
    CompletePath current;
    std::function<void(NodeId)> walk = [&](NodeId v) {
        current.nodes.push_back(v);
        if (const auto* term = as_terminal(tree.nodes()[v])) {
            CompletePath done = current;
            done.label = term->rule_set;
            out.push_back(std::move(done));
        } else {
            const auto& work = *as_working(tree.nodes()[v]);
            for (const auto& e : work.edges) {
                current.attributes.push_back(work.attribute);
                current.edge_values.push_back(e.value);
                walk(e.target);
                current.attributes.pop_back();
                current.edge_values.pop_back();
            }
        }
        current.nodes.pop_back();
    };
    walk(tree.root());
    return out;
}

DecisionTree prune_star(const DecisionTree& tree) {
    if (tree.flavor() != Flavor::extended) {
        throw std::invalid_argument("prune_star expects an e-flavor tree");
    }
    std::vector<TreeNode> nodes;
    std::function<NodeId(NodeId)> copy_from = [&](NodeId v) -> NodeId {
        const auto& node = tree.nodes()[v];
        NodeId id = static_cast<NodeId>(nodes.size());
        if (const auto* term = as_terminal(node)) {
            nodes.push_back(*term);
            return id;
        }
        const auto& work = *as_working(node);
        nodes.push_back(WorkingNode{work.attribute, {}});
        std::vector<TreeEdge> kept;
        for (const auto& e : work.edges) {
            if (e.value.is_star()) continue;
            kept.push_back(TreeEdge{e.value, copy_from(e.target)});
        }
        std::get<WorkingNode>(nodes[id]).edges = std::move(kept);
        return id;
    };
    NodeId root = copy_from(tree.root());
    return DecisionTree(Flavor::ordinary, std::move(nodes), root);
}

namespace {

template <typename Node>
bool conforms_impl(const std::vector<Node>& nodes, Flavor flavor, const RuleSystem& s,
                   std::string* reason) {
    auto fail = [&](std::string why) {
        if (reason) *reason = std::move(why);
        return false;
    };
    const auto& st = s.stats();
    for (const auto& node : nodes) {
        if (const auto* work = std::get_if<WorkingNode>(&node)) {
            auto pos = st.attribute_position(work->attribute);
            if (!pos) {
                return fail(to_string(work->attribute) + " is not an attribute of the system");
            }
            std::vector<Value> expected =
                flavor == Flavor::extended ? st.extended_values_of(work->attribute)
                                           : st.values[*pos];
            if (work->edges.size() != expected.size()) {
                return fail("node for " + to_string(work->attribute) + " has " +
                            std::to_string(work->edges.size()) + " edges, expected " +
                            std::to_string(expected.size()));
            }
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (work->edges[i].value != expected[i]) {
                    return fail("edge labels at " + to_string(work->attribute) +
                                " do not match the value set");
                }
            }
        } else if (const auto* term = std::get_if<TerminalNode>(&node)) {
            for (auto idx : term->rule_set) {
                if (idx >= s.size()) return fail("terminal refers to rule " + std::to_string(idx));
            }
        } else if constexpr (std::is_same_v<Node, GraphNode>) {
            const auto& w = std::get<WritingNode>(node);
            if (w.rule >= s.size()) return fail("writing node refers to rule " + std::to_string(w.rule));
        }
    }
    return true;
}

}  // namespace

bool conforms_to(const DecisionTree& tree, const RuleSystem& s, std::string* reason) {
    return conforms_impl(tree.nodes(), tree.flavor(), s, reason);
}

bool conforms_to(const DecisionGraph& g, const RuleSystem& s, std::string* reason) {
    return conforms_impl(g.nodes(), g.flavor(), s, reason);
}

bool conforms_to(const DecisionGraphWithWriting& g, const RuleSystem& s, std::string* reason) {
    return conforms_impl(g.nodes(), g.flavor(), s, reason);
}

}  // namespace ruletree
