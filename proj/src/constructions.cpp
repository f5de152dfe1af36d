#include "ruletree/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ruletree {

namespace {

Flavor flavor_of(ProblemKind kind) {
    return is_extended(kind) ? Flavor::extended : Flavor::ordinary;
}

std::vector<Value> fanout_values(const RuleSystem& s, Attribute a, ProblemKind kind) {
    return is_extended(kind) ? s.stats().extended_values_of(a) : s.stats().values_of(a);
}

std::optional<std::size_t> first_zero_length_rule(const RuleSystem& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.rule(i).length() == 0) return i;
    }
    return std::nullopt;
}

// The lowest-index rule whose left-hand side is exactly (a = v); exists in
// every d(S)=1 system without length-0 rules.
std::size_t rule_for_condition(const RuleSystem& s, Attribute a, Value v) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& r = s.rule(i);
        if (r.length() == 1 && r.conditions()[0].attribute == a && r.conditions()[0].value == v) {
            return i;
        }
    }
    throw std::logic_error("no rule with left-hand side " + to_string(Equation{a, v}));
}

}  // namespace

DecisionTree build_path_tree_k1(const RuleSystem& s, ProblemKind kind) {
    if (base_kind(kind) != kind) {
        throw std::invalid_argument("build_path_tree_k1 handles the SR/AD/AR problems");
    }
    const auto& st = s.stats();
    if (st.max_value_count != 1) throw std::invalid_argument("build_path_tree_k1 requires k(S)=1");

    std::vector<std::size_t> all(s.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<TreeNode> nodes;
    for (std::size_t i = 0; i < st.attribute_count; ++i) {
        nodes.push_back(WorkingNode{
            st.attributes[i],
            {TreeEdge{st.values[i][0], static_cast<NodeId>(i + 1)}}});
    }
    nodes.push_back(TerminalNode{all});
    return DecisionTree(Flavor::ordinary, std::move(nodes), 0);
}

DecisionTree build_tree_d1(const RuleSystem& s, ProblemKind kind) {
    if (kind != ProblemKind::sr && kind != ProblemKind::esr) {
        throw std::invalid_argument("build_tree_d1 handles the SR/ESR problems");
    }
    const auto& st = s.stats();
    if (st.max_rule_length > 1) throw std::invalid_argument("build_tree_d1 requires d(S)=1");

    if (auto zero = first_zero_length_rule(s)) {
        std::vector<TreeNode> nodes{TerminalNode{{*zero}}};
        return DecisionTree(flavor_of(kind), std::move(nodes), 0);
    }

    if (kind == ProblemKind::sr) {
        // Depth-1 fan on the smallest attribute.
        Attribute a = st.attributes.front();
        std::vector<TreeNode> nodes;
        nodes.push_back(WorkingNode{a, {}});
        std::vector<TreeEdge> edges;
        for (const auto& v : st.values_of(a)) {
            edges.push_back(TreeEdge{v, static_cast<NodeId>(nodes.size())});
            nodes.push_back(TerminalNode{{rule_for_condition(s, a, v)}});
        }
        std::get<WorkingNode>(nodes[0]).edges = std::move(edges);
        return DecisionTree(Flavor::ordinary, std::move(nodes), 0);
    }

    // ESR: a spine of * edges through every attribute; numeric edges leave
    // the spine into singleton terminals, the last * edge ends at the empty
    // terminal.
    std::vector<TreeNode> nodes;
    std::vector<NodeId> spine;
    for (const auto& a : st.attributes) {
        spine.push_back(static_cast<NodeId>(nodes.size()));
        nodes.push_back(WorkingNode{a, {}});
        std::vector<TreeEdge> edges;
        for (const auto& v : st.values_of(a)) {
            edges.push_back(TreeEdge{v, static_cast<NodeId>(nodes.size())});
            nodes.push_back(TerminalNode{{rule_for_condition(s, a, v)}});
        }
        std::get<WorkingNode>(nodes[spine.back()]).edges = std::move(edges);
    }
    NodeId empty_terminal = static_cast<NodeId>(nodes.size());
    nodes.push_back(TerminalNode{{}});
    for (std::size_t i = 0; i < spine.size(); ++i) {
        NodeId next = i + 1 < spine.size() ? spine[i + 1] : empty_terminal;
        std::get<WorkingNode>(nodes[spine[i]])
            .edges.push_back(TreeEdge{Value::star(), next});
    }
    return DecisionTree(Flavor::extended, std::move(nodes), spine.front());
}

namespace {

// Appends the gadget for rule r to `nodes`: a node per condition, the
// accepting node, and edges routed to `fallthrough` on any mismatch.
// Returns the gadget's root.  `accept` builds the accepting node and may
// itself link to `fallthrough`.
template <typename Node, typename MakeAccept>
NodeId append_gadget(std::vector<Node>& nodes, const RuleSystem& s, std::size_t rule_index,
                     ProblemKind kind, NodeId fallthrough, MakeAccept make_accept) {
    const Rule& r = s.rule(rule_index);
    NodeId first = static_cast<NodeId>(nodes.size());
    for (std::size_t j = 0; j < r.length(); ++j) {
        nodes.push_back(WorkingNode{r.conditions()[j].attribute, {}});
    }
    NodeId accept = make_accept(nodes);
    for (std::size_t j = 0; j < r.length(); ++j) {
        NodeId on_match = j + 1 < r.length() ? first + static_cast<NodeId>(j) + 1 : accept;
        std::vector<TreeEdge> edges;
        for (const auto& v : fanout_values(s, r.conditions()[j].attribute, kind)) {
            edges.push_back(TreeEdge{v, v == r.conditions()[j].value ? on_match : fallthrough});
        }
        std::get<WorkingNode>(nodes[first + j]).edges = std::move(edges);
    }
    return first;
}

}  // namespace

DecisionGraph build_rule_gadget(const RuleSystem& s, std::size_t rule_index, ProblemKind kind) {
    if (s.rule(rule_index).length() == 0) {
        throw std::invalid_argument("a rule gadget needs a rule of positive length");
    }
    std::vector<TreeNode> nodes;
    // Terminals first: {r} then the empty fall-through.
    NodeId empty_terminal = 1;
    nodes.push_back(TerminalNode{{rule_index}});
    nodes.push_back(TerminalNode{{}});
    NodeId root = append_gadget(nodes, s, rule_index, kind, empty_terminal,
                                [&](std::vector<TreeNode>&) -> NodeId { return 0; });
    return DecisionGraph(flavor_of(kind), std::move(nodes), root);
}

DecisionGraph build_dag_chain(const RuleSystem& s, ProblemKind kind) {
    if (kind != ProblemKind::sr && kind != ProblemKind::esr) {
        throw std::invalid_argument("build_dag_chain handles the SR/ESR problems");
    }
    if (auto zero = first_zero_length_rule(s)) {
        std::vector<TreeNode> nodes{TerminalNode{{*zero}}};
        return DecisionGraph(flavor_of(kind), std::move(nodes), 0);
    }
    std::vector<TreeNode> nodes;
    nodes.push_back(TerminalNode{{}});  // the final fall-through
    NodeId next_root = 0;
    for (std::size_t i = s.size(); i-- > 0;) {
        NodeId fallthrough = next_root;
        NodeId accept = static_cast<NodeId>(nodes.size());
        nodes.push_back(TerminalNode{{i}});
        next_root = append_gadget(nodes, s, i, kind, fallthrough,
                                  [&](std::vector<TreeNode>&) -> NodeId { return accept; });
    }
    return DecisionGraph(flavor_of(kind), std::move(nodes), next_root);
}

DecisionGraphWithWriting build_writing_gadget(const RuleSystem& s, std::size_t rule_index,
                                              ProblemKind kind) {
    std::vector<GraphNode> nodes;
    nodes.push_back(TerminalNode{{}});  // the W terminal
    NodeId terminal = 0;
    NodeId root;
    if (s.rule(rule_index).length() == 0) {
        root = static_cast<NodeId>(nodes.size());
        nodes.push_back(WritingNode{rule_index, terminal});
    } else {
        root = append_gadget(nodes, s, rule_index, kind, terminal,
                             [&](std::vector<GraphNode>& ns) -> NodeId {
                                 NodeId id = static_cast<NodeId>(ns.size());
                                 ns.push_back(WritingNode{rule_index, terminal});
                                 return id;
                             });
    }
    return DecisionGraphWithWriting(flavor_of(kind), std::move(nodes), root);
}

DecisionGraphWithWriting build_dagw_chain(const RuleSystem& s, ProblemKind kind) {
    std::vector<GraphNode> nodes;
    nodes.push_back(TerminalNode{{}});  // the single W terminal
    NodeId next_root = 0;
    for (std::size_t i = s.size(); i-- > 0;) {
        NodeId exit = next_root;
        if (s.rule(i).length() == 0) {
            next_root = static_cast<NodeId>(nodes.size());
            nodes.push_back(WritingNode{i, exit});
        } else {
            next_root = append_gadget(nodes, s, i, kind, exit,
                                      [&](std::vector<GraphNode>& ns) -> NodeId {
                                          NodeId id = static_cast<NodeId>(ns.size());
                                          ns.push_back(WritingNode{i, exit});
                                          return id;
                                      });
        }
    }
    return DecisionGraphWithWriting(flavor_of(kind), std::move(nodes), next_root);
}

// ── Worst-case families ─────────────────────────────────────────────────────

namespace {

Rule pair_rule(std::size_t first_attr, std::size_t second_attr, std::uint64_t v,
               std::uint64_t decision) {
    return Rule({Equation{attr(static_cast<std::uint32_t>(first_attr)), Value(v)},
                 Equation{attr(static_cast<std::uint32_t>(second_attr)), Value(v)}},
                decision);
}

Rule run_rule(std::size_t first_attr, std::size_t count, std::uint64_t decision) {
    std::vector<Equation> conds;
    for (std::size_t j = 0; j < count; ++j) {
        conds.push_back(Equation{attr(static_cast<std::uint32_t>(first_attr + j)), Value(0)});
    }
    return Rule(std::move(conds), decision);
}

}  // namespace

RuleSystem gen_family(FamilyKind which, FamilyParams p) {
    if (p.n < 1 || p.k < 1 || p.d < 1) {
        throw std::invalid_argument("family parameters must be positive");
    }
    std::vector<Rule> rules;
    switch (which) {
        case FamilyKind::l9:
            if (p.d < 2 || p.k < 2) throw std::invalid_argument("L9 requires d >= 2 and k >= 2");
            for (std::size_t i = 1; i <= p.n; ++i) {
                rules.push_back(pair_rule(2 * i - 1, 2 * i, 0, 0));
                rules.push_back(pair_rule(2 * i - 1, 2 * i, 1, 0));
            }
            for (std::uint64_t j = 2; j < p.k; ++j) rules.push_back(pair_rule(1, 2, j, 0));
            rules.push_back(run_rule(2 * p.n + 1, p.d, 0));
            break;
        case FamilyKind::l10:
            if (p.d < 2) throw std::invalid_argument("L10 requires d >= 2");
            for (std::size_t i = 1; i <= p.n; ++i) rules.push_back(pair_rule(2 * i - 1, 2 * i, 0, 0));
            rules.push_back(run_rule(2 * p.n + 1, p.d, 0));
            break;
        case FamilyKind::l11a:
            for (std::size_t i = 1; i <= p.n; ++i) {
                rules.push_back(Rule({Equation{attr(static_cast<std::uint32_t>(i)), Value(0)}}, i));
            }
            rules.push_back(run_rule(p.n + 1, p.d, p.n + 1));
            break;
        case FamilyKind::l11b:
            if (p.k < 2) throw std::invalid_argument("L11b requires k >= 2");
            for (std::size_t i = 1; i <= p.n; ++i) {
                rules.push_back(
                    Rule({Equation{attr(static_cast<std::uint32_t>(i)), Value(0)}}, 2 * i - 1));
                rules.push_back(
                    Rule({Equation{attr(static_cast<std::uint32_t>(i)), Value(1)}}, 2 * i));
            }
            rules.push_back(run_rule(p.n + 1, p.d, 0));
            for (std::uint64_t j = 2; j < p.k; ++j) {
                rules.push_back(Rule({Equation{attr(1), Value(j)}}, 0));
            }
            break;
    }
    return RuleSystem(std::move(rules));
}

std::optional<FamilyKind> parse_family_kind(std::string_view text) {
    if (text == "l9") return FamilyKind::l9;
    if (text == "l10") return FamilyKind::l10;
    if (text == "l11a") return FamilyKind::l11a;
    if (text == "l11b") return FamilyKind::l11b;
    return std::nullopt;
}

}  // namespace ruletree
