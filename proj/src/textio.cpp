#include "ruletree/textio.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace ruletree {

namespace {

constexpr std::string_view kAndSign = "∧";    // the conjunction symbol
constexpr std::string_view kArrowSign = "→";  // the arrow symbol

std::string number_text(std::uint64_t v, Syntax syntax) {
    if (syntax == Syntax::ascii_decimal) return std::to_string(v);
    std::string bits;
    do {
        bits.push_back(static_cast<char>('0' + (v & 1)));
        v >>= 1;
    } while (v != 0);
    std::reverse(bits.begin(), bits.end());
    return bits;
}

// ── Rule-system lexer/parser ────────────────────────────────────────────────

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t column = 1;
    Syntax syntax;

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line, column);
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos < text.size(); ++i, ++pos) {
            if (text[pos] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    }

    void skip_space() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' ||
                                     text[pos] == '\n')) {
            advance(1);
        }
    }

    bool at_end() {
        skip_space();
        return pos == text.size();
    }

    bool try_consume(std::string_view token) {
        skip_space();
        if (text.substr(pos, token.size()) != token) return false;
        advance(token.size());
        return true;
    }

    void expect(std::string_view token, const std::string& what) {
        if (!try_consume(token)) fail("expected " + what);
    }

    bool try_consume_and() { return try_consume("&") || try_consume(kAndSign); }

    void expect_arrow() {
        if (!try_consume("->") && !try_consume(kArrowSign)) fail("expected '->'");
    }

    std::uint64_t number(const std::string& what) {
        skip_space();
        if (pos == text.size() || text[pos] < '0' || text[pos] > '9') {
            fail("expected " + what);
        }
        const char max_digit = syntax == Syntax::binary_word ? '1' : '9';
        std::uint64_t value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= max_digit) {
            std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
            value = syntax == Syntax::binary_word ? value * 2 + digit : value * 10 + digit;
            advance(1);
        }
        return value;
    }
};

}  // namespace

RuleSystem parse_system(std::string_view text, Syntax syntax) {
    Lexer lex{text, 0, 1, 1, syntax};
    std::vector<Rule> rules;
    while (!lex.at_end()) {
        std::size_t rule_line = lex.line;
        std::size_t rule_column = lex.column;
        std::vector<Equation> conditions;
        while (lex.try_consume("(")) {
            lex.expect("a", "an attribute");
            std::uint64_t index = lex.number("an attribute index");
            if (index > std::numeric_limits<std::uint32_t>::max()) {
                lex.fail("attribute index out of range");
            }
            lex.expect("=", "'='");
            std::uint64_t value = lex.number("a value");
            lex.expect(")", "')'");
            conditions.push_back(Equation{attr(static_cast<std::uint32_t>(index)), Value(value)});
            if (!lex.try_consume_and()) break;
            lex.skip_space();
            if (lex.pos == lex.text.size() || lex.text[lex.pos] != '(') {
                lex.fail("expected a condition after '&'");
            }
        }
        lex.expect_arrow();
        std::uint64_t decision = lex.number("a decision");
        lex.expect(";", "';'");
        try {
            rules.emplace_back(std::move(conditions), decision);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), rule_line, rule_column);
        }
        for (std::size_t i = 0; i + 1 < rules.size(); ++i) {
            if (rules_equal(rules[i], rules.back())) {
                throw ParseError("duplicate rule", rule_line, rule_column);
            }
        }
    }
    if (rules.empty()) {
        throw ParseError("a rule system must contain at least one rule", lex.line, lex.column);
    }
    return RuleSystem(std::move(rules));
}

std::string serialize_rule(const Rule& r, Syntax syntax) {
    std::string out;
    for (std::size_t i = 0; i < r.conditions().size(); ++i) {
        if (i > 0) out += syntax == Syntax::binary_word ? std::string(kAndSign) : "&";
        const auto& c = r.conditions()[i];
        out += "(a" + number_text(c.attribute.index, syntax) + "=" +
               number_text(c.value.number(), syntax) + ")";
    }
    out += syntax == Syntax::binary_word ? std::string(kArrowSign) : "->";
    out += number_text(r.decision(), syntax) + ";";
    return out;
}

std::string serialize_system(const RuleSystem& s, Syntax syntax) {
    std::string out;
    for (const auto& r : s.rules()) {
        out += serialize_rule(r, syntax);
        out += "\n";
    }
    return out;
}

namespace {

std::size_t bit_length(std::uint64_t v) {
    std::size_t bits = 1;
    while (v >>= 1) ++bits;
    return bits;
}

}  // namespace

std::size_t size_of(const RuleSystem& s) {
    std::size_t total = 0;
    for (const auto& r : s.rules()) {
        std::size_t length = 0;
        for (const auto& c : r.conditions()) {
            // ( a <index> = <value> )
            length += 4 + bit_length(c.attribute.index) + bit_length(c.value.number());
        }
        if (r.length() > 0) length += r.length() - 1;  // conjunction signs
        length += 1 + bit_length(r.decision()) + 1;    // arrow, decision, ';'
        total += length;
    }
    return total;
}

// ── DOT export ──────────────────────────────────────────────────────────────

namespace {

std::string rule_set_text(const std::vector<std::size_t>& rules) {
    std::string out = "{";
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (i > 0) out += ",";
        out += "r" + std::to_string(rules[i]);
    }
    return out + "}";
}

std::string joined_indices(const std::vector<std::size_t>& rules) {
    std::string out;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(rules[i]);
    }
    return out;
}

template <typename Node>
std::string export_dot_impl(const std::vector<Node>& nodes, NodeId root, Flavor flavor,
                            std::string_view artifact, const RuleSystem& s) {
    // Renumber depth-first from the root so equal artifacts print equal.
    std::vector<std::int64_t> new_id(nodes.size(), -1);
    std::vector<NodeId> order;
    std::function<void(NodeId)> visit = [&](NodeId v) {
        if (new_id[v] >= 0) return;
        new_id[v] = static_cast<std::int64_t>(order.size());
        order.push_back(v);
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, WorkingNode>) {
                    for (const auto& e : n.edges) visit(e.target);
                } else if constexpr (std::is_same_v<T, WritingNode>) {
                    visit(n.next);
                }
            },
            nodes[v]);
    };
    visit(root);
    for (NodeId v = 0; v < nodes.size(); ++v) {
        if (new_id[v] < 0) visit(v);  // nodes the root cannot reach, kept for the counts
    }

    std::ostringstream out;
    out << "digraph decision_artifact {\n";
    out << "  graph [artifact=\"" << artifact << "\", flavor=\""
        << (flavor == Flavor::extended ? "e" : "o") << "\", root=\"n0\"];\n";
    for (NodeId old : order) {
        std::int64_t id = new_id[old];
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, WorkingNode>) {
                    out << "  n" << id << " [kind=\"work\", attr=\"" << n.attribute.index
                        << "\", label=\"" << to_string(n.attribute) << "\"];\n";
                } else if constexpr (std::is_same_v<T, TerminalNode>) {
                    if (artifact == "dagw") {
                        out << "  n" << id << " [kind=\"term\", shape=\"box\", label=\"W\"];\n";
                    } else {
                        out << "  n" << id << " [kind=\"term\", rules=\"" << joined_indices(n.rule_set)
                            << "\", shape=\"box\", label=\"" << rule_set_text(n.rule_set)
                            << "\"];\n";
                    }
                } else {
                    out << "  n" << id << " [kind=\"write\", rule=\"" << n.rule
                        << "\", shape=\"note\", label=\""
                        << serialize_rule(s.rule(n.rule), Syntax::ascii_decimal) << "\"];\n";
                }
            },
            nodes[old]);
    }
    for (NodeId old : order) {
        std::int64_t id = new_id[old];
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, WorkingNode>) {
                    for (const auto& e : n.edges) {
                        out << "  n" << id << " -> n" << new_id[e.target] << " [value=\""
                            << to_string(e.value) << "\", label=\"" << to_string(e.value)
                            << "\"];\n";
                    }
                } else if constexpr (std::is_same_v<T, WritingNode>) {
                    out << "  n" << id << " -> n" << new_id[n.next] << ";\n";
                }
            },
            nodes[old]);
    }
    out << "}\n";
    return out.str();
}

}  // namespace

std::string export_dot(const DecisionTree& tree, const RuleSystem& s) {
    return export_dot_impl(tree.nodes(), tree.root(), tree.flavor(), "tree", s);
}

std::string export_dot(const DecisionGraph& g, const RuleSystem& s) {
    return export_dot_impl(g.nodes(), g.root(), g.flavor(), "dag", s);
}

std::string export_dot(const DecisionGraphWithWriting& g, const RuleSystem& s) {
    return export_dot_impl(g.nodes(), g.root(), g.flavor(), "dagw", s);
}

// ── DOT import ──────────────────────────────────────────────────────────────

namespace {

using AttrMap = std::map<std::string, std::string, std::less<>>;

struct DotNode {
    AttrMap attrs;
    std::vector<std::pair<std::optional<Value>, std::string>> edges;  // value, target id
};

struct DotFile {
    AttrMap graph_attrs;
    std::map<std::string, DotNode> nodes;
    std::vector<std::string> node_order;
};

// Parses `key="value"` lists inside brackets.
AttrMap parse_attr_list(std::string_view text, std::size_t line) {
    AttrMap attrs;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    };
    skip();
    while (i < text.size()) {
        std::size_t eq = text.find('=', i);
        if (eq == std::string_view::npos) throw ParseError("malformed attribute list", line, i + 1);
        std::string key(text.substr(i, eq - i));
        while (!key.empty() && key.back() == ' ') key.pop_back();
        i = eq + 1;
        while (i < text.size() && text[i] == ' ') ++i;
        if (i >= text.size() || text[i] != '"') {
            throw ParseError("attribute values must be quoted", line, i + 1);
        }
        std::size_t close = text.find('"', i + 1);
        if (close == std::string_view::npos) {
            throw ParseError("unterminated attribute value", line, i + 1);
        }
        attrs[key] = std::string(text.substr(i + 1, close - i - 1));
        i = close + 1;
        skip();
    }
    return attrs;
}

std::string strip(std::string_view text) {
    std::size_t b = text.find_first_not_of(" \t\r");
    std::size_t e = text.find_last_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    return std::string(text.substr(b, e - b + 1));
}

DotFile parse_dot_file(std::string_view text) {
    DotFile file;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool in_graph = false;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view raw =
            text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string line = strip(raw);
        if (line.empty() || line.rfind("//", 0) == 0 || line.rfind("#", 0) == 0) continue;
        if (!in_graph) {
            if (line.rfind("digraph", 0) != 0) throw ParseError("expected 'digraph'", line_no, 1);
            in_graph = true;
            continue;
        }
        if (line == "}") break;
        if (!line.empty() && line.back() == ';') line.pop_back();

        std::size_t bracket = line.find('[');
        std::string head = strip(bracket == std::string::npos ? line : line.substr(0, bracket));
        AttrMap attrs;
        if (bracket != std::string::npos) {
            std::size_t close = line.rfind(']');
            if (close == std::string::npos || close < bracket) {
                throw ParseError("unterminated '['", line_no, bracket + 1);
            }
            attrs = parse_attr_list(
                std::string_view(line).substr(bracket + 1, close - bracket - 1), line_no);
        }

        std::size_t arrow = head.find("->");
        if (head == "graph") {
            file.graph_attrs.merge(attrs);
        } else if (arrow != std::string::npos) {
            std::string from = strip(std::string_view(head).substr(0, arrow));
            std::string to = strip(std::string_view(head).substr(arrow + 2));
            auto it = file.nodes.find(from);
            if (it == file.nodes.end()) {
                throw ParseError("edge from undeclared node " + from, line_no, 1);
            }
            std::optional<Value> value;
            if (auto v = attrs.find("value"); v != attrs.end()) {
                value = v->second == "*" ? Value::star()
                                         : Value(std::stoull(v->second));
            }
            it->second.edges.emplace_back(value, to);
        } else if (!head.empty() && head != "rankdir" && head.find('=') == std::string::npos) {
            if (file.nodes.emplace(head, DotNode{attrs, {}}).second) {
                file.node_order.push_back(head);
            }
        }
    }
    if (!in_graph) throw ParseError("not a DOT digraph", 1, 1);
    return file;
}

}  // namespace

Artifact parse_dot(std::string_view text) {
    DotFile file = parse_dot_file(text);
    if (file.node_order.empty()) throw ParseError("the artifact has no nodes", 1, 1);

    auto graph_attr = [&](const char* key) -> std::optional<std::string> {
        auto it = file.graph_attrs.find(key);
        if (it == file.graph_attrs.end()) return std::nullopt;
        return it->second;
    };
    std::string artifact = graph_attr("artifact").value_or("tree");
    Flavor flavor = graph_attr("flavor").value_or("o") == "e" ? Flavor::extended : Flavor::ordinary;
    std::string root_name = graph_attr("root").value_or(file.node_order.front());

    std::map<std::string, NodeId> ids;
    for (const auto& name : file.node_order) {
        ids[name] = static_cast<NodeId>(ids.size());
    }
    if (!ids.count(root_name)) throw ParseError("root node " + root_name + " not found", 1, 1);

    auto target_id = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it == ids.end()) throw ParseError("edge into undeclared node " + name, 1, 1);
        return it->second;
    };

    auto build_node = [&](const DotNode& n, bool writing_allowed) -> GraphNode {
        auto kind_it = n.attrs.find("kind");
        std::string kind = kind_it == n.attrs.end() ? "term" : kind_it->second;
        if (kind == "work") {
            auto attr_it = n.attrs.find("attr");
            if (attr_it == n.attrs.end()) throw ParseError("working node without attr", 1, 1);
            WorkingNode work{ruletree::attr(static_cast<std::uint32_t>(std::stoul(attr_it->second))), {}};
            for (const auto& [value, to] : n.edges) {
                if (!value) throw ParseError("working-node edge without a value", 1, 1);
                work.edges.push_back(TreeEdge{*value, target_id(to)});
            }
            std::sort(work.edges.begin(), work.edges.end(),
                      [](const TreeEdge& a, const TreeEdge& b) { return a.value < b.value; });
            return work;
        }
        if (kind == "write") {
            if (!writing_allowed) throw ParseError("writing node outside a dagw artifact", 1, 1);
            auto rule_it = n.attrs.find("rule");
            if (rule_it == n.attrs.end() || n.edges.size() != 1) {
                throw ParseError("writing node needs a rule and exactly one edge", 1, 1);
            }
            return WritingNode{std::stoull(rule_it->second), target_id(n.edges[0].second)};
        }
        TerminalNode term;
        if (auto rules_it = n.attrs.find("rules"); rules_it != n.attrs.end()) {
            std::stringstream ss(rules_it->second);
            std::string part;
            while (std::getline(ss, part, ',')) {
                if (!part.empty()) term.rule_set.push_back(std::stoull(part));
            }
            std::sort(term.rule_set.begin(), term.rule_set.end());
        }
        return term;
    };

    try {
        if (artifact == "dagw") {
            std::vector<GraphNode> nodes;
            for (const auto& name : file.node_order) {
                nodes.push_back(build_node(file.nodes.at(name), true));
            }
            return DecisionGraphWithWriting(flavor, std::move(nodes), ids.at(root_name));
        }
        std::vector<TreeNode> nodes;
        for (const auto& name : file.node_order) {
            GraphNode g = build_node(file.nodes.at(name), false);
            if (auto* w = std::get_if<WorkingNode>(&g)) {
                nodes.push_back(std::move(*w));
            } else {
                nodes.push_back(std::move(std::get<TerminalNode>(g)));
            }
        }
        if (artifact == "dag") {
            return DecisionGraph(flavor, std::move(nodes), ids.at(root_name));
        }
        return DecisionTree(flavor, std::move(nodes), ids.at(root_name));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

}  // namespace ruletree
