#include "ruletree/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <set>

namespace ruletree {

// ── Direct solutions ────────────────────────────────────────────────────────

SolutionSpec solve_direct(const RuleSystem& s, const ValueTuple& t, ProblemKind kind) {
    const bool extended = is_extended(kind);
    if (t.attributes() != s.stats().attributes) {
        throw std::invalid_argument("tuple domain does not match A(S)");
    }
    if (extended ? !t.in_extended_domain(s) : !t.in_base_domain(s)) {
        throw std::invalid_argument(extended ? "tuple is not in EV(S)" : "tuple is not in V(S)");
    }
    SolutionSpec spec;
    spec.kind = kind;
    std::set<std::uint64_t> decisions;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (is_realizable(s.rule(i), t)) {
            spec.realizable.push_back(i);
            decisions.insert(s.rule(i).decision());
        }
    }
    spec.decisions.assign(decisions.begin(), decisions.end());
    return spec;
}

std::vector<std::size_t> SolutionSpec::canonical(const RuleSystem& s) const {
    switch (base_kind(kind)) {
        case ProblemKind::ar:
            return realizable;
        case ProblemKind::ad: {
            std::vector<std::size_t> out;
            std::set<std::uint64_t> covered;
            for (auto idx : realizable) {  // ascending, so the first hit per decision wins
                if (covered.insert(s.rule(idx).decision()).second) out.push_back(idx);
            }
            return out;
        }
        default:  // sr
            if (realizable.empty()) return {};
            return {realizable.front()};
    }
}

bool validate_solution(const RuleSystem& s, const ValueTuple& t, ProblemKind kind,
                       const std::vector<std::size_t>& z) {
    SolutionSpec spec = solve_direct(s, t, kind);
    for (auto idx : z) {
        if (idx >= s.size()) return false;
        if (!std::binary_search(spec.realizable.begin(), spec.realizable.end(), idx)) {
            return false;  // a rule of Z is not realizable
        }
    }
    switch (base_kind(kind)) {
        case ProblemKind::ar:
            return z.size() == spec.realizable.size();  // Z subset of realizable + same size
        case ProblemKind::ad: {
            std::set<std::uint64_t> given;
            for (auto idx : z) given.insert(s.rule(idx).decision());
            return std::all_of(spec.decisions.begin(), spec.decisions.end(),
                               [&](std::uint64_t d) { return given.count(d) != 0; });
        }
        default:  // sr
            return !z.empty() || spec.realizable.empty();
    }
}

// ── Tree and graph validation ───────────────────────────────────────────────

bool validate_tree(const DecisionTree& tree, const RuleSystem& s, ProblemKind kind) {
    if ((tree.flavor() == Flavor::extended) != is_extended(kind)) return false;
    if (!conforms_to(tree, s)) return false;
    for (const auto& path : complete_paths(tree)) {
        EquationSystem k_xi = path.equations();
        if (!is_consistent(k_xi)) continue;
        std::vector<bool> in_label(s.size(), false);
        for (auto idx : path.label) in_label[idx] = true;
        for (auto idx : path.label) {
            if (!k_xi.includes(s.rule(idx).condition_set())) return false;
        }
        std::set<std::uint64_t> label_decisions;
        for (auto idx : path.label) label_decisions.insert(s.rule(idx).decision());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (in_label[i]) continue;
            switch (base_kind(kind)) {
                case ProblemKind::ar:
                    if (consistent_union(s.rule(i).condition_set(), k_xi)) return false;
                    break;
                case ProblemKind::ad:
                    if (!label_decisions.count(s.rule(i).decision()) &&
                        consistent_union(s.rule(i).condition_set(), k_xi)) {
                        return false;
                    }
                    break;
                default:  // sr
                    if (path.label.empty() &&
                        consistent_union(s.rule(i).condition_set(), k_xi)) {
                        return false;
                    }
                    break;
            }
        }
    }
    return true;
}

void for_each_tuple(const RuleSystem& s, bool extended,
                    const std::function<void(const ValueTuple&)>& fn, const Limits& limits) {
    const auto& st = s.stats();
    std::vector<std::vector<Value>> domains(st.attribute_count);
    std::size_t space = 1;
    for (std::size_t i = 0; i < st.attribute_count; ++i) {
        domains[i] = extended ? st.extended_values_of(st.attributes[i]) : st.values[i];
        if (space > limits.max_enumeration / domains[i].size()) {
            throw CapExceeded("tuple space is too large to enumerate");
        }
        space *= domains[i].size();
    }
    std::vector<std::size_t> idx(domains.size(), 0);
    std::vector<Value> vals(domains.size());
    while (true) {
        for (std::size_t i = 0; i < domains.size(); ++i) vals[i] = domains[i][idx[i]];
        fn(ValueTuple(st.attributes, vals));
        std::size_t pos = domains.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < domains[pos].size()) {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if (done) break;
    }
}

namespace {

template <typename Graph, typename Eval>
bool validate_graph_impl(const Graph& g, const RuleSystem& s, ProblemKind kind,
                         const Limits& limits, Eval eval) {
    if ((g.flavor() == Flavor::extended) != is_extended(kind)) return false;
    if (!conforms_to(g, s)) return false;
    bool ok = true;
    for_each_tuple(
        s, is_extended(kind),
        [&](const ValueTuple& t) {
            if (ok && !validate_solution(s, t, kind, eval(t))) ok = false;
        },
        limits);
    return ok;
}

}  // namespace

bool validate_graph(const DecisionGraph& g, const RuleSystem& s, ProblemKind kind,
                    const Limits& limits) {
    return validate_graph_impl(g, s, kind, limits,
                               [&](const ValueTuple& t) { return eval_graph(g, s, t); });
}

bool validate_graph(const DecisionGraphWithWriting& g, const RuleSystem& s, ProblemKind kind,
                    const Limits& limits) {
    return validate_graph_impl(g, s, kind, limits,
                               [&](const ValueTuple& t) { return eval_graph_writing(g, s, t); });
}

// ── Exhaustive search over subproblems ──────────────────────────────────────
//
// A search state is a partial assignment of values to A(S), encoded in
// mixed radix (digit 0 = unassigned, digit c > 0 = the c-th domain value).
// The residual problem is fully determined by the assignment, which makes
// the state the memoization key.

namespace {

struct RuleStatus {
    std::vector<std::size_t> contained;  // K(r) inside the assignment
    std::vector<std::size_t> pending;    // consistent with it, not contained
};

class SearchSpace {
public:
    SearchSpace(const RuleSystem& s, ProblemKind kind, const Limits& limits, bool size_caps)
        : s_(s), kind_(kind) {
        const auto& st = s.stats();
        const bool extended = is_extended(kind);
        if (size_caps) {
            if (st.attribute_count > limits.max_size_attributes) {
                throw CapExceeded("system too large for the exact node/label search");
            }
        } else {
            if (st.attribute_count > limits.max_depth_attributes ||
                st.max_value_count > limits.max_depth_values) {
                throw CapExceeded("system too large for the exact depth search");
            }
        }
        domains_.resize(st.attribute_count);
        stride_.resize(st.attribute_count);
        state_count_ = 1;
        for (std::size_t i = 0; i < st.attribute_count; ++i) {
            domains_[i] = extended ? st.extended_values_of(st.attributes[i]) : st.values[i];
            stride_[i] = state_count_;
            std::size_t radix = domains_[i].size() + 1;
            if (state_count_ > limits.max_states / radix) {
                throw CapExceeded("search state space exceeds the configured cap");
            }
            state_count_ *= radix;
        }
        // Rule conditions as (attribute slot, domain code).
        rule_conds_.resize(s.size());
        for (std::size_t r = 0; r < s.size(); ++r) {
            for (const auto& c : s.rule(r).conditions()) {
                std::size_t pos = *st.attribute_position(c.attribute);
                auto it = std::lower_bound(domains_[pos].begin(), domains_[pos].end(), c.value);
                rule_conds_[r].push_back(
                    {pos, static_cast<std::size_t>(it - domains_[pos].begin()) + 1});
            }
        }
    }

    const RuleSystem& system() const { return s_; }
    ProblemKind kind() const { return kind_; }
    std::size_t state_count() const { return state_count_; }
    std::size_t attribute_count() const { return domains_.size(); }
    const std::vector<Value>& domain(std::size_t slot) const { return domains_[slot]; }
    Attribute attribute(std::size_t slot) const { return s_.stats().attributes[slot]; }

    std::size_t digit(std::size_t state, std::size_t slot) const {
        return (state / stride_[slot]) % (domains_[slot].size() + 1);
    }
    std::size_t with_digit(std::size_t state, std::size_t slot, std::size_t code) const {
        return state + (code - digit(state, slot)) * stride_[slot];
    }

    RuleStatus status(std::size_t state) const {
        RuleStatus out;
        for (std::size_t r = 0; r < rule_conds_.size(); ++r) {
            bool dead = false;
            bool full = true;
            for (const auto& c : rule_conds_[r]) {
                std::size_t d = digit(state, c.pos);
                if (d == 0) {
                    full = false;
                } else if (d != c.code) {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            (full ? out.contained : out.pending).push_back(r);
        }
        return out;
    }

    // Valid terminal labels at a state, in the canonical-first order; empty
    // when the state admits no terminal.  For AD this is every label with
    // exactly one contained rule per contained decision.
    std::vector<std::vector<std::size_t>> terminal_labels(const RuleStatus& st,
                                                          std::size_t cap) const {
        std::vector<std::vector<std::size_t>> labels;
        switch (base_kind(kind_)) {
            case ProblemKind::ar:
                if (st.pending.empty()) labels.push_back(st.contained);
                break;
            case ProblemKind::ad: {
                std::set<std::uint64_t> contained_decisions;
                for (auto idx : st.contained) contained_decisions.insert(s_.rule(idx).decision());
                for (auto idx : st.pending) {
                    if (!contained_decisions.count(s_.rule(idx).decision())) return {};
                }
                // Group the contained rules by decision, then take products.
                std::map<std::uint64_t, std::vector<std::size_t>> groups;
                for (auto idx : st.contained) groups[s_.rule(idx).decision()].push_back(idx);
                labels.push_back({});
                for (const auto& [d, members] : groups) {
                    (void)d;
                    std::vector<std::vector<std::size_t>> grown;
                    for (const auto& partial : labels) {
                        for (auto m : members) {
                            auto next = partial;
                            next.push_back(m);
                            grown.push_back(std::move(next));
                            if (grown.size() > cap) {
                                throw CapExceeded("too many candidate terminal labels");
                            }
                        }
                    }
                    labels = std::move(grown);
                }
                for (auto& l : labels) std::sort(l.begin(), l.end());
                std::sort(labels.begin(), labels.end());
                break;
            }
            default:  // sr
                if (!st.contained.empty()) {
                    for (auto idx : st.contained) labels.push_back({idx});
                } else if (st.pending.empty()) {
                    labels.push_back({});
                }
                break;
        }
        return labels;
    }

    // The canonical witness label (first valid one).
    std::vector<std::size_t> canonical_label(const RuleStatus& st) const {
        switch (base_kind(kind_)) {
            case ProblemKind::ar:
                return st.contained;
            case ProblemKind::ad: {
                std::vector<std::size_t> out;
                std::set<std::uint64_t> covered;
                for (auto idx : st.contained) {
                    if (covered.insert(s_.rule(idx).decision()).second) out.push_back(idx);
                }
                return out;
            }
            default:
                if (st.contained.empty()) return {};
                return {st.contained.front()};
        }
    }

    bool terminal_valid(const RuleStatus& st) const {
        switch (base_kind(kind_)) {
            case ProblemKind::ar:
                return st.pending.empty();
            case ProblemKind::ad: {
                std::set<std::uint64_t> contained_decisions;
                for (auto idx : st.contained) contained_decisions.insert(s_.rule(idx).decision());
                return std::all_of(st.pending.begin(), st.pending.end(), [&](std::size_t idx) {
                    return contained_decisions.count(s_.rule(idx).decision()) != 0;
                });
            }
            default:
                return !st.contained.empty() || st.pending.empty();
        }
    }

    Flavor flavor() const { return is_extended(kind_) ? Flavor::extended : Flavor::ordinary; }

private:
    struct Cond {
        std::size_t pos;
        std::size_t code;
    };

    const RuleSystem& s_;
    ProblemKind kind_;
    std::vector<std::vector<Value>> domains_;
    std::vector<std::size_t> stride_;
    std::size_t state_count_ = 1;
    std::vector<std::vector<Cond>> rule_conds_;
};

constexpr std::int64_t kUnknown = -1;

// Depth DP: h(state) = 0 when the state admits a terminal, else
// 1 + min over unassigned attributes of the worst child.
struct DepthSearch {
    const SearchSpace& space;
    std::vector<std::int64_t> memo;

    explicit DepthSearch(const SearchSpace& sp) : space(sp), memo(sp.state_count(), kUnknown) {}

    std::int64_t depth_of(std::size_t state) {
        auto& slot = memo[state];
        if (slot != kUnknown) return slot;
        RuleStatus st = space.status(state);
        if (space.terminal_valid(st)) return slot = 0;
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (std::size_t a = 0; a < space.attribute_count(); ++a) {
            if (space.digit(state, a) != 0) continue;
            std::int64_t worst = 0;
            for (std::size_t c = 1; c <= space.domain(a).size(); ++c) {
                worst = std::max(worst, depth_of(space.with_digit(state, a, c)));
            }
            best = std::min(best, worst + 1);
        }
        if (best == std::numeric_limits<std::int64_t>::max()) {
            throw std::logic_error("search state admits neither a terminal nor a query");
        }
        return slot = best;
    }

    // Lowest-index attribute attaining the minimum.
    std::size_t best_attribute(std::size_t state) {
        std::int64_t target = depth_of(state);
        for (std::size_t a = 0; a < space.attribute_count(); ++a) {
            if (space.digit(state, a) != 0) continue;
            std::int64_t worst = 0;
            for (std::size_t c = 1; c <= space.domain(a).size(); ++c) {
                worst = std::max(worst, depth_of(space.with_digit(state, a, c)));
            }
            if (worst + 1 == target) return a;
        }
        throw std::logic_error("no attribute attains the optimal depth");
    }
};

// Node-count DP: L(state) = 1 at a terminal, else min over attributes of
// 1 + sum of the children.
struct NodeCountSearch {
    const SearchSpace& space;
    std::vector<std::int64_t> memo;

    explicit NodeCountSearch(const SearchSpace& sp) : space(sp), memo(sp.state_count(), kUnknown) {}

    std::int64_t nodes_of(std::size_t state) {
        auto& slot = memo[state];
        if (slot != kUnknown) return slot;
        RuleStatus st = space.status(state);
        if (space.terminal_valid(st)) return slot = 1;
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (std::size_t a = 0; a < space.attribute_count(); ++a) {
            if (space.digit(state, a) != 0) continue;
            std::int64_t total = 1;
            for (std::size_t c = 1; c <= space.domain(a).size(); ++c) {
                total += nodes_of(space.with_digit(state, a, c));
            }
            best = std::min(best, total);
        }
        return slot = best;
    }

    std::size_t best_attribute(std::size_t state) {
        std::int64_t target = nodes_of(state);
        for (std::size_t a = 0; a < space.attribute_count(); ++a) {
            if (space.digit(state, a) != 0) continue;
            std::int64_t total = 1;
            for (std::size_t c = 1; c <= space.domain(a).size(); ++c) {
                total += nodes_of(space.with_digit(state, a, c));
            }
            if (total == target) return a;
        }
        throw std::logic_error("no attribute attains the optimal node count");
    }
};

// Builds a witness tree from a "terminate here?" predicate and an attribute
// chooser; labels are the canonical ones.
template <typename Terminate, typename Choose>
DecisionTree build_witness(const SearchSpace& space, Terminate terminate, Choose choose) {
    std::vector<TreeNode> nodes;
    std::function<NodeId(std::size_t)> build = [&](std::size_t state) -> NodeId {
        RuleStatus st = space.status(state);
        NodeId id = static_cast<NodeId>(nodes.size());
        if (terminate(state, st)) {
            nodes.push_back(TerminalNode{space.canonical_label(st)});
            return id;
        }
        std::size_t a = choose(state);
        nodes.push_back(WorkingNode{space.attribute(a), {}});
        std::vector<TreeEdge> edges;
        for (std::size_t c = 1; c <= space.domain(a).size(); ++c) {
            edges.push_back(TreeEdge{space.domain(a)[c - 1], build(space.with_digit(state, a, c))});
        }
        std::get<WorkingNode>(nodes[id]).edges = std::move(edges);
        return id;
    };
    NodeId root = build(0);
    return DecisionTree(space.flavor(), std::move(nodes), root);
}

// ── Minimum distinct terminal labels ──────────────────────────────────────
//
// For each state we keep an antichain of label families (bitmasks over the
// label universe): the minimal sets of distinct labels with which the
// subproblem can be finished.  A terminal contributes singleton families;
// querying an attribute contributes the unions over one family per child.
// The answer is the smallest family at the root state.

using FamilyMask = std::uint64_t;

void antichain_insert(std::vector<FamilyMask>& chain, FamilyMask f, std::size_t cap) {
    for (FamilyMask g : chain) {
        if ((g & f) == g) return;  // an existing family is a subset of f
    }
    chain.erase(std::remove_if(chain.begin(), chain.end(),
                               [&](FamilyMask g) { return (g & f) == f; }),
                chain.end());
    chain.push_back(f);
    if (chain.size() > cap) throw CapExceeded("label-family antichain exceeds the cap");
}

struct LabelSearch {
    const SearchSpace& space;
    const Limits& limits;
    std::map<std::vector<std::size_t>, std::size_t> label_ids;  // label -> bit
    std::vector<std::vector<std::size_t>> universe;             // bit -> label
    std::vector<std::vector<FamilyMask>> memo;
    std::vector<bool> known;

    LabelSearch(const SearchSpace& sp, const Limits& lim)
        : space(sp), limits(lim), memo(sp.state_count()), known(sp.state_count(), false) {
        // Collect the label universe over all states.
        for (std::size_t state = 0; state < space.state_count(); ++state) {
            RuleStatus st = space.status(state);
            for (auto& label : space.terminal_labels(st, 4096)) {
                if (label_ids.emplace(label, label_ids.size()).second) {
                    universe.push_back(label);
                    if (universe.size() > limits.max_label_universe) {
                        throw CapExceeded("terminal-label universe exceeds the cap");
                    }
                }
            }
        }
    }

    const std::vector<FamilyMask>& families_of(std::size_t state) {
        if (known[state]) return memo[state];
        std::vector<FamilyMask> chain;
        RuleStatus st = space.status(state);
        for (auto& label : space.terminal_labels(st, 4096)) {
            antichain_insert(chain, FamilyMask{1} << label_ids.at(label),
                             limits.max_family_antichain);
        }
        for (std::size_t a = 0; a < space.attribute_count(); ++a) {
            if (space.digit(state, a) != 0) continue;
            std::vector<FamilyMask> acc{0};
            for (std::size_t c = 1; c <= space.domain(a).size(); ++c) {
                const auto& child = families_of(space.with_digit(state, a, c));
                std::vector<FamilyMask> next;
                for (FamilyMask p : acc) {
                    for (FamilyMask f : child) {
                        antichain_insert(next, p | f, limits.max_family_antichain);
                    }
                }
                acc = std::move(next);
            }
            for (FamilyMask f : acc) antichain_insert(chain, f, limits.max_family_antichain);
        }
        known[state] = true;
        memo[state] = std::move(chain);
        return memo[state];
    }

    // Whether the subproblem can be finished using only labels in `allowed`.
    bool feasible(std::size_t state, FamilyMask allowed, std::map<std::size_t, bool>& cache) {
        auto it = cache.find(state);
        if (it != cache.end()) return it->second;
        RuleStatus st = space.status(state);
        for (auto& label : space.terminal_labels(st, 4096)) {
            if (allowed & (FamilyMask{1} << label_ids.at(label))) return cache[state] = true;
        }
        for (std::size_t a = 0; a < space.attribute_count(); ++a) {
            if (space.digit(state, a) != 0) continue;
            bool ok = true;
            for (std::size_t c = 1; ok && c <= space.domain(a).size(); ++c) {
                ok = feasible(space.with_digit(state, a, c), allowed, cache);
            }
            if (ok) return cache[state] = true;
        }
        return cache[state] = false;
    }
};

OptimalTree search_min_labels(const RuleSystem& s, ProblemKind kind, const Limits& limits) {
    SearchSpace space(s, kind, limits, /*size_caps=*/true);
    LabelSearch search(space, limits);
    const auto& root_chain = search.families_of(0);

    FamilyMask best = 0;
    int best_count = -1;
    for (FamilyMask f : root_chain) {
        int count = std::popcount(f);
        if (best_count < 0 || count < best_count || (count == best_count && f < best)) {
            best = f;
            best_count = count;
        }
    }
    if (best_count < 0) throw std::logic_error("no feasible label family at the root");

    // Replay a witness that stays within the chosen family.
    std::map<std::size_t, bool> cache;
    std::vector<TreeNode> nodes;
    std::function<NodeId(std::size_t)> build = [&](std::size_t state) -> NodeId {
        NodeId id = static_cast<NodeId>(nodes.size());
        std::vector<std::size_t> label;
        std::size_t attr_slot = 0;
        RuleStatus st = space.status(state);
        bool terminal = false;
        for (auto& cand : space.terminal_labels(st, 4096)) {
            if (best & (FamilyMask{1} << search.label_ids.at(cand))) {
                label = cand;
                terminal = true;
                break;
            }
        }
        if (terminal) {
            nodes.push_back(TerminalNode{label});
            return id;
        }
        bool found = false;
        for (std::size_t a = 0; a < space.attribute_count() && !found; ++a) {
            if (space.digit(state, a) != 0) continue;
            bool ok = true;
            for (std::size_t c = 1; ok && c <= space.domain(a).size(); ++c) {
                ok = search.feasible(space.with_digit(state, a, c), best, cache);
            }
            if (ok) {
                attr_slot = a;
                found = true;
            }
        }
        if (!found) throw std::logic_error("label-family witness replay failed");
        nodes.push_back(WorkingNode{space.attribute(attr_slot), {}});
        std::vector<TreeEdge> edges;
        for (std::size_t c = 1; c <= space.domain(attr_slot).size(); ++c) {
            edges.push_back(TreeEdge{space.domain(attr_slot)[c - 1],
                                     build(space.with_digit(state, attr_slot, c))});
        }
        std::get<WorkingNode>(nodes[id]).edges = std::move(edges);
        return id;
    };
    NodeId root = build(0);
    return OptimalTree{static_cast<std::size_t>(best_count),
                       DecisionTree(space.flavor(), std::move(nodes), root)};
}

}  // namespace

OptimalTree min_depth(const RuleSystem& s, ProblemKind kind, const Limits& limits) {
    SearchSpace space(s, kind, limits, /*size_caps=*/false);
    DepthSearch search(space);
    std::int64_t depth = search.depth_of(0);
    DecisionTree witness = build_witness(
        space,
        [&](std::size_t state, const RuleStatus& st) {
            return search.depth_of(state) == 0 && space.terminal_valid(st);
        },
        [&](std::size_t state) { return search.best_attribute(state); });
    return OptimalTree{static_cast<std::size_t>(depth), std::move(witness)};
}

OptimalTree min_nodes(const RuleSystem& s, ProblemKind kind, const Limits& limits) {
    SearchSpace space(s, kind, limits, /*size_caps=*/true);
    NodeCountSearch search(space);
    std::int64_t nodes = search.nodes_of(0);
    DecisionTree witness = build_witness(
        space,
        [&](std::size_t state, const RuleStatus& st) {
            return search.nodes_of(state) == 1 && space.terminal_valid(st);
        },
        [&](std::size_t state) { return search.best_attribute(state); });
    return OptimalTree{static_cast<std::size_t>(nodes), std::move(witness)};
}

OptimalTree min_distinct_terminals(const RuleSystem& s, ProblemKind kind, const Limits& limits) {
    return search_min_labels(s, kind, limits);
}

}  // namespace ruletree
