#include "ruletree/system_ops.hpp"

#include <algorithm>
#include <set>

namespace ruletree {

std::optional<RuleSystem> restrict_system(const RuleSystem& s, const EquationSystem& alpha) {
    if (!is_consistent(alpha)) throw std::invalid_argument("restriction context is inconsistent");
    std::vector<Rule> out;
    for (const auto& r : s.rules()) {
        if (!consistent_union(r.condition_set(), alpha)) continue;
        std::vector<Equation> kept;
        for (const auto& c : r.conditions()) {
            if (!alpha.contains(c)) kept.push_back(c);
        }
        Rule reduced(std::move(kept), r.decision());
        bool duplicate = std::any_of(out.begin(), out.end(), [&](const Rule& prev) {
            return rules_equal(prev, reduced);
        });
        if (!duplicate) out.push_back(std::move(reduced));
    }
    if (out.empty()) return std::nullopt;
    return RuleSystem(std::move(out));
}

namespace {

bool strictly_dominated(const RuleSystem& s, const Rule& r, bool require_same_decision) {
    for (const auto& other : s.rules()) {
        if (other.length() >= r.length()) continue;  // strict subset needs fewer conditions
        if (require_same_decision && other.decision() != r.decision()) continue;
        if (r.condition_set().includes(other.condition_set())) return true;
    }
    return false;
}

RuleSystem keep_undominated(const RuleSystem& s, bool require_same_decision) {
    std::vector<Rule> out;
    for (const auto& r : s.rules()) {
        if (!strictly_dominated(s, r, require_same_decision)) out.push_back(r);
    }
    return RuleSystem(std::move(out));
}

}  // namespace

RuleSystem reduce_sr(const RuleSystem& s) { return keep_undominated(s, false); }

RuleSystem reduce_ad(const RuleSystem& s) { return keep_undominated(s, true); }

RuleSystem subsystem_i(const RuleSystem& s, ReductionFlavor flavor) {
    std::vector<Rule> zero_length;
    for (const auto& r : s.rules()) {
        if (r.length() == 0) zero_length.push_back(r);
    }
    if (zero_length.empty()) return s;
    if (flavor == ReductionFlavor::sr) return RuleSystem(std::move(zero_length));

    std::set<std::uint64_t> zero_decisions;
    for (const auto& r : zero_length) zero_decisions.insert(r.decision());
    std::vector<Rule> out;
    for (const auto& r : s.rules()) {
        if (r.length() == 0 || !zero_decisions.count(r.decision())) out.push_back(r);
    }
    return RuleSystem(std::move(out));
}

std::optional<RuleSystem> subsystem_i(const std::optional<RuleSystem>& s, ReductionFlavor flavor) {
    if (!s) return std::nullopt;
    return subsystem_i(*s, flavor);
}

RuleSystem s_plus(const RuleSystem& s) {
    if (s.stats().attribute_count == 0) {
        throw std::invalid_argument("S+ requires a system with n(S) > 0");
    }
    std::vector<Rule> out;
    for (const auto& r : s.rules()) {
        if (r.length() == s.stats().max_rule_length) out.push_back(r);
    }
    return RuleSystem(std::move(out));
}

// Runs fn on every tuple of the product of the given domains; returns false
// if fn returned false for some tuple (stopping early).
namespace {

bool for_each_product(const std::vector<std::vector<Value>>& domains,
                      const std::function<bool(const std::vector<Value>&)>& fn) {
    std::vector<std::size_t> idx(domains.size(), 0);
    std::vector<Value> current(domains.size());
    while (true) {
        for (std::size_t i = 0; i < domains.size(); ++i) current[i] = domains[i][idx[i]];
        if (!fn(current)) return false;
        std::size_t pos = domains.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < domains[pos].size()) break;
            idx[pos] = 0;
            if (pos == 0) return true;
        }
        if (domains.empty()) return true;
    }
}

}  // namespace

bool is_complete(const RuleSystem& s, const Limits& limits) {
    const auto& st = s.stats();
    if (st.attribute_count == 0) return true;
    std::size_t space = 1;
    for (const auto& vals : st.values) {
        if (space > limits.max_enumeration / vals.size()) {
            throw CapExceeded("V(S) is too large to enumerate");
        }
        space *= vals.size();
    }
    return for_each_product(st.values, [&](const std::vector<Value>& vals) {
        ValueTuple t(st.attributes, vals);
        for (const auto& r : s.rules()) {
            if (is_realizable(r, t)) return true;
        }
        return false;  // witness tuple: the system is incomplete
    });
}

bool is_reduced_form(const RuleSystem& s) {
    const auto& st = s.stats();
    if (st.max_rule_length < 1) return false;
    for (const auto& a : st.attributes) {
        if (a.index > st.attribute_count) return false;
    }
    for (auto d : st.decisions) {
        if (d > st.decisions.size()) return false;
    }
    for (const auto& vals : st.values) {
        for (const auto& v : vals) {
            if (v.number() > st.max_value_count) return false;
        }
    }
    return true;
}

// ── Hypergraph and covers ───────────────────────────────────────────────────

Hypergraph Hypergraph::of(const RuleSystem& s) {
    Hypergraph g;
    g.nodes = s.stats().attributes;
    g.edges.reserve(s.size());
    for (const auto& r : s.rules()) g.edges.push_back(r.attributes());
    return g;
}

std::vector<Attribute> node_cover_exact(const Hypergraph& g, const Limits& limits) {
    std::vector<const std::vector<Attribute>*> edges;
    for (const auto& e : g.edges) {
        if (!e.empty()) edges.push_back(&e);
    }
    if (edges.empty()) return {};
    if (g.nodes.size() > limits.max_cover_attributes) {
        throw CapExceeded("hypergraph too large for an exact node cover");
    }

    const std::size_t n = g.nodes.size();
    std::vector<std::uint64_t> edge_masks;
    edge_masks.reserve(edges.size());
    for (const auto* e : edges) {
        std::uint64_t mask = 0;
        for (const auto& a : *e) {
            auto pos = std::lower_bound(g.nodes.begin(), g.nodes.end(), a);
            mask |= std::uint64_t{1} << static_cast<std::size_t>(pos - g.nodes.begin());
        }
        edge_masks.push_back(mask);
    }

    auto covers_all = [&](std::uint64_t mask) {
        return std::all_of(edge_masks.begin(), edge_masks.end(),
                           [&](std::uint64_t e) { return (e & mask) != 0; });
    };

    // Combinations of each size in lexicographic order over the sorted node
    // list; the first hit is the canonical minimum cover.
    std::vector<std::size_t> pick;
    std::function<std::optional<std::uint64_t>(std::size_t, std::size_t)> search =
        [&](std::size_t start, std::size_t remaining) -> std::optional<std::uint64_t> {
        if (remaining == 0) {
            std::uint64_t mask = 0;
            for (auto p : pick) mask |= std::uint64_t{1} << p;
            if (covers_all(mask)) return mask;
            return std::nullopt;
        }
        for (std::size_t i = start; i + remaining <= n; ++i) {
            pick.push_back(i);
            if (auto hit = search(i + 1, remaining - 1)) return hit;
            pick.pop_back();
        }
        return std::nullopt;
    };

    for (std::size_t size = 1; size <= n; ++size) {
        pick.clear();
        if (auto hit = search(0, size)) {
            std::vector<Attribute> cover;
            for (std::size_t i = 0; i < n; ++i) {
                if (*hit & (std::uint64_t{1} << i)) cover.push_back(g.nodes[i]);
            }
            return cover;
        }
    }
    return g.nodes;  // unreachable: all nodes always cover
}

std::vector<Attribute> greedy_cover(const RuleSystem& s_plus_system) {
    const std::size_t d = s_plus_system.stats().max_rule_length;
    if (d == 0) throw std::invalid_argument("greedy_cover input has a rule of length 0");
    for (const auto& r : s_plus_system.rules()) {
        if (r.length() != d) {
            throw std::invalid_argument("greedy_cover input must contain only rules of length d");
        }
    }

    std::set<Attribute> cover;
    std::vector<bool> removed(s_plus_system.size(), false);
    for (std::size_t i = 0; i < s_plus_system.size(); ++i) {
        if (removed[i]) continue;
        auto picked = s_plus_system.rule(i).attributes();
        cover.insert(picked.begin(), picked.end());
        for (std::size_t j = i; j < s_plus_system.size(); ++j) {
            if (removed[j]) continue;
            auto other = s_plus_system.rule(j).attributes();
            bool intersects = std::any_of(other.begin(), other.end(), [&](Attribute a) {
                return std::binary_search(picked.begin(), picked.end(), a);
            });
            if (intersects) removed[j] = true;
        }
    }
    return std::vector<Attribute>(cover.begin(), cover.end());
}

// ── Beta measures ───────────────────────────────────────────────────────────

std::size_t beta_of(const std::optional<RuleSystem>& s, const Limits& limits) {
    if (!s) return 0;
    return node_cover_exact(Hypergraph::of(*s), limits).size();
}

std::size_t beta_plus_of(const std::optional<RuleSystem>& s, const Limits& limits) {
    if (!s || s->stats().attribute_count == 0) return 0;
    return beta_of(s_plus(*s), limits);
}

void for_each_context(const RuleSystem& s, bool extended,
                      const std::function<void(const EquationSystem&)>& fn,
                      const Limits& limits) {
    const auto& st = s.stats();
    std::vector<std::vector<Value>> domains(st.attribute_count);
    std::size_t space = 1;
    for (std::size_t i = 0; i < st.attribute_count; ++i) {
        domains[i] = extended ? st.extended_values_of(st.attributes[i]) : st.values[i];
        std::size_t radix = domains[i].size() + 1;  // one extra slot: attribute unset
        if (space > limits.max_enumeration / radix) {
            throw CapExceeded("context space is too large to enumerate");
        }
        space *= radix;
    }

    std::vector<std::size_t> code(st.attribute_count, 0);  // 0 = unset
    while (true) {
        std::vector<Equation> eqs;
        for (std::size_t i = 0; i < code.size(); ++i) {
            if (code[i] > 0) eqs.push_back(Equation{st.attributes[i], domains[i][code[i] - 1]});
        }
        fn(EquationSystem(std::move(eqs)));

        std::size_t pos = code.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++code[pos] <= domains[pos].size()) {
                done = false;
                break;
            }
            code[pos] = 0;
        }
        if (done) break;
    }
}

CoverMeasures beta_measures(const RuleSystem& s, ProblemKind kind, const Limits& limits) {
    if (s.stats().attribute_count == 0) {
        throw std::invalid_argument("beta_measures requires n(S) > 0");
    }
    const bool extended = is_extended(kind);
    const bool through_i = kind == ProblemKind::ead || kind == ProblemKind::esr;
    const ReductionFlavor flavor =
        kind == ProblemKind::ead ? ReductionFlavor::ad : ReductionFlavor::sr;

    CoverMeasures m;
    m.kind = kind;
    m.beta = beta_of(s, limits);
    m.beta_plus = beta_plus_of(s, limits);
    for_each_context(
        s, extended,
        [&](const EquationSystem& alpha) {
            std::optional<RuleSystem> restricted = restrict_system(s, alpha);
            if (through_i) restricted = subsystem_i(restricted, flavor);
            m.beta_c = std::max(m.beta_c, beta_of(restricted, limits));
            m.beta_c_plus = std::max(m.beta_c_plus, beta_plus_of(restricted, limits));
        },
        limits);
    return m;
}

}  // namespace ruletree
