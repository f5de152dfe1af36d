#include "ruletree/pathsim.hpp"

#include <algorithm>

namespace ruletree {

namespace {

bool all_zero_length(const RuleSystem& s) {
    return std::all_of(s.rules().begin(), s.rules().end(),
                       [](const Rule& r) { return r.length() == 0; });
}

// Reads the tuple's values for the cover attributes, in ascending order.
SimulationRound read_round(const std::vector<Attribute>& cover, const ValueTuple& t) {
    SimulationRound round;
    round.cover = cover;  // greedy_cover output is already sorted
    for (const auto& a : cover) {
        round.acquired.insert(Equation{a, *t.value_of(a)});
    }
    return round;
}

std::vector<std::size_t> consistent_rules(const RuleSystem& s, const EquationSystem& acquired) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (consistent_union(s.rule(i).condition_set(), acquired)) out.push_back(i);
    }
    return out;
}

}  // namespace

PathTrace simulate_ar(const RuleSystem& s, const ValueTuple& t, ProblemKind kind) {
    if (kind != ProblemKind::ar && kind != ProblemKind::ear) {
        throw std::invalid_argument("simulate_ar handles the AR/EAR problems");
    }
    if (s.stats().attribute_count == 0) {
        throw std::invalid_argument("simulate_ar requires n(S) > 0");
    }
    if (is_extended(kind) ? !t.in_extended_domain(s) : !t.in_base_domain(s)) {
        throw std::invalid_argument("tuple is outside the problem's value domain");
    }

    PathTrace trace;
    trace.kind = kind;
    EquationSystem acquired;
    std::optional<RuleSystem> current = s;
    while (current && !all_zero_length(*current)) {
        SimulationRound round = read_round(greedy_cover(s_plus(*current)), t);
        acquired = acquired.united(round.acquired);
        trace.queried += round.cover.size();
        trace.rounds.push_back(std::move(round));
        current = restrict_system(s, acquired);
    }
    trace.result = consistent_rules(s, acquired);
    return trace;
}

PathTrace simulate_ad_sr(const RuleSystem& s, const ValueTuple& t, ProblemKind kind) {
    if (kind != ProblemKind::ad && kind != ProblemKind::sr) {
        throw std::invalid_argument("simulate_ad_sr handles the AD/SR problems");
    }
    PathTrace trace = simulate_ar(s, t, ProblemKind::ar);
    trace.kind = kind;
    return trace;
}

PathTrace simulate_esr_ead(const RuleSystem& s, const ValueTuple& t, ProblemKind kind) {
    if (kind != ProblemKind::esr && kind != ProblemKind::ead) {
        throw std::invalid_argument("simulate_esr_ead handles the ESR/EAD problems");
    }
    if (s.stats().attribute_count == 0) {
        throw std::invalid_argument("simulate_esr_ead requires n(S) > 0");
    }
    if (!t.in_extended_domain(s)) throw std::invalid_argument("tuple is not in EV(S)");

    const ReductionFlavor flavor =
        kind == ProblemKind::ead ? ReductionFlavor::ad : ReductionFlavor::sr;
    const RuleSystem reduced = flavor == ReductionFlavor::ad ? reduce_ad(s) : reduce_sr(s);

    // Indices of the reduced system's rules inside the original one.
    std::vector<std::size_t> original_index;
    for (const auto& r : reduced.rules()) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (rules_equal(s.rule(i), r)) {
                original_index.push_back(i);
                break;
            }
        }
    }
    auto to_original = [&](const std::vector<std::size_t>& reduced_indices) {
        std::vector<std::size_t> out;
        out.reserve(reduced_indices.size());
        for (auto i : reduced_indices) out.push_back(original_index[i]);
        std::sort(out.begin(), out.end());
        return out;
    };

    // A value outside EV of the reduced system behaves like the marker.
    auto adapted_value = [&](Attribute a) {
        Value v = *t.value_of(a);
        if (v.is_star()) return v;
        const auto& dom = reduced.stats().values_of(a);
        return std::binary_search(dom.begin(), dom.end(), v) ? v : Value::star();
    };

    PathTrace trace;
    trace.kind = kind;

    RuleSystem isolated = subsystem_i(reduced, flavor);
    if (all_zero_length(isolated)) {
        std::vector<std::size_t> picked;
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            if (isolated.contains(reduced.rule(i))) picked.push_back(i);
        }
        trace.result = to_original(picked);
        return trace;
    }

    EquationSystem acquired;
    std::vector<Attribute> covered_attrs;
    std::optional<RuleSystem> current = reduced;
    std::optional<RuleSystem> current_isolated = isolated;
    while (current_isolated && !all_zero_length(*current_isolated)) {
        std::vector<Attribute> cover = greedy_cover(s_plus(*current_isolated));
        SimulationRound round;
        round.cover = cover;
        for (const auto& a : cover) round.acquired.insert(Equation{a, adapted_value(a)});
        acquired = acquired.united(round.acquired);
        covered_attrs.insert(covered_attrs.end(), cover.begin(), cover.end());
        trace.queried += cover.size();
        trace.rounds.push_back(std::move(round));
        current = restrict_system(reduced, acquired);
        current_isolated = subsystem_i(current, flavor);
    }

    std::sort(covered_attrs.begin(), covered_attrs.end());
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        const Rule& r = reduced.rule(i);
        if (!consistent_union(r.condition_set(), acquired)) continue;
        auto attrs = r.attributes();
        bool inside = std::all_of(attrs.begin(), attrs.end(), [&](Attribute a) {
            return std::binary_search(covered_attrs.begin(), covered_attrs.end(), a);
        });
        if (inside) picked.push_back(i);
    }
    trace.result = to_original(picked);
    return trace;
}

}  // namespace ruletree
