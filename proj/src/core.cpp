#include "ruletree/core.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace ruletree {

std::string to_string(Value v) {
    return v.is_star() ? std::string("*") : std::to_string(v.number());
}

std::string to_string(Attribute a) { return "a" + std::to_string(a.index); }

std::string to_string(const Equation& e) {
    return to_string(e.attribute) + "=" + to_string(e.value);
}

// ── EquationSystem ──────────────────────────────────────────────────────────

EquationSystem::EquationSystem(std::initializer_list<Equation> eqs)
    : EquationSystem(std::vector<Equation>(eqs)) {}

EquationSystem::EquationSystem(std::vector<Equation> eqs) : equations_(std::move(eqs)) {
    std::sort(equations_.begin(), equations_.end());
    equations_.erase(std::unique(equations_.begin(), equations_.end()), equations_.end());
}

void EquationSystem::insert(Equation e) {
    auto pos = std::lower_bound(equations_.begin(), equations_.end(), e);
    if (pos == equations_.end() || *pos != e) equations_.insert(pos, e);
}

bool EquationSystem::contains(const Equation& e) const {
    return std::binary_search(equations_.begin(), equations_.end(), e);
}

std::optional<Value> EquationSystem::value_of(Attribute a) const {
    auto pos = std::lower_bound(equations_.begin(), equations_.end(), a,
                                [](const Equation& e, Attribute x) { return e.attribute < x; });
    if (pos == equations_.end() || pos->attribute != a) return std::nullopt;
    return pos->value;
}

bool EquationSystem::includes(const EquationSystem& other) const {
    return std::includes(equations_.begin(), equations_.end(), other.equations_.begin(),
                         other.equations_.end());
}

EquationSystem EquationSystem::united(const EquationSystem& other) const {
    std::vector<Equation> merged;
    merged.reserve(equations_.size() + other.equations_.size());
    std::merge(equations_.begin(), equations_.end(), other.equations_.begin(),
               other.equations_.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    EquationSystem result;
    result.equations_ = std::move(merged);
    return result;
}

bool is_consistent(const EquationSystem& eqs) {
    const auto& v = eqs.equations();
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i - 1].attribute == v[i].attribute && v[i - 1].value != v[i].value) return false;
    }
    return true;
}

bool consistent_union(const EquationSystem& a, const EquationSystem& b) {
    if (!is_consistent(a) || !is_consistent(b)) return false;
    const auto& x = a.equations();
    const auto& y = b.equations();
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].attribute < y[j].attribute) {
            ++i;
        } else if (y[j].attribute < x[i].attribute) {
            ++j;
        } else {
            if (x[i].value != y[j].value) return false;
            ++i;
            ++j;
        }
    }
    return true;
}

// ── Rule ────────────────────────────────────────────────────────────────────

Rule::Rule(std::vector<Equation> conditions, std::uint64_t decision)
    : conditions_(std::move(conditions)), decision_(decision) {
    std::set<Attribute> seen;
    for (const auto& c : conditions_) {
        if (c.value.is_star()) throw std::invalid_argument("rule condition value may not be *");
        if (!seen.insert(c.attribute).second) {
            throw std::invalid_argument("repeated attribute " + to_string(c.attribute) +
                                        " in rule left-hand side");
        }
    }
    condition_set_ = EquationSystem(conditions_);
}

std::vector<Attribute> Rule::attributes() const {
    std::vector<Attribute> out;
    out.reserve(conditions_.size());
    for (const auto& e : condition_set_.equations()) out.push_back(e.attribute);
    return out;
}

bool rules_equal(const Rule& r1, const Rule& r2) {
    return r1.decision() == r2.decision() && r1.condition_set() == r2.condition_set();
}

// ── RuleSystem ──────────────────────────────────────────────────────────────

namespace {

SystemStats compute_stats(const std::vector<Rule>& rules) {
    SystemStats st;
    std::set<Attribute> attrs;
    std::set<std::uint64_t> decisions;
    for (const auto& r : rules) {
        decisions.insert(r.decision());
        st.max_rule_length = std::max(st.max_rule_length, r.length());
        for (const auto& c : r.conditions()) attrs.insert(c.attribute);
    }
    st.attributes.assign(attrs.begin(), attrs.end());
    st.decisions.assign(decisions.begin(), decisions.end());
    st.attribute_count = st.attributes.size();
    st.values.resize(st.attributes.size());
    for (const auto& r : rules) {
        for (const auto& c : r.conditions()) {
            auto pos = st.attribute_position(c.attribute);
            auto& vals = st.values[*pos];
            auto it = std::lower_bound(vals.begin(), vals.end(), c.value);
            if (it == vals.end() || *it != c.value) vals.insert(it, c.value);
        }
    }
    for (const auto& vals : st.values) st.max_value_count = std::max(st.max_value_count, vals.size());
    return st;
}

}  // namespace

std::optional<std::size_t> SystemStats::attribute_position(Attribute a) const {
    auto pos = std::lower_bound(attributes.begin(), attributes.end(), a);
    if (pos == attributes.end() || *pos != a) return std::nullopt;
    return static_cast<std::size_t>(pos - attributes.begin());
}

const std::vector<Value>& SystemStats::values_of(Attribute a) const {
    auto pos = attribute_position(a);
    if (!pos) throw std::invalid_argument(to_string(a) + " is not an attribute of the system");
    return values[*pos];
}

std::vector<Value> SystemStats::extended_values_of(Attribute a) const {
    std::vector<Value> vals = values_of(a);
    vals.push_back(Value::star());
    return vals;
}

RuleSystem::RuleSystem(std::vector<Rule> rules) : rules_(std::move(rules)) {
    if (rules_.empty()) throw std::invalid_argument("a rule system must be nonempty");
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        for (std::size_t j = i + 1; j < rules_.size(); ++j) {
            if (rules_equal(rules_[i], rules_[j])) {
                throw std::invalid_argument("duplicate rule at positions " + std::to_string(i) +
                                            " and " + std::to_string(j));
            }
        }
    }
    stats_ = compute_stats(rules_);
}

bool RuleSystem::contains(const Rule& r) const {
    return std::any_of(rules_.begin(), rules_.end(),
                       [&](const Rule& own) { return rules_equal(own, r); });
}

bool systems_equal(const RuleSystem& a, const RuleSystem& b) {
    if (a.size() != b.size()) return false;
    for (const auto& r : a.rules()) {
        if (!b.contains(r)) return false;
    }
    return true;
}

// ── ValueTuple ──────────────────────────────────────────────────────────────

ValueTuple::ValueTuple(std::vector<Attribute> attributes, std::vector<Value> values)
    : attributes_(std::move(attributes)), values_(std::move(values)) {
    if (attributes_.size() != values_.size()) {
        throw std::invalid_argument("tuple attribute/value arity mismatch");
    }
    if (!std::is_sorted(attributes_.begin(), attributes_.end()) ||
        std::adjacent_find(attributes_.begin(), attributes_.end()) != attributes_.end()) {
        throw std::invalid_argument("tuple attributes must be strictly increasing");
    }
}

ValueTuple ValueTuple::over(const RuleSystem& system, std::vector<Value> values) {
    if (values.size() != system.stats().attribute_count) {
        throw std::invalid_argument("expected " + std::to_string(system.stats().attribute_count) +
                                    " tuple values, got " + std::to_string(values.size()));
    }
    return ValueTuple(system.stats().attributes, std::move(values));
}

std::optional<Value> ValueTuple::value_of(Attribute a) const {
    auto pos = std::lower_bound(attributes_.begin(), attributes_.end(), a);
    if (pos == attributes_.end() || *pos != a) return std::nullopt;
    return values_[static_cast<std::size_t>(pos - attributes_.begin())];
}

EquationSystem ValueTuple::equations() const {
    std::vector<Equation> eqs;
    eqs.reserve(attributes_.size());
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        eqs.push_back(Equation{attributes_[i], values_[i]});
    }
    return EquationSystem(std::move(eqs));
}

bool ValueTuple::in_base_domain(const RuleSystem& system) const {
    const auto& st = system.stats();
    if (attributes_ != st.attributes) return false;
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        const auto& dom = st.values[i];
        if (values_[i].is_star() || !std::binary_search(dom.begin(), dom.end(), values_[i])) {
            return false;
        }
    }
    return true;
}

bool ValueTuple::in_extended_domain(const RuleSystem& system) const {
    const auto& st = system.stats();
    if (attributes_ != st.attributes) return false;
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        if (values_[i].is_star()) continue;
        const auto& dom = st.values[i];
        if (!std::binary_search(dom.begin(), dom.end(), values_[i])) return false;
    }
    return true;
}

bool is_realizable(const Rule& r, const ValueTuple& t) {
    for (const auto& c : r.conditions()) {
        auto v = t.value_of(c.attribute);
        if (!v || *v != c.value) return false;
    }
    return true;
}

// ── ProblemKind ─────────────────────────────────────────────────────────────

std::string_view to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::ar: return "ar";
        case ProblemKind::ear: return "ear";
        case ProblemKind::ad: return "ad";
        case ProblemKind::ead: return "ead";
        case ProblemKind::sr: return "sr";
        case ProblemKind::esr: return "esr";
    }
    return "?";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view text) {
    for (ProblemKind k : kAllProblemKinds) {
        if (text == to_string(k)) return k;
    }
    return std::nullopt;
}

}  // namespace ruletree
