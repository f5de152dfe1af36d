// Core value types for decision rule systems: attributes, equations,
// rules, systems, value tuples, and the six problem kinds.
//
// All types are immutable values after construction; every operation is
// pure, so values can be shared freely across threads.

#ifndef RULETREE_CORE_HPP
#define RULETREE_CORE_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ruletree {

// ── Attribute ───────────────────────────────────────────────────────────────
// The i of a_i.  Attributes are compared and ordered by index.

struct Attribute {
    std::uint32_t index = 0;

    friend constexpr auto operator<=>(Attribute, Attribute) = default;
};

constexpr Attribute attr(std::uint32_t index) { return Attribute{index}; }

// ── Value ───────────────────────────────────────────────────────────────────
// An attribute value: a nonnegative integer or the off-domain marker.  The
// marker is held out of band (a flag, not a reserved integer), so every
// natural number remains a legal attribute value.  Ordering places the
// marker after all numbers, which fixes edge orderings and serializations.

class Value {
public:
    constexpr Value() noexcept = default;
    constexpr explicit Value(std::uint64_t n) noexcept : number_(n) {}

    static constexpr Value star() noexcept {
        Value v;
        v.star_ = true;
        return v;
    }

    constexpr bool is_star() const noexcept { return star_; }

    constexpr std::uint64_t number() const {
        if (star_) throw std::logic_error("Value::number on the * marker");
        return number_;
    }

    friend constexpr bool operator==(Value a, Value b) noexcept {
        return a.star_ == b.star_ && (a.star_ || a.number_ == b.number_);
    }
    friend constexpr std::strong_ordering operator<=>(Value a, Value b) noexcept {
        if (a.star_ != b.star_) return a.star_ <=> b.star_;
        if (a.star_) return std::strong_ordering::equal;
        return a.number_ <=> b.number_;
    }

private:
    std::uint64_t number_ = 0;
    bool star_ = false;
};

std::string to_string(Value v);
std::string to_string(Attribute a);

// ── Equation ────────────────────────────────────────────────────────────────

struct Equation {
    Attribute attribute;
    Value value;

    friend constexpr auto operator<=>(const Equation&, const Equation&) = default;
};

std::string to_string(const Equation& e);

// ── EquationSystem ──────────────────────────────────────────────────────────
// A finite set of equations (set semantics, kept sorted).  May be
// inconsistent: two equations on one attribute with different values.

class EquationSystem {
public:
    EquationSystem() = default;
    EquationSystem(std::initializer_list<Equation> eqs);
    explicit EquationSystem(std::vector<Equation> eqs);

    void insert(Equation e);
    bool contains(const Equation& e) const;
    bool empty() const { return equations_.empty(); }
    std::size_t size() const { return equations_.size(); }
    const std::vector<Equation>& equations() const { return equations_; }

    // First value attached to `a`, if any (unique when consistent).
    std::optional<Value> value_of(Attribute a) const;

    bool includes(const EquationSystem& other) const;
    EquationSystem united(const EquationSystem& other) const;

    friend bool operator==(const EquationSystem&, const EquationSystem&) = default;

private:
    std::vector<Equation> equations_;  // sorted, unique
};

// False iff two equations share an attribute but disagree on the value
// (the * marker counts as a value distinct from every number).
bool is_consistent(const EquationSystem& eqs);

// Consistency of the union without materializing it.
bool consistent_union(const EquationSystem& a, const EquationSystem& b);

// ── Rule ────────────────────────────────────────────────────────────────────
// (a_{i1}=d1) & ... & (a_{im}=dm) -> decision.  Conditions keep the written
// order; attributes are pairwise distinct and values are plain numbers.

class Rule {
public:
    Rule(std::vector<Equation> conditions, std::uint64_t decision);

    const std::vector<Equation>& conditions() const { return conditions_; }
    std::uint64_t decision() const { return decision_; }
    std::size_t length() const { return conditions_.size(); }

    // K(r) as a set.
    const EquationSystem& condition_set() const { return condition_set_; }
    // A(r), sorted.
    std::vector<Attribute> attributes() const;

private:
    std::vector<Equation> conditions_;
    EquationSystem condition_set_;
    std::uint64_t decision_;
};

// Equal iff K(r1) = K(r2) as sets and the decisions match.
bool rules_equal(const Rule& r1, const Rule& r2);

// ── SystemStats ─────────────────────────────────────────────────────────────
// The derived statistics of a rule system: A(S), n(S), d(S), k(S), D(S) and
// the per-attribute value sets V_S(a).

struct SystemStats {
    std::vector<Attribute> attributes;            // A(S), sorted
    std::vector<std::vector<Value>> values;       // V_S(a), aligned with attributes
    std::vector<std::uint64_t> decisions;         // D(S), sorted
    std::size_t attribute_count = 0;              // n(S)
    std::size_t max_rule_length = 0;              // d(S)
    std::size_t max_value_count = 0;              // k(S)

    std::optional<std::size_t> attribute_position(Attribute a) const;
    // V_S(a); throws if a is not in A(S).
    const std::vector<Value>& values_of(Attribute a) const;
    // EV_S(a) = V_S(a) plus the * marker.
    std::vector<Value> extended_values_of(Attribute a) const;
};

// ── RuleSystem ──────────────────────────────────────────────────────────────
// A finite nonempty set of rules.  Insertion order is kept so that outputs
// and "choose an arbitrary rule" steps are deterministic; duplicates per
// rules_equal are rejected.

class RuleSystem {
public:
    explicit RuleSystem(std::vector<Rule> rules);

    std::span<const Rule> rules() const { return rules_; }
    const Rule& rule(std::size_t i) const { return rules_.at(i); }
    std::size_t size() const { return rules_.size(); }
    const SystemStats& stats() const { return stats_; }

    bool contains(const Rule& r) const;

private:
    std::vector<Rule> rules_;
    SystemStats stats_;
};

bool systems_equal(const RuleSystem& a, const RuleSystem& b);

// ── ValueTuple ──────────────────────────────────────────────────────────────
// An assignment of one value to every attribute of A(S).

class ValueTuple {
public:
    ValueTuple(std::vector<Attribute> attributes, std::vector<Value> values);

    // Values listed positionally over A(S) in ascending attribute order.
    static ValueTuple over(const RuleSystem& system, std::vector<Value> values);

    const std::vector<Attribute>& attributes() const { return attributes_; }
    const std::vector<Value>& values() const { return values_; }
    std::optional<Value> value_of(Attribute a) const;

    // K(S, t).
    EquationSystem equations() const;

    // t in V(S): every value numeric and drawn from V_S(a).
    bool in_base_domain(const RuleSystem& system) const;
    // t in EV(S): every value in V_S(a) or the * marker.
    bool in_extended_domain(const RuleSystem& system) const;

private:
    std::vector<Attribute> attributes_;  // sorted
    std::vector<Value> values_;
};

// True iff every condition of r appears in K(S, t).
bool is_realizable(const Rule& r, const ValueTuple& t);

// ── ProblemKind ─────────────────────────────────────────────────────────────

enum class ProblemKind { ar, ear, ad, ead, sr, esr };

constexpr bool is_extended(ProblemKind k) {
    return k == ProblemKind::ear || k == ProblemKind::ead || k == ProblemKind::esr;
}

// The o-problem behind an e-problem (identity on o-problems).
constexpr ProblemKind base_kind(ProblemKind k) {
    switch (k) {
        case ProblemKind::ear: return ProblemKind::ar;
        case ProblemKind::ead: return ProblemKind::ad;
        case ProblemKind::esr: return ProblemKind::sr;
        default: return k;
    }
}

std::string_view to_string(ProblemKind k);
std::optional<ProblemKind> parse_problem_kind(std::string_view text);

constexpr ProblemKind kAllProblemKinds[] = {ProblemKind::ar,  ProblemKind::ear,
                                            ProblemKind::ad,  ProblemKind::ead,
                                            ProblemKind::sr,  ProblemKind::esr};

}  // namespace ruletree

#endif  // RULETREE_CORE_HPP
