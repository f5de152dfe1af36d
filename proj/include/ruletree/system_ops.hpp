// System-level transformations and measures: the restriction S_alpha, the
// reductions R_SR / R_AD, the subsystems I_SR / I_AD and S+, completeness,
// the reduced-form check, hypergraph node covers and the beta measures.

#ifndef RULETREE_SYSTEM_OPS_HPP
#define RULETREE_SYSTEM_OPS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ruletree/core.hpp"

namespace ruletree {

// Guards for the exponential operations.  Exceeding a cap raises
// CapExceeded rather than hanging; callers can widen the limits.
struct Limits {
    std::size_t max_cover_attributes = 12;   // exact node covers
    std::size_t max_enumeration = 1'000'000; // alpha contexts / tuple spaces
    std::size_t max_depth_attributes = 8;    // min_depth search
    std::size_t max_depth_values = 3;        // k(S) for min_depth search
    std::size_t max_size_attributes = 6;     // min_nodes / min_distinct_terminals
    std::size_t max_states = 4'000'000;      // memo table rows
    std::size_t max_label_universe = 64;     // distinct terminal labels considered
    std::size_t max_family_antichain = 20000;
};

class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// S_alpha: rules consistent with alpha, with the equations of alpha removed
// from their left-hand sides.  The result may be empty, and rules that
// become equal after the removal are merged (first occurrence kept).
// alpha must be consistent.
std::optional<RuleSystem> restrict_system(const RuleSystem& s, const EquationSystem& alpha);

// R_SR(S): rules r with no r' in S such that K(r') is a strict subset of K(r).
RuleSystem reduce_sr(const RuleSystem& s);
// R_AD(S): as reduce_sr, but the dominating rule must also share the decision.
RuleSystem reduce_ad(const RuleSystem& s);

enum class ReductionFlavor { sr, ad };

// I_SR(S) / I_AD(S).  The EAD/ESR variants coincide with these.
RuleSystem subsystem_i(const RuleSystem& s, ReductionFlavor flavor);
std::optional<RuleSystem> subsystem_i(const std::optional<RuleSystem>& s, ReductionFlavor flavor);

// S+: the rules of length exactly d(S).  Requires n(S) > 0.
RuleSystem s_plus(const RuleSystem& s);

// True iff every tuple of V(S) realizes at least one rule; n(S)=0 counts as
// complete.  Enumerates V(S), so |V(S)| is capped.
bool is_complete(const RuleSystem& s, const Limits& limits = {});

// The four reduced-form conditions: A(S) within {a_0..a_n}, D(S) within
// {0..|D(S)|}, every V_S(a) within {0..k(S)}, and d(S) >= 1.
bool is_reduced_form(const RuleSystem& s);

// ── Hypergraph and node covers ──────────────────────────────────────────────

struct Hypergraph {
    std::vector<Attribute> nodes;                // sorted
    std::vector<std::vector<Attribute>> edges;   // A(r) per rule (sorted), empties kept

    static Hypergraph of(const RuleSystem& s);
};

// A minimum-cardinality node cover of G; deterministic (the
// lexicographically first cover of minimum size).  Empty when there are no
// nonempty edges.
std::vector<Attribute> node_cover_exact(const Hypergraph& g, const Limits& limits = {});

// Greedy factor-d cover of G(S+): repeatedly take the lowest-index
// remaining rule and all its attributes.  Every rule of the input must
// have length d(S+) >= 1.  |B| = t*d(S+) <= beta(S+)*d(S+).
std::vector<Attribute> greedy_cover(const RuleSystem& s_plus_system);

// ── Beta measures ───────────────────────────────────────────────────────────

struct CoverMeasures {
    std::size_t beta = 0;         // beta(S)
    std::size_t beta_plus = 0;    // beta(S+)
    std::size_t beta_c = 0;       // worst case over restrictions
    std::size_t beta_c_plus = 0;
    ProblemKind kind = ProblemKind::ar;
};

// beta(S), or 0 for the empty system.
std::size_t beta_of(const std::optional<RuleSystem>& s, const Limits& limits = {});
// beta(S+), or 0 when the system is empty or has no conditions.
std::size_t beta_plus_of(const std::optional<RuleSystem>& s, const Limits& limits = {});

// Exact beta, beta+, beta_C, beta_C+ for the given problem kind, by
// enumeration of every consistent context alpha over A(S) (the empty one
// included) with values drawn from V_S or EV_S per the kind's flavor.
// For EAD/ESR the restricted systems pass through I_C first.
// Requires n(S) > 0.
CoverMeasures beta_measures(const RuleSystem& s, ProblemKind kind, const Limits& limits = {});

// Calls fn(alpha) for every consistent equation system alpha over A(S) with
// values from V_S (base) or EV_S (extended), including the empty system.
// Used by beta_measures and exposed for the test oracles.
void for_each_context(const RuleSystem& s, bool extended,
                      const std::function<void(const EquationSystem&)>& fn,
                      const Limits& limits = {});

}  // namespace ruletree

#endif  // RULETREE_SYSTEM_OPS_HPP
