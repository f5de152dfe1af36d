// Ground truth: direct per-tuple solutions, validators for solutions,
// trees and graphs, and exact minimum depth / node count / distinct
// terminal label count by exhaustive search over subproblems.

#ifndef RULETREE_ORACLE_HPP
#define RULETREE_ORACLE_HPP

#include <functional>
#include <vector>

#include "ruletree/core.hpp"
#include "ruletree/system_ops.hpp"
#include "ruletree/trees.hpp"

namespace ruletree {

struct SolutionSpec {
    ProblemKind kind = ProblemKind::ar;
    std::vector<std::size_t> realizable;      // sorted rule indices
    std::vector<std::uint64_t> decisions;     // D of the realizable set

    // The canonical solution: the realizable set for AR/EAR, the
    // lowest-index realizable rule per realizable decision for AD/EAD, the
    // lowest-index realizable rule (or nothing) for SR/ESR.
    std::vector<std::size_t> canonical(const RuleSystem& s) const;
};

SolutionSpec solve_direct(const RuleSystem& s, const ValueTuple& t, ProblemKind kind);

// Checks the two conditions of the kind's solution contract for Z.
bool validate_solution(const RuleSystem& s, const ValueTuple& t, ProblemKind kind,
                       const std::vector<std::size_t>& z);

// True iff the tree is a structurally valid decision tree over S of the
// kind's flavor and every complete path with consistent K(xi) satisfies the
// kind's solving conditions.
bool validate_tree(const DecisionTree& tree, const RuleSystem& s, ProblemKind kind);

// Simulates the graph on every tuple of V(S) resp. EV(S) and validates
// each result.  Tuple-space size is capped.
bool validate_graph(const DecisionGraph& g, const RuleSystem& s, ProblemKind kind,
                    const Limits& limits = {});
bool validate_graph(const DecisionGraphWithWriting& g, const RuleSystem& s, ProblemKind kind,
                    const Limits& limits = {});

struct OptimalTree {
    std::size_t value = 0;
    DecisionTree witness;
};

// Exact h_C(S) with a witness attaining it.  The search never queries an
// attribute twice on a path and memoizes on the acquired partial
// assignment.  Capped by max_depth_attributes / max_depth_values.
OptimalTree min_depth(const RuleSystem& s, ProblemKind kind, const Limits& limits = {});

// Exact L_C(S).  Capped by max_size_attributes.
OptimalTree min_nodes(const RuleSystem& s, ProblemKind kind, const Limits& limits = {});

// Exact T_C(S): the minimum over solving trees of the number of pairwise
// different terminal labels.  Implemented by a search over antichains of
// label families, so the label universe is capped as well.
OptimalTree min_distinct_terminals(const RuleSystem& s, ProblemKind kind,
                                   const Limits& limits = {});

// Every tuple of V(S) (extended=false) or EV(S) (extended=true), in
// lexicographic order of the value codes; capped enumeration.
void for_each_tuple(const RuleSystem& s, bool extended,
                    const std::function<void(const ValueTuple&)>& fn, const Limits& limits = {});

}  // namespace ruletree

#endif  // RULETREE_ORACLE_HPP
