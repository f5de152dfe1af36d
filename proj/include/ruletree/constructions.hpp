// Polynomial-time builders: the single-path tree for k(S)=1, the depth-1
// trees for d(S)=1, the per-rule gadget graphs and their chains (with and
// without writing), and the generators of the worst-case families whose
// tree size blows up.

#ifndef RULETREE_CONSTRUCTIONS_HPP
#define RULETREE_CONSTRUCTIONS_HPP

#include "ruletree/core.hpp"
#include "ruletree/trees.hpp"

namespace ruletree {

// One complete path querying every attribute of A(S) in index order along
// the unique tuple of V(S); the terminal holds all of S.  Requires k(S)=1
// and n(S)>0; kind must be SR, AD or AR.
DecisionTree build_path_tree_k1(const RuleSystem& s, ProblemKind kind);

// Requires d(S)=1; kind must be SR or ESR.  With a length-0 rule present,
// a single terminal holding that rule; otherwise for SR a depth-1 fan on
// the smallest attribute, and for ESR the *-spine tree whose final *
// terminal holds the empty set.
DecisionTree build_tree_d1(const RuleSystem& s, ProblemKind kind);

// The m+2-node gadget for one rule: the conditions are checked in order;
// the matching edge advances, every other edge falls through to the empty
// terminal.  Requires the rule to have positive length.
DecisionGraph build_rule_gadget(const RuleSystem& s, std::size_t rule_index, ProblemKind kind);

// Gadgets chained in rule order, each fall-through terminal replaced by
// the next gadget's root; a length-0 rule short-circuits to a single
// terminal.  Solves SR / ESR; node count is 1 + sum of (length + 1).
DecisionGraph build_dag_chain(const RuleSystem& s, ProblemKind kind);

// The writing variant of the gadget: the accepting node writes the rule
// and both exits lead to the single W terminal.
DecisionGraphWithWriting build_writing_gadget(const RuleSystem& s, std::size_t rule_index,
                                              ProblemKind kind);

// Writing gadgets chained in rule order; W accumulates exactly the
// realizable rules, which solves all six problems.
DecisionGraphWithWriting build_dagw_chain(const RuleSystem& s, ProblemKind kind);

// The worst-case families: L9 (tree node blowup for SR), L10 (for ESR with
// k=1), L11a / L11b (distinct-terminal-label blowup for EAD / AD).
enum class FamilyKind { l9, l10, l11a, l11b };

struct FamilyParams {
    std::size_t n = 1;
    std::size_t k = 1;
    std::size_t d = 1;
};

RuleSystem gen_family(FamilyKind which, FamilyParams params);

std::optional<FamilyKind> parse_family_kind(std::string_view text);

}  // namespace ruletree

#endif  // RULETREE_CONSTRUCTIONS_HPP
