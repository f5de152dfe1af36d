// Round-based simulation of an implicit decision tree on one tuple: the
// cover-driven rounds for All Rules (plus the adapters that reuse them for
// AD/SR), and the reduced-system variant for ESR/EAD.  The entire tree is
// never materialized; each call describes one computation path.

#ifndef RULETREE_PATHSIM_HPP
#define RULETREE_PATHSIM_HPP

#include <vector>

#include "ruletree/core.hpp"
#include "ruletree/system_ops.hpp"

namespace ruletree {

struct SimulationRound {
    std::vector<Attribute> cover;  // B_i; queried in ascending index order
    EquationSystem acquired;       // the equations read during the round
};

struct PathTrace {
    ProblemKind kind = ProblemKind::ar;
    std::vector<SimulationRound> rounds;
    std::size_t queried = 0;               // total attribute reads
    std::vector<std::size_t> result;       // rule indices into the original system
};

// All Rules: each round greedily covers G((S_alpha)+), reads the covered
// attributes, and stops once the restricted system is empty or trivial.
// kind is AR or EAR; the tuple lies in V(S) resp. EV(S); n(S) > 0.
PathTrace simulate_ar(const RuleSystem& s, const ValueTuple& t, ProblemKind kind);

// AD / SR: the All Rules trace is already a valid solution for both.
PathTrace simulate_ad_sr(const RuleSystem& s, const ValueTuple& t, ProblemKind kind);

// ESR / EAD: runs on the reduced system R_SR(S) resp. R_AD(S), covering
// G(I_C(.)+) per round; values outside the reduced system's domain behave
// like the off-domain marker; the result reports indices into the original
// system.  kind is ESR or EAD; the tuple lies in EV(S); n(S) > 0.
PathTrace simulate_esr_ead(const RuleSystem& s, const ValueTuple& t, ProblemKind kind);

}  // namespace ruletree

#endif  // RULETREE_PATHSIM_HPP
