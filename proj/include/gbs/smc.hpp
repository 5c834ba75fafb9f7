#ifndef GBS_SMC_HPP
#define GBS_SMC_HPP

#include <optional>
#include <vector>

#include "gbs/reach.hpp"

namespace gbs {

// A strict monotone cycle (e_1,...,e_s,e): a bar(e)-edge path closing with e,
// integer modulus, |modulus| != 1. Sliding bar(e) along the path turns e into
// a strict (virtually) ascending loop of that modulus.
struct MonotoneCycleWitness {
    EdgePath path;             // (e_1,...,e_s), a bar(e)-edge path
    int last_edge = -1;        // e
    FactoredRational modulus;  // q(e_1,...,e_s,e)
};

// Per choice of strict row, the inequality system whose lattice points are
// the exponent tuples of candidate strict monotone cycles with last edge e.
struct PiSystem {
    int base_edge = -1;
    bool unit_compatible = true;
    std::vector<int> variable_petals;  // petal ids for x_2..x_n, declaration order
    std::vector<LinearConstraintSystem> systems;
};

// Lambda(e): labels that can appear on bar(e) after slides of bar(e); an
// explicit reachable set plus pumping cones, with a saturation flag that
// marks the explicit set exhaustive.
struct ConeUnion {
    int base_edge = -1;
    ReachSet reach;
    bool saturated = false;
};

// Single-edge strict monotone cycles: a petal orientation whose modulus is a
// non-trivial integer (strict ascending / virtually ascending loop).
std::optional<MonotoneCycleWitness> quick_loop_check(const LabeledGraph& rose);

PiSystem compute_pi(const LabeledGraph& rose, int e);
ConeUnion compute_lambda(const LabeledGraph& rose, int e, const SearchBudget& budget = {});

Decision<MonotoneCycleWitness> has_smc_with_last_edge(const LabeledGraph& rose, int e,
                                                      const SearchBudget& budget = {});
Decision<MonotoneCycleWitness> has_smc(const LabeledGraph& rose,
                                       const SearchBudget& budget = {});

// Re-verifies a witness against the definition, independently of the search
// bookkeeping: valid bar(e)-edge path, integral closing modulus, |q| != 1.
bool verify_monotone_cycle(const LabeledGraph& rose, const MonotoneCycleWitness& w);

}  // namespace gbs

#endif
