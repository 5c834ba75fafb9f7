#ifndef GBS_MOBILITY_HPP
#define GBS_MOBILITY_HPP

#include "gbs/smc.hpp"

namespace gbs {

// A closed e-edge path with integer modulus != +-1. On a rose every e-edge
// path is closed, so this is a reachable label of e strictly divisible above
// label(e).
struct IntegerCycleWitness {
    int base_edge = -1;
    EdgePath cycle;
    FactoredRational modulus;
};

Decision<IntegerCycleWitness> find_strict_integer_cycle(const LabeledGraph& rose, int e,
                                                        const SearchBudget& budget = {});

// An edge is mobile when a strict monotone cycle ends in it (either
// orientation) or it carries a strict integer cycle (either orientation).
Decision<bool> classify_mobile(const LabeledGraph& rose, int geom_edge,
                               const SearchBudget& budget = {});

// Geometric ids of the mobile edges; inconclusive propagates.
Decision<std::vector<int>> mobile_edge_set(const LabeledGraph& rose,
                                           const SearchBudget& budget = {});

bool verify_integer_cycle(const LabeledGraph& rose, const IntegerCycleWitness& w);

}  // namespace gbs

#endif
