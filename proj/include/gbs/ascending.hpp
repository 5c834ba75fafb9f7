#ifndef GBS_ASCENDING_HPP
#define GBS_ASCENDING_HPP

#include "gbs/mobility.hpp"

namespace gbs {

Decision<int> count_mobile_edges(const LabeledGraph& rose, const SearchBudget& budget = {});

// Ascending verdict with the strict monotone cycle that proves it and a
// replayable exhibition turning the cycle's last edge into a strict
// ascending loop (slide, then an A-move when the loop is only virtually
// ascending).
struct AscendingWitness {
    MonotoneCycleWitness cycle;
    MoveSequence exhibition;
};

// Applies to reduced roses with n <= 3, or any n when exactly one edge is
// mobile (UnsupportedClass otherwise). The verdict is has_smc.
Decision<AscendingWitness> is_ascending(const LabeledGraph& rose,
                                        const SearchBudget& budget = {});

}  // namespace gbs

#endif
