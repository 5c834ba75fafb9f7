#ifndef GBS_ISO_HPP
#define GBS_ISO_HPP

#include <string>
#include <vector>

#include "gbs/ascending.hpp"
#include "gbs/moves.hpp"

namespace gbs {

struct NonMobileSubgraph {
    std::vector<int> edges;  // geometric ids classified non-mobile
    // multiset fingerprint: sorted unordered absolute label pairs
    std::vector<std::pair<long long, long long>> pair_multiset;
};

NonMobileSubgraph non_mobile_subgraph(const LabeledGraph& rose,
                                      const std::vector<int>& mobile_edges);

// The finite closure of a rose under single slides of its non-mobile edges,
// with the slide path recorded per member. Inconclusive when the closure
// exceeds the cap (finiteness is a cited theorem, not a bound).
struct SnmSet {
    std::vector<LabeledGraph> graphs;     // breadth-first, graphs[0] = start
    std::vector<MoveSequence> paths;      // from the start graph
    bool complete = true;
};

Decision<SnmSet> enumerate_snm(const LabeledGraph& rose, const std::vector<int>& mobile_edges,
                               const SearchBudget& budget = {});

// Slides of one geometric edge (and its reverse) taking its label pair to
// the target pair; No only on exhaustive refutation of both orientations.
Decision<MoveSequence> match_mobile_edge(const LabeledGraph& rose, int geom_edge,
                                         std::pair<long long, long long> target,
                                         const SearchBudget& budget = {});

// Replayable isomorphism witness: reduce both inputs, slide non-mobile
// edges of A into position, then each mobile edge, and close with a
// relabeling match onto reduced B.
struct IsoCertificate {
    MoveSequence reduction_a;
    MoveSequence reduction_b;
    std::string normalized_a;  // canonical text after reduction + sign normalization
    std::string normalized_b;
    MoveSequence snm;                  // non-mobile slides, from normalized_a
    std::vector<MoveSequence> mobile;  // per-edge slide blocks, in order
    GraphMatch final_match;            // last graph -> normalized_b
};

Decision<IsoCertificate> are_isomorphic(const LabeledGraph& a, const LabeledGraph& b,
                                        const SearchBudget& budget = {});

// Full independent replay of a certificate against the two input graphs;
// re-validates every move precondition.
bool verify_certificate(const LabeledGraph& a, const LabeledGraph& b, const IsoCertificate& cert,
                        std::string* why = nullptr);

}  // namespace gbs

#endif
