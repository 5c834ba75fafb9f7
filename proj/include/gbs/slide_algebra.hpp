#ifndef GBS_SLIDE_ALGEBRA_HPP
#define GBS_SLIDE_ALGEBRA_HPP

#include <string>
#include <vector>

#include "gbs/moves.hpp"

namespace gbs {

// One slide x/A of a half-edge over a path. Paths never contain the slid
// geometric edge; the commutation lemmas additionally classify them by
// whether they cross the other pair member.
struct SlideSymbol {
    int edge = -1;
    EdgePath path;
};

// Relabeling of half-edges applied to the tail of a sequence after certain
// rewrites ("what was called e is now in the position of f").
struct Renaming {
    std::vector<int> map;  // per half-edge

    static Renaming identity(int half_count);
    bool is_identity() const;
    int operator()(int h) const { return map[h]; }
    SlideSymbol apply(const SlideSymbol& s) const;
    // first this, then other
    Renaming then(const Renaming& other) const;
};

struct CommuteResult {
    bool forbidden = false;
    std::string case_id;              // lemma case: a,k,l,m,n,j,i,r,f,g,h,o,p,q
    std::vector<SlideSymbol> symbols; // replaces the pair when not forbidden
    Renaming renaming;                // to apply to every later symbol
};

// Rewrites the valid pair first*second into second-edge-first form per the
// slide equivalences, or reports the pattern forbidden (the lemmas rule it
// out on non-ascending graphs, so a replayable forbidden pattern certifies
// a strict monotone cycle). Pair paths may cross the other member at most
// once each; InvalidSequence otherwise, or when the pair does not replay.
CommuteResult commute_pair(const LabeledGraph& g, const SlideSymbol& first,
                           const SlideSymbol& second);

struct RearrangeResult {
    std::vector<SlideSymbol> symbols;
    Renaming renaming;  // composed: relabels the original run's result
    long long rewrites = 0;
    // Instrumentation: crossing-pair measure (count of adjacent symbol pairs
    // that each cross the other's edge) sampled before and after every
    // renaming rewrite. Under the leftmost-bubble strategy the measure can
    // bounce at a seam even though every rewrite is replay-verified and the
    // run terminates within the rewrite budget; the trace records it.
    long long pattern_measure_increases = 0;
};

// Groups all slides of edge_order[0] first, then edge_order[1], and so on,
// by repeated commutation; every slid edge must be mobile and the graph a
// non-ascending rose with n <= 3 for the lemmas to apply. Forbidden patterns
// raise ForbiddenEncountered (the caller should re-check is_ascending).
RearrangeResult rearrange_by_edge(const LabeledGraph& g, std::vector<SlideSymbol> seq,
                                  const std::vector<int>& edge_order);

LabeledGraph replay_symbols(const LabeledGraph& g, const std::vector<SlideSymbol>& seq);

// content equality under a relabeling: labels and origins of g1's half-edge
// h match g2's half-edge m(h)
bool graphs_match_under(const LabeledGraph& g1, const LabeledGraph& g2, const Renaming& m);

}  // namespace gbs

#endif
