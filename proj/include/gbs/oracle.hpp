#ifndef GBS_ORACLE_HPP
#define GBS_ORACLE_HPP

#include "gbs/decision.hpp"
#include "gbs/graph.hpp"

namespace gbs {

// Brute-force reachability over the whole slide space: breadth-first over
// single slides of any edge, states deduplicated up to relabeling, labels
// capped. Shares no code with the exponent-space search; works on raw
// integers. Yes carries the depth at which the target appeared; No is only
// reported when the frontier was exhausted without hitting the caps.
Decision<long long> oracle_bfs(const LabeledGraph& a, const LabeledGraph& b,
                               long long max_label, int max_depth);

}  // namespace gbs

#endif
