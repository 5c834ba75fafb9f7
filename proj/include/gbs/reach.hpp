#ifndef GBS_REACH_HPP
#define GBS_REACH_HPP

#include <optional>
#include <vector>

#include "gbs/decision.hpp"
#include "gbs/moves.hpp"

namespace gbs {

// Reachable labels of one sliding half-edge of a rose. Every slide path of
// the slider stays based at the unique vertex, so the reachable set is
// exactly the orbit of its label under single slide steps over the other
// petal orientations: label L steps over h whenever label(h) | L, moving to
// L * q(h). States are exponent vectors over the basis; the unit part and
// sign never move.
//
// Exploration is breadth-first inside a box; a closed frontier makes the
// explicit set exhaustive. Whenever two comparable states s <= t are found,
// the cycle from s to t pumps: t, t+d, t+2d, ... are all reachable (the same
// path re-verifies, divisibility only slackens upward), giving a cone.

struct ReachState {
    std::vector<long long> exps;
    int parent = -1;
    int via = -1;  // half-edge stepped over to get here
    int depth = 0;
};

struct Cone {
    int apex = -1;                // state index
    int from = -1;                // state with from + dir == apex
    std::vector<long long> dir;   // componentwise >= 0 and nonzero
};

struct ReachSet {
    int slider = -1;
    std::vector<ReachState> states;  // states[0] is the starting label
    std::vector<Cone> cones;
    bool saturated = false;
    std::vector<long long> box_hi;
    long long base_unit = 1;
    int base_sign = 1;

    std::optional<int> find(const std::vector<long long>& exps) const;
    EdgePath path_to(int state) const;
    // path realizing apex + k * dir
    EdgePath pumped_path(const Cone& c, long long k) const;
};

// extra_corners widen the box so externally supplied targets stay inside it.
ReachSet reachable_labels(const LabeledGraph& rose, int slider, const SearchBudget& budget,
                          const std::vector<std::vector<long long>>& extra_corners = {});

// Least k >= 0 with apex + k*dir componentwise >= sigma and != sigma, decided
// through one-variable lattice feasibility per strict row.
std::optional<long long> least_pump_strictly_above(const ReachSet& reach, const Cone& cone,
                                                   const std::vector<long long>& sigma,
                                                   const SearchBudget& budget);

// Least k >= 0 with apex + k*dir == target exactly, if any.
std::optional<long long> pump_hitting(const ReachSet& reach, const Cone& cone,
                                      const std::vector<long long>& target);

}  // namespace gbs

#endif
