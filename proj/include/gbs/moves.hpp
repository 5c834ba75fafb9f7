#ifndef GBS_MOVES_HPP
#define GBS_MOVES_HPP

#include <optional>
#include <string>
#include <vector>

#include "gbs/graph.hpp"

namespace gbs {

// A path is an ordered list of half-edge ids, consecutive in its graph:
// target(steps[i]) == origin(steps[i+1]).
using EdgePath = std::vector<int>;

EdgePath path_reversed(const EdgePath& p);
std::vector<std::string> path_names(const LabeledGraph& g, const EdgePath& p);
EdgePath path_from_names(const LabeledGraph& g, const std::vector<std::string>& names);

// Product of label(bar(h)) / label(h) along the path; 1 for the empty path.
FactoredRational modulus_of_path(const LabeledGraph& g, const EdgePath& path);

// Conditions for sliding e along the path: avoids e and bar(e), starts at
// o(e), and label(step_i) | label(e) * q(prefix) at every step.
bool is_e_edge_path(const LabeledGraph& g, int e, const EdgePath& path);
// index of the first violated step, for diagnostics; nullopt when valid
std::optional<int> first_invalid_step(const LabeledGraph& g, int e, const EdgePath& path);

// Drops subcycles of modulus exactly 1, innermost then leftmost, to fixpoint.
// Sliding over the reduced path has the same effect as over the original.
EdgePath remove_redundant_subcycles(const LabeledGraph& g, const EdgePath& path);

// Slide e over the path: o(e) moves to t(path), label(e) *= q(path).
LabeledGraph apply_slide(const LabeledGraph& g, int e, const EdgePath& path);

// Induction at an ascending loop (|label(loop)| = 1): multiplies (or divides)
// every other label at the loop's vertex by l; l must divide label(bar(loop)),
// and in the divide direction every affected label.
LabeledGraph apply_induction(const LabeledGraph& g, int loop, long long l, bool divide = false);

// A-move expansion: a virtually ascending loop (k, klm) becomes a loop
// (1, lm) at a fresh vertex joined by an edge (l, k). k, l != +-1.
struct AMoveConfig {
    int loop = -1;       // half-edge carrying k
    long long l = 0;     // chosen factor with k*l | label(bar(loop))
    std::string new_vertex = "w";
    std::string new_edge = "c";
};
LabeledGraph apply_a_move_plus(const LabeledGraph& g, const AMoveConfig& cfg);
// Inverse: the fresh vertex must carry exactly the loop and the connecting
// edge; collapses back to the (k, klm) loop.
LabeledGraph apply_a_move_minus(const LabeledGraph& g, int doomed_vertex);

bool is_reduced(const LabeledGraph& g);

// ---------------------------------------------------------------------------
// Replayable moves. Moves reference edges and vertices by name ("~f1" is the
// reversed orientation of f1) so they survive reindexing.

struct Move {
    enum class Kind { slide, induction, amove_plus, amove_minus, collapse, expansion };
    Kind kind = Kind::slide;

    std::string edge;                // slide / collapse: the acting half-edge
    std::vector<std::string> path;   // slide
    long long factor = 1;            // induction l / amove l / expansion factor
    bool divide = false;             // induction direction
    std::string vertex;              // amove_minus / expansion base vertex
    std::string new_vertex;          // amove_plus / expansion
    std::string new_edge;            // amove_plus / expansion
    std::vector<std::string> moved;  // expansion: half-edges moved out
    bool sign_flip = false;          // collapse/expansion: edge flip applied first
    // audit: (half-edge name, label before, label after)
    std::vector<std::tuple<std::string, long long, long long>> audit;
};

struct MoveSequence {
    std::string initial_fingerprint;
    std::vector<Move> moves;
};

LabeledGraph apply_move(const LabeledGraph& g, const Move& m);
// Inverse move; some kinds need the graph the move acted on.
Move invert_move(const LabeledGraph& before, const Move& m);

// Replays all moves. With enforce_reduced, every intermediate graph must be
// reduced (certificate mode); violations raise InvalidSequence.
LabeledGraph replay(const LabeledGraph& g, const MoveSequence& seq, bool enforce_reduced = false);
MoveSequence invert_sequence(const LabeledGraph& initial, const MoveSequence& seq);

Move make_slide_move(const LabeledGraph& g, int e, const EdgePath& path);

// Collapse every |label| = 1 edge with distinct endpoints, in half-edge id
// order, until none remain. Throws ElementaryGroup if the result presents
// Z, Z^2 or the Klein bottle group.
std::pair<LabeledGraph, MoveSequence> reduce(const LabeledGraph& g);

}  // namespace gbs

#endif
