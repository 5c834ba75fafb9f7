#ifndef GBS_GRAPH_HPP
#define GBS_GRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "gbs/arith.hpp"

namespace gbs {

// Finite labeled graph: a fixed-point-free involution on half-edges, an
// origin map, and a nonzero integer label at the origin of every half-edge.
// Geometric edge g owns half-edges 2g (as declared) and 2g+1 (reversed);
// the involution is h ^ 1.
struct LabeledGraph {
    std::vector<std::string> vertex_names;
    std::vector<std::string> edge_names;   // one per geometric edge
    std::vector<int> origin;               // per half-edge
    std::vector<FactoredInt> labels;       // per half-edge
    BasisPtr basis;

    static int bar(int h) { return h ^ 1; }
    static int geometric(int h) { return h >> 1; }
    static int forward(int g) { return 2 * g; }

    int vertex_count() const { return (int)vertex_names.size(); }
    int edge_count() const { return (int)edge_names.size(); }
    int half_count() const { return (int)origin.size(); }
    int target(int h) const { return origin[bar(h)]; }
    bool is_loop(int g) const { return origin[2 * g] == origin[2 * g + 1]; }

    const FactoredInt& label(int h) const { return labels[h]; }
    // "f1" for the declared orientation, "~f1" for the reverse.
    std::string half_edge_name(int h) const;
    std::optional<int> half_edge_by_name(const std::string& name) const;
    std::optional<int> vertex_by_name(const std::string& name) const;

    // Involution/label/connectivity invariants; throws on violation.
    void validate() const;

    bool all_labels_positive() const;
    std::vector<long long> raw_label_values() const;
};

// One declaration per line or semicolon-separated; `#` comments.
//   vertices: v0 v1        (keyword optional: a bare id list also declares)
//   edge f1: v0 v1 2 -3    (keyword optional: `f1: v0 v1 2 -3`)
LabeledGraph parse_graph(const std::string& text);
LabeledGraph parse_graph(const std::string& text, BasisPtr basis);

// Canonical compact form, byte-stable: "v0 v1; e: v0 v1 1 5".
std::string serialize_graph(const LabeledGraph& g);

// Same graph re-factored over a (larger) basis.
LabeledGraph with_basis(const LabeledGraph& g, BasisPtr basis);

// FNV-1a of the canonical serialization, hex; anchors certificates.
std::string fingerprint(const LabeledGraph& g);

struct RoseShape {
    std::vector<int> petals;  // geometric edge ids at the unique vertex
    int n = 0;
};

std::optional<RoseShape> rose_shape(const LabeledGraph& g);

// Witness that one graph maps onto another by a graph isomorphism composed
// with orientation swaps and admissible sign changes.
struct GraphMatch {
    std::vector<int> vertex_map;    // source vertex -> target vertex
    std::vector<int> edge_map;      // source geometric edge -> target
    std::vector<bool> flip;         // per source edge: orientation reversed
    std::vector<int> vertex_signs;  // +1/-1 per source vertex
    std::vector<int> edge_signs;    // +1/-1 per source geometric edge

    static GraphMatch identity(const LabeledGraph& g);
    bool is_identity() const;
};

// Applies the match to g; the result compares exactly against the target.
LabeledGraph apply_match(const LabeledGraph& g, const GraphMatch& m);

// Canonical sign pattern via admissible sign changes: all labels positive
// when achievable, otherwise one canonical negative per obstructed edge.
// The returned match reproduces the input when applied to the output.
std::pair<LabeledGraph, GraphMatch> normalize_signs(const LabeledGraph& g);

bool sign_normalizable(const LabeledGraph& g);

std::optional<GraphMatch> graphs_equal_up_to_relabeling(const LabeledGraph& g1,
                                                        const LabeledGraph& g2);

}  // namespace gbs

#endif
