#ifndef GBS_TESTS_FIXTURES_HPP
#define GBS_TESTS_FIXTURES_HPP

#include <random>
#include <string>

#include "gbs/graph.hpp"

namespace gbs::testing {

// 3-rose of the non-ascending family: petals (7, 30p), (6, 15), (10, 8).
inline std::string e1_text(long long p = 1) {
    return "v0; f1: v0 v0 7 " + std::to_string(30 * p) + "; f2: v0 v0 6 15; f3: v0 v0 10 8";
}

// 4-rose with a strict monotone cycle of modulus 3.
inline const char* e2_text() {
    return "v0; f1: v0 v0 14 30; f2: v0 v0 6 15; f3: v0 v0 10 8; f4: v0 v0 30 21";
}

// e2 after sliding f4 over ~f1; no strict monotone cycles remain.
inline const char* e2p_text() {
    return "v0; f1: v0 v0 14 30; f2: v0 v0 6 15; f3: v0 v0 10 8; f4: v0 v0 14 21";
}

inline std::string bs_text(long long m, long long n) {
    return "v0; e: v0 v0 " + std::to_string(m) + " " + std::to_string(n);
}

// Deterministic bounded sampler (distribution classes are not portable).
inline long long rnd(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + (long long)(rng() % (unsigned long long)(hi - lo + 1));
}

// Serialization with vertices and edges reordered by name: equality of
// graphs that agree up to internal ids.
inline std::string name_sorted_text(const LabeledGraph& g) {
    std::vector<std::string> vs = g.vertex_names;
    std::sort(vs.begin(), vs.end());
    std::vector<std::string> es;
    for (int e = 0; e < g.edge_count(); ++e)
        es.push_back(g.edge_names[e] + ": " + g.vertex_names[g.origin[2 * e]] + " " +
                     g.vertex_names[g.origin[2 * e + 1]] + " " +
                     std::to_string(g.labels[2 * e].value()) + " " +
                     std::to_string(g.labels[2 * e + 1].value()));
    std::sort(es.begin(), es.end());
    std::string out;
    for (const auto& v : vs) out += v + " ";
    for (const auto& e : es) out += "; " + e;
    return out;
}

}  // namespace gbs::testing

#endif
