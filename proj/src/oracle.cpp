#include "gbs/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace gbs {

namespace {

// a rose state is the list of signed label pairs, one per petal
using State = std::vector<std::pair<long long, long long>>;

State state_of(const LabeledGraph& g) {
    State s;
    for (int e = 0; e < g.edge_count(); ++e)
        s.emplace_back(g.labels[2 * e].value(), g.labels[2 * e + 1].value());
    return s;
}

// canonical up to petal order and orientation swaps (absolute values; the
// oracle runs in the positive regime like everything else)
std::string key_of(const State& s) {
    std::vector<std::pair<long long, long long>> petals;
    for (auto [a, b] : s) {
        long long x = std::llabs(a), y = std::llabs(b);
        petals.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(petals.begin(), petals.end());
    std::ostringstream os;
    for (auto& [x, y] : petals) os << x << ',' << y << ';';
    return os.str();
}

}  // namespace

namespace {

// all labels the given orientation can take by sliding along any path, with
// everything else frozen; *truncated flags hitting the label cap
std::vector<long long> slide_closure(const State& s, int petal, int side, long long max_label,
                                     bool* truncated) {
    long long start = side ? s[petal].second : s[petal].first;
    std::vector<long long> labels{start};
    for (std::size_t qi = 0; qi < labels.size(); ++qi) {
        long long cur = labels[qi];
        for (int h = 0; h < (int)s.size(); ++h) {
            if (h == petal) continue;
            for (int hside = 0; hside < 2; ++hside) {
                long long lh = hside ? s[h].second : s[h].first;
                long long lhb = hside ? s[h].first : s[h].second;
                if (cur % lh != 0) continue;
                __int128 next = (__int128)(cur / lh) * lhb;
                if (next > max_label || -next > max_label) {
                    *truncated = true;
                    continue;
                }
                if (std::find(labels.begin(), labels.end(), (long long)next) == labels.end())
                    labels.push_back((long long)next);
            }
        }
    }
    return labels;
}

}  // namespace

Decision<long long> oracle_bfs(const LabeledGraph& a, const LabeledGraph& b,
                               long long max_label, int max_depth) {
    using D = Decision<long long>;
    if (!rose_shape(a) || !rose_shape(b)) throw UnsupportedClass("oracle_bfs needs roses");

    std::string target = key_of(state_of(b));
    State start = state_of(a);
    if (key_of(start) == target) return D::yes_with(0);
    if (a.edge_count() != b.edge_count())
        return D::no_because("petal counts differ; slides preserve them");

    // one BFS level = one slide move: some orientation slides over some path
    std::map<std::string, int> seen;
    std::vector<State> queue{start};
    std::vector<int> depth{0};
    seen.emplace(key_of(start), 0);
    bool truncated = false;

    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const State cur = queue[qi];
        if (depth[qi] >= max_depth) {
            truncated = true;
            continue;
        }
        int n = (int)cur.size();
        for (int e = 0; e < n; ++e)
            for (int eside = 0; eside < 2; ++eside) {
                for (long long lab : slide_closure(cur, e, eside, max_label, &truncated)) {
                    State ns = cur;
                    if (eside)
                        ns[e].second = lab;
                    else
                        ns[e].first = lab;
                    std::string key = key_of(ns);
                    if (seen.count(key)) continue;
                    if (key == target) return D::yes_with(depth[qi] + 1);
                    seen.emplace(key, depth[qi] + 1);
                    queue.push_back(std::move(ns));
                    depth.push_back(depth[qi] + 1);
                }
            }
    }
    if (truncated)
        return D::inconclusive_at("frontier truncated by the label or depth cap", max_label);
    return D::no_because("slide space exhausted under the caps");
}

}  // namespace gbs
