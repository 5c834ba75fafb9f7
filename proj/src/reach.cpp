#include "gbs/reach.hpp"

#include <algorithm>
#include <map>

#include "gbs/graph.hpp"

namespace gbs {

std::optional<int> ReachSet::find(const std::vector<long long>& exps) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].exps == exps) return (int)i;
    return std::nullopt;
}

EdgePath ReachSet::path_to(int state) const {
    EdgePath rev;
    for (int s = state; states[s].parent != -1; s = states[s].parent) rev.push_back(states[s].via);
    return EdgePath(rev.rbegin(), rev.rend());
}

EdgePath ReachSet::pumped_path(const Cone& c, long long k) const {
    EdgePath p = path_to(c.apex);
    // one pump: undo the path to `from`, then redo the path to `apex`
    EdgePath cycle = path_reversed(path_to(c.from));
    EdgePath to_apex = path_to(c.apex);
    cycle.insert(cycle.end(), to_apex.begin(), to_apex.end());
    for (long long i = 0; i < k; ++i) p.insert(p.end(), cycle.begin(), cycle.end());
    return p;
}

ReachSet reachable_labels(const LabeledGraph& rose, int slider, const SearchBudget& budget,
                          const std::vector<std::vector<long long>>& extra_corners) {
    if (!rose_shape(rose)) throw UnsupportedClass("reachability search needs a rose");
    // exponent vectors are complete states only when the basis carries every
    // prime of every label (units all 1, hence slide-invariant)
    for (const auto& l : rose.labels)
        if (l.unit != 1) throw BasisMismatch("reachability needs a basis covering all labels");
    std::size_t r = rose.basis->size();

    ReachSet out;
    out.slider = slider;
    out.base_unit = rose.labels[slider].unit;
    out.base_sign = rose.labels[slider].sign;

    // transitions: every orientation of every other petal, declaration order
    std::vector<int> steps;
    for (int h = 0; h < rose.half_count(); ++h) {
        if (LabeledGraph::geometric(h) == LabeledGraph::geometric(slider)) continue;
        steps.push_back(h);
    }

    // box: componentwise max of both slider labels and all |alpha| sums,
    // plus slack; external target corners widen it further
    out.box_hi.assign(r, 0);
    auto widen = [&](const std::vector<long long>& v) {
        for (std::size_t l = 0; l < r; ++l) out.box_hi[l] = std::max(out.box_hi[l], v[l]);
    };
    widen(rose.labels[slider].exps);
    widen(rose.labels[LabeledGraph::bar(slider)].exps);
    {
        std::vector<long long> alpha_sum(r, 0);
        for (int h : steps) {
            if (h & 1) continue;  // one orientation per petal; |alpha| is shared
            for (std::size_t l = 0; l < r; ++l)
                alpha_sum[l] += std::llabs(rose.labels[LabeledGraph::bar(h)].exps[l] -
                                           rose.labels[h].exps[l]);
        }
        widen(alpha_sum);
    }
    for (const auto& c : extra_corners) widen(c);
    for (auto& b : out.box_hi) b += budget.exponent_slack;

    std::map<std::vector<long long>, int> index;
    auto push = [&](ReachState st) {
        int id = (int)out.states.size();
        index.emplace(st.exps, id);
        out.states.push_back(std::move(st));
        return id;
    };

    ReachState base;
    base.exps = rose.labels[slider].exps;
    push(base);

    bool overflow = false;
    for (std::size_t qi = 0; qi < out.states.size(); ++qi) {
        if ((long long)out.states.size() > budget.max_states) {
            overflow = true;
            break;
        }
        if (out.states[qi].depth >= budget.max_path_len) {
            overflow = true;
            continue;
        }
        const std::vector<long long> cur = out.states[qi].exps;
        for (int h : steps) {
            const auto& need = rose.labels[h].exps;
            bool ok = true;
            for (std::size_t l = 0; l < r && ok; ++l) ok = need[l] <= cur[l];
            if (!ok) continue;
            std::vector<long long> next(r);
            bool inside = true;
            for (std::size_t l = 0; l < r; ++l) {
                next[l] = cur[l] - need[l] + rose.labels[LabeledGraph::bar(h)].exps[l];
                if (next[l] > out.box_hi[l]) inside = false;
            }
            if (!inside) {
                overflow = true;
                continue;
            }
            if (index.count(next)) continue;
            ReachState st;
            st.exps = next;
            st.parent = (int)qi;
            st.via = h;
            st.depth = out.states[qi].depth + 1;
            int id = push(std::move(st));
            // comparable pair below the new state -> pumping cone; scan the
            // ancestor chain always, everything else only while small
            if (out.cones.size() < 32) {
                auto try_cone = [&](int s) {
                    bool le = true, eq = true;
                    for (std::size_t l = 0; l < r && le; ++l) {
                        if (out.states[s].exps[l] > next[l]) le = false;
                        if (out.states[s].exps[l] != next[l]) eq = false;
                    }
                    if (!le || eq) return;
                    Cone c;
                    c.apex = id;
                    c.from = s;
                    c.dir.resize(r);
                    for (std::size_t l = 0; l < r; ++l)
                        c.dir[l] = next[l] - out.states[s].exps[l];
                    for (const auto& other : out.cones)
                        if (other.dir == c.dir) return;
                    out.cones.push_back(std::move(c));
                };
                if (id <= 2000) {
                    for (int s = 0; s < id && out.cones.size() < 32; ++s) try_cone(s);
                } else {
                    for (int s = out.states[id].parent; s != -1; s = out.states[s].parent) {
                        if (out.cones.size() >= 32) break;
                        try_cone(s);
                    }
                }
            }
        }
    }
    out.saturated = !overflow;
    return out;
}

std::optional<long long> least_pump_strictly_above(const ReachSet& reach, const Cone& cone,
                                                   const std::vector<long long>& sigma,
                                                   const SearchBudget& budget) {
    const auto& apex = reach.states[cone.apex].exps;
    std::size_t r = apex.size();
    std::optional<long long> best;
    for (std::size_t strict = 0; strict < r; ++strict) {
        LinearConstraintSystem sys;
        sys.dim = 1;
        for (std::size_t l = 0; l < r; ++l) {
            LinearRow row;
            row.coeffs = {cone.dir[l]};
            row.rhs = sigma[l] - apex[l] + (l == strict ? 1 : 0);
            sys.rows.push_back(row);
        }
        sys.rows.push_back(LinearRow{{1}, 0, LinearRow::GE});
        auto f = ilp_feasible(sys, budget);
        if (f.is_yes() && (!best || f.value()[0] < *best)) best = f.value()[0];
    }
    return best;
}

std::optional<long long> pump_hitting(const ReachSet& reach, const Cone& cone,
                                      const std::vector<long long>& target) {
    const auto& apex = reach.states[cone.apex].exps;
    std::optional<long long> k;
    for (std::size_t l = 0; l < apex.size(); ++l) {
        long long diff = target[l] - apex[l];
        if (cone.dir[l] == 0) {
            if (diff != 0) return std::nullopt;
        } else {
            if (diff % cone.dir[l] != 0 || diff / cone.dir[l] < 0) return std::nullopt;
            long long kk = diff / cone.dir[l];
            if (k && *k != kk) return std::nullopt;
            k = kk;
        }
    }
    return k;  // nullopt only if dir == 0, which cones exclude
}

}  // namespace gbs
