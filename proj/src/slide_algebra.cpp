#include "gbs/slide_algebra.hpp"

#include <algorithm>
#include <cassert>

#include "gbs/mobility.hpp"

namespace gbs {

Renaming Renaming::identity(int half_count) {
    Renaming r;
    r.map.resize(half_count);
    for (int h = 0; h < half_count; ++h) r.map[h] = h;
    return r;
}

bool Renaming::is_identity() const {
    for (std::size_t h = 0; h < map.size(); ++h)
        if (map[h] != (int)h) return false;
    return true;
}

SlideSymbol Renaming::apply(const SlideSymbol& s) const {
    SlideSymbol out;
    out.edge = map[s.edge];
    for (int h : s.path) out.path.push_back(map[h]);
    return out;
}

Renaming Renaming::then(const Renaming& other) const {
    Renaming out;
    out.map.resize(map.size());
    for (std::size_t h = 0; h < map.size(); ++h) out.map[h] = other.map[map[h]];
    return out;
}

LabeledGraph replay_symbols(const LabeledGraph& g, const std::vector<SlideSymbol>& seq) {
    LabeledGraph cur = g;
    for (const auto& s : seq) cur = apply_slide(cur, s.edge, s.path);
    return cur;
}

bool graphs_match_under(const LabeledGraph& g1, const LabeledGraph& g2, const Renaming& m) {
    if (g1.half_count() != g2.half_count() || g1.vertex_count() != g2.vertex_count())
        return false;
    for (int h = 0; h < g1.half_count(); ++h) {
        if (g1.origin[h] != g2.origin[m(h)]) return false;
        if (!(g1.labels[h] == g2.labels[m(h)])) return false;
    }
    return true;
}

namespace {

std::vector<int> occurrences_of(const EdgePath& path, int geom) {
    std::vector<int> where;
    for (std::size_t i = 0; i < path.size(); ++i)
        if (LabeledGraph::geometric(path[i]) == geom) where.push_back((int)i);
    return where;
}

EdgePath concat(std::initializer_list<EdgePath> parts) {
    EdgePath out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

EdgePath slice(const EdgePath& p, int from, int to) {  // [from, to)
    return EdgePath(p.begin() + from, p.begin() + to);
}

void push_nonempty(std::vector<SlideSymbol>& out, int edge, EdgePath path) {
    if (path.empty()) return;
    out.push_back(SlideSymbol{edge, std::move(path)});
}

}  // namespace

CommuteResult commute_pair(const LabeledGraph& g, const SlideSymbol& first_raw,
                           const SlideSymbol& second_raw) {
    SlideSymbol first{first_raw.edge, remove_redundant_subcycles(g, first_raw.path)};
    // validate the pair in order (paths are ids, so the second path reduces
    // against the intermediate graph, where labels differ)
    LabeledGraph g1 = [&] {
        try {
            return apply_slide(g, first.edge, first.path);
        } catch (const InvalidSlide& e) {
            throw InvalidSequence(std::string("first slide invalid: ") + e.what());
        }
    }();
    SlideSymbol second{second_raw.edge, remove_redundant_subcycles(g1, second_raw.path)};
    LabeledGraph g2 = [&] {
        try {
            return apply_slide(g1, second.edge, second.path);
        } catch (const InvalidSlide& e) {
            throw InvalidSequence(std::string("second slide invalid: ") + e.what());
        }
    }();

    int x = first.edge, f = second.edge;
    int gx = LabeledGraph::geometric(x), gf = LabeledGraph::geometric(f);
    CommuteResult res;
    res.renaming = Renaming::identity(g.half_count());

    if (gx == gf) {
        if (x == f) throw InvalidSequence("same-orientation pair has no commutation case");
        // (j) e/C * ~e/D = ~e/D * e/C: the two orientations slide independently
        res.case_id = "j";
        res.symbols = {second, first};
        if (!graphs_match_under(g2, replay_symbols(g, res.symbols), res.renaming))
            throw InvalidSequence("case (j) rearrangement failed to replay");
        return res;
    }

    const EdgePath& A_full = first.path;
    const EdgePath& B_full = second.path;
    std::vector<int> occ_f = occurrences_of(A_full, gf);
    std::vector<int> occ_x = occurrences_of(B_full, gx);
    if (occ_f.size() > 1 || occ_x.size() > 1)
        throw InvalidSequence("pair paths cross the other edge more than once; split first");

    auto finish = [&](const char* case_id, std::vector<SlideSymbol> symbols, Renaming ren) {
        res.case_id = case_id;
        res.symbols = std::move(symbols);
        res.renaming = std::move(ren);
        LabeledGraph g2p = replay_symbols(g, res.symbols);
        if (!graphs_match_under(g2, g2p, res.renaming))
            throw InvalidSequence(std::string("case (") + case_id +
                                  ") rearrangement failed to replay");
        return res;
    };

    Renaming id = Renaming::identity(g.half_count());

    if (occ_f.empty() && occ_x.empty()) {
        // (a) disjoint supports commute as-is
        std::vector<SlideSymbol> out;
        push_nonempty(out, f, B_full);
        push_nonempty(out, x, A_full);
        return finish("a", std::move(out), id);
    }

    if (!occ_f.empty() && occ_x.empty()) {
        int i = occ_f[0];
        EdgePath A = slice(A_full, 0, i), Ap = slice(A_full, i + 1, (int)A_full.size());
        std::vector<SlideSymbol> out;
        push_nonempty(out, f, B_full);
        if (A_full[i] == f) {
            // (k) x/AfA' * f/B = f/B * x/ABfA'
            push_nonempty(out, x, concat({A, B_full, {f}, Ap}));
            return finish("k", std::move(out), id);
        }
        // (l) x/A~fA' * f/B = f/B * x/A~f(~B)A'
        push_nonempty(out, x, concat({A, {LabeledGraph::bar(f)}, path_reversed(B_full), Ap}));
        return finish("l", std::move(out), id);
    }

    if (occ_f.empty() && !occ_x.empty()) {
        int i = occ_x[0];
        EdgePath B = slice(B_full, 0, i), Bp = slice(B_full, i + 1, (int)B_full.size());
        std::vector<SlideSymbol> out;
        if (B_full[i] == x) {
            // (m) x/A * f/BxB' = f/B(~A)xB' * x/A
            push_nonempty(out, f, concat({B, path_reversed(A_full), {x}, Bp}));
        } else {
            // (n) x/A * f/B~xB' = f/B(~x)AB' * x/A
            push_nonempty(out, f, concat({B, {LabeledGraph::bar(x)}, A_full, Bp}));
        }
        push_nonempty(out, x, A_full);
        return finish(B_full[i] == x ? "m" : "n", std::move(out), id);
    }

    // both paths cross: forbidden patterns or the renaming case. The lemmas
    // prove the forbidden shapes impossible for MOBILE edges of a
    // non-ascending graph, so only a verified-mobile pair may be reported
    // forbidden (such a replayable pair certifies a strict monotone cycle);
    // anything else is outside the commutation calculus.
    auto report_forbidden = [&](const char* case_id) -> CommuteResult {
        auto me = classify_mobile(g, gx, {});
        auto mf = classify_mobile(g, gf, {});
        if (!me.is_yes() || !mf.is_yes() || !me.value() || !mf.value())
            throw InvalidSequence(std::string("forbidden-shaped pair (") + case_id +
                                  ") outside the mobility precondition");
        res.forbidden = true;
        res.case_id = case_id;
        return res;
    };
    int i = occ_f[0], j = occ_x[0];
    bool first_has_f = A_full[i] == f;        // else ~f
    bool second_has_x = B_full[j] == x;       // else ~x
    bool all_empty = A_full.size() == 1 && B_full.size() == 1;
    if (first_has_f && second_has_x) return report_forbidden(all_empty ? "f" : "o");
    if (first_has_f && !second_has_x) return report_forbidden(all_empty ? "g" : "p");
    if (!first_has_f && !second_has_x) return report_forbidden(all_empty ? "h" : "q");
    // (r) x/A~fA' * f/BxB', valid only when q(B (~A')) = 1, which forces
    // A' == B for redundancy-free power paths; otherwise the graph carries a
    // strict (virtually) ascending loop and the pattern is impossible on
    // non-ascending input.
    EdgePath A = slice(A_full, 0, i), Ap = slice(A_full, i + 1, (int)A_full.size());
    EdgePath B = slice(B_full, 0, j), Bp = slice(B_full, j + 1, (int)B_full.size());
    if (Ap != B) return report_forbidden("r");  // the k != 0 branch forces ascending
    Renaming ren = Renaming::identity(g.half_count());
    ren.map[x] = f;
    ren.map[LabeledGraph::bar(x)] = LabeledGraph::bar(f);
    ren.map[f] = LabeledGraph::bar(x);
    ren.map[LabeledGraph::bar(f)] = x;
    std::vector<SlideSymbol> out;
    push_nonempty(out, f, Ap);
    push_nonempty(out, LabeledGraph::bar(f), concat({path_reversed(A), {x}}));
    push_nonempty(out, x, A);
    push_nonempty(out, LabeledGraph::bar(x), Bp);
    return finish(all_empty ? "i" : "r", std::move(out), ren);
}

// ---------------------------------------------------------------------------
// Sequence rearrangement.

namespace {

// split so every chunk's path crosses geometric edge `other` at most once
// (cut right after each crossing); slides over path prefixes compose
std::vector<SlideSymbol> split_against(const SlideSymbol& s, int other) {
    std::vector<int> occ = occurrences_of(s.path, other);
    if (occ.size() <= 1) return {s};
    std::vector<SlideSymbol> out;
    int start = 0;
    for (std::size_t k = 0; k + 1 < occ.size(); ++k) {
        out.push_back(SlideSymbol{s.edge, slice(s.path, start, occ[k] + 1)});
        start = occ[k] + 1;
    }
    out.push_back(SlideSymbol{s.edge, slice(s.path, start, (int)s.path.size())});
    return out;
}

// crossing-pair complexity measure: adjacent pairs (E_F, F_E) after omitting
// plain symbols, i.e. adjacent symbols of distinct classes each crossing the
// other's class
long long pattern_measure(const std::vector<SlideSymbol>& seq) {
    long long count = 0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        int a = LabeledGraph::geometric(seq[i].edge);
        int b = LabeledGraph::geometric(seq[i + 1].edge);
        if (a == b) continue;
        if (!occurrences_of(seq[i].path, b).empty() &&
            !occurrences_of(seq[i + 1].path, a).empty())
            ++count;
    }
    return count;
}

}  // namespace

RearrangeResult rearrange_by_edge(const LabeledGraph& g, std::vector<SlideSymbol> seq,
                                  const std::vector<int>& edge_order) {
    RearrangeResult result;
    result.renaming = Renaming::identity(g.half_count());

    auto rank_of = [&](int geom) {
        for (std::size_t i = 0; i < edge_order.size(); ++i)
            if (edge_order[i] == geom) return (int)i;
        throw InvalidSequence("sequence slides an edge outside edge_order");
    };

    // normalize: reduce paths against their replay graphs, drop identities
    {
        std::vector<SlideSymbol> norm;
        LabeledGraph cur = g;
        for (auto& s : seq) {
            SlideSymbol t{s.edge, remove_redundant_subcycles(cur, s.path)};
            cur = apply_slide(cur, t.edge, t.path);
            if (!t.path.empty()) norm.push_back(std::move(t));
        }
        seq = std::move(norm);
    }

    const long long budget = 200000;
    while (true) {
        if (++result.rewrites > budget) throw GbsError("rearrange rewrite budget exceeded");
        // leftmost adjacent inversion
        int pos = -1;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            if (rank_of(LabeledGraph::geometric(seq[i + 1].edge)) <
                rank_of(LabeledGraph::geometric(seq[i].edge))) {
                pos = (int)i;
                break;
            }
        }
        if (pos < 0) break;

        // split the pair against each other, then commute the inner chunks
        int ga = LabeledGraph::geometric(seq[pos].edge);
        int gb = LabeledGraph::geometric(seq[pos + 1].edge);
        std::vector<SlideSymbol> left = split_against(seq[pos], gb);
        std::vector<SlideSymbol> right = split_against(seq[pos + 1], ga);
        if (left.size() > 1 || right.size() > 1) {
            std::vector<SlideSymbol> next(seq.begin(), seq.begin() + pos);
            next.insert(next.end(), left.begin(), left.end());
            next.insert(next.end(), right.begin(), right.end());
            next.insert(next.end(), seq.begin() + pos + 2, seq.end());
            seq = std::move(next);
            continue;  // re-scan; the inversion now sits between inner chunks
        }

        LabeledGraph prefix = g;
        for (int i = 0; i < pos; ++i) prefix = apply_slide(prefix, seq[i].edge, seq[i].path);

        long long before = pattern_measure(seq);
        CommuteResult cr = commute_pair(prefix, seq[pos], seq[pos + 1]);
        if (cr.forbidden)
            throw ForbiddenEncountered("forbidden slide pattern (" + cr.case_id +
                                       "): the graph must be ascending");

        std::vector<SlideSymbol> next(seq.begin(), seq.begin() + pos);
        next.insert(next.end(), cr.symbols.begin(), cr.symbols.end());
        for (std::size_t i = pos + 2; i < seq.size(); ++i)
            next.push_back(cr.renaming.apply(seq[i]));
        seq = std::move(next);
        if (!cr.renaming.is_identity()) {
            result.renaming = result.renaming.then(cr.renaming);
            // record whether the measure bounced at this seam; termination
            // rests on the rewrite budget and per-step replay checks
            if (pattern_measure(seq) > before) ++result.pattern_measure_increases;
        }
    }

    // coalesce adjacent slides of one half-edge
    std::vector<SlideSymbol> out;
    LabeledGraph cur = g;
    for (auto& s : seq) {
        if (!out.empty() && out.back().edge == s.edge) {
            out.back().path.insert(out.back().path.end(), s.path.begin(), s.path.end());
        } else {
            out.push_back(s);
        }
    }
    // final replay check under the composed renaming happens in the caller's
    // tests; still reduce the fused paths for tidiness
    std::vector<SlideSymbol> tidy;
    for (auto& s : out) {
        SlideSymbol t{s.edge, remove_redundant_subcycles(cur, s.path)};
        cur = apply_slide(cur, t.edge, t.path);
        if (!t.path.empty()) tidy.push_back(std::move(t));
    }
    result.symbols = std::move(tidy);
    return result;
}

}  // namespace gbs
