#include "gbs/moves.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace gbs {

namespace {

// label(e) * q, which the slide conditions guarantee is an integer
FactoredInt times_rational(const FactoredInt& f, const FactoredRational& q) {
    FactoredRational r = FactoredRational::ratio(f, factor(1, f.basis)).times(q);
    if (!r.is_integer()) throw GbsError("non-integer label product");
    return r.to_integer();
}

FactoredInt div_exact(const FactoredInt& a, long long d, BasisPtr basis) {
    FactoredInt fd = factor(d, basis);
    if (!divides(fd, a, /*ignore_sign=*/true)) throw GbsError("inexact label division");
    FactoredRational q = FactoredRational::ratio(a, fd);
    return q.to_integer();
}

}  // namespace

EdgePath path_reversed(const EdgePath& p) {
    EdgePath r(p.rbegin(), p.rend());
    for (int& h : r) h = LabeledGraph::bar(h);
    return r;
}

std::vector<std::string> path_names(const LabeledGraph& g, const EdgePath& p) {
    std::vector<std::string> out;
    for (int h : p) out.push_back(g.half_edge_name(h));
    return out;
}

EdgePath path_from_names(const LabeledGraph& g, const std::vector<std::string>& names) {
    EdgePath p;
    for (const auto& n : names) {
        auto h = g.half_edge_by_name(n);
        if (!h) throw BrokenPath("unknown edge '" + n + "'");
        p.push_back(*h);
    }
    return p;
}

FactoredRational modulus_of_path(const LabeledGraph& g, const EdgePath& path) {
    FactoredRational q = FactoredRational::one(g.basis);
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0 && g.target(path[i - 1]) != g.origin[path[i]])
            throw BrokenPath("path is not consecutive");
        q = q.times(FactoredRational::ratio(g.labels[LabeledGraph::bar(path[i])],
                                            g.labels[path[i]]));
    }
    return q;
}

std::optional<int> first_invalid_step(const LabeledGraph& g, int e, const EdgePath& path) {
    if (path.empty()) return std::nullopt;
    if (g.origin[path[0]] != g.origin[e]) return 0;
    FactoredInt cur = g.labels[e];
    for (std::size_t i = 0; i < path.size(); ++i) {
        int h = path[i];
        if (i > 0 && g.target(path[i - 1]) != g.origin[h]) return (int)i;
        if (h == e || h == LabeledGraph::bar(e)) return (int)i;
        if (!divides(g.labels[h], cur)) return (int)i;
        cur = times_rational(cur, FactoredRational::ratio(g.labels[LabeledGraph::bar(h)],
                                                          g.labels[h]));
    }
    return std::nullopt;
}

bool is_e_edge_path(const LabeledGraph& g, int e, const EdgePath& path) {
    return !first_invalid_step(g, e, path).has_value();
}

EdgePath remove_redundant_subcycles(const LabeledGraph& g, const EdgePath& path) {
    EdgePath p = path;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t width = 1; width <= p.size() && !changed; ++width) {
            for (std::size_t i = 0; i + width <= p.size(); ++i) {
                std::size_t j = i + width - 1;
                if (g.origin[p[i]] != g.target(p[j])) continue;
                FactoredRational q = FactoredRational::one(g.basis);
                bool consecutive = true;
                for (std::size_t k = i; k <= j; ++k) {
                    if (k > i && g.target(p[k - 1]) != g.origin[p[k]]) {
                        consecutive = false;
                        break;
                    }
                    q = q.times(FactoredRational::ratio(g.labels[LabeledGraph::bar(p[k])],
                                                        g.labels[p[k]]));
                }
                if (!consecutive) continue;
                if (q.sign == 1 && q.is_unit_abs()) {
                    p.erase(p.begin() + i, p.begin() + j + 1);
                    changed = true;
                    break;
                }
            }
        }
    }
    return p;
}

LabeledGraph apply_slide(const LabeledGraph& g, int e, const EdgePath& raw_path) {
    EdgePath path = remove_redundant_subcycles(g, raw_path);
    if (auto bad = first_invalid_step(g, e, path)) {
        std::ostringstream os;
        os << "slide of " << g.half_edge_name(e) << " fails at step " << *bad;
        if (*bad < (int)path.size()) os << " (" << g.half_edge_name(path[*bad]) << ")";
        throw InvalidSlide(os.str());
    }
    LabeledGraph out = g;
    if (!path.empty()) out.origin[e] = g.target(path.back());
    out.labels[e] = times_rational(g.labels[e], modulus_of_path(g, path));
    out.validate();
    return out;
}

LabeledGraph apply_induction(const LabeledGraph& g, int loop, long long l, bool divide) {
    if (g.origin[loop] != g.target(loop)) throw InvalidInduction("not a loop");
    if (!g.labels[loop].is_unit_abs()) throw InvalidInduction("loop is not ascending");
    if (l == 0) throw InvalidInduction("factor 0");
    FactoredInt fl = factor(l, g.basis);
    if (!divides(fl, g.labels[LabeledGraph::bar(loop)]))
        throw InvalidInduction("factor does not divide the far loop label");
    int v = g.origin[loop];
    LabeledGraph out = g;
    for (int h = 0; h < g.half_count(); ++h) {
        if (h == loop || h == LabeledGraph::bar(loop)) continue;
        if (g.origin[h] != v) continue;
        if (divide) {
            if (!divides(fl, g.labels[h]))
                throw InvalidInduction("factor does not divide a vertex label");
            out.labels[h] = div_exact(g.labels[h], l, g.basis);
        } else {
            out.labels[h] = times_rational(g.labels[h],
                                           FactoredRational::ratio(fl, factor(1, g.basis)));
        }
    }
    out.validate();
    return out;
}

LabeledGraph apply_a_move_plus(const LabeledGraph& g, const AMoveConfig& cfg) {
    int h = cfg.loop;
    if (h < 0 || h >= g.half_count() || g.origin[h] != g.target(h))
        throw InvalidAMove("config does not name a loop");
    const FactoredInt& k = g.labels[h];
    const FactoredInt& klm = g.labels[LabeledGraph::bar(h)];
    if (k.is_unit_abs()) throw InvalidAMove("k = +-1 is excluded");
    if (cfg.l == 1 || cfg.l == -1 || cfg.l == 0) throw InvalidAMove("l = +-1 is excluded");
    if (!divides(k, klm)) throw InvalidAMove("k does not divide the far label");
    FactoredInt lm = FactoredRational::ratio(klm, k).to_integer();
    FactoredInt fl = factor(cfg.l, g.basis);
    if (!divides(fl, lm)) throw InvalidAMove("l does not divide lm");
    if (g.vertex_by_name(cfg.new_vertex)) throw InvalidAMove("new vertex name in use");
    if (g.half_edge_by_name(cfg.new_edge)) throw InvalidAMove("new edge name in use");

    LabeledGraph out = g;
    int w = out.vertex_count();
    out.vertex_names.push_back(cfg.new_vertex);
    // the loop moves to the fresh vertex with labels (1, lm)
    out.origin[h] = w;
    out.origin[LabeledGraph::bar(h)] = w;
    out.labels[h] = factor(1, g.basis);
    out.labels[LabeledGraph::bar(h)] = lm;
    // connecting edge: l at the fresh vertex, k at the old one
    out.edge_names.push_back(cfg.new_edge);
    out.origin.push_back(w);
    out.origin.push_back(g.origin[h]);
    out.labels.push_back(fl);
    out.labels.push_back(k);
    out.validate();
    return out;
}

LabeledGraph apply_a_move_minus(const LabeledGraph& g, int doomed_vertex) {
    int x = doomed_vertex;
    if (x < 0 || x >= g.vertex_count()) throw InvalidAMove("no such vertex");
    int loop = -1, conn = -1;  // conn: half-edge at x toward the surviving vertex
    for (int h = 0; h < g.half_count(); ++h) {
        if (g.origin[h] != x) continue;
        if (g.target(h) == x) {
            if ((h & 1) == 0) {
                if (loop != -1) throw InvalidAMove("vertex carries two loops");
                loop = h;
            }
        } else {
            if (conn != -1) throw InvalidAMove("vertex has more than one outgoing edge");
            conn = h;
        }
    }
    if (loop == -1 || conn == -1) throw InvalidAMove("vertex is not in A-move form");
    int lh = loop, lbar = LabeledGraph::bar(loop);
    if (!g.labels[lh].is_unit_abs()) std::swap(lh, lbar);
    if (!g.labels[lh].is_unit_abs() || g.labels[lh].sign != 1)
        throw InvalidAMove("loop does not carry label 1");
    const FactoredInt& l = g.labels[conn];
    const FactoredInt& k = g.labels[LabeledGraph::bar(conn)];
    if (l.is_unit_abs() || k.is_unit_abs()) throw InvalidAMove("k, l = +-1 are excluded");

    int y = g.target(conn);
    LabeledGraph out;
    out.basis = g.basis;
    // drop vertex x and the connecting edge; the loop moves to y as (k, klm)
    std::vector<int> vmap(g.vertex_count(), -1);
    for (int v = 0, nv = 0; v < g.vertex_count(); ++v) {
        if (v == x) continue;
        vmap[v] = nv++;
        out.vertex_names.push_back(g.vertex_names[v]);
    }
    int conn_geom = LabeledGraph::geometric(conn);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (e == conn_geom) continue;
        out.edge_names.push_back(g.edge_names[e]);
        for (int side = 0; side < 2; ++side) {
            int h = 2 * e + side;
            int ov = g.origin[h] == x ? y : g.origin[h];
            out.origin.push_back(vmap[ov]);
            if (h == lh) {
                out.labels.push_back(k);
            } else if (h == lbar) {
                out.labels.push_back(times_rational(
                    g.labels[lbar], FactoredRational::ratio(k, factor(1, g.basis))));
            } else {
                out.labels.push_back(g.labels[h]);
            }
        }
    }
    out.validate();
    return out;
}

bool is_reduced(const LabeledGraph& g) {
    for (int h = 0; h < g.half_count(); ++h) {
        if (g.labels[h].is_unit_abs() && g.origin[h] != g.target(h)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Replayable moves.

namespace {

int need_half_edge(const LabeledGraph& g, const std::string& name) {
    auto h = g.half_edge_by_name(name);
    if (!h) throw InvalidSequence("unknown edge '" + name + "' in move");
    return *h;
}

int need_vertex(const LabeledGraph& g, const std::string& name) {
    auto v = g.vertex_by_name(name);
    if (!v) throw InvalidSequence("unknown vertex '" + name + "' in move");
    return *v;
}

LabeledGraph flip_edge_sign(const LabeledGraph& g, int geom) {
    LabeledGraph out = g;
    out.labels[2 * geom].sign *= -1;
    out.labels[2 * geom + 1].sign *= -1;
    return out;
}

LabeledGraph collapse_half_edge(const LabeledGraph& g, int h, bool* flipped) {
    if (!g.labels[h].is_unit_abs()) throw InvalidSequence("collapse needs |label| = 1");
    if (g.origin[h] == g.target(h)) throw InvalidSequence("loops are not collapsible");
    LabeledGraph cur = g;
    if (flipped) *flipped = false;
    if (cur.labels[h].sign < 0) {
        cur = flip_edge_sign(cur, LabeledGraph::geometric(h));
        if (flipped) *flipped = true;
    }
    int v = cur.origin[h];           // doomed vertex, carries the label 1
    int u = cur.target(h);           // survivor
    FactoredInt n = cur.labels[LabeledGraph::bar(h)];
    int geom = LabeledGraph::geometric(h);

    LabeledGraph out;
    out.basis = cur.basis;
    std::vector<int> vmap(cur.vertex_count(), -1);
    for (int w = 0, nw = 0; w < cur.vertex_count(); ++w) {
        if (w == v) continue;
        vmap[w] = nw++;
        out.vertex_names.push_back(cur.vertex_names[w]);
    }
    for (int e = 0; e < cur.edge_count(); ++e) {
        if (e == geom) continue;
        out.edge_names.push_back(cur.edge_names[e]);
        for (int side = 0; side < 2; ++side) {
            int x = 2 * e + side;
            FactoredInt lab = cur.labels[x];
            int ov = cur.origin[x];
            if (ov == v) {
                lab = times_rational(lab, FactoredRational::ratio(n, factor(1, cur.basis)));
                ov = u;
            }
            out.origin.push_back(vmap[ov]);
            out.labels.push_back(lab);
        }
    }
    out.validate();
    return out;
}

LabeledGraph expand_vertex(const LabeledGraph& g, const Move& m) {
    int u = need_vertex(g, m.vertex);
    if (g.vertex_by_name(m.new_vertex)) throw InvalidSequence("expansion vertex name in use");
    if (g.half_edge_by_name(m.new_edge)) throw InvalidSequence("expansion edge name in use");
    LabeledGraph out = g;
    int w = out.vertex_count();
    out.vertex_names.push_back(m.new_vertex);
    FactoredInt fn = factor(m.factor, g.basis);
    for (const auto& name : m.moved) {
        int h = need_half_edge(out, name);
        if (out.origin[h] != u) throw InvalidSequence("expansion moves a non-incident edge");
        out.origin[h] = w;
        out.labels[h] = div_exact(out.labels[h], m.factor, g.basis);
    }
    out.edge_names.push_back(m.new_edge);
    out.origin.push_back(u);
    out.origin.push_back(w);
    out.labels.push_back(fn);
    out.labels.push_back(factor(1, g.basis));
    if (m.sign_flip) out = flip_edge_sign(out, out.edge_count() - 1);
    out.validate();
    return out;
}

}  // namespace

Move make_slide_move(const LabeledGraph& g, int e, const EdgePath& path) {
    Move m;
    m.kind = Move::Kind::slide;
    m.edge = g.half_edge_name(e);
    m.path = path_names(g, path);
    return m;
}

LabeledGraph apply_move(const LabeledGraph& g, const Move& m) {
    switch (m.kind) {
        case Move::Kind::slide:
            return apply_slide(g, need_half_edge(g, m.edge), path_from_names(g, m.path));
        case Move::Kind::induction:
            return apply_induction(g, need_half_edge(g, m.edge), m.factor, m.divide);
        case Move::Kind::amove_plus: {
            AMoveConfig cfg;
            cfg.loop = need_half_edge(g, m.edge);
            cfg.l = m.factor;
            cfg.new_vertex = m.new_vertex;
            cfg.new_edge = m.new_edge;
            return apply_a_move_plus(g, cfg);
        }
        case Move::Kind::amove_minus:
            return apply_a_move_minus(g, need_vertex(g, m.vertex));
        case Move::Kind::collapse: {
            bool flipped = false;
            return collapse_half_edge(g, need_half_edge(g, m.edge), &flipped);
        }
        case Move::Kind::expansion:
            return expand_vertex(g, m);
    }
    throw InvalidSequence("unknown move kind");
}

Move invert_move(const LabeledGraph& before, const Move& m) {
    Move inv;
    switch (m.kind) {
        case Move::Kind::slide: {
            int e = need_half_edge(before, m.edge);
            EdgePath p = remove_redundant_subcycles(before, path_from_names(before, m.path));
            LabeledGraph after = apply_slide(before, e, p);
            inv.kind = Move::Kind::slide;
            inv.edge = m.edge;
            inv.path = path_names(after, path_reversed(p));
            return inv;
        }
        case Move::Kind::induction:
            inv = m;
            inv.divide = !m.divide;
            return inv;
        case Move::Kind::amove_plus:
            inv.kind = Move::Kind::amove_minus;
            inv.vertex = m.new_vertex;
            return inv;
        case Move::Kind::amove_minus: {
            // recover the plus parameters from the doomed vertex
            int x = need_vertex(before, m.vertex);
            int loop = -1, conn = -1;
            for (int h = 0; h < before.half_count(); ++h) {
                if (before.origin[h] != x) continue;
                if (before.target(h) == x) {
                    if ((h & 1) == 0) loop = h;
                } else {
                    conn = h;
                }
            }
            if (loop < 0 || conn < 0) throw InvalidAMove("vertex is not in A-move form");
            int lh = loop;
            if (!before.labels[lh].is_unit_abs()) lh = LabeledGraph::bar(lh);
            inv.kind = Move::Kind::amove_plus;
            // after the minus, the loop carries k on the lh side
            inv.edge = before.half_edge_name(lh);
            inv.factor = before.labels[conn].value();
            inv.new_vertex = before.vertex_names[x];
            inv.new_edge = before.edge_names[LabeledGraph::geometric(conn)];
            return inv;
        }
        case Move::Kind::collapse: {
            int h = need_half_edge(before, m.edge);
            int v = before.origin[h];
            bool flipped = before.labels[h].sign < 0;
            FactoredInt n = before.labels[LabeledGraph::bar(h)];
            inv.kind = Move::Kind::expansion;
            inv.vertex = before.vertex_names[before.target(h)];
            inv.new_vertex = before.vertex_names[v];
            inv.new_edge = before.edge_names[LabeledGraph::geometric(h)];
            inv.factor = flipped ? -n.value() : n.value();
            inv.sign_flip = flipped;
            for (int x = 0; x < before.half_count(); ++x) {
                if (x == h || x == LabeledGraph::bar(h)) continue;
                if (before.origin[x] == v) inv.moved.push_back(before.half_edge_name(x));
            }
            return inv;
        }
        case Move::Kind::expansion:
            inv.kind = Move::Kind::collapse;
            inv.edge = "~" + m.new_edge;
            return inv;
    }
    throw InvalidSequence("unknown move kind");
}

LabeledGraph replay(const LabeledGraph& g, const MoveSequence& seq, bool enforce_reduced) {
    if (!seq.initial_fingerprint.empty() && seq.initial_fingerprint != fingerprint(g))
        throw InvalidSequence("initial graph fingerprint mismatch");
    LabeledGraph cur = g;
    for (const auto& m : seq.moves) {
        cur = apply_move(cur, m);
        if (enforce_reduced && !is_reduced(cur))
            throw InvalidSequence("intermediate graph is not reduced");
    }
    return cur;
}

MoveSequence invert_sequence(const LabeledGraph& initial, const MoveSequence& seq) {
    MoveSequence inv;
    LabeledGraph cur = initial;
    std::vector<Move> inverted;
    for (const auto& m : seq.moves) {
        inverted.push_back(invert_move(cur, m));
        cur = apply_move(cur, m);
    }
    inv.initial_fingerprint = fingerprint(cur);
    std::reverse(inverted.begin(), inverted.end());
    inv.moves = std::move(inverted);
    return inv;
}

std::pair<LabeledGraph, MoveSequence> reduce(const LabeledGraph& g) {
    LabeledGraph cur = g;
    MoveSequence seq;
    seq.initial_fingerprint = fingerprint(g);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int h = 0; h < cur.half_count(); ++h) {
            if (!cur.labels[h].is_unit_abs()) continue;
            if (cur.origin[h] == cur.target(h)) continue;
            Move m;
            m.kind = Move::Kind::collapse;
            m.edge = cur.half_edge_name(h);
            long long before = cur.labels[h].value();
            cur = collapse_half_edge(cur, h, &m.sign_flip);
            m.audit.emplace_back(m.edge, before, 0);
            seq.moves.push_back(std::move(m));
            changed = true;
            break;
        }
    }
    if (cur.edge_count() == 0) throw ElementaryGroup("reduces to Z");
    if (cur.vertex_count() == 1 && cur.edge_count() == 1 && cur.labels[0].is_unit_abs() &&
        cur.labels[1].is_unit_abs()) {
        throw ElementaryGroup(cur.labels[0].sign * cur.labels[1].sign > 0
                                  ? "reduces to Z^2"
                                  : "reduces to the Klein bottle group");
    }
    return {cur, seq};
}

}  // namespace gbs
