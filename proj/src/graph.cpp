#include "gbs/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace gbs {

std::string LabeledGraph::half_edge_name(int h) const {
    const std::string& base = edge_names[geometric(h)];
    return (h & 1) ? "~" + base : base;
}

std::optional<int> LabeledGraph::half_edge_by_name(const std::string& name) const {
    bool rev = !name.empty() && name[0] == '~';
    std::string base = rev ? name.substr(1) : name;
    for (int g = 0; g < edge_count(); ++g)
        if (edge_names[g] == base) return 2 * g + (rev ? 1 : 0);
    return std::nullopt;
}

std::optional<int> LabeledGraph::vertex_by_name(const std::string& name) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (vertex_names[v] == name) return v;
    return std::nullopt;
}

void LabeledGraph::validate() const {
    if (vertex_names.empty()) throw GbsError("graph has no vertices");
    if ((int)origin.size() != 2 * edge_count() || labels.size() != origin.size())
        throw GbsError("half-edge arrays out of step");
    for (int h = 0; h < half_count(); ++h) {
        if (bar(h) == h) throw GbsError("involution has a fixed point");
        if (bar(bar(h)) != h) throw GbsError("involution not self-inverse");
        if (origin[h] < 0 || origin[h] >= vertex_count()) throw GbsError("origin out of range");
        if (labels[h].unit == 0) throw ZeroLabel("zero label");
    }
    // connectivity (isolated vertices count as disconnection)
    if (vertex_count() > 1) {
        std::vector<char> seen(vertex_count(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int h = 0; h < half_count(); ++h) {
                if (origin[h] != v) continue;
                int w = target(h);
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
            }
        }
        for (char s : seen)
            if (!s) throw DisconnectedGraph("graph is not connected");
    }
}

bool LabeledGraph::all_labels_positive() const {
    for (const auto& l : labels)
        if (l.sign < 0) return false;
    return true;
}

std::vector<long long> LabeledGraph::raw_label_values() const {
    std::vector<long long> out;
    for (const auto& l : labels) out.push_back(l.value());
    return out;
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

constexpr int kMaxLabelDigits = 18;

struct Statement {
    std::vector<std::string> tokens;
    int line;
};

bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha((unsigned char)s[0]) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum((unsigned char)c) && c != '_') return false;
    return true;
}

long long parse_label(const std::string& tok, int line) {
    std::string t = tok;
    std::size_t digits = t.size() - (t.size() && (t[0] == '-' || t[0] == '+') ? 1 : 0);
    if (digits == 0 || digits > kMaxLabelDigits)
        throw SyntaxError("bad label '" + tok + "'", line);
    for (std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0; i < t.size(); ++i)
        if (!std::isdigit((unsigned char)t[i])) throw SyntaxError("bad label '" + tok + "'", line);
    long long v = std::stoll(t);
    if (v == 0) throw ZeroLabel("label 0 at line " + std::to_string(line));
    return v;
}

std::vector<Statement> split_statements(const std::string& text) {
    std::vector<Statement> stmts;
    std::string cur;
    int line = 1, stmt_line = 1;
    bool comment = false;
    auto flush = [&]() {
        std::istringstream iss(cur);
        Statement s;
        s.line = stmt_line;
        std::string tok;
        while (iss >> tok) {
            // detach a trailing ':' so "f1:" becomes "f1", ":"
            while (!tok.empty()) {
                auto pos = tok.find(':');
                if (pos == std::string::npos) {
                    s.tokens.push_back(tok);
                    break;
                }
                if (pos > 0) s.tokens.push_back(tok.substr(0, pos));
                s.tokens.push_back(":");
                tok = tok.substr(pos + 1);
            }
        }
        if (!s.tokens.empty()) stmts.push_back(std::move(s));
        cur.clear();
        stmt_line = line;
    };
    for (char c : text) {
        if (c == '\n') {
            comment = false;
            flush();
            ++line;
            stmt_line = line;
            continue;
        }
        if (comment) continue;
        if (c == '#') {
            comment = true;
            continue;
        }
        if (c == ';') {
            flush();
            continue;
        }
        cur += c;
    }
    flush();
    return stmts;
}

struct RawGraph {
    std::vector<std::string> vertices;
    struct RawEdge {
        std::string name;
        std::string o, t;
        long long l1, l2;
        int line;
    };
    std::vector<RawEdge> edges;
};

RawGraph parse_raw(const std::string& text) {
    RawGraph raw;
    std::set<std::string> vset, eset;
    for (const auto& st : split_statements(text)) {
        const auto& tk = st.tokens;
        auto colon = std::find(tk.begin(), tk.end(), ":");
        if (colon == tk.end()) {
            // bare vertex list
            for (const auto& v : tk) {
                if (!is_ident(v)) throw SyntaxError("bad vertex name '" + v + "'", st.line);
                if (!vset.insert(v).second)
                    throw SyntaxError("duplicate vertex '" + v + "'", st.line);
                raw.vertices.push_back(v);
            }
            continue;
        }
        std::vector<std::string> head(tk.begin(), colon), tail(colon + 1, tk.end());
        if (head.size() == 1 && head[0] == "vertices") {
            for (const auto& v : tail) {
                if (!is_ident(v)) throw SyntaxError("bad vertex name '" + v + "'", st.line);
                if (!vset.insert(v).second)
                    throw SyntaxError("duplicate vertex '" + v + "'", st.line);
                raw.vertices.push_back(v);
            }
            continue;
        }
        std::string name;
        if (head.size() == 1)
            name = head[0];
        else if (head.size() == 2 && head[0] == "edge")
            name = head[1];
        else
            throw SyntaxError("unrecognized declaration", st.line);
        if (!is_ident(name)) throw SyntaxError("bad edge name '" + name + "'", st.line);
        if (!eset.insert(name).second) throw SyntaxError("duplicate edge '" + name + "'", st.line);
        if (tail.size() != 4) throw SyntaxError("edge needs: origin terminus label label", st.line);
        if (!vset.count(tail[0])) throw SyntaxError("unknown vertex '" + tail[0] + "'", st.line);
        if (!vset.count(tail[1])) throw SyntaxError("unknown vertex '" + tail[1] + "'", st.line);
        raw.edges.push_back({name, tail[0], tail[1], parse_label(tail[2], st.line),
                             parse_label(tail[3], st.line), st.line});
    }
    if (raw.vertices.empty()) throw SyntaxError("no vertices declared", 1);
    return raw;
}

LabeledGraph build(const RawGraph& raw, BasisPtr basis) {
    LabeledGraph g;
    g.vertex_names = raw.vertices;
    g.basis = basis;
    for (const auto& e : raw.edges) {
        g.edge_names.push_back(e.name);
        int o = (int)(std::find(raw.vertices.begin(), raw.vertices.end(), e.o) -
                      raw.vertices.begin());
        int t = (int)(std::find(raw.vertices.begin(), raw.vertices.end(), e.t) -
                      raw.vertices.begin());
        g.origin.push_back(o);
        g.origin.push_back(t);
        g.labels.push_back(factor(e.l1, basis));
        g.labels.push_back(factor(e.l2, basis));
    }
    g.validate();
    return g;
}

}  // namespace

LabeledGraph parse_graph(const std::string& text) {
    RawGraph raw = parse_raw(text);
    std::vector<long long> vals;
    for (const auto& e : raw.edges) {
        vals.push_back(e.l1);
        vals.push_back(e.l2);
    }
    return build(raw, basis_from_values(vals));
}

LabeledGraph parse_graph(const std::string& text, BasisPtr basis) {
    return build(parse_raw(text), basis);
}

std::string serialize_graph(const LabeledGraph& g) {
    std::ostringstream os;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v) os << ' ';
        os << g.vertex_names[v];
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        os << "; " << g.edge_names[e] << ": " << g.vertex_names[g.origin[2 * e]] << ' '
           << g.vertex_names[g.origin[2 * e + 1]] << ' ' << g.labels[2 * e].value() << ' '
           << g.labels[2 * e + 1].value();
    }
    return os.str();
}

LabeledGraph with_basis(const LabeledGraph& g, BasisPtr basis) {
    LabeledGraph out = g;
    out.basis = basis;
    for (auto& l : out.labels) l = factor(l.value(), basis);
    return out;
}

std::string fingerprint(const LabeledGraph& g) {
    std::string s = serialize_graph(g);
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

std::optional<RoseShape> rose_shape(const LabeledGraph& g) {
    if (g.vertex_count() != 1) return std::nullopt;
    RoseShape r;
    for (int e = 0; e < g.edge_count(); ++e) r.petals.push_back(e);
    r.n = g.edge_count();
    return r;
}

// ---------------------------------------------------------------------------
// Matches and sign normalization.

GraphMatch GraphMatch::identity(const LabeledGraph& g) {
    GraphMatch m;
    m.vertex_map.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) m.vertex_map[v] = v;
    m.edge_map.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) m.edge_map[e] = e;
    m.flip.assign(g.edge_count(), false);
    m.vertex_signs.assign(g.vertex_count(), 1);
    m.edge_signs.assign(g.edge_count(), 1);
    return m;
}

bool GraphMatch::is_identity() const {
    for (std::size_t i = 0; i < vertex_map.size(); ++i)
        if (vertex_map[i] != (int)i || vertex_signs[i] != 1) return false;
    for (std::size_t i = 0; i < edge_map.size(); ++i)
        if (edge_map[i] != (int)i || flip[i] || edge_signs[i] != 1) return false;
    return true;
}

LabeledGraph apply_match(const LabeledGraph& g, const GraphMatch& m) {
    LabeledGraph out;
    out.basis = g.basis;
    out.vertex_names.resize(g.vertex_count());
    out.edge_names.resize(g.edge_count());
    out.origin.assign(g.half_count(), 0);
    out.labels.resize(g.half_count());
    for (int v = 0; v < g.vertex_count(); ++v) out.vertex_names[m.vertex_map[v]] = g.vertex_names[v];
    for (int e = 0; e < g.edge_count(); ++e) {
        int te = m.edge_map[e];
        out.edge_names[te] = g.edge_names[e];
        for (int side = 0; side < 2; ++side) {
            int h = 2 * e + side;
            int th = 2 * te + (m.flip[e] ? 1 - side : side);
            out.origin[th] = m.vertex_map[g.origin[h]];
            FactoredInt lab = g.labels[h];
            lab.sign *= m.edge_signs[e] * m.vertex_signs[g.origin[h]];
            out.labels[th] = lab;
        }
    }
    return out;
}

namespace {

// Admissible sign changes form a GF(2) system: a vertex flip negates every
// label at that vertex, an edge flip negates both labels of one geometric
// edge. All-positive is achievable iff per-edge parity constraints admit a
// 2-coloring; loops impose a parity on themselves only.
struct SignSolve {
    std::vector<int> vflip;  // 0/1 per vertex
    std::vector<int> eflip;  // 0/1 per edge
    bool all_positive = false;
};

SignSolve solve_signs(const LabeledGraph& g) {
    int nv = g.vertex_count(), ne = g.edge_count();
    SignSolve s;
    s.vflip.assign(nv, -1);
    s.eflip.assign(ne, 0);
    bool ok = true;
    // Constraint per non-loop edge: vflip[o] xor vflip[t] == (signs differ).
    // Loops demand equal signs outright (vertex and edge flips hit both ends).
    for (int v0 = 0; v0 < nv; ++v0) {
        if (s.vflip[v0] != -1) continue;
        s.vflip[v0] = 0;
        std::queue<int> q;
        q.push(v0);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = 0; e < ne; ++e) {
                int o = g.origin[2 * e], t = g.origin[2 * e + 1];
                if (o == t) continue;
                int other = -1;
                if (o == v)
                    other = t;
                else if (t == v)
                    other = o;
                else
                    continue;
                int need = (g.labels[2 * e].sign != g.labels[2 * e + 1].sign) ? 1 : 0;
                int want = s.vflip[v] ^ need;
                if (s.vflip[other] == -1) {
                    s.vflip[other] = want;
                    q.push(other);
                } else if (s.vflip[other] != want) {
                    ok = false;
                }
            }
        }
    }
    for (int e = 0; e < ne; ++e) {
        int o = g.origin[2 * e], t = g.origin[2 * e + 1];
        if (o == t && g.labels[2 * e].sign != g.labels[2 * e + 1].sign) ok = false;
    }
    if (!ok) {
        // Greedy fallback: flip anything that strictly lowers the negative
        // count, scanning vertices then edges by id.
        std::vector<int> lsign;
        for (const auto& l : g.labels) lsign.push_back(l.sign);
        std::fill(s.vflip.begin(), s.vflip.end(), 0);
        auto apply_signs = [&](std::vector<int>& out) {
            out = lsign;
            for (int h = 0; h < g.half_count(); ++h) {
                if (s.vflip[g.origin[h]]) out[h] = -out[h];
                if (s.eflip[LabeledGraph::geometric(h)]) out[h] = -out[h];
            }
        };
        auto negs = [&]() {
            std::vector<int> cur;
            apply_signs(cur);
            return (int)std::count(cur.begin(), cur.end(), -1);
        };
        bool improved = true;
        while (improved) {
            improved = false;
            int base = negs();
            for (int v = 0; v < nv; ++v) {
                s.vflip[v] ^= 1;
                if (negs() < base) {
                    improved = true;
                    base = negs();
                } else {
                    s.vflip[v] ^= 1;
                }
            }
            for (int e = 0; e < ne; ++e) {
                s.eflip[e] ^= 1;
                if (negs() < base) {
                    improved = true;
                    base = negs();
                } else {
                    s.eflip[e] ^= 1;
                }
            }
        }
        s.all_positive = false;
        return s;
    }
    // Vertex flips chosen; per-edge flips clean up doubly-negative pairs.
    for (int e = 0; e < ne; ++e) {
        int sign_o = g.labels[2 * e].sign * (s.vflip[g.origin[2 * e]] ? -1 : 1);
        if (sign_o < 0) s.eflip[e] = 1;
    }
    s.all_positive = true;
    return s;
}

}  // namespace

std::pair<LabeledGraph, GraphMatch> normalize_signs(const LabeledGraph& g) {
    SignSolve s = solve_signs(g);
    GraphMatch m = GraphMatch::identity(g);
    for (int v = 0; v < g.vertex_count(); ++v) m.vertex_signs[v] = s.vflip[v] ? -1 : 1;
    for (int e = 0; e < g.edge_count(); ++e) m.edge_signs[e] = s.eflip[e] ? -1 : 1;
    LabeledGraph out = apply_match(g, m);
    if (s.all_positive) assert(out.all_labels_positive());
    // The record maps input to output and, being made of involutions with
    // identity permutations, maps output back to input as well.
    return {out, m};
}

bool sign_normalizable(const LabeledGraph& g) {
    return normalize_signs(g).first.all_labels_positive();
}

// ---------------------------------------------------------------------------
// Structural comparison up to relabeling.

namespace {

// (min |label|, max |label|, sign product): everything about a petal that
// admissible sign changes and orientation swaps preserve.
std::tuple<long long, long long, int> petal_key(const LabeledGraph& g, int e) {
    long long a = g.labels[2 * e].abs_value(), b = g.labels[2 * e + 1].abs_value();
    int prod = g.labels[2 * e].sign * g.labels[2 * e + 1].sign;
    return {std::min(a, b), std::max(a, b), prod};
}

std::optional<GraphMatch> match_roses(const LabeledGraph& g1, const LabeledGraph& g2) {
    int n = g1.edge_count();
    std::vector<int> o1(n), o2(n);
    for (int i = 0; i < n; ++i) o1[i] = o2[i] = i;
    std::sort(o1.begin(), o1.end(),
              [&](int a, int b) { return petal_key(g1, a) < petal_key(g1, b); });
    std::sort(o2.begin(), o2.end(),
              [&](int a, int b) { return petal_key(g2, a) < petal_key(g2, b); });
    for (int i = 0; i < n; ++i)
        if (petal_key(g1, o1[i]) != petal_key(g2, o2[i])) return std::nullopt;
    GraphMatch m = GraphMatch::identity(g1);
    for (int i = 0; i < n; ++i) {
        int e1 = o1[i], e2 = o2[i];
        m.edge_map[e1] = e2;
        m.flip[e1] = g1.labels[2 * e1].abs_value() != g2.labels[2 * e2].abs_value();
    }
    return m;
}

// Decides whether the sign pattern `lsigns` on the structure of g can be
// made all-positive by admissible changes.
bool pattern_positive_achievable(const LabeledGraph& g, const std::vector<int>& lsigns) {
    int nv = g.vertex_count(), ne = g.edge_count();
    std::vector<int> vflip(nv, -1);
    for (int e = 0; e < ne; ++e) {
        int o = g.origin[2 * e], t = g.origin[2 * e + 1];
        if (o == t && lsigns[2 * e] != lsigns[2 * e + 1]) return false;
    }
    for (int v0 = 0; v0 < nv; ++v0) {
        if (vflip[v0] != -1) continue;
        vflip[v0] = 0;
        std::queue<int> q;
        q.push(v0);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = 0; e < ne; ++e) {
                int o = g.origin[2 * e], t = g.origin[2 * e + 1];
                if (o == t) continue;
                int other;
                if (o == v)
                    other = t;
                else if (t == v)
                    other = o;
                else
                    continue;
                int need = (lsigns[2 * e] != lsigns[2 * e + 1]) ? 1 : 0;
                int want = vflip[v] ^ need;
                if (vflip[other] == -1) {
                    vflip[other] = want;
                    q.push(other);
                } else if (vflip[other] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Backtracking matcher for small general graphs (reduction outputs in the
// test corpus); matches absolute labels, then checks sign equivalence.
struct Backtracker {
    const LabeledGraph &a, &b;
    std::vector<int> vmap, emap;
    std::vector<bool> flip;
    std::vector<char> used_v, used_e;

    Backtracker(const LabeledGraph& a_, const LabeledGraph& b_) : a(a_), b(b_) {
        vmap.assign(a.vertex_count(), -1);
        emap.assign(a.edge_count(), -1);
        flip.assign(a.edge_count(), false);
        used_v.assign(b.vertex_count(), 0);
        used_e.assign(b.edge_count(), 0);
    }

    bool bind(int va, int vb, std::vector<int>& undo) {
        if (vmap[va] != -1) return vmap[va] == vb;
        if (used_v[vb]) return false;
        vmap[va] = vb;
        used_v[vb] = 1;
        undo.push_back(va);
        return true;
    }
    void unbind(const std::vector<int>& undo) {
        for (int va : undo) {
            used_v[vmap[va]] = 0;
            vmap[va] = -1;
        }
    }

    bool signs_match() const {
        // difference pattern: positive iff the matched labels agree in sign
        std::vector<int> diff(a.half_count(), 1);
        for (int e = 0; e < a.edge_count(); ++e) {
            for (int side = 0; side < 2; ++side) {
                int ha = 2 * e + side;
                int hb = 2 * emap[e] + (flip[e] ? 1 - side : side);
                diff[ha] = a.labels[ha].sign * b.labels[hb].sign;
            }
        }
        return pattern_positive_achievable(a, diff);
    }

    bool go(int ea) {
        if (ea == a.edge_count()) return signs_match();
        for (int eb = 0; eb < b.edge_count(); ++eb) {
            if (used_e[eb]) continue;
            for (bool fl : {false, true}) {
                int oa = a.origin[2 * ea], ta = a.origin[2 * ea + 1];
                long long la = a.labels[2 * ea].abs_value(),
                          lt = a.labels[2 * ea + 1].abs_value();
                if (fl) {
                    std::swap(oa, ta);
                    std::swap(la, lt);
                }
                if (la != b.labels[2 * eb].abs_value() ||
                    lt != b.labels[2 * eb + 1].abs_value())
                    continue;
                std::vector<int> undo;
                if (bind(oa, b.origin[2 * eb], undo) && bind(ta, b.origin[2 * eb + 1], undo)) {
                    used_e[eb] = 1;
                    emap[ea] = eb;
                    flip[ea] = fl;
                    if (go(ea + 1)) return true;
                    used_e[eb] = 0;
                }
                unbind(undo);
            }
        }
        return false;
    }
};

}  // namespace

std::optional<GraphMatch> graphs_equal_up_to_relabeling(const LabeledGraph& g1,
                                                        const LabeledGraph& g2) {
    if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count())
        return std::nullopt;
    if (rose_shape(g1) && rose_shape(g2)) return match_roses(g1, g2);

    if (g1.edge_count() == 0) return GraphMatch::identity(g1);
    Backtracker bt(g1, g2);
    if (!bt.go(0)) return std::nullopt;
    GraphMatch m = GraphMatch::identity(g1);
    m.vertex_map = bt.vmap;
    m.edge_map = bt.emap;
    m.flip = bt.flip;
    return m;
}

}  // namespace gbs
