#include "gbs/iso.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gbs/reach.hpp"

namespace gbs {

namespace {

std::pair<long long, long long> petal_pair(const LabeledGraph& g, int e) {
    long long a = g.labels[2 * e].abs_value(), b = g.labels[2 * e + 1].abs_value();
    return {std::min(a, b), std::max(a, b)};
}

// label values and shape agree position-wise (names and basis ignored)
bool same_presentation(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    for (int h = 0; h < a.half_count(); ++h) {
        if (a.origin[h] != b.origin[h]) return false;
        if (a.labels[h].abs_value() != b.labels[h].abs_value()) return false;
        if (a.labels[h].sign != b.labels[h].sign) return false;
    }
    return true;
}

}  // namespace

NonMobileSubgraph non_mobile_subgraph(const LabeledGraph& rose,
                                      const std::vector<int>& mobile_edges) {
    NonMobileSubgraph out;
    for (int e = 0; e < rose.edge_count(); ++e) {
        if (std::find(mobile_edges.begin(), mobile_edges.end(), e) != mobile_edges.end())
            continue;
        out.edges.push_back(e);
        out.pair_multiset.push_back(petal_pair(rose, e));
    }
    std::sort(out.pair_multiset.begin(), out.pair_multiset.end());
    return out;
}

namespace {

// canonical state key: sorted (lo, hi, mobile) petal descriptors
std::string snm_key(const LabeledGraph& g, const std::vector<int>& mobile_edges) {
    std::vector<std::tuple<long long, long long, bool>> petals;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [lo, hi] = petal_pair(g, e);
        bool mob = std::find(mobile_edges.begin(), mobile_edges.end(), e) != mobile_edges.end();
        petals.emplace_back(lo, hi, mob);
    }
    std::sort(petals.begin(), petals.end());
    std::ostringstream os;
    for (auto& [lo, hi, mob] : petals) os << lo << ',' << hi << ',' << mob << ';';
    return os.str();
}

}  // namespace

Decision<SnmSet> enumerate_snm(const LabeledGraph& rose, const std::vector<int>& mobile_edges,
                               const SearchBudget& budget) {
    using D = Decision<SnmSet>;
    if (!rose_shape(rose)) throw UnsupportedClass("S_NM enumeration needs a rose");
    SnmSet set;
    std::map<std::string, int> seen;
    set.graphs.push_back(rose);
    set.paths.push_back(MoveSequence{fingerprint(rose), {}});
    seen.emplace(snm_key(rose, mobile_edges), 0);

    for (std::size_t qi = 0; qi < set.graphs.size(); ++qi) {
        if ((long long)set.graphs.size() > budget.snm_cap) {
            set.complete = false;
            break;
        }
        LabeledGraph cur = set.graphs[qi];  // copy: the vector may reallocate
        for (int e = 0; e < cur.edge_count(); ++e) {
            if (std::find(mobile_edges.begin(), mobile_edges.end(), e) != mobile_edges.end())
                continue;
            for (int side = 0; side < 2; ++side) {
                int slider = 2 * e + side;
                for (int h = 0; h < cur.half_count(); ++h) {
                    if (LabeledGraph::geometric(h) == e) continue;
                    if (!divides(cur.labels[h], cur.labels[slider])) continue;
                    LabeledGraph next = apply_slide(cur, slider, {h});
                    std::string key = snm_key(next, mobile_edges);
                    if (seen.count(key)) continue;
                    seen.emplace(key, (int)set.graphs.size());
                    MoveSequence path = set.paths[qi];
                    path.moves.push_back(make_slide_move(cur, slider, {h}));
                    set.graphs.push_back(std::move(next));
                    set.paths.push_back(std::move(path));
                }
            }
        }
    }
    bool complete = set.complete;
    if (!complete)
        return D{Verdict::inconclusive, std::move(set),
                 "non-mobile slide closure exceeded the cap", budget.snm_cap};
    return D::yes_with(std::move(set));
}

namespace {

// slides of one half-edge realizing an exact target label
Decision<EdgePath> reach_exact(const LabeledGraph& rose, int slider,
                               const FactoredInt& target, const SearchBudget& budget) {
    using D = Decision<EdgePath>;
    const FactoredInt& base = rose.labels[slider];
    if (target.unit != base.unit)
        return D::no_because("unit parts are slide-invariant and differ");
    if (target.exps == base.exps) return D::yes_with({});

    // necessary: the displacement must lie in the lattice of the moduli
    std::size_t r = rose.basis->size();
    std::vector<std::vector<long long>> cols;  // one per other petal
    for (int p = 0; p < rose.edge_count(); ++p) {
        if (p == LabeledGraph::geometric(slider)) continue;
        std::vector<long long> a(r);
        for (std::size_t l = 0; l < r; ++l)
            a[l] = rose.labels[2 * p + 1].exps[l] - rose.labels[2 * p].exps[l];
        cols.push_back(std::move(a));
    }
    if (cols.empty()) return D::no_because("one-rose labels cannot move");
    std::vector<std::vector<long long>> A(r, std::vector<long long>(cols.size()));
    std::vector<long long> rhs(r);
    for (std::size_t l = 0; l < r; ++l) {
        for (std::size_t c = 0; c < cols.size(); ++c) A[l][c] = cols[c][l];
        rhs[l] = target.exps[l] - base.exps[l];
    }
    if (solve_integer_linear(A, rhs).is_no())
        return D::no_because("target is outside the modulus lattice");

    ReachSet reach = reachable_labels(rose, slider, budget, {target.exps});
    if (auto hit = reach.find(target.exps)) return D::yes_with(reach.path_to(*hit));
    for (const auto& cone : reach.cones) {
        if (auto k = pump_hitting(reach, cone, target.exps))
            return D::yes_with(reach.pumped_path(cone, *k));
    }
    if (reach.saturated) return D::no_because("reachable labels exhausted without the target");
    return D::inconclusive_at("reachability frontier left the exponent box",
                              budget.exponent_slack);
}

Decision<MoveSequence> match_mobile_edge_impl(const LabeledGraph& rose, int geom_edge,
                                              std::pair<long long, long long> target,
                                              const SearchBudget& budget) {
    using D = Decision<MoveSequence>;
    int fwd = LabeledGraph::forward(geom_edge), bwd = LabeledGraph::bar(fwd);
    bool inconclusive = false;
    std::vector<std::pair<long long, long long>> orders = {{target.first, target.second}};
    if (target.first != target.second) orders.push_back({target.second, target.first});
    for (auto [t_fwd, t_bwd] : orders) {
        auto d_fwd = reach_exact(rose, fwd, factor(t_fwd, rose.basis), budget);
        auto d_bwd = reach_exact(rose, bwd, factor(t_bwd, rose.basis), budget);
        if (d_fwd.is_inconclusive() || d_bwd.is_inconclusive()) inconclusive = true;
        if (!d_fwd.is_yes() || !d_bwd.is_yes()) continue;
        MoveSequence seq;
        seq.initial_fingerprint = fingerprint(rose);
        if (!d_fwd.value().empty()) seq.moves.push_back(make_slide_move(rose, fwd, d_fwd.value()));
        if (!d_bwd.value().empty()) seq.moves.push_back(make_slide_move(rose, bwd, d_bwd.value()));
        return D::yes_with(std::move(seq));
    }
    if (inconclusive)
        return D::inconclusive_at("target reachability undecided within the box",
                                  budget.exponent_slack);
    return D::no_because("no orientation of the target is reachable");
}

}  // namespace

Decision<MoveSequence> match_mobile_edge(const LabeledGraph& rose, int geom_edge,
                                         std::pair<long long, long long> target,
                                         const SearchBudget& budget) {
    auto mob = classify_mobile(rose, geom_edge, budget);
    if (!mob.is_yes() || !mob.value())
        throw NotMobile("edge " + rose.edge_names[geom_edge] + " is not known to be mobile");
    return match_mobile_edge_impl(rose, geom_edge, target, budget);
}

// ---------------------------------------------------------------------------

namespace {

struct BranchSearch {
    const LabeledGraph& bred;
    const SearchBudget& budget;
    bool inconclusive = false;

    // matched blocks accumulate; returns the final graph when every mobile
    // edge is matched and the closing relabeling exists
    std::optional<std::pair<std::vector<MoveSequence>, GraphMatch>> run(
        const LabeledGraph& cur, std::vector<int> rem_a, std::vector<int> rem_b) {
        if (rem_a.empty()) {
            if (auto m = graphs_equal_up_to_relabeling(cur, bred)) {
                if (apply_match_check(cur, *m)) return std::make_pair(std::vector<MoveSequence>{}, *m);
            }
            return std::nullopt;
        }
        for (std::size_t ia = 0; ia < rem_a.size(); ++ia) {
            for (std::size_t ib = 0; ib < rem_b.size(); ++ib) {
                auto d = match_mobile_edge_impl(cur, rem_a[ia], petal_pair(bred, rem_b[ib]),
                                                budget);
                if (d.is_inconclusive()) inconclusive = true;
                if (!d.is_yes()) continue;
                LabeledGraph next = replay(cur, d.value());
                std::vector<int> na = rem_a, nb = rem_b;
                na.erase(na.begin() + ia);
                nb.erase(nb.begin() + ib);
                if (auto rest = run(next, na, nb)) {
                    rest->first.insert(rest->first.begin(), d.value());
                    return rest;
                }
            }
        }
        return std::nullopt;
    }

    bool apply_match_check(const LabeledGraph& g, const GraphMatch& m) {
        return same_presentation(apply_match(g, m), bred);
    }
};

std::vector<long long> joint_values(const LabeledGraph& a, const LabeledGraph& b) {
    std::vector<long long> vals = a.raw_label_values();
    for (long long v : b.raw_label_values()) vals.push_back(v);
    return vals;
}

std::vector<std::vector<long long>> modulus_rows(const LabeledGraph& g) {
    std::vector<std::vector<long long>> rows;
    for (int e = 0; e < g.edge_count(); ++e) {
        std::vector<long long> row(g.basis->size());
        for (std::size_t l = 0; l < row.size(); ++l)
            row[l] = g.labels[2 * e + 1].exps[l] - g.labels[2 * e].exps[l];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Decision<IsoCertificate> are_isomorphic(const LabeledGraph& a, const LabeledGraph& b,
                                        const SearchBudget& budget) {
    using D = Decision<IsoCertificate>;
    IsoCertificate cert;

    LabeledGraph ra;
    try {
        auto [red, seq] = reduce(a);
        ra = red;
        cert.reduction_a = seq;
    } catch (const ElementaryGroup& e) {
        throw UnsupportedClass(std::string("first graph is elementary: ") + e.what());
    }
    auto shape_a = rose_shape(ra);
    if (!shape_a || shape_a->n < 1 || shape_a->n > 3)
        throw UnsupportedClass("first graph must reduce to a rose with 1 <= n <= 3");
    if (!sign_normalizable(ra))
        throw SignObstruction("sign pattern of the first graph is not normalizable");
    LabeledGraph na = normalize_signs(ra).first;

    {
        auto asc_a = is_ascending(na, budget);
        if (asc_a.is_yes()) throw UnsupportedClass("first group is ascending");
        if (asc_a.is_inconclusive())
            return D::inconclusive_at("ascending check inconclusive: " + asc_a.reason,
                                      asc_a.bound.value_or(0));
    }

    LabeledGraph rb;
    bool b_elementary = false;
    try {
        auto [red, seq] = reduce(b);
        rb = red;
        cert.reduction_b = seq;
    } catch (const ElementaryGroup&) {
        b_elementary = true;
    }
    if (b_elementary) return D::no_because("second group is elementary, first is not");
    if (!sign_normalizable(rb))
        throw SignObstruction("sign pattern of the second graph is not normalizable");
    LabeledGraph nb = normalize_signs(rb).first;

    // slides preserve vertex and edge counts, so isomorphic non-ascending
    // roses reduce to roses of equal rank
    auto shape_b = rose_shape(nb);
    if (!shape_b || shape_b->n != shape_a->n)
        return D::no_because("reduced shapes differ");

    // one shared prime basis for both sides
    BasisPtr joint = basis_from_values(joint_values(na, nb));
    na = with_basis(na, joint);
    nb = with_basis(nb, joint);
    cert.normalized_a = serialize_graph(na);
    cert.normalized_b = serialize_graph(nb);

    // invariant gate: the modular images must generate the same subgroup
    if (!lattices_equal(modulus_rows(na), modulus_rows(nb)))
        return D::no_because("modular-image subgroups differ");

    auto asc_b = is_ascending(nb, budget);
    if (asc_b.is_yes()) return D::no_because("second group is ascending, first is not");
    if (asc_b.is_inconclusive())
        return D::inconclusive_at("ascending check inconclusive: " + asc_b.reason,
                                  asc_b.bound.value_or(0));

    auto mob_a = mobile_edge_set(na, budget);
    auto mob_b = mobile_edge_set(nb, budget);
    if (mob_a.is_inconclusive() || mob_b.is_inconclusive())
        return D::inconclusive_at("mobility classification inconclusive",
                                  budget.exponent_slack);
    if (mob_a.value().size() != mob_b.value().size())
        return D::no_because("mobile-edge counts differ");

    NonMobileSubgraph target_non = non_mobile_subgraph(nb, mob_b.value());

    auto snm = enumerate_snm(na, mob_a.value(), budget);
    const SnmSet& set = snm.value();
    bool branch_inconclusive = snm.is_inconclusive();

    for (std::size_t i = 0; i < set.graphs.size(); ++i) {
        const LabeledGraph& cand = set.graphs[i];
        if (non_mobile_subgraph(cand, mob_a.value()).pair_multiset != target_non.pair_multiset)
            continue;
        BranchSearch search{nb, budget};
        auto hit = search.run(cand, mob_a.value(), mob_b.value());
        branch_inconclusive = branch_inconclusive || search.inconclusive;
        if (!hit) continue;

        cert.snm = set.paths[i];
        cert.mobile = hit->first;
        cert.final_match = hit->second;
        // trust nothing: the assembled certificate must replay end to end
        std::string why;
        if (!verify_certificate(a, b, cert, &why))
            return D::inconclusive_at("assembled certificate failed to replay: " + why, 0);
        return D::yes_with(std::move(cert));
    }
    if (branch_inconclusive)
        return D::inconclusive_at("some branch exhausted its budget undecided",
                                  budget.snm_cap);
    return D::no_because("no non-mobile candidate admits a mobile-edge matching");
}

bool verify_certificate(const LabeledGraph& a, const LabeledGraph& b, const IsoCertificate& cert,
                        std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    try {
        LabeledGraph ra = replay(a, cert.reduction_a);
        if (!is_reduced(ra)) return fail("first reduction incomplete");
        LabeledGraph rb = replay(b, cert.reduction_b);
        if (!is_reduced(rb)) return fail("second reduction incomplete");
        LabeledGraph na = normalize_signs(ra).first;
        LabeledGraph nb = normalize_signs(rb).first;
        if (serialize_graph(na) != cert.normalized_a) return fail("first normalized form differs");
        if (serialize_graph(nb) != cert.normalized_b)
            return fail("second normalized form differs");

        LabeledGraph cur = replay(na, cert.snm, /*enforce_reduced=*/true);
        for (const auto& block : cert.mobile) {
            std::string geom;
            for (const auto& m : block.moves) {
                if (m.kind != Move::Kind::slide) return fail("mobile block contains a non-slide");
                std::string base = m.edge[0] == '~' ? m.edge.substr(1) : m.edge;
                if (geom.empty()) geom = base;
                // a block may slide one geometric edge only
                if (base != geom) return fail("mobile block slides two geometric edges");
            }
            cur = replay(cur, block, /*enforce_reduced=*/true);
        }
        const GraphMatch& m = cert.final_match;
        if ((int)m.edge_map.size() != cur.edge_count()) return fail("final match has wrong size");
        if (!same_presentation(apply_match(cur, m), nb))
            return fail("final graph does not match the second reduced graph");
        return true;
    } catch (const GbsError& e) {
        return fail(std::string("replay error: ") + e.what());
    }
}

}  // namespace gbs
