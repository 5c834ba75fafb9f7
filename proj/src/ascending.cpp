#include "gbs/ascending.hpp"

namespace gbs {

Decision<int> count_mobile_edges(const LabeledGraph& rose, const SearchBudget& budget) {
    using D = Decision<int>;
    auto set = mobile_edge_set(rose, budget);
    if (set.is_inconclusive()) return D::inconclusive_at(set.reason, set.bound.value_or(0));
    return D::yes_with((int)set.value().size());
}

namespace {

std::string fresh_name(const LabeledGraph& g, const std::string& stem, bool vertex) {
    for (int i = 0;; ++i) {
        std::string name = stem + std::to_string(i);
        bool taken = vertex ? g.vertex_by_name(name).has_value()
                            : g.half_edge_by_name(name).has_value();
        if (!taken) return name;
    }
}

// slide bar(e) along the witness path, then expand with an A-move unless the
// loop is already ascending
MoveSequence build_exhibition(const LabeledGraph& rose, const MonotoneCycleWitness& w) {
    MoveSequence seq;
    seq.initial_fingerprint = fingerprint(rose);
    int e = w.last_edge;
    LabeledGraph cur = rose;
    if (!w.path.empty()) {
        Move slide = make_slide_move(rose, LabeledGraph::bar(e), w.path);
        cur = apply_move(cur, slide);
        seq.moves.push_back(std::move(slide));
    }
    if (!cur.labels[e].is_unit_abs()) {
        // any factor l != +-1 of the cycle modulus works; the smallest basis
        // prime dividing it always fits, where the full modulus may not
        long long l = 0;
        for (std::size_t i = 0; i < rose.basis->size(); ++i)
            if (w.modulus.exps[i] > 0) {
                l = rose.basis->primes[i];
                break;
            }
        if (l == 0) throw GbsError("strict modulus with no prime part");
        Move am;
        am.kind = Move::Kind::amove_plus;
        am.edge = cur.half_edge_name(e);
        am.factor = l;
        am.new_vertex = fresh_name(cur, "w", true);
        am.new_edge = fresh_name(cur, "c", false);
        seq.moves.push_back(std::move(am));
    }
    return seq;
}

}  // namespace

Decision<AscendingWitness> is_ascending(const LabeledGraph& rose, const SearchBudget& budget) {
    using D = Decision<AscendingWitness>;
    auto shape = rose_shape(rose);
    if (!shape) throw UnsupportedClass("is_ascending needs a rose");
    if (!is_reduced(rose)) throw UnsupportedClass("is_ascending needs a reduced graph");
    if (shape->n == 0) throw UnsupportedClass("the empty rose presents Z");

    if (shape->n > 3) {
        auto count = count_mobile_edges(rose, budget);
        if (count.is_inconclusive())
            return D::inconclusive_at("mobile-edge count inconclusive: " + count.reason,
                                      count.bound.value_or(0));
        if (count.value() != 1)
            throw UnsupportedClass("n > 3 with " + std::to_string(count.value()) +
                                   " mobile edges is outside the decidable class");
    }

    auto smc = has_smc(rose, budget);
    if (smc.is_no()) return D::no_because(smc.reason);
    if (smc.is_inconclusive()) return D::inconclusive_at(smc.reason, smc.bound.value_or(0));

    AscendingWitness w;
    w.cycle = smc.value();
    w.exhibition = build_exhibition(rose, w.cycle);
    return D::yes_with(std::move(w));
}

}  // namespace gbs
