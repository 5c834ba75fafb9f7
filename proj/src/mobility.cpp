#include "gbs/mobility.hpp"

namespace gbs {

namespace {

bool geq_and_not_equal(const std::vector<long long>& a, const std::vector<long long>& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strict = true;
    }
    return strict;
}

}  // namespace

Decision<IntegerCycleWitness> find_strict_integer_cycle(const LabeledGraph& rose, int e,
                                                        const SearchBudget& budget) {
    using D = Decision<IntegerCycleWitness>;
    // completeness of the bounded cycle search is only established on roses;
    // other shapes stay undecided rather than guessed
    if (!rose_shape(rose))
        return D::inconclusive_at("integer-cycle search is only exhaustive on roses", 0);
    if (!is_reduced(rose)) throw UnsupportedClass("integer cycle search needs a reduced graph");

    const std::vector<long long>& sigma = rose.labels[e].exps;
    ReachSet reach = reachable_labels(rose, e, budget);

    for (std::size_t i = 1; i < reach.states.size(); ++i) {
        if (!geq_and_not_equal(reach.states[i].exps, sigma)) continue;
        IntegerCycleWitness w;
        w.base_edge = e;
        w.cycle = reach.path_to((int)i);
        FactoredInt reached;
        reached.basis = rose.basis;
        reached.sign = rose.labels[e].sign;
        reached.unit = rose.labels[e].unit;
        reached.exps = reach.states[i].exps;
        w.modulus = FactoredRational::ratio(reached, rose.labels[e]);
        return D::yes_with(std::move(w));
    }
    for (const auto& cone : reach.cones) {
        auto k = least_pump_strictly_above(reach, cone, sigma, budget);
        if (!k) continue;
        const auto& apex = reach.states[cone.apex].exps;
        std::vector<long long> exps(apex.size());
        for (std::size_t l = 0; l < apex.size(); ++l) exps[l] = apex[l] + *k * cone.dir[l];
        IntegerCycleWitness w;
        w.base_edge = e;
        w.cycle = reach.pumped_path(cone, *k);
        FactoredInt reached;
        reached.basis = rose.basis;
        reached.sign = rose.labels[e].sign;
        reached.unit = rose.labels[e].unit;
        reached.exps = exps;
        w.modulus = FactoredRational::ratio(reached, rose.labels[e]);
        return D::yes_with(std::move(w));
    }

    if (reach.saturated) return D::no_because("reachable labels exhausted, none strictly above");
    return D::inconclusive_at("reachability frontier left the exponent box",
                              budget.exponent_slack);
}

Decision<bool> classify_mobile(const LabeledGraph& rose, int geom_edge,
                               const SearchBudget& budget) {
    using D = Decision<bool>;
    if (!rose_shape(rose))
        return D::inconclusive_at("mobility is only decided on roses", 0);
    int e = LabeledGraph::forward(geom_edge);
    int eb = LabeledGraph::bar(e);

    bool inconclusive = false;
    for (int h : {e, eb}) {
        auto smc = has_smc_with_last_edge(rose, h, budget);
        if (smc.is_yes()) return D::yes_with(true, "strict monotone cycle ends in " +
                                                       rose.half_edge_name(h));
        if (smc.is_inconclusive()) inconclusive = true;
        auto cyc = find_strict_integer_cycle(rose, h, budget);
        if (cyc.is_yes())
            return D::yes_with(true, "strict " + rose.half_edge_name(h) + "-integer cycle");
        if (cyc.is_inconclusive()) inconclusive = true;
    }
    if (inconclusive)
        return D::inconclusive_at("mobility searches exhausted their budget",
                                  budget.exponent_slack);
    return D::yes_with(false, "all four searches exhaustively empty");
}

Decision<std::vector<int>> mobile_edge_set(const LabeledGraph& rose, const SearchBudget& budget) {
    using D = Decision<std::vector<int>>;
    std::vector<int> mobile;
    for (int g = 0; g < rose.edge_count(); ++g) {
        auto d = classify_mobile(rose, g, budget);
        if (d.is_inconclusive())
            return D::inconclusive_at("mobility of " + rose.edge_names[g] + ": " + d.reason,
                                      budget.exponent_slack);
        if (d.value()) mobile.push_back(g);
    }
    return D::yes_with(std::move(mobile));
}

bool verify_integer_cycle(const LabeledGraph& rose, const IntegerCycleWitness& w) {
    int e = w.base_edge;
    if (e < 0 || e >= rose.half_count()) return false;
    if (!is_e_edge_path(rose, e, w.cycle)) return false;
    if (!w.cycle.empty() &&
        rose.origin[w.cycle.front()] != rose.target(w.cycle.back()))
        return false;
    FactoredRational q = modulus_of_path(rose, w.cycle);
    if (!q.is_integer() || q.is_unit_abs()) return false;
    return q == w.modulus;
}

}  // namespace gbs
