#include "gbs/smc.hpp"

#include <algorithm>

namespace gbs {

namespace {

// modulus of the would-be monotone cycle (path, e) given the reached label
// of bar(e): q(path, e) = reached / label(e)
FactoredRational closing_modulus(const LabeledGraph& g, int e,
                                 const std::vector<long long>& reached_exps) {
    FactoredInt reached;
    reached.basis = g.basis;
    reached.sign = g.labels[LabeledGraph::bar(e)].sign;
    reached.unit = g.labels[LabeledGraph::bar(e)].unit;
    reached.exps = reached_exps;
    return FactoredRational::ratio(reached, g.labels[e]);
}

bool geq_and_not_equal(const std::vector<long long>& a, const std::vector<long long>& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strict = true;
    }
    return strict;
}

}  // namespace

std::optional<MonotoneCycleWitness> quick_loop_check(const LabeledGraph& rose) {
    if (!rose_shape(rose)) throw UnsupportedClass("quick_loop_check needs a rose");
    for (int h = 0; h < rose.half_count(); ++h) {
        const FactoredInt& lo = rose.labels[h];
        const FactoredInt& hi = rose.labels[LabeledGraph::bar(h)];
        if (!divides(lo, hi)) continue;
        FactoredRational q = FactoredRational::ratio(hi, lo);
        if (q.is_unit_abs()) continue;
        MonotoneCycleWitness w;
        w.last_edge = h;
        w.modulus = q;
        return w;
    }
    return std::nullopt;
}

PiSystem compute_pi(const LabeledGraph& rose, int e) {
    if (!rose_shape(rose)) throw UnsupportedClass("compute_pi needs a rose");
    PiSystem pi;
    pi.base_edge = e;
    const FactoredInt& le = rose.labels[e];
    const FactoredInt& lbar = rose.labels[LabeledGraph::bar(e)];
    pi.unit_compatible = (lbar.unit % le.unit == 0);

    std::size_t r = rose.basis->size();
    for (int p = 0; p < rose.edge_count(); ++p)
        if (p != LabeledGraph::geometric(e)) pi.variable_petals.push_back(p);
    int d = (int)pi.variable_petals.size();

    // alpha^h = exps(q(g_h)) for the declared petal orientation
    std::vector<std::vector<long long>> alpha;
    for (int p : pi.variable_petals) {
        std::vector<long long> a(r);
        for (std::size_t l = 0; l < r; ++l)
            a[l] = rose.labels[2 * p + 1].exps[l] - rose.labels[2 * p].exps[l];
        alpha.push_back(std::move(a));
    }

    // one system per strict row: sum_h x_h alpha_l^h >= sigma_l - sigma'_l,
    // with the chosen row offset by +1
    for (std::size_t strict = 0; strict < r; ++strict) {
        LinearConstraintSystem sys;
        sys.dim = d;
        for (std::size_t l = 0; l < r; ++l) {
            LinearRow row;
            row.rel = LinearRow::GE;
            row.coeffs.resize(d);
            for (int h = 0; h < d; ++h) row.coeffs[h] = alpha[h][l];
            row.rhs = le.exps[l] - lbar.exps[l] + (l == strict ? 1 : 0);
            sys.rows.push_back(std::move(row));
        }
        pi.systems.push_back(std::move(sys));
    }
    return pi;
}

ConeUnion compute_lambda(const LabeledGraph& rose, int e, const SearchBudget& budget) {
    ConeUnion cu;
    cu.base_edge = e;
    cu.reach = reachable_labels(rose, LabeledGraph::bar(e), budget);
    cu.saturated = cu.reach.saturated;
    return cu;
}

Decision<MonotoneCycleWitness> has_smc_with_last_edge(const LabeledGraph& rose, int e,
                                                      const SearchBudget& budget) {
    using D = Decision<MonotoneCycleWitness>;
    if (!rose_shape(rose)) throw UnsupportedClass("has_smc_with_last_edge needs a rose");

    const FactoredInt& le = rose.labels[e];
    const std::vector<long long>& sigma = le.exps;

    // Units are slide-invariant, so a unit obstruction refutes outright.
    if (rose.labels[LabeledGraph::bar(e)].unit % le.unit != 0)
        return D::no_because("unit part of label(e) cannot divide any reachable label");

    // Pi(e) emptiness refutes without any reachability search. Only an
    // all-No over the strict-row systems proves emptiness.
    PiSystem pi = compute_pi(rose, e);
    bool pi_refuted = true;
    for (const auto& sys : pi.systems) {
        if (!ilp_feasible(sys, budget).is_no()) {
            pi_refuted = false;
            break;
        }
    }
    if (pi_refuted) return D::no_because("Pi(e) is empty");

    ConeUnion lambda = compute_lambda(rose, e, budget);
    const ReachSet& reach = lambda.reach;

    // explicit members, breadth-first order: first hit is the least witness
    for (std::size_t i = 0; i < reach.states.size(); ++i) {
        if (!geq_and_not_equal(reach.states[i].exps, sigma)) continue;
        MonotoneCycleWitness w;
        w.path = reach.path_to((int)i);
        w.last_edge = e;
        w.modulus = closing_modulus(rose, e, reach.states[i].exps);
        return D::yes_with(std::move(w));
    }
    // cone members: least k with apex + k*dir strictly above sigma
    for (const auto& cone : reach.cones) {
        auto k = least_pump_strictly_above(reach, cone, sigma, budget);
        if (!k) continue;
        const auto& apex = reach.states[cone.apex].exps;
        std::vector<long long> exps(apex.size());
        for (std::size_t l = 0; l < apex.size(); ++l) exps[l] = apex[l] + *k * cone.dir[l];
        MonotoneCycleWitness w;
        w.path = reach.pumped_path(cone, *k);
        w.last_edge = e;
        w.modulus = closing_modulus(rose, e, exps);
        return D::yes_with(std::move(w));
    }

    if (lambda.saturated) return D::no_because("Lambda(e) exhausted with no Pi member");
    return D::inconclusive_at("Lambda(e) frontier left the exponent box", budget.exponent_slack);
}

Decision<MonotoneCycleWitness> has_smc(const LabeledGraph& rose, const SearchBudget& budget) {
    using D = Decision<MonotoneCycleWitness>;
    if (!rose_shape(rose)) throw UnsupportedClass("has_smc needs a rose");
    if (!is_reduced(rose)) throw UnsupportedClass("has_smc needs a reduced graph");

    if (auto loop = quick_loop_check(rose)) return D::yes_with(std::move(*loop));

    bool inconclusive = false;
    std::string reason;
    for (int h = 0; h < rose.half_count(); ++h) {
        auto d = has_smc_with_last_edge(rose, h, budget);
        if (d.is_yes()) return d;
        if (d.is_inconclusive()) {
            inconclusive = true;
            reason = "last edge " + rose.half_edge_name(h) + ": " + d.reason;
        }
    }
    if (inconclusive) return D::inconclusive_at(reason, budget.exponent_slack);
    return D::no_because("no strict monotone cycle with any last edge");
}

bool verify_monotone_cycle(const LabeledGraph& rose, const MonotoneCycleWitness& w) {
    int e = w.last_edge;
    if (e < 0 || e >= rose.half_count()) return false;
    if (!is_e_edge_path(rose, LabeledGraph::bar(e), w.path)) return false;
    FactoredRational q = modulus_of_path(rose, w.path)
                             .times(FactoredRational::ratio(rose.labels[LabeledGraph::bar(e)],
                                                            rose.labels[e]));
    if (!q.is_integer() || q.is_unit_abs()) return false;
    return q == w.modulus;
}

}  // namespace gbs
