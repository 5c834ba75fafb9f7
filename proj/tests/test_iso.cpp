#include <doctest.h>

#include <random>

#include "gbs/iso.hpp"
#include "gbs/json_io.hpp"
#include "gbs/oracle.hpp"
#include "fixtures.hpp"

using namespace gbs;
using gbs::testing::rnd;

namespace {

LabeledGraph e1() { return parse_graph(gbs::testing::e1_text()); }

std::vector<int> mobile_of(const LabeledGraph& g) {
    auto d = mobile_edge_set(g);
    REQUIRE(d.is_yes());
    return d.value();
}

}  // namespace

TEST_CASE("non_mobile_subgraph") {
    LabeledGraph g = e1();
    auto non = non_mobile_subgraph(g, mobile_of(g));
    CHECK(non.edges == std::vector<int>{1, 2});  // f2, f3
    CHECK(non.pair_multiset ==
          std::vector<std::pair<long long, long long>>{{6, 15}, {8, 10}});

    LabeledGraph bs24 = parse_graph(gbs::testing::bs_text(2, 4));
    CHECK(non_mobile_subgraph(bs24, mobile_of(bs24)).edges.empty());

    LabeledGraph bs23 = parse_graph(gbs::testing::bs_text(2, 3));
    CHECK(non_mobile_subgraph(bs23, mobile_of(bs23)).edges == std::vector<int>{0});
}

TEST_CASE("enumerate_snm") {
    SUBCASE("the 3-rose family is rigid: nothing non-mobile can slide") {
        LabeledGraph g = e1();
        auto d = enumerate_snm(g, mobile_of(g));
        REQUIRE(d.is_yes());
        CHECK(d.value().graphs.size() == 1);
    }
    SUBCASE("all-mobile roses have a singleton closure") {
        LabeledGraph g = parse_graph(gbs::testing::bs_text(2, 4));
        auto d = enumerate_snm(g, mobile_of(g));
        REQUIRE(d.is_yes());
        CHECK(d.value().graphs.size() == 1);
    }
    SUBCASE("a 2-rose with sliding non-mobile edges") {
        LabeledGraph g = parse_graph("v0; f: v0 v0 4 6; g: v0 v0 2 3");
        auto d = enumerate_snm(g, mobile_of(g));
        REQUIRE(d.is_yes());
        bool found = false;
        for (const auto& gr : d.value().graphs) {
            auto m = graphs_equal_up_to_relabeling(gr, parse_graph("v0; a: v0 v0 6 6; b: v0 v0 2 3"));
            found = found || m.has_value();
        }
        CHECK(found);  // f slid over g: label 4 -> 6
        // every member's recorded path replays to the member
        for (std::size_t i = 0; i < d.value().graphs.size(); ++i) {
            LabeledGraph got = replay(g, d.value().paths[i]);
            CHECK(serialize_graph(got) == serialize_graph(d.value().graphs[i]));
        }
    }
}

TEST_CASE("match_mobile_edge on the 3-rose family") {
    LabeledGraph g = e1();
    SUBCASE("reachable target via (f3, f2)") {
        auto d = match_mobile_edge(g, 0, {7, 60});
        REQUIRE(d.is_yes());
        REQUIRE(d.value().moves.size() == 1);
        CHECK(d.value().moves[0].edge == "~f1");
        CHECK(d.value().moves[0].path == std::vector<std::string>{"f3", "f2"});
        LabeledGraph out = replay(g, d.value());
        CHECK(out.labels[0].value() == 7);
        CHECK(out.labels[1].value() == 60);
    }
    SUBCASE("already matching: empty sequence") {
        auto d = match_mobile_edge(g, 0, {7, 30});
        REQUIRE(d.is_yes());
        CHECK(d.value().moves.empty());
    }
    SUBCASE("foreign unit part is refuted") {
        auto d = match_mobile_edge(g, 0, {7, 33});
        CHECK(d.is_no());
    }
    SUBCASE("non-mobile edges are rejected") {
        CHECK_THROWS_AS(match_mobile_edge(g, 1, {6, 15}), NotMobile);
    }
}

TEST_CASE("are_isomorphic on directed instances") {
    SUBCASE("identity") {
        auto d = are_isomorphic(e1(), e1());
        REQUIRE(d.is_yes());
        CHECK(verify_certificate(e1(), e1(), d.value()));
    }
    SUBCASE("single recorded slide") {
        LabeledGraph b = parse_graph("v0; f1: v0 v0 7 60; f2: v0 v0 6 15; f3: v0 v0 10 8");
        auto d = are_isomorphic(e1(), b);
        REQUIRE(d.is_yes());
        CHECK(verify_certificate(e1(), b, d.value()));
        // the certificate is exactly one slide of ~f1
        const IsoCertificate& cert = d.value();
        CHECK(cert.snm.moves.empty());
        REQUIRE(cert.mobile.size() == 1);
        REQUIRE(cert.mobile[0].moves.size() == 1);
        CHECK(cert.mobile[0].moves[0].edge == "~f1");
    }
    SUBCASE("modular-image gate refutes the p = 11 variant") {
        LabeledGraph b = parse_graph(gbs::testing::e1_text(11));
        auto d = are_isomorphic(e1(), b);
        REQUIRE(d.is_no());
        CHECK(d.reason == "modular-image subgroups differ");
    }
    SUBCASE("orientation flip at the final match") {
        auto d = are_isomorphic(parse_graph(gbs::testing::bs_text(2, 3)),
                                parse_graph(gbs::testing::bs_text(3, 2)));
        CHECK(d.is_yes());
    }
    SUBCASE("shape gate") {
        auto d = are_isomorphic(parse_graph(gbs::testing::bs_text(2, 3)),
                                parse_graph("v0; f: v0 v0 2 3; g: v0 v0 5 7"));
        REQUIRE(d.is_no());
        CHECK(d.reason == "reduced shapes differ");
    }
    SUBCASE("unsupported classes throw") {
        CHECK_THROWS_AS(are_isomorphic(parse_graph(gbs::testing::bs_text(2, 4)), e1()),
                        UnsupportedClass);  // ascending first graph
        CHECK_THROWS_AS(are_isomorphic(parse_graph("v0; e: v0 v0 1 1"), e1()),
                        UnsupportedClass);  // elementary first graph
        CHECK_THROWS_AS(are_isomorphic(parse_graph(gbs::testing::e2_text()), e1()),
                        UnsupportedClass);  // 4-rose
        CHECK_THROWS_AS(are_isomorphic(parse_graph("v0; e: v0 v0 -2 3"), e1()),
                        SignObstruction);
        // ascending second graph is a verdict, not an error
        auto d = are_isomorphic(parse_graph(gbs::testing::bs_text(2, 3)),
                                parse_graph(gbs::testing::bs_text(2, 4)));
        CHECK(d.is_no());
    }
    SUBCASE("second graph reducing to an elementary group is a No") {
        auto d = are_isomorphic(e1(), parse_graph("v0 v1; e: v0 v1 1 1"));
        CHECK(d.is_no());
    }
}

namespace {

LabeledGraph random_nonascending_rose(std::mt19937_64& rng, int n) {
    while (true) {
        std::string text = "v0";
        for (int e = 0; e < n; ++e)
            text += "; p" + std::to_string(e) + ": v0 v0 " + std::to_string(rnd(rng, 2, 24)) +
                    " " + std::to_string(rnd(rng, 2, 24));
        LabeledGraph g = parse_graph(text);
        if (is_ascending(g).is_no()) return g;
    }
}

LabeledGraph random_slid(std::mt19937_64& rng, const LabeledGraph& g, int steps) {
    LabeledGraph cur = g;
    for (int i = 0; i < steps; ++i) {
        std::vector<std::pair<int, int>> options;
        for (int e = 0; e < cur.half_count(); ++e)
            for (int h = 0; h < cur.half_count(); ++h) {
                if (LabeledGraph::geometric(e) == LabeledGraph::geometric(h)) continue;
                if (divides(cur.labels[h], cur.labels[e])) options.emplace_back(e, h);
            }
        if (options.empty()) break;
        auto [e, h] = options[rnd(rng, 0, (long long)options.size() - 1)];
        cur = apply_slide(cur, e, {h});
    }
    return cur;
}

}  // namespace

TEST_CASE("round-trip: slid roses are recognized with replayable certificates") {
    std::mt19937_64 rng(192837);
    for (int iter = 0; iter < 60; ++iter) {
        LabeledGraph a = random_nonascending_rose(rng, (int)rnd(rng, 2, 3));
        LabeledGraph b = random_slid(rng, a, (int)rnd(rng, 1, 8));
        auto d = are_isomorphic(a, b);
        REQUIRE(d.is_yes());
        std::string why;
        CHECK(verify_certificate(a, b, d.value(), &why));
        // certificate JSON round-trips
        auto j = certificate_to_json(d.value(), a, b);
        LabeledGraph a2, b2;
        IsoCertificate cert2 = certificate_from_json(j, &a2, &b2);
        CHECK(verify_certificate(a2, b2, cert2));
    }
}

TEST_CASE("negative pairs: perturbed labels are refuted or proven apart") {
    std::mt19937_64 rng(5555);
    int negatives = 0;
    for (int iter = 0; iter < 400 && negatives < 60; ++iter) {
        LabeledGraph a = random_nonascending_rose(rng, (int)rnd(rng, 2, 3));
        // perturb one label by a foreign prime: the modular image or the
        // non-mobile structure must differ
        LabeledGraph b = a;
        int h = (int)rnd(rng, 0, a.half_count() - 1);
        long long v = b.labels[h].value() * 7;
        std::string text = "v0";
        for (int e = 0; e < b.edge_count(); ++e) {
            long long l1 = 2 * e == h ? v : b.labels[2 * e].value();
            long long l2 = 2 * e + 1 == h ? v : b.labels[2 * e + 1].value();
            text += "; p" + std::to_string(e) + ": v0 v0 " + std::to_string(l1) + " " +
                    std::to_string(l2);
        }
        b = parse_graph(text);
        if (!is_ascending(b).is_no()) continue;
        auto d = are_isomorphic(a, b);
        if (d.is_inconclusive()) continue;
        // 7 divides exactly one label product, so the groups differ
        REQUIRE(d.is_no());
        ++negatives;
    }
    CHECK(negatives == 60);
}

TEST_CASE("isomorphism carried entirely by non-mobile slides") {
    SUBCASE("2-rose: one slide apart, no mobile edges") {
        LabeledGraph a = parse_graph("v0; f: v0 v0 4 6; g: v0 v0 2 3");
        LabeledGraph b = parse_graph("v0; f: v0 v0 6 6; g: v0 v0 2 3");
        REQUIRE(mobile_of(a).empty());
        auto d = are_isomorphic(a, b);
        REQUIRE(d.is_yes());
        CHECK_FALSE(d.value().snm.moves.empty());
        CHECK(d.value().mobile.empty());
        CHECK(verify_certificate(a, b, d.value()));
    }
    SUBCASE("3-rose with a shared highway petal") {
        // all moduli are 3/2, so no strict cycle exists and every petal is
        // non-mobile; e and f still slide over g
        LabeledGraph a = parse_graph("v0; e: v0 v0 14 21; f: v0 v0 22 33; g: v0 v0 2 3");
        LabeledGraph slid = apply_slide(a, *a.half_edge_by_name("e"), {*a.half_edge_by_name("g")});
        LabeledGraph b = apply_slide(slid, *slid.half_edge_by_name("~f"),
                                     {*slid.half_edge_by_name("~g")});
        REQUIRE(mobile_of(a).empty());
        auto d = are_isomorphic(a, b);
        REQUIRE(d.is_yes());
        CHECK(d.value().mobile.empty());
        CHECK(verify_certificate(a, b, d.value()));
        // a labels change that leaves the modular image intact but the
        // closure unreachable is refuted exhaustively
        LabeledGraph c = parse_graph("v0; e: v0 v0 28 42; f: v0 v0 22 33; g: v0 v0 2 3");
        auto neg = are_isomorphic(a, c);
        CHECK(neg.is_no());
    }
}

TEST_CASE("budget slack trades completeness for time, soundly") {
    // the slid copy pumps a label to 2^16; the default box gives up while a
    // wider one certifies the pair
    LabeledGraph a = parse_graph("v0; p0: v0 v0 54 13; p1: v0 v0 28 46; p2: v0 v0 32 3");
    LabeledGraph b = parse_graph("v0; p0: v0 v0 65536 13; p1: v0 v0 28 46; p2: v0 v0 32 3");
    SearchBudget tight;
    tight.exponent_slack = 8;
    CHECK(are_isomorphic(a, b, tight).is_inconclusive());
    SearchBudget wide;
    wide.exponent_slack = 16;
    auto d = are_isomorphic(a, b, wide);
    REQUIRE(d.is_yes());
    CHECK(verify_certificate(a, b, d.value()));
}

TEST_CASE("symmetry on conclusive instances") {
    std::mt19937_64 rng(24680);
    int compared = 0;
    for (int iter = 0; iter < 200 && compared < 40; ++iter) {
        LabeledGraph a = random_nonascending_rose(rng, 2);
        LabeledGraph b =
            rnd(rng, 0, 1) ? random_slid(rng, a, 3) : random_nonascending_rose(rng, 2);
        Decision<IsoCertificate> ab, ba;
        try {
            ab = are_isomorphic(a, b);
            ba = are_isomorphic(b, a);
        } catch (const UnsupportedClass&) {
            continue;
        }
        if (ab.is_inconclusive() || ba.is_inconclusive()) continue;
        CHECK(ab.verdict == ba.verdict);
        ++compared;
    }
    CHECK(compared == 40);
}

TEST_CASE("oracle agreement on exhaustive instances") {
    std::mt19937_64 rng(86420);
    int agreed = 0;
    for (int iter = 0; iter < 300 && agreed < 50; ++iter) {
        LabeledGraph a = random_nonascending_rose(rng, 2);
        LabeledGraph b =
            rnd(rng, 0, 1) ? random_slid(rng, a, 4) : random_nonascending_rose(rng, 2);
        auto oracle = oracle_bfs(a, b, 1000000, 10);
        if (!oracle.is_yes() && !oracle.is_no()) continue;  // truncated
        auto d = are_isomorphic(a, b);
        if (d.is_inconclusive()) continue;
        CHECK(d.is_yes() == oracle.is_yes());
        ++agreed;
    }
    CHECK(agreed == 50);
}
