#include <doctest.h>

#include "support.hpp"
#include "treeflip/conflict_graph.hpp"
#include "treeflip/error.hpp"
#include "treeflip/flips.hpp"
#include "treeflip/oracle.hpp"

using namespace treeflip;

namespace {

ConflictGraph graph_of(const ConvexInstance& inst) {
    return build_conflict_graph(compute_pairing(compute_rho(inst.t), compute_rho(inst.tp)));
}

// Arc types from the raw cover and cross predicates.
std::uint8_t ref_types(const Edge& ei, int gi, const Edge& epj, int gj) {
    std::uint8_t t = 0;
    if (support::ref_cross(ei.a, ei.b, epj.a, epj.b)) t |= arc_type1;
    if (support::ref_covers(epj, ei) && support::ref_covers_gap(ei, gj)) t |= arc_type2;
    if (support::ref_covers(ei, epj) && support::ref_covers_gap(epj, gi)) t |= arc_type3;
    return t;
}

GapSide ref_side(const Edge& e, const Edge& ep) {
    const bool adjacent = e.a == ep.a || e.a == ep.b || e.b == ep.a || e.b == ep.b;
    if (!adjacent) return GapSide::crossing;
    return e.length() > ep.length() ? GapSide::above : GapSide::below;
}

bool has_cycle(const ConflictGraph& cg) { return topological_order(cg, cg.gaps()).size() != cg.size(); }

} // namespace

TEST_CASE("identical trees give an empty graph") {
    std::mt19937_64 rng(2);
    const Tree t = support::random_tree(10, rng, 30);
    const auto cg = graph_of(ConvexInstance::make(10, t.edges(), t.edges(), Labeling::linear));
    CHECK(cg.empty());
    const auto abc = abc_partition_orders(cg);
    CHECK(abc.above.size() + abc.below.size() + abc.crossing.size() == 0);
    CHECK(max_acyclic_exact(cg).size() == 0);
    CHECK(best_acyclic(cg).size() == 0);
}

TEST_CASE("opposite stars on four points") {
    const auto cg = graph_of(ConvexInstance::make(4, star(4, 1).edges(), star(4, 4).edges(), Labeling::linear));
    REQUIRE(cg.size() == 1);
    CHECK(cg.gap(0) == 2);
    CHECK(cg.arcs().empty());
    CHECK(cg.side(0) == GapSide::crossing);
}

TEST_CASE("arcs and sides match the definitions on random instances") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 30)(rng);
        const auto inst = support::random_instance(n, rng, 2 * n, Labeling::linear);
        const auto p = compute_pairing(compute_rho(inst.t), compute_rho(inst.tp));
        const auto cg = build_conflict_graph(p);
        REQUIRE(cg.gaps() == p.near_gaps);
        std::vector<Arc> expected;
        for (int gi : p.near_gaps) {
            for (int gj : p.near_gaps) {
                if (gi == gj) continue;
                if (const auto t = ref_types(p.at(gi).first, gi, p.at(gj).second, gj)) expected.push_back(Arc{gi, gj, t});
            }
        }
        CHECK(cg.arcs() == expected);
        for (std::size_t v = 0; v < cg.size(); ++v) CHECK(cg.side(v) == ref_side(cg.edge(v), cg.partner(v)));

        // Swapping the trees reverses every arc and exchanges types 2 and 3.
        const auto rev = build_conflict_graph_unchecked(swap_pairing(p));
        for (const auto& a : cg.arcs()) {
            std::uint8_t swapped = a.types & arc_type1;
            if (a.types & arc_type2) swapped |= arc_type3;
            if (a.types & arc_type3) swapped |= arc_type2;
            const auto it = std::find_if(rev.arcs().begin(), rev.arcs().end(),
                                         [&](const Arc& r) { return r.from == a.to && r.to == a.from; });
            REQUIRE(it != rev.arcs().end());
            CHECK(it->types == swapped);
        }
        CHECK(rev.arcs().size() == cg.arcs().size());
    }
}

TEST_CASE("side classes are acyclic on 500 random instances up to 200 points") {
    std::mt19937_64 rng(29);
    std::size_t nonempty = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 200)(rng);
        const auto inst = support::random_instance(n, rng, static_cast<std::size_t>(n), Labeling::linear);
        const auto cg = graph_of(inst);
        AbcCertificates abc;
        REQUIRE_NOTHROW(abc = abc_partition_orders(cg));
        CHECK(abc.above.size() + abc.below.size() + abc.crossing.size() == cg.size());
        for (const auto* c : {&abc.above, &abc.below, &abc.crossing}) {
            CHECK(is_topological_order(cg, c->order));
            CHECK(topological_order(cg, c->subset).size() == c->size());
        }
        CHECK(abc.above.subset == cg.side_members(GapSide::above));
        CHECK(abc.below.subset == cg.side_members(GapSide::below));
        CHECK(abc.crossing.subset == cg.side_members(GapSide::crossing));
        CHECK(3 * best_acyclic(cg).size() >= cg.size());
        nonempty += !cg.empty();
    }
    CHECK(nonempty > 400);
}

TEST_CASE("exact acyclic subsets agree with subset enumeration") {
    std::mt19937_64 rng(41);
    std::size_t checked = 0, cyclic = 0;
    for (int trial = 0; trial < 3000 && checked < 300; ++trial) {
        const int n = std::uniform_int_distribution<int>(5, 16)(rng);
        const auto cg = graph_of(support::random_instance(n, rng, 2 * n, Labeling::linear));
        if (cg.size() > 12 || cg.size() < 2) continue;
        ++checked;
        cyclic += has_cycle(cg);
        const auto exact = max_acyclic_exact(cg);
        CHECK(exact.size() == support::ref_max_acyclic(cg));
        CHECK(is_topological_order(cg, exact.order));
        CHECK(exact.method == AcyclicMethod::exact);
    }
    CHECK(checked == 300);
    CHECK(cyclic > 10);
}

TEST_CASE("budget and heuristic dispatch") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cg = graph_of(support::random_instance(200, rng, 2000, Labeling::linear));
        if (cg.size() <= 24) continue;
        CHECK_THROWS_AS(max_acyclic_exact(cg), BudgetExceeded);
        const auto h = best_acyclic(cg);
        CHECK(h.method == AcyclicMethod::abc_heuristic);
        CHECK(3 * h.size() >= cg.size());
        CHECK(is_topological_order(cg, h.order));
        return;
    }
    FAIL("no conflict graph above the exact budget");
}

TEST_CASE("the thirteen-point fixture carries a bidirected nine-cycle") {
    const auto inst = support::fixture("bidirected_nine_cycle.json");
    const auto cg = graph_of(inst);
    REQUIRE(cg.size() == 9);
    // Bidirected arcs: each vertex has exactly two partners, and they link up into one cycle.
    std::vector<std::vector<int>> nb(cg.size());
    std::size_t bidirected_arcs = 0;
    for (std::size_t u = 0; u < cg.size(); ++u) {
        for (std::size_t v = 0; v < cg.size(); ++v) {
            if (u != v && cg.has_arc(u, v) && cg.has_arc(v, u)) {
                nb[u].push_back(static_cast<int>(v));
                ++bidirected_arcs;
            }
        }
    }
    CHECK(bidirected_arcs == 18);
    for (const auto& list : nb) CHECK(list.size() == 2);
    std::vector<int> walk{0};
    int prev = -1;
    while (walk.size() < 10) {
        const int cur = walk.back();
        const int next = nb[cur][0] == prev ? nb[cur][1] : nb[cur][0];
        prev = cur;
        walk.push_back(next);
    }
    CHECK(walk.back() == 0);
    std::vector<int> seen(walk.begin(), walk.end() - 1);
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());

    const auto exact = max_acyclic_exact(cg);
    CHECK(exact.size() == 4);
    CHECK(support::ref_max_acyclic(cg) == 4);
    CHECK(best_acyclic(cg).size() == 4);
    // No bidirected arc joins two gaps of one side class.
    for (std::size_t u = 0; u < cg.size(); ++u) {
        for (int v : nb[u]) CHECK(cg.side(u) != cg.side(static_cast<std::size_t>(v)));
    }
}

TEST_CASE("topological order helpers") {
    const auto inst = support::fixture("bidirected_nine_cycle.json");
    const auto cg = graph_of(inst);
    CHECK(topological_order(cg, cg.gaps()).empty());
    const std::vector<int> one{cg.gap(0)};
    CHECK(topological_order(cg, one) == one);
    CHECK(is_topological_order(cg, one));
    const std::vector<int> twice{cg.gap(0), cg.gap(0)};
    CHECK_FALSE(is_topological_order(cg, twice));
    const std::vector<int> bogus{99};
    CHECK_FALSE(is_topological_order(cg, bogus));
}

TEST_CASE("certified orders replay as direct flips after boundary preprocessing") {
    std::mt19937_64 rng(47);
    std::size_t replayed = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(4, 40)(rng);
        const auto inst = support::random_instance(n, rng, 2 * n, Labeling::linear);
        const auto ga = compute_rho(inst.t);
        const auto p = compute_pairing(ga, compute_rho(inst.tp));
        const auto cg = build_conflict_graph(p);
        if (cg.empty()) continue;
        const auto y = best_acyclic(cg);
        // Everything outside Y is sent to its hull edge first.
        std::vector<int> others = p.rest_gaps;
        for (int g : p.near_gaps) {
            if (!std::binary_search(y.subset.begin(), y.subset.end(), g)) others.push_back(g);
        }
        std::sort(others.begin(), others.end());
        Tree t = inst.t;
        for (const auto& f : boundary_preprocess(ga, others)) t = apply_flip(t, f);
        for (int g : y.order) {
            const auto cur = compute_rho(t);
            const Edge target = p.at(g).second;
            const auto check = can_direct_flip(t, cur, g, target);
            REQUIRE(static_cast<bool>(check));
            t = apply_flip(t, Flip{cur.edge(g), target});
            const auto after = compute_rho(t);
            for (int h = 1; h < n; ++h) {
                if (h == g) CHECK(after.edge(h) == target);
                else {
                    CHECK(after.edge(h) == cur.edge(h));
                    CHECK(after.edge_class(h) == cur.edge_class(h));
                }
            }
            ++replayed;
        }
    }
    CHECK(replayed > 100);
}

TEST_CASE("caterpillar split into two acyclic classes") {
    std::mt19937_64 rng(53);
    const auto idx = enumerate_trees(7);
    std::size_t checked = 0;
    for (auto m : idx.trees()) {
        const Tree t = idx.decode(m);
        if (!is_separated_caterpillar(t) || t.contains(Edge(1, 7))) continue;
        for (int trial = 0; trial < 20; ++trial) {
            const Tree tp = idx.decode(idx.trees()[rng() % idx.size()]);
            const auto p = compute_pairing(compute_rho(t), compute_rho(tp));
            const auto cg = build_conflict_graph(p);
            const auto chains = caterpillar_chains(t);
            const auto [a, b] = caterpillar_ab_partition(cg, chains);
            CHECK(a.size() + b.size() == cg.size());
            CHECK(is_topological_order(cg, a.order));
            CHECK(is_topological_order(cg, b.order));
            CHECK(2 * std::max(a.size(), b.size()) >= cg.size());
            for (int g : a.subset) {
                const auto& [e, ep] = p.at(g);
                CHECK(chains.in_left(e) == support::ref_covers(e, ep));
            }
            ++checked;
        }
    }
    CHECK(checked > 100);

    const Tree same = idx.decode(idx.trees()[0]);
    if (is_separated_caterpillar(same) && !same.contains(Edge(1, 7))) {
        const auto cg = build_conflict_graph(compute_pairing(compute_rho(same), compute_rho(same)));
        const auto [a, b] = caterpillar_ab_partition(cg, caterpillar_chains(same));
        CHECK(a.size() + b.size() == 0);
    }
}

TEST_CASE("DOT output colors sides and labels arc types") {
    const auto cg = graph_of(support::fixture("bidirected_nine_cycle.json"));
    const auto dot = to_dot(cg);
    CHECK(dot.rfind("digraph", 0) == 0);
    for (int g : cg.gaps()) CHECK(dot.find("g" + std::to_string(g) + " [") != std::string::npos);
    CHECK(dot.find("fillcolor=orange") != std::string::npos);
    CHECK(dot.find("fillcolor=palegreen") != std::string::npos);
    std::size_t arrows = 0;
    for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 1)) ++arrows;
    CHECK(arrows == cg.arcs().size());
}
