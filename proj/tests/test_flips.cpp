#include <doctest.h>

#include "support.hpp"
#include "treeflip/error.hpp"
#include "treeflip/flips.hpp"
#include "treeflip/oracle.hpp"
#include "treeflip/sweep.hpp"

using namespace treeflip;

namespace {

Tree tree(int n, std::vector<Edge> edges) { return Tree::from_edges(n, std::move(edges)); }

Tree path(int n) {
    std::vector<Edge> edges;
    for (int j = 1; j < n; ++j) edges.emplace_back(j, j + 1);
    return tree(n, edges);
}

// Reference flip validity: swap the edge and re-check the tree definition.
bool ref_valid_flip(const Tree& t, const Flip& f) {
    if (!t.contains(f.remove) || t.contains(f.add)) return false;
    std::vector<Edge> edges;
    for (const auto& e : t.edges()) {
        if (!(e == f.remove)) edges.push_back(e);
    }
    edges.push_back(f.add);
    return support::ref_is_tree(edges, t.n());
}

} // namespace

TEST_CASE("apply_flip on small trees") {
    const Tree s = star(4, 1);
    CHECK(apply_flip(s, Flip{{1, 3}, {2, 3}}) == tree(4, {{1, 2}, {2, 3}, {1, 4}}));
    CHECK_THROWS_AS(apply_flip(s, Flip{{1, 2}, {1, 3}}), InvalidFlip);
    CHECK(check_flip(s, Flip{{1, 2}, {1, 3}}).defect == FlipDefect::add_present);
    CHECK(apply_flip(path(4), Flip{{2, 3}, {1, 4}}) == tree(4, {{1, 2}, {1, 4}, {3, 4}}));

    CHECK(check_flip(s, Flip{{2, 3}, {2, 4}}).defect == FlipDefect::remove_missing);
    CHECK(check_flip(s, Flip{{1, 2}, {1, 2}}).defect == FlipDefect::same_edge);
    CHECK(check_flip(s, Flip{{1, 2}, {2, 7}}).defect == FlipDefect::out_of_range);
    const auto crossing = check_flip(s, Flip{{1, 2}, {2, 4}});
    CHECK(crossing.defect == FlipDefect::crossing);
    CHECK(crossing.witness == Edge(1, 3));
    CHECK(check_flip(s, Flip{{1, 2}, {3, 4}}).defect == FlipDefect::cycle);
    CHECK_FALSE(crossing.describe(Flip{{1, 2}, {2, 4}}).empty());
}

TEST_CASE("check_flip agrees with re-validation on every candidate flip") {
    for (int n = 3; n <= 7; ++n) {
        const auto idx = enumerate_trees(n);
        for (auto m : idx.trees()) {
            const Tree t = idx.decode(m);
            std::size_t valid = 0;
            for (const auto& rem : t.edges()) {
                for (const auto& add : idx.chords()) {
                    if (rem == add) continue;
                    const Flip f{rem, add};
                    const bool ref = ref_valid_flip(t, f);
                    CHECK(static_cast<bool>(check_flip(t, f)) == ref);
                    valid += ref;
                }
            }
            CHECK(valid == count_valid_flips(t));
            CHECK(valid == idx.neighbors(idx.index_of(t)).size());
        }
    }
}

TEST_CASE("direct flips to the hull edge of the gap always pass") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 25)(rng);
        const Tree t = support::random_tree(n, rng, 2 * n);
        const auto ga = compute_rho(t);
        for (int g = 1; g < n; ++g) {
            const Edge hull(g, g + 1);
            if (t.contains(hull)) {
                CHECK(can_direct_flip(t, ga, g, hull).reason == DirectFlipBlock::already_present);
                continue;
            }
            CHECK(static_cast<bool>(can_direct_flip(t, ga, g, hull)));
        }
    }
}

TEST_CASE("a nested edge blocks the direct flip by condition (a)") {
    const auto inst = support::fixture("direct_flip_blocked.json");
    const auto ga = compute_rho(inst.t);
    REQUIRE(ga.edge(3) == Edge(3, 4));
    const auto check = can_direct_flip(inst.t, ga, 3, Edge(2, 5));
    CHECK(check.reason == DirectFlipBlock::condition_a);
    CHECK(check.witness == Edge(3, 5));
    // Swapping in (2,5) for (3,4) indeed breaks the tree.
    CHECK_FALSE(ref_valid_flip(inst.t, Flip{{3, 4}, {2, 5}}));
    CHECK(can_direct_flip(inst.t, ga, 3, Edge(1, 3)).reason == DirectFlipBlock::not_covering);
}

TEST_CASE("passing direct flips keep every other gap assignment") {
    std::mt19937_64 rng(67);
    std::size_t passed = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 20)(rng);
        const Tree t = support::random_tree(n, rng, 2 * n);
        const auto ga = compute_rho(t);
        for (int g = 1; g < n; ++g) {
            for (int a = 1; a <= g; ++a) {
                for (int b = g + 1; b <= n; ++b) {
                    const Edge e(a, b);
                    if (!static_cast<bool>(can_direct_flip(t, ga, g, e))) continue;
                    ++passed;
                    const Flip f{ga.edge(g), e};
                    REQUIRE(ref_valid_flip(t, f));
                    const auto after = compute_rho(apply_flip(t, f));
                    for (int h = 1; h < n; ++h) {
                        if (h == g) {
                            CHECK(after.edge(h) == e);
                        } else {
                            CHECK(after.edge(h) == ga.edge(h));
                            CHECK(after.edge_class(h) == ga.edge_class(h));
                        }
                    }
                }
            }
        }
    }
    CHECK(passed > 1000);
}

TEST_CASE("verify_sequence") {
    FlipSequence empty;
    empty.start = star(5, 1);
    auto r = verify_sequence(empty, star(5, 1), true);
    CHECK(r.ok);
    CHECK(r.length == 0);
    CHECK_FALSE(verify_sequence(empty, star(5, 2), false).ok);

    FlipSequence bad;
    bad.start = star(4, 1);
    bad.steps = {Flip{{1, 3}, {2, 3}}, Flip{{1, 2}, {2, 4}}, Flip{{1, 4}, {1, 3}}};
    r = verify_sequence(bad, star(4, 1), false);
    CHECK_FALSE(r.ok);
    CHECK(r.failed_step == 2);

    FlipSequence common;
    common.start = star(4, 1);
    common.steps = {Flip{{1, 2}, {2, 3}}, Flip{{2, 3}, {1, 2}}};
    CHECK(verify_sequence(common, star(4, 1), false).ok);
    r = verify_sequence(common, star(4, 1), true);
    CHECK_FALSE(r.ok);
    CHECK(r.failed_step == 0);
}

TEST_CASE("boundary preprocessing") {
    const auto ga = compute_rho(star(4, 1));
    CHECK(boundary_preprocess(ga, std::vector<int>{}).empty());
    const auto p = compute_pairing(ga, compute_rho(star(4, 4)));
    // g_1 holds the tiny (1,2); only g_3's (1,4) moves.
    const auto flips = boundary_preprocess(ga, p.rest_gaps);
    REQUIRE(flips.size() == 1);
    CHECK(flips[0] == Flip{{1, 4}, {3, 4}});
    CHECK(boundary_preprocess(compute_rho(path(6)), std::vector<int>{1, 2, 3, 4, 5}).empty());
}

TEST_CASE("constructors on identical trees return nothing") {
    std::mt19937_64 rng(71);
    for (int n : {1, 2, 3, 6, 11}) {
        const Tree t = support::random_tree(n, rng, 3 * static_cast<std::size_t>(n));
        auto inst = ConvexInstance::make(n, t.edges(), t.edges());
        CHECK(build_sequence_general(inst).length() == 0);
        CHECK(build_sequence_careful(inst).length() == 0);
        CHECK(all_boundary_sequence(inst).length() == 0);
        if (n >= 3 && is_separated_caterpillar(t)) CHECK(build_sequence_caterpillar(inst).length() == 0);
    }
}

TEST_CASE("all-boundary sequences") {
    const auto tri = ConvexInstance::make(3, {{1, 2}, {2, 3}}, {{1, 2}, {1, 3}});
    const auto seq = all_boundary_sequence(tri);
    REQUIRE(seq.length() == 1);
    CHECK(seq.steps[0] == Flip{{2, 3}, {1, 3}});

    const auto five = ConvexInstance::make(5, path(5).edges(), star(5, 1).edges());
    const auto s5 = all_boundary_sequence(five);
    CHECK(s5.length() == difference_size(five.t, five.tp));
    CHECK(verify_sequence(s5, five.tp, true).ok);

    CHECK_THROWS_AS(all_boundary_sequence(ConvexInstance::make(4, star(4, 1).edges(), star(4, 4).edges())),
                    PreconditionError);
}

TEST_CASE("all-boundary sequences have exactly d steps whenever they apply") {
    for (int n = 3; n <= 7; ++n) {
        const auto idx = enumerate_trees(n);
        for (auto mi : idx.trees()) {
            for (auto mj : idx.trees()) {
                const auto inst = ConvexInstance::make(n, idx.decode(mi).edges(), idx.decode(mj).edges());
                if (choose_cut(inst.t, inst.tp)) continue;
                bool chord = false;
                for (const auto& e : inst.t.edges()) chord = chord || (!is_hull_edge(e, n) && inst.tp.contains(e));
                if (chord) continue;
                const auto seq = all_boundary_sequence(inst);
                CHECK(seq.length() == difference_size(inst.t, inst.tp));
                CHECK(verify_sequence(seq, inst.tp, true).ok);
            }
        }
    }
}

TEST_CASE("constructors on the four-point diameter pair") {
    const auto inst = support::fixture("four_point_diameter_pair.json");
    for (const auto& seq : {build_sequence_general(inst), build_sequence_careful(inst)}) {
        CHECK(verify_sequence(seq, inst.tp, false).ok);
        CHECK(seq.length() >= 3);
    }
    CHECK(bfs_distance(enumerate_trees(4), inst.t, inst.tp) == 3);
}

TEST_CASE("careful sequences have length d when d is at most one") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 30)(rng);
        const Tree t = support::random_tree(n, rng, 2 * n);
        Tree tp = t;
        if (trial % 2) tp = apply_flip(t, random_valid_flip(t, rng));
        const auto inst = ConvexInstance::make(n, t.edges(), tp.edges());
        const auto seq = build_sequence_careful(inst);
        CHECK(seq.length() == difference_size(t, tp));
        CHECK(verify_sequence(seq, tp, true).ok);
    }
}

TEST_CASE("flip accounting matches the sequence length") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 40)(rng);
        const auto inst = support::random_instance(n, rng, 2 * n, Labeling::cyclic);
        for (const auto& seq : {build_sequence_general(inst), build_sequence_careful(inst)}) {
            CHECK(verify_sequence(seq, inst.tp, seq.meta.constructor != "general").ok);
            CHECK(seq.meta.one_flips + 2 * seq.meta.two_flips == seq.length());
            CHECK(seq.meta.zero_flips + seq.meta.one_flips + seq.meta.two_flips == static_cast<std::size_t>(n - 1));
            std::size_t parts = 0;
            for (const auto& p : seq.meta.parts) parts += p.length;
            CHECK(parts == seq.length());
        }
    }
}

TEST_CASE("constructor bounds on random instances beyond the oracle range") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = std::uniform_int_distribution<int>(10, 60)(rng);
        const auto inst = support::random_instance(n, rng, 2 * n, Labeling::cyclic);
        const auto d = difference_size(inst.t, inst.tp);
        const auto g = build_sequence_general(inst);
        CHECK(verify_sequence(g, inst.tp, false).ok);
        CHECK(within_general_bound(g.length(), n, g.meta.conflict_size, g.meta.acyclic_size));
        const auto c = build_sequence_careful(inst);
        CHECK(verify_sequence(c, inst.tp, true).ok);
        CHECK(within_careful_bound(c.length(), d, common_boundary_count(inst.t, inst.tp)));
        CHECK(c.length() >= d);
        if (is_separated_caterpillar(inst.t)) {
            const auto k = build_sequence_caterpillar(inst);
            CHECK(verify_sequence(k, inst.tp, true).ok);
            CHECK(within_caterpillar_bound(k.length(), d));
            CHECK(k.meta.fallbacks == 0);
        }
    }
}

TEST_CASE("caterpillar constructor precondition") {
    const auto inst = ConvexInstance::make(6, path(6).edges(), star(6, 1).edges());
    CHECK_THROWS_AS(build_sequence_caterpillar(inst), PreconditionError);
}

TEST_CASE("caterpillar sequences on random caterpillar pairs") {
    std::mt19937_64 rng(89);
    std::size_t checked = 0;
    for (int trial = 0; trial < 2000 && checked < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(4, 40)(rng);
        const Tree t = support::random_tree(n, rng, 2 * n);
        if (!is_separated_caterpillar(t)) continue;
        const Tree tp = support::random_tree(n, rng, 2 * n);
        const auto inst = ConvexInstance::make(n, t.edges(), tp.edges());
        const auto seq = build_sequence_caterpillar(inst);
        CHECK(verify_sequence(seq, tp, true).ok);
        CHECK(within_caterpillar_bound(seq.length(), difference_size(t, tp)));
        CHECK(seq.meta.fallbacks == 0);
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("bound predicates") {
    CHECK(within_careful_bound(0, 0, 5));
    CHECK_FALSE(within_careful_bound(1, 0, 5));
    // 3·len ≤ 5d + 2b − 4
    CHECK(within_careful_bound(4, 2, 3));
    CHECK_FALSE(within_careful_bound(5, 2, 3));
    CHECK(within_caterpillar_bound(3, 2));
    CHECK_FALSE(within_caterpillar_bound(4, 2));
    // Empty H: 2·len ≤ 3(n−1)
    CHECK(within_general_bound(6, 5, 0, 0));
    CHECK_FALSE(within_general_bound(7, 5, 0, 0));
    // |V(H)| = 3, ac = 1: 2·3·len ≤ max(9, 12 − 2)·(n−1)
    CHECK(within_general_bound(6, 5, 3, 1));
    CHECK_FALSE(within_general_bound(7, 5, 3, 1));
}

TEST_CASE("sweeps at four and five points") {
    for (auto mode : {SweepMode::general, SweepMode::careful, SweepMode::caterpillar}) {
        for (int n : {4, 5}) {
            SweepConfig c;
            c.n = n;
            c.mode = mode;
            const auto r = run_sweep(c);
            CHECK(r.ok());
            CHECK(r.violations == 0);
            if (mode != SweepMode::caterpillar) CHECK(r.pairs == r.trees * r.trees);
        }
    }
    SweepConfig c;
    c.n = 4;
    const auto r = run_sweep(c);
    CHECK(r.pairs == 144);
    CHECK(r.trees == 12);
}

TEST_CASE("sweeps are reproducible") {
    SweepConfig c;
    c.n = 6;
    c.mode = SweepMode::careful;
    c.samples = 500;
    c.seed = 9;
    const auto a = run_sweep(c);
    const auto b = run_sweep(c);
    CHECK(a.pairs == 500);
    CHECK(a.oracle_optimal == b.oracle_optimal);
    CHECK(a.max_length == b.max_length);
    CHECK(a.max_excess == b.max_excess);
    CHECK(parse_sweep_mode("caterpillar") == SweepMode::caterpillar);
    CHECK_THROWS_AS(parse_sweep_mode("fast"), InputError);
}
