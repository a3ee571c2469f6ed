// Searches for the fixture instances shipped in tests/fixtures and prints them as JSON.
#include <algorithm>
#include <cmath>
#include <deque>
#include <iostream>
#include <limits>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "treeflip/conflict_graph.hpp"
#include "treeflip/error.hpp"
#include "treeflip/gaps.hpp"
#include "treeflip/io.hpp"
#include "treeflip/oracle.hpp"
#include "treeflip/random.hpp"

using namespace treeflip;

namespace {

struct Score {
    int structure = 0;  ///< zero iff the bidirected arcs form a Hamiltonian cycle on `target` vertices
    int one_way = 0;    ///< arcs without a reverse arc

    int total() const { return 3 * structure + one_way; }
};

Score cycle_score(const Tree& t, const Tree& tp, std::size_t target) {
    const auto cg = build_conflict_graph_unchecked(compute_pairing(compute_rho(t), compute_rho(tp)));
    const int m = static_cast<int>(cg.size());
    int structure = 4 * std::abs(m - static_cast<int>(target));
    int one_way = 0;
    std::vector<std::vector<int>> nb(cg.size());
    for (std::size_t u = 0; u < cg.size(); ++u) {
        for (int v : cg.out(u)) {
            if (cg.has_arc(static_cast<std::size_t>(v), u)) nb[u].push_back(v);
            else one_way += 1;
        }
    }
    for (const auto& list : nb) structure += std::abs(static_cast<int>(list.size()) - 2);
    if (m > 0) {
        std::vector<char> seen(cg.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v : nb[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    ++reached;
                    stack.push_back(v);
                }
            }
        }
        structure += m - reached;
    }
    return Score{structure, one_way};
}

// Tabu search over single flips in either tree, restarting from a random kick when stuck.
json search_cycle(int n, std::size_t target, std::uint64_t seed, std::size_t iterations) {
    std::mt19937_64 rng(seed);
    Tree t = random_walk_tree(n, 4 * n, rng);
    Tree tp = random_walk_tree(n, 4 * n, rng);
    Score current = cycle_score(t, tp, target);
    int score = current.total();
    int best = score;
    std::size_t stuck = 0;
    std::deque<std::pair<int, Edge>> tabu;
    std::optional<std::pair<Tree, Tree>> found;
    int found_one_way = std::numeric_limits<int>::max();
    constexpr std::size_t tenure = 10;
    for (std::size_t it = 0; it < iterations; ++it) {
        if (current.structure == 0 && current.one_way < found_one_way) {
            std::cerr << "step " << it << ": cycle with " << current.one_way << " one-way arcs\n";
            found = {t, tp};
            found_one_way = current.one_way;
            if (found_one_way == 0) break;
        }
        int chosen_score = std::numeric_limits<int>::max();
        Score chosen_parts;
        std::vector<std::pair<int, Flip>> chosen;
        for (int side = 0; side < 2; ++side) {
            const Tree& cur = side ? tp : t;
            for (const auto& f : valid_flips(cur)) {
                const Tree next = apply_flip(cur, f);
                const Score parts = side ? cycle_score(t, next, target) : cycle_score(next, tp, target);
                const int s = parts.total();
                const bool is_tabu = std::find(tabu.begin(), tabu.end(), std::pair<int, Edge>{side, f.add}) != tabu.end();
                if (is_tabu && s >= best) continue;
                if (s < chosen_score) {
                    chosen_score = s;
                    chosen_parts = parts;
                    chosen.clear();
                }
                if (s == chosen_score) chosen.emplace_back(side, f);
            }
        }
        if (chosen.empty()) continue;
        const auto [side, f] = chosen[std::uniform_int_distribution<std::size_t>(0, chosen.size() - 1)(rng)];
        (side ? tp : t) = apply_flip(side ? tp : t, f);
        score = chosen_score;
        current = chosen_parts;
        tabu.emplace_back(side, f.remove);
        if (tabu.size() > tenure) tabu.pop_front();
        if (score < best) {
            best = score;
            stuck = 0;
        } else if (++stuck > 200) {
            for (int k = 0; k < 4; ++k) {
                Tree& cur = (rng() & 1) ? tp : t;
                cur = apply_flip(cur, random_valid_flip(cur, rng));
            }
            current = cycle_score(t, tp, target);
            score = current.total();
            best = score;
            stuck = 0;
        }
    }
    if (!found) throw treeflip::Error("no instance found within the step limit");
    return instance_to_json(ConvexInstance::make(n, found->first.edges(), found->second.edges(), Labeling::linear));
}

json search_distance(int n, int wanted, bool caterpillars) {
    const auto idx = enumerate_trees(n);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const Tree t = idx.decode(idx.trees()[i]);
        if (caterpillars && !is_separated_caterpillar(t)) continue;
        const auto dist = distances_from(idx, i);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const Tree tp = idx.decode(idx.trees()[j]);
            if (dist[j] != wanted || (caterpillars && !is_separated_caterpillar(tp))) continue;
            return instance_to_json(ConvexInstance::make(n, t.edges(), tp.edges()));
        }
    }
    throw treeflip::Error("no pair at the requested distance");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixture search"};
    std::string kind = "cycle";
    int n = 13;
    std::size_t target = 9;
    std::uint64_t seed = 1;
    std::size_t iterations = 20000;
    int distance = 7;
    app.add_option("kind", kind, "cycle | caterpillar-distance | distance")->required();
    app.add_option("--n", n);
    app.add_option("--target", target, "cycle length");
    app.add_option("--seed", seed);
    app.add_option("--iterations", iterations, "annealing steps per restart");
    app.add_option("--distance", distance);
    CLI11_PARSE(app, argc, argv);
    if (kind == "cycle") std::cout << search_cycle(n, target, seed, iterations).dump() << "\n";
    else if (kind == "caterpillar-distance") std::cout << search_distance(n, distance, true).dump() << "\n";
    else if (kind == "distance") std::cout << search_distance(n, distance, false).dump() << "\n";
    else return 2;
}
