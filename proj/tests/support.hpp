#ifndef TREEFLIP_TESTS_SUPPORT_HPP_
#define TREEFLIP_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "treeflip/conflict_graph.hpp"
#include "treeflip/geometry.hpp"
#include "treeflip/io.hpp"
#include "treeflip/random.hpp"

namespace support {

using namespace treeflip;

inline ConvexInstance fixture(const std::string& name) {
    return read_instance(std::string(TREEFLIP_FIXTURE_DIR) + "/" + name);
}

// Reference predicates written straight from the definitions, sharing no code with the library.

inline bool ref_cross(int a, int b, int c, int d) {
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

inline bool ref_covers_gap(const Edge& e, int k) { return e.a <= k && k + 1 <= e.b; }

inline bool ref_covers(const Edge& e, const Edge& f) { return e.a <= f.a && f.b <= e.b; }

/// n-1 distinct non-crossing edges connecting all n points.
inline bool ref_is_tree(const std::vector<Edge>& edges, int n) {
    if (static_cast<int>(edges.size()) != n - 1) return false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].a < 1 || edges[i].b > n || edges[i].a == edges[i].b) return false;
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (edges[i] == edges[j] || ref_cross(edges[i].a, edges[i].b, edges[j].a, edges[j].b)) return false;
        }
    }
    std::vector<int> uf(static_cast<std::size_t>(n) + 1);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (const auto& e : edges) uf[find(e.a)] = find(e.b);
    for (int v = 2; v <= n; ++v) {
        if (find(v) != find(1)) return false;
    }
    return true;
}

/// Every shortest edge covering each gap.
inline std::vector<std::vector<Edge>> ref_shortest_coverers(const std::vector<Edge>& edges, int n) {
    std::vector<std::vector<Edge>> out(n > 0 ? static_cast<std::size_t>(n - 1) : 0);
    for (int k = 1; k < n; ++k) {
        int best = n + 1;
        for (const auto& e : edges) {
            if (ref_covers_gap(e, k)) best = std::min(best, e.b - e.a);
        }
        for (const auto& e : edges) {
            if (ref_covers_gap(e, k) && e.b - e.a == best) out[k - 1].push_back(e);
        }
    }
    return out;
}

/// True when every gap has one shortest coverer and no edge is picked twice or left out.
inline bool ref_rho_bijective(const std::vector<Edge>& edges, int n) {
    const auto cov = ref_shortest_coverers(edges, n);
    std::vector<Edge> image;
    for (const auto& c : cov) {
        if (c.size() != 1) return false;
        image.push_back(c[0]);
    }
    std::sort(image.begin(), image.end());
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    return image == sorted;
}

/// All non-crossing spanning trees by filtering every (n-1)-subset of chords.
inline std::vector<std::vector<Edge>> ref_all_trees(int n) {
    std::vector<Edge> chords;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) chords.emplace_back(a, b);
    }
    std::vector<std::vector<Edge>> out;
    std::vector<Edge> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(pick.size()) == n - 1) {
            if (ref_is_tree(pick, n)) out.push_back(pick);
            return;
        }
        for (std::size_t i = from; i < chords.size(); ++i) {
            pick.push_back(chords[i]);
            rec(i + 1);
            pick.pop_back();
        }
    };
    if (n == 1) out.push_back({});
    else rec(0);
    return out;
}

/// Largest vertex subset of cg without a directed cycle, by enumerating all subsets.
inline std::size_t ref_max_acyclic(const ConflictGraph& cg) {
    const std::size_t m = cg.size();
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size <= best) continue;
        // Repeatedly remove sources; acyclic iff everything goes.
        std::uint64_t left = mask;
        bool progress = true;
        while (left && progress) {
            progress = false;
            for (std::size_t v = 0; v < m; ++v) {
                if (!(left >> v & 1)) continue;
                bool source = true;
                for (std::size_t u = 0; u < m; ++u) {
                    if ((left >> u & 1) && cg.has_arc(u, v)) source = false;
                }
                if (source) {
                    left &= ~(std::uint64_t{1} << v);
                    progress = true;
                }
            }
        }
        if (!left) best = size;
    }
    return best;
}

inline Tree random_tree(int n, std::mt19937_64& rng, std::size_t steps) { return random_walk_tree(n, steps, rng); }

inline ConvexInstance random_instance(int n, std::mt19937_64& rng, std::size_t steps, Labeling labeling) {
    const Tree t = random_tree(n, rng, steps);
    const Tree tp = random_tree(n, rng, steps);
    return ConvexInstance::make(n, t.edges(), tp.edges(), labeling);
}

} // namespace support

#endif
