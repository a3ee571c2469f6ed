#include "treeflip/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

#include "treeflip/error.hpp"

namespace treeflip {

namespace {

TreeMask bit(int c) { return TreeMask{1} << c; }

} // namespace

TreeMask FlipGraphIndex::encode(const Tree& t) const {
    if (t.n() != n_) throw PreconditionError("tree has " + std::to_string(t.n()) + " points, index has " + std::to_string(n_));
    TreeMask m = 0;
    for (const auto& e : t.edges()) m |= bit(chord_id_[(e.a - 1) * n_ + (e.b - 1)]);
    return m;
}

Tree FlipGraphIndex::decode(TreeMask m) const {
    std::vector<Edge> edges;
    for (; m; m &= m - 1) edges.push_back(chords_[std::countr_zero(m)]);
    return Tree::from_edges(n_, std::move(edges));
}

std::size_t FlipGraphIndex::index_of(TreeMask m) const {
    auto it = std::lower_bound(trees_.begin(), trees_.end(), m);
    if (it == trees_.end() || *it != m) throw PreconditionError("mask is not a non-crossing spanning tree");
    return static_cast<std::size_t>(it - trees_.begin());
}

TreeMask FlipGraphIndex::canonical(TreeMask m) const {
    TreeMask best = m;
    for (const auto& perm : symmetry_) {
        TreeMask image = 0;
        for (TreeMask r = m; r; r &= r - 1) image |= bit(perm[std::countr_zero(r)]);
        best = std::min(best, image);
    }
    return best;
}

std::vector<TreeMask> generate_neighbors(const FlipGraphIndex& idx, TreeMask m) {
    const auto& chords = idx.chords();
    const int num_chords = static_cast<int>(chords.size());
    std::vector<TreeMask> out;
    std::array<std::uint16_t, max_oracle_points + 1> adj{};
    for (TreeMask r = m; r; r &= r - 1) {
        const Edge& e = chords[std::countr_zero(r)];
        adj[e.a] |= static_cast<std::uint16_t>(1u << e.b);
        adj[e.b] |= static_cast<std::uint16_t>(1u << e.a);
    }
    for (TreeMask r = m; r; r &= r - 1) {
        const int c = std::countr_zero(r);
        const Edge& e = chords[c];
        const TreeMask rest = m & ~bit(c);
        // Component of e.a after removing e.
        std::uint16_t side = static_cast<std::uint16_t>(1u << e.a);
        std::uint16_t frontier = side;
        while (frontier) {
            std::uint16_t next = 0;
            for (unsigned f = frontier; f; f &= f - 1) {
                const int u = std::countr_zero(f);
                std::uint16_t nb = adj[u];
                if (u == e.a) nb = static_cast<std::uint16_t>(nb & ~(1u << e.b));
                if (u == e.b) nb = static_cast<std::uint16_t>(nb & ~(1u << e.a));
                next |= nb;
            }
            frontier = static_cast<std::uint16_t>(next & ~side);
            side |= frontier;
        }
        for (int k = 0; k < num_chords; ++k) {
            if (k == c || (m & bit(k))) continue;
            const Edge& f = chords[k];
            const bool sa = side & (1u << f.a);
            const bool sb = side & (1u << f.b);
            if (sa == sb || (idx.cross_mask(k) & rest)) continue;
            out.push_back(rest | bit(k));
        }
    }
    return out;
}

FlipGraphIndex enumerate_trees(int n, int limit) {
    if (n < 1) throw InputError("point count must be positive");
    const int cap = std::min(limit, max_oracle_points);
    if (n > cap)
        throw BudgetExceeded("oracle limited to n <= " + std::to_string(cap) + ", requested " + std::to_string(n));

    FlipGraphIndex idx;
    idx.n_ = n;
    idx.chord_id_.assign(static_cast<std::size_t>(n * n), -1);
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            idx.chord_id_[(a - 1) * n + (b - 1)] = static_cast<int>(idx.chords_.size());
            idx.chords_.emplace_back(a, b);
        }
    }
    const int num_chords = static_cast<int>(idx.chords_.size());
    idx.cross_.assign(idx.chords_.size(), 0);
    for (int i = 0; i < num_chords; ++i) {
        for (int j = 0; j < num_chords; ++j) {
            if (edges_cross(idx.chords_[i], idx.chords_[j])) idx.cross_[i] |= bit(j);
        }
    }

    // Depth-first over chords in table order, keeping the partial edge set a non-crossing forest.
    const int need = n - 1;
    std::array<int, max_oracle_points + 1> comp{};
    for (int p = 1; p <= n; ++p) comp[p] = p;
    auto dfs = [&](auto&& self, int c, TreeMask mask, int count, std::array<int, max_oracle_points + 1> labels) -> void {
        if (count == need) {
            idx.trees_.push_back(mask);
            return;
        }
        if (count + (num_chords - c) < need) return;
        const Edge& e = idx.chords_[c];
        if (!(idx.cross_[c] & mask) && labels[e.a] != labels[e.b]) {
            auto joined = labels;
            const int from = labels[e.b];
            for (int p = 1; p <= n; ++p) {
                if (joined[p] == from) joined[p] = labels[e.a];
            }
            self(self, c + 1, mask | bit(c), count + 1, joined);
        }
        self(self, c + 1, mask, count, labels);
    };
    dfs(dfs, 0, 0, 0, comp);
    std::sort(idx.trees_.begin(), idx.trees_.end());

    if (n >= 3) {
        for (int k = 0; k < n; ++k) {
            for (int reflect = 0; reflect < 2; ++reflect) {
                if (k == 0 && reflect == 0) continue;
                std::vector<int> perm(idx.chords_.size());
                for (int c = 0; c < num_chords; ++c) {
                    auto map = [&](int p) {
                        int q = (p - 1 + k) % n + 1;
                        return reflect ? n + 1 - q : q;
                    };
                    const Edge img(map(idx.chords_[c].a), map(idx.chords_[c].b));
                    perm[c] = idx.chord_id_[(img.a - 1) * n + (img.b - 1)];
                }
                idx.symmetry_.push_back(std::move(perm));
            }
        }
    }

    idx.adj_.resize(idx.trees_.size());
    for (std::size_t i = 0; i < idx.trees_.size(); ++i) {
        for (TreeMask nb : generate_neighbors(idx, idx.trees_[i]))
            idx.adj_[i].push_back(static_cast<std::uint32_t>(idx.index_of(nb)));
        std::sort(idx.adj_[i].begin(), idx.adj_[i].end());
    }
    return idx;
}

int bfs_distance(const FlipGraphIndex& idx, const Tree& t, const Tree& tp) {
    const std::size_t s = idx.index_of(t);
    const std::size_t g = idx.index_of(tp);
    if (s == g) return 0;
    std::vector<int> dist_s(idx.size(), -1), dist_g(idx.size(), -1);
    dist_s[s] = 0;
    dist_g[g] = 0;
    std::vector<std::uint32_t> front_s{static_cast<std::uint32_t>(s)}, front_g{static_cast<std::uint32_t>(g)};
    while (!front_s.empty() && !front_g.empty()) {
        const bool from_s = front_s.size() <= front_g.size();
        auto& front = from_s ? front_s : front_g;
        auto& mine = from_s ? dist_s : dist_g;
        auto& other = from_s ? dist_g : dist_s;
        int best = std::numeric_limits<int>::max();
        std::vector<std::uint32_t> next;
        for (auto u : front) {
            for (auto w : idx.neighbors(u)) {
                if (other[w] >= 0) best = std::min(best, mine[u] + 1 + other[w]);
                if (mine[w] < 0) {
                    mine[w] = mine[u] + 1;
                    next.push_back(w);
                }
            }
        }
        if (best != std::numeric_limits<int>::max()) return best;
        front = std::move(next);
    }
    throw InvariantViolation("flip graph is disconnected");
}

FlipSequence shortest_path(const FlipGraphIndex& idx, const Tree& t, const Tree& tp) {
    const std::size_t s = idx.index_of(t);
    const std::size_t g = idx.index_of(tp);
    std::vector<std::int64_t> parent(idx.size(), -1);
    parent[s] = static_cast<std::int64_t>(s);
    std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(s)};
    for (std::size_t head = 0; head < queue.size() && parent[g] < 0; ++head) {
        for (auto w : idx.neighbors(queue[head])) {
            if (parent[w] < 0) {
                parent[w] = queue[head];
                queue.push_back(w);
            }
        }
    }
    if (parent[g] < 0) throw InvariantViolation("flip graph is disconnected");
    std::vector<std::size_t> path{g};
    while (path.back() != s) path.push_back(static_cast<std::size_t>(parent[path.back()]));
    std::reverse(path.begin(), path.end());

    FlipSequence seq;
    seq.start = t;
    seq.meta.constructor = "oracle";
    for (std::size_t k = 1; k < path.size(); ++k) {
        const TreeMask from = idx.trees()[path[k - 1]];
        const TreeMask to = idx.trees()[path[k]];
        seq.steps.push_back(Flip{idx.chords()[std::countr_zero(from & ~to)], idx.chords()[std::countr_zero(to & ~from)]});
    }
    return seq;
}

std::vector<int> all_eccentricities(const FlipGraphIndex& idx) {
    const std::size_t size = idx.size();
    std::vector<std::size_t> reps;
    std::vector<std::size_t> rep_of(size);
    for (std::size_t i = 0; i < size; ++i) {
        const TreeMask c = idx.canonical(idx.trees()[i]);
        if (c == idx.trees()[i]) reps.push_back(i);
        rep_of[i] = idx.index_of(c);
    }
    std::vector<int> rep_ecc(size, -1);
    std::vector<std::uint64_t> seen(size), frontier(size), next(size);
    for (std::size_t base = 0; base < reps.size(); base += 64) {
        const std::size_t batch = std::min<std::size_t>(64, reps.size() - base);
        std::fill(seen.begin(), seen.end(), 0);
        std::fill(frontier.begin(), frontier.end(), 0);
        for (std::size_t k = 0; k < batch; ++k) {
            seen[reps[base + k]] |= std::uint64_t{1} << k;
            frontier[reps[base + k]] |= std::uint64_t{1} << k;
        }
        std::vector<int> ecc(batch, 0);
        for (int level = 1;; ++level) {
            std::uint64_t any = 0;
            for (std::size_t v = 0; v < size; ++v) {
                std::uint64_t acc = 0;
                for (auto u : idx.neighbors(v)) acc |= frontier[u];
                next[v] = acc & ~seen[v];
                any |= next[v];
            }
            if (!any) break;
            for (std::uint64_t r = any; r; r &= r - 1) ecc[std::countr_zero(r)] = level;
            for (std::size_t v = 0; v < size; ++v) seen[v] |= next[v];
            frontier.swap(next);
        }
        for (std::size_t k = 0; k < batch; ++k) rep_ecc[reps[base + k]] = ecc[k];
    }
    std::vector<int> out(size);
    for (std::size_t i = 0; i < size; ++i) out[i] = rep_ecc[rep_of[i]];
    return out;
}

std::vector<int> distances_from(const FlipGraphIndex& idx, std::size_t source) {
    std::vector<int> dist(idx.size(), -1);
    dist[source] = 0;
    std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(source)};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto u = queue[head];
        for (auto w : idx.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

int eccentricity(const FlipGraphIndex& idx, const Tree& t) {
    const auto dist = distances_from(idx, idx.index_of(t));
    return *std::max_element(dist.begin(), dist.end());
}

int radius(const FlipGraphIndex& idx) {
    const auto ecc = all_eccentricities(idx);
    return *std::min_element(ecc.begin(), ecc.end());
}

int diameter(const FlipGraphIndex& idx) {
    const auto ecc = all_eccentricities(idx);
    return *std::max_element(ecc.begin(), ecc.end());
}

Tree star(int n, int center) {
    if (center < 1 || center > n) throw InputError("star center out of range");
    std::vector<Edge> edges;
    for (int j = 1; j <= n; ++j) {
        if (j != center) edges.emplace_back(center, j);
    }
    return Tree::from_edges(n, std::move(edges));
}

int star_distance_check(const FlipGraphIndex& idx, const Tree& t, int v) {
    const Tree s = star(idx.n(), v);
    const int dist = bfs_distance(idx, t, s);
    const auto d = static_cast<int>(difference_size(t, s));
    if (dist != d)
        throw InvariantViolation("distance to star at " + std::to_string(v) + " is " + std::to_string(dist) +
                                 " but the trees differ in " + std::to_string(d) + " edges");
    return dist;
}

} // namespace treeflip
