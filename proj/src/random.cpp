#include "treeflip/random.hpp"

#include "treeflip/error.hpp"
#include "treeflip/oracle.hpp"

namespace treeflip {

namespace {

// Per-tree tables for counting the flips that add a given chord. A chord crossing no
// tree edge can replace any edge on the tree path between its endpoints; a chord crossing
// exactly one edge can replace that edge if it lies on the path; otherwise none.
class FlipTable {
public:
    explicit FlipTable(const Tree& t) : t_(t), n_(t.n()) {
        const std::size_t w = static_cast<std::size_t>(n_) + 1;
        count_.assign(w * w, 0);
        ids_.assign(w * w, 0);
        for (std::size_t i = 0; i < t.edges().size(); ++i) {
            const Edge& e = t.edges()[i];
            count_[at(e.a, e.b)] += 1;
            ids_[at(e.a, e.b)] += static_cast<long long>(i) + 1;
        }
        for (int a = 1; a <= n_; ++a) {
            for (int b = 1; b <= n_; ++b) {
                count_[at(a, b)] += count_[at(a - 1, b)] + count_[at(a, b - 1)] - count_[at(a - 1, b - 1)];
                ids_[at(a, b)] += ids_[at(a - 1, b)] + ids_[at(a, b - 1)] - ids_[at(a - 1, b - 1)];
            }
        }
        adj_.assign(w, {});
        for (const auto& e : t.edges()) {
            adj_[e.a].push_back(e.b);
            adj_[e.b].push_back(e.a);
        }
        dist_.assign(w * w, -1);
        for (int s = 1; s <= n_; ++s) {
            std::vector<int> queue{s};
            dist_[at(s, s)] = 0;
            for (std::size_t h = 0; h < queue.size(); ++h) {
                const int u = queue[h];
                for (int v : adj_[u]) {
                    if (dist_[at(s, v)] < 0) {
                        dist_[at(s, v)] = dist_[at(s, u)] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
    }

    std::uint64_t weight(const Edge& c) const {
        if (t_.contains(c)) return 0;
        long long sum = 0;
        const long long k = crossers(c, sum);
        if (k == 0) return static_cast<std::uint64_t>(dist(c.a, c.b));
        if (k == 1 && on_path(t_.edges()[sum - 1], c)) return 1;
        return 0;
    }

    // The r-th flip adding chord c, 0 ≤ r < weight(c).
    Flip pick(const Edge& c, std::uint64_t r) const {
        long long sum = 0;
        if (crossers(c, sum) == 1) return Flip{t_.edges()[sum - 1], c};
        std::vector<int> parent(static_cast<std::size_t>(n_) + 1, 0);
        std::vector<int> queue{c.a};
        parent[c.a] = c.a;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (int v : adj_[queue[h]]) {
                if (!parent[v]) {
                    parent[v] = queue[h];
                    queue.push_back(v);
                }
            }
        }
        std::vector<Edge> path;
        for (int v = c.b; v != c.a; v = parent[v]) path.emplace_back(v, parent[v]);
        return Flip{path[r], c};
    }

private:
    std::size_t at(int a, int b) const { return static_cast<std::size_t>(a) * (static_cast<std::size_t>(n_) + 1) + b; }

    long long rect(int a1, int a2, int b1, int b2, const std::vector<long long>& p) const {
        if (a1 > a2 || b1 > b2) return 0;
        return p[at(a2, b2)] - p[at(a1 - 1, b2)] - p[at(a2, b1 - 1)] + p[at(a1 - 1, b1 - 1)];
    }

    long long crossers(const Edge& c, long long& id_sum) const {
        id_sum = rect(c.a + 1, c.b - 1, c.b + 1, n_, ids_) + rect(1, c.a - 1, c.a + 1, c.b - 1, ids_);
        return rect(c.a + 1, c.b - 1, c.b + 1, n_, count_) + rect(1, c.a - 1, c.a + 1, c.b - 1, count_);
    }

    int dist(int u, int v) const { return dist_[at(u, v)]; }

    bool on_path(const Edge& f, const Edge& c) const {
        const int d = dist(c.a, c.b);
        return dist(c.a, f.a) + 1 + dist(f.b, c.b) == d || dist(c.a, f.b) + 1 + dist(f.a, c.b) == d;
    }

    const Tree& t_;
    int n_;
    std::vector<long long> count_;
    std::vector<long long> ids_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> dist_;
};

} // namespace

std::uint64_t count_valid_flips(const Tree& t) {
    FlipTable table(t);
    std::uint64_t total = 0;
    for (int a = 1; a <= t.n(); ++a) {
        for (int b = a + 1; b <= t.n(); ++b) total += table.weight(Edge(a, b));
    }
    return total;
}

std::vector<Flip> valid_flips(const Tree& t) {
    FlipTable table(t);
    std::vector<Flip> out;
    for (int a = 1; a <= t.n(); ++a) {
        for (int b = a + 1; b <= t.n(); ++b) {
            const Edge c(a, b);
            const auto w = table.weight(c);
            for (std::uint64_t r = 0; r < w; ++r) out.push_back(table.pick(c, r));
        }
    }
    return out;
}

Flip random_valid_flip(const Tree& t, std::mt19937_64& rng) {
    if (t.n() < 3) throw PreconditionError("no flips exist below three points");
    FlipTable table(t);
    std::vector<std::pair<Edge, std::uint64_t>> weights;
    std::uint64_t total = 0;
    for (int a = 1; a <= t.n(); ++a) {
        for (int b = a + 1; b <= t.n(); ++b) {
            if (const auto w = table.weight(Edge(a, b))) {
                weights.emplace_back(Edge(a, b), w);
                total += w;
            }
        }
    }
    std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(0, total - 1)(rng);
    for (const auto& [c, w] : weights) {
        if (r < w) return table.pick(c, r);
        r -= w;
    }
    throw InvariantViolation("flip sampling ran past the total weight");
}

Tree random_walk_tree(int n, std::size_t steps, std::mt19937_64& rng) {
    Tree t = star(n, 1);
    if (n < 3) return t;
    for (std::size_t s = 0; s < steps; ++s) t = apply_flip(t, random_valid_flip(t, rng));
    return t;
}

ConvexInstance generate_random_instance(int n, std::uint64_t seed, std::size_t steps) {
    if (n < 3) throw PreconditionError("random instances need n >= 3");
    std::mt19937_64 rng(seed);
    Tree t = random_walk_tree(n, steps, rng);
    Tree tp = random_walk_tree(n, steps, rng);
    ConvexInstance inst;
    inst.n = n;
    inst.t = std::move(t);
    inst.tp = std::move(tp);
    inst.labeling = Labeling::cyclic;
    inst.cut_after = n;
    return inst;
}

} // namespace treeflip
