#include "treeflip/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "treeflip/error.hpp"

namespace treeflip {

struct TreeBuilder {
    static Tree make(int n, std::vector<Edge> sorted) { return Tree(n, std::move(sorted)); }
};

namespace {

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n) + 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        parent_[y] = x;
        return true;
    }

private:
    std::vector<int> parent_;
};

} // namespace

std::string to_string(const Edge& e) {
    return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}

Tree Tree::from_edges(int n, std::vector<Edge> edges) {
    auto check = validate_tree(edges, n);
    if (!check) throw InputError("invalid tree on " + std::to_string(n) + " points: " + check.defect->describe());
    return std::move(*check.tree);
}

bool Tree::contains(const Edge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::string TreeDefect::describe() const {
    switch (kind) {
    case Kind::out_of_range:
        return "edge " + to_string(first) + " has an endpoint out of range";
    case Kind::duplicate_edge:
        return "edge " + to_string(first) + " appears twice";
    case Kind::wrong_cardinality:
        return "wrong number of edges";
    case Kind::crossing_pair:
        return "edges " + to_string(first) + " and " + to_string(second) + " cross";
    case Kind::disconnected:
        return "edge " + to_string(first) + " closes a cycle; the edge set does not span";
    }
    return "unknown defect";
}

TreeValidation validate_tree(std::span<const Edge> candidate, int n) {
    if (n < 1) throw InputError("point count must be positive");
    TreeValidation out;
    auto fail = [&](TreeDefect::Kind kind, Edge first = {}, Edge second = {}) {
        out.defect = TreeDefect{kind, first, second};
        return out;
    };

    std::vector<Edge> edges(candidate.begin(), candidate.end());
    for (const auto& e : edges) {
        if (e.a < 1 || e.b > n || e.a == e.b) return fail(TreeDefect::Kind::out_of_range, e);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
        return fail(TreeDefect::Kind::duplicate_edge, *dup);
    if (static_cast<int>(edges.size()) != n - 1) return fail(TreeDefect::Kind::wrong_cardinality);

    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (edges_cross(edges[i], edges[j])) return fail(TreeDefect::Kind::crossing_pair, edges[i], edges[j]);
        }
    }

    DisjointSets sets(n);
    for (const auto& e : edges) {
        if (!sets.unite(e.a, e.b)) return fail(TreeDefect::Kind::disconnected, e);
    }

    if (!rho_is_bijection(edges, n))
        throw InvariantViolation("gap-edge map is not a bijection on a valid tree");

    out.tree = TreeBuilder::make(n, std::move(edges));
    return out;
}

bool rho_is_bijection(std::span<const Edge> edges, int n) {
    if (static_cast<int>(edges.size()) != n - 1) return false;
    std::vector<int> hits(edges.size(), 0);
    for (int k = 1; k < n; ++k) {
        int best = -1;
        bool tie = false;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!edge_covers_gap(edges[i], k)) continue;
            if (best < 0 || edges[i].length() < edges[best].length()) {
                best = static_cast<int>(i);
                tie = false;
            } else if (edges[i].length() == edges[best].length()) {
                tie = true;
            }
        }
        if (best < 0 || tie) return false;
        if (++hits[best] > 1) return false;
    }
    return true;
}

std::vector<Edge> boundary_edges(const Tree& t, bool cyclic) {
    std::vector<Edge> out;
    for (const auto& e : t.edges()) {
        if (e.length() == 1 || (cyclic && is_hull_edge(e, t.n()))) out.push_back(e);
    }
    return out;
}

std::size_t difference_size(const Tree& t, const Tree& tp) {
    std::size_t d = 0;
    for (const auto& e : t.edges()) d += tp.contains(e) ? 0 : 1;
    return d;
}

std::size_t common_boundary_count(const Tree& t, const Tree& tp) {
    std::size_t b = 0;
    for (const auto& e : t.edges()) b += (is_hull_edge(e, t.n()) && tp.contains(e)) ? 1 : 0;
    return b;
}

ConvexInstance ConvexInstance::make(int n, std::vector<Edge> t, std::vector<Edge> tp, Labeling labeling) {
    ConvexInstance inst;
    inst.n = n;
    inst.t = Tree::from_edges(n, std::move(t));
    inst.tp = Tree::from_edges(n, std::move(tp));
    inst.labeling = labeling;
    inst.cut_after = n;
    return inst;
}

int ConvexInstance::original_label(int j) const {
    return (j - 1 + cut_after) % n + 1;
}

Tree relabel(const Tree& t, std::span<const int> map, int new_n) {
    std::vector<Edge> edges;
    edges.reserve(t.size());
    for (const auto& e : t.edges()) edges.emplace_back(map[e.a - 1], map[e.b - 1]);
    return Tree::from_edges(new_n, std::move(edges));
}

std::optional<int> choose_cut(const Tree& t, const Tree& tp) {
    const int n = t.n();
    if (n < 3) return std::nullopt;
    for (int i = 1; i <= n; ++i) {
        Edge hull(i, i % n + 1);
        if (!t.contains(hull) && !tp.contains(hull)) return i;
    }
    return std::nullopt;
}

std::vector<int> cut_relabel_map(int n, int cut_after) {
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) map[j - 1] = ((j - cut_after - 1) % n + n) % n + 1;
    return map;
}

ConvexInstance apply_cut(const ConvexInstance& inst, int cut_after) {
    if (cut_after < 1 || cut_after > inst.n) throw PreconditionError("cut position out of range");
    auto map = cut_relabel_map(inst.n, cut_after);
    ConvexInstance out;
    out.n = inst.n;
    out.t = relabel(inst.t, map, inst.n);
    out.tp = relabel(inst.tp, map, inst.n);
    out.labeling = Labeling::linear;
    out.cut_after = inst.original_label(cut_after);
    return out;
}

namespace {

bool is_chord(const Edge& e, int n) { return !is_hull_edge(e, n); }

// Restricts both trees to a consecutive run of parent points.
Cell make_cell(const ConvexInstance& inst, const std::vector<int>& run) {
    std::vector<int> local(static_cast<std::size_t>(inst.n) + 1, 0);
    for (std::size_t i = 0; i < run.size(); ++i) local[run[i]] = static_cast<int>(i) + 1;
    auto restrict_tree = [&](const Tree& t) {
        std::vector<Edge> edges;
        for (const auto& e : t.edges()) {
            if (local[e.a] && local[e.b]) edges.emplace_back(local[e.a], local[e.b]);
        }
        return edges;
    };
    const int m = static_cast<int>(run.size());
    Cell cell;
    cell.instance = ConvexInstance::make(m, restrict_tree(inst.t), restrict_tree(inst.tp), Labeling::cyclic);
    cell.to_parent = run;
    return cell;
}

void split_into(const ConvexInstance& inst, const std::vector<int>& to_root, std::vector<Cell>& out) {
    const int n = inst.n;
    for (const auto& e : inst.t.edges()) {
        if (!is_chord(e, n) || !inst.tp.contains(e)) continue;
        std::vector<int> inner, outer;
        for (int j = e.a; j <= e.b; ++j) inner.push_back(j);
        for (int j = e.b; j <= n; ++j) outer.push_back(j);
        for (int j = 1; j <= e.a; ++j) outer.push_back(j);
        for (const auto* run : {&inner, &outer}) {
            Cell part = make_cell(inst, *run);
            std::vector<int> map;
            map.reserve(run->size());
            for (int p : *run) map.push_back(to_root[p - 1]);
            split_into(part.instance, map, out);
        }
        return;
    }
    Cell leaf;
    leaf.instance = inst;
    leaf.to_parent = to_root;
    out.push_back(std::move(leaf));
}

} // namespace

std::vector<Cell> split_at_common_chords(const ConvexInstance& inst) {
    std::vector<int> identity(static_cast<std::size_t>(inst.n));
    std::iota(identity.begin(), identity.end(), 1);
    std::vector<Cell> out;
    ConvexInstance cyclic = inst;
    cyclic.labeling = Labeling::cyclic;
    split_into(cyclic, identity, out);
    return out;
}

} // namespace treeflip
