#ifndef TREEFLIP_GEOMETRY_HPP_
#define TREEFLIP_GEOMETRY_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace treeflip {

/// A chord between two of the n convex points, stored with a < b.
struct Edge {
    int a = 0;
    int b = 0;

    constexpr Edge() = default;
    constexpr Edge(int u, int v) : a(u < v ? u : v), b(u < v ? v : u) {}

    constexpr int length() const { return b - a; }

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

/// Strict interleaving. Shared endpoints and nested pairs never cross.
constexpr bool edges_cross(const Edge& e, const Edge& f) {
    return (e.a < f.a && f.a < e.b && e.b < f.b) || (f.a < e.a && e.a < f.b && f.b < e.b);
}

/// Gap k lies between points k and k+1.
constexpr bool edge_covers_gap(const Edge& e, int k) { return e.a <= k && k < e.b; }

/// e covers f when both endpoints of f lie within [e.a, e.b]; every edge covers itself.
constexpr bool edge_covers_edge(const Edge& e, const Edge& f) { return e.a <= f.a && f.b <= e.b; }

/// Hull edge of the convex n-gon: consecutive points, or the closing pair (1, n).
constexpr bool is_hull_edge(const Edge& e, int n) {
    return e.length() == 1 || (n >= 3 && e.a == 1 && e.b == n);
}

/// Non-crossing spanning tree on points 1..n. Instances only come out of validation,
/// so every Tree satisfies its invariants.
class Tree {
public:
    Tree() = default;

    /// Validates and throws InputError describing the first defect.
    static Tree from_edges(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }
    bool contains(const Edge& e) const;

    friend bool operator==(const Tree&, const Tree&) = default;

private:
    friend struct TreeBuilder;
    Tree(int n, std::vector<Edge> sorted_edges) : n_(n), edges_(std::move(sorted_edges)) {}

    int n_ = 0;
    std::vector<Edge> edges_;
};

struct TreeDefect {
    enum class Kind { out_of_range, duplicate_edge, wrong_cardinality, crossing_pair, disconnected };

    Kind kind;
    Edge first;
    Edge second;

    std::string describe() const;
};

struct TreeValidation {
    std::optional<Tree> tree;
    std::optional<TreeDefect> defect;

    explicit operator bool() const { return tree.has_value(); }
};

TreeValidation validate_tree(std::span<const Edge> candidate, int n);

/// Consistency check used by the validator: for a crossing-free edge set,
/// returns true iff the shortest-coverer map from gaps to edges is a bijection.
bool rho_is_bijection(std::span<const Edge> edges, int n);

std::vector<Edge> boundary_edges(const Tree& t, bool cyclic);

/// |T - T'|.
std::size_t difference_size(const Tree& t, const Tree& tp);

/// Number of hull edges (cyclic) present in both trees.
std::size_t common_boundary_count(const Tree& t, const Tree& tp);

enum class Labeling { cyclic, linear };

/// Two trees on the same n convex points plus the recorded linear cut.
///
/// `cut_after` names the original point that became p_n; the original hull edge
/// (cut_after, cut_after + 1 mod n) is where the circle was opened. The identity
/// labeling has cut_after == n.
struct ConvexInstance {
    int n = 0;
    Tree t;
    Tree tp;
    Labeling labeling = Labeling::cyclic;
    int cut_after = 0;

    static ConvexInstance make(int n, std::vector<Edge> t, std::vector<Edge> tp,
                               Labeling labeling = Labeling::cyclic);

    /// Original label of the current point j.
    int original_label(int j) const;
};

/// Relabels the points of a tree: point j becomes map[j - 1].
Tree relabel(const Tree& t, std::span<const int> map, int new_n);

/// Smallest i such that neither tree contains hull edge (i, i+1 mod n).
/// Returns none when T and T' together contain every hull edge.
std::optional<int> choose_cut(const Tree& t, const Tree& tp);

/// Opens the circle after current point `cut_after`; that point becomes p_n.
ConvexInstance apply_cut(const ConvexInstance& inst, int cut_after);

/// Label map for apply_cut: current point j goes to result[j - 1].
std::vector<int> cut_relabel_map(int n, int cut_after);

struct Cell {
    ConvexInstance instance;
    /// Local point j corresponds to parent point to_parent[j - 1].
    std::vector<int> to_parent;
};

/// Splits recursively along every common chord. Each cell is a cyclic instance on a
/// consecutive run of points in which the splitting chords are hull edges.
std::vector<Cell> split_at_common_chords(const ConvexInstance& inst);

} // namespace treeflip

#endif
