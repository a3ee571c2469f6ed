#ifndef TREEFLIP_GAPS_HPP_
#define TREEFLIP_GAPS_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "treeflip/geometry.hpp"

namespace treeflip {

/// How the edge assigned to gap g_i = (p_i, p_{i+1}) meets the gap's endpoints:
/// both (tiny), exactly one (near), none (far).
enum class EdgeClass { tiny, near, far };

const char* to_string(EdgeClass c);

EdgeClass classify_edge(const Edge& e, int gap);

/// The shortest-coverer bijection from gaps 1..n-1 to tree edges under the
/// current linear labeling, with each edge's class.
class GapAssignment {
public:
    GapAssignment() = default;
    GapAssignment(int n, std::vector<Edge> rho);

    int n() const { return n_; }
    int num_gaps() const { return n_ - 1; }

    const Edge& edge(int gap) const { return rho_[gap - 1]; }
    EdgeClass edge_class(int gap) const { return classes_[gap - 1]; }

    /// Gap assigned to a tree edge; 0 if the edge is not in the tree.
    int gap_of(const Edge& e) const;

    const std::vector<Edge>& rho() const { return rho_; }

private:
    int n_ = 0;
    std::vector<Edge> rho_;
    std::vector<EdgeClass> classes_;
    std::vector<std::pair<Edge, int>> inverse_;
};

/// Throws InvariantViolation if two shortest coverers tie or the map is not bijective.
GapAssignment compute_rho(const Tree& t);

enum class PairCell { equal, near_near, rest };

const char* to_string(PairCell c);

/// Per-gap pairs (e_i, e'_i) and the partition of gaps into equal, near-near and
/// remaining pairs.
struct Pairing {
    int n = 0;
    std::vector<std::pair<Edge, Edge>> pairs;
    std::vector<PairCell> cells;
    std::vector<int> equal_gaps;
    std::vector<int> near_gaps;
    std::vector<int> rest_gaps;

    const std::pair<Edge, Edge>& at(int gap) const { return pairs[gap - 1]; }
    PairCell cell(int gap) const { return cells[gap - 1]; }
};

Pairing compute_pairing(const GapAssignment& ga_t, const GapAssignment& ga_tp);

/// Hasse diagram of the cover order on a tree's edges.
struct CoverForest {
    std::vector<Edge> nodes;   ///< tree edges, sorted
    std::vector<int> parent;   ///< index into nodes, -1 for roots
    std::vector<std::vector<int>> children;
    std::vector<int> roots;
    std::size_t tiny_count = 0;
    std::size_t far_count = 0;

    std::size_t root_count() const { return roots.size(); }
};

/// Also checks that every far edge has at least two children.
CoverForest cover_forest(const Tree& t);

/// A tree with at most two hull edges, counted cyclically.
bool is_separated_caterpillar(const Tree& t);

/// The two cover chains of a separated caterpillar under a labeling whose cut
/// avoids the tree's hull edges.
struct CaterpillarChains {
    Edge left_tiny;
    Edge right_tiny;
    std::vector<Edge> left;   ///< edges covering left_tiny, innermost first
    std::vector<Edge> right;  ///< edges covering right_tiny, innermost first

    bool in_left(const Edge& e) const;
    bool in_right(const Edge& e) const;
};

/// Throws PreconditionError unless t is a separated caterpillar and (1, n) is not in t.
CaterpillarChains caterpillar_chains(const Tree& t);

} // namespace treeflip

#endif
