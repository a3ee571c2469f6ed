#ifndef TREEFLIP_ORACLE_HPP_
#define TREEFLIP_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treeflip/flips.hpp"
#include "treeflip/geometry.hpp"

namespace treeflip {

inline constexpr int default_oracle_limit = 9;
/// Chord bitmasks are 64 bits wide.
inline constexpr int max_oracle_points = 11;

using TreeMask = std::uint64_t;

/// Every non-crossing spanning tree on n convex points, encoded as bitmasks over a
/// lexicographic chord table and stored in ascending mask order, with explicit adjacency.
class FlipGraphIndex {
public:
    int n() const { return n_; }
    std::size_t size() const { return trees_.size(); }

    const std::vector<Edge>& chords() const { return chords_; }
    const std::vector<TreeMask>& trees() const { return trees_; }
    /// Chords crossing a given chord.
    TreeMask cross_mask(int chord) const { return cross_[chord]; }

    TreeMask encode(const Tree& t) const;
    Tree decode(TreeMask m) const;

    /// Position of a mask in trees(); throws PreconditionError if absent.
    std::size_t index_of(TreeMask m) const;
    std::size_t index_of(const Tree& t) const { return index_of(encode(t)); }

    const std::vector<std::uint32_t>& neighbors(std::size_t i) const { return adj_[i]; }

    /// Canonical representative of a tree's orbit under rotations and reflections.
    TreeMask canonical(TreeMask m) const;

private:
    friend FlipGraphIndex enumerate_trees(int n, int limit);

    int n_ = 0;
    std::vector<Edge> chords_;
    std::vector<int> chord_id_;               ///< (a-1)*n + (b-1) -> chord index
    std::vector<TreeMask> cross_;             ///< chords crossing each chord
    std::vector<TreeMask> trees_;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<std::vector<int>> symmetry_;  ///< chord permutations of the dihedral group
};

/// Throws BudgetExceeded when n exceeds the limit (at most max_oracle_points).
FlipGraphIndex enumerate_trees(int n, int limit = default_oracle_limit);

/// Flip neighbors of a tree mask, generated from scratch (drop one chord, add one that
/// reconnects the two components without crossing).
std::vector<TreeMask> generate_neighbors(const FlipGraphIndex& idx, TreeMask m);

/// Bidirectional BFS.
int bfs_distance(const FlipGraphIndex& idx, const Tree& t, const Tree& tp);

/// One shortest flip sequence from t to tp.
FlipSequence shortest_path(const FlipGraphIndex& idx, const Tree& t, const Tree& tp);

/// BFS distances from trees()[source] to every tree.
std::vector<int> distances_from(const FlipGraphIndex& idx, std::size_t source);

int eccentricity(const FlipGraphIndex& idx, const Tree& t);

/// Eccentricity of every tree, indexed like trees().
std::vector<int> all_eccentricities(const FlipGraphIndex& idx);

int radius(const FlipGraphIndex& idx);
int diameter(const FlipGraphIndex& idx);

/// Distance from t to the star at v. Throws InvariantViolation if it differs from |t - star|.
int star_distance_check(const FlipGraphIndex& idx, const Tree& t, int v);

Tree star(int n, int center);

} // namespace treeflip

#endif
