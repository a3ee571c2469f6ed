#ifndef TREEFLIP_CONFLICT_GRAPH_HPP_
#define TREEFLIP_CONFLICT_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treeflip/gaps.hpp"

namespace treeflip {

/// Near-near gaps split by whether the paired edges share an endpoint and which is longer.
enum class GapSide { above, below, crossing };

const char* to_string(GapSide s);

/// Arc type bits: type 1 (e_i crosses e'_j), type 2 (e'_j covers e_i, e_i covers g_j),
/// type 3 (e_i covers e'_j, e'_j covers g_i).
enum ArcType : std::uint8_t { arc_type1 = 1, arc_type2 = 2, arc_type3 = 4 };

struct Arc {
    int from = 0;  ///< gap index
    int to = 0;    ///< gap index
    std::uint8_t types = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed conflict graph on the near-near gaps. An arc g_i -> g_j says the direct
/// flip of pair j cannot happen while e_i is present.
class ConflictGraph {
public:
    std::size_t size() const { return gaps_.size(); }
    bool empty() const { return gaps_.empty(); }

    const std::vector<int>& gaps() const { return gaps_; }
    int gap(std::size_t v) const { return gaps_[v]; }
    /// Vertex index of a gap, or -1.
    int index_of(int gap) const;

    const Edge& edge(std::size_t v) const { return e_[v]; }
    const Edge& partner(std::size_t v) const { return ep_[v]; }
    GapSide side(std::size_t v) const { return side_[v]; }

    /// Typed arcs, one entry per ordered pair, sorted by (from, to).
    const std::vector<Arc>& arcs() const { return arcs_; }

    /// Collapsed adjacency over vertex indices.
    const std::vector<int>& out(std::size_t v) const { return out_[v]; }
    const std::vector<int>& in(std::size_t v) const { return in_[v]; }
    bool has_arc(std::size_t u, std::size_t v) const;

    std::vector<int> side_members(GapSide s) const;

private:
    friend ConflictGraph build_conflict_graph_unchecked(const Pairing&);

    std::vector<int> gaps_;
    std::vector<Edge> e_;
    std::vector<Edge> ep_;
    std::vector<GapSide> side_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

/// Arc types from g_i to g_j computed straight from the definition.
std::uint8_t conflict_types(const Edge& ei, int gi, const Edge& epj, int gj);

/// Builds H(T,T') and asserts that swapping the trees reverses every arc.
ConflictGraph build_conflict_graph(const Pairing& pairing);

ConflictGraph build_conflict_graph_unchecked(const Pairing& pairing);

/// Swaps e and e' in every pair.
Pairing swap_pairing(const Pairing& p);

enum class AcyclicMethod { exact, abc_heuristic, caterpillar_ab, abc_above, abc_below, abc_crossing };

const char* to_string(AcyclicMethod m);

struct AcyclicCertificate {
    std::vector<int> subset;  ///< gaps, ascending
    std::vector<int> order;   ///< the same gaps in topological order of H[subset]
    AcyclicMethod method = AcyclicMethod::exact;

    std::size_t size() const { return subset.size(); }
};

/// True iff `order` lists distinct vertices of cg (by gap) and every arc among them points forward.
bool is_topological_order(const ConflictGraph& cg, std::span<const int> order);

/// Kahn's algorithm on H[gaps] taking the smallest gap first; empty if H[gaps] has a cycle.
std::vector<int> topological_order(const ConflictGraph& cg, std::span<const int> gaps);

struct AbcCertificates {
    AcyclicCertificate above;
    AcyclicCertificate below;
    AcyclicCertificate crossing;

    const AcyclicCertificate& largest() const;
};

/// Orders each side class by its peeling argument: above by increasing |e_i|,
/// below by decreasing |e'_i|, crossing by a sweep over the paired semicircle regions.
AbcCertificates abc_partition_orders(const ConflictGraph& cg);

inline constexpr std::size_t default_exact_budget = 24;

/// Largest acyclic vertex subset by branch and bound. Throws BudgetExceeded above the budget.
AcyclicCertificate max_acyclic_exact(const ConflictGraph& cg, std::size_t budget = default_exact_budget);

/// Exact within the budget, else the largest side class.
AcyclicCertificate best_acyclic(const ConflictGraph& cg, std::size_t budget = default_exact_budget);

/// The two-class split for a separated caterpillar T: for e_i in the left chain the
/// gap is in A iff e_i covers e'_i; for the right chain the roles flip.
std::pair<AcyclicCertificate, AcyclicCertificate> caterpillar_ab_partition(const ConflictGraph& cg,
                                                                           const CaterpillarChains& chains);

/// Graphviz rendering: vertices colored by side class, arcs labeled by their type set.
std::string to_dot(const ConflictGraph& cg);

} // namespace treeflip

#endif
