#ifndef TREEFLIP_BLOWUP_HPP_
#define TREEFLIP_BLOWUP_HPP_

#include <boost/rational.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "treeflip/conflict_graph.hpp"
#include "treeflip/flips.hpp"
#include "treeflip/gaps.hpp"
#include "treeflip/geometry.hpp"

namespace treeflip {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);

/// k new points in every near-near gap, each joined to the far endpoint of the gap's
/// edge in T (fan Λ(e)) or in T' (fan Λ(e')). The base labels are read as the linear order.
struct Blowup {
    ConvexInstance base;
    Pairing pairing;
    int k = 0;
    ConvexInstance blown;                    ///< linear labeling 1..n_k
    std::vector<int> base_to_blown;          ///< base point j -> blown label
    std::vector<int> gaps;                   ///< near-near gaps of the base, ascending
    std::vector<std::vector<int>> inserted;  ///< V(e) per gap, left to right
    std::vector<std::vector<Edge>> fan_t;    ///< Λ(e) per gap
    std::vector<std::vector<Edge>> fan_tp;   ///< Λ(e') per gap

    int n_k() const { return blown.n; }
};

/// Also asserts that along every conflict arc g_i -> g_j each edge of Λ(e_i) crosses each edge of Λ(e'_j).
Blowup build_blowup(const ConvexInstance& base, int k);

struct PairStatus {
    int gap = 0;
    std::size_t gone = 0;  ///< first step index whose tree has no edge of Λ(e)
    bool direct = false;   ///< some tree up to index gone holds an edge of Λ(e')
};

struct SequenceAnalysis {
    std::vector<PairStatus> pairs;
    std::size_t direct_count = 0;
    std::size_t indirect_count = 0;
    std::vector<int> direct_order;  ///< direct gaps sorted by gone, ties by gap
    long long length_bound = 0;     ///< (k - 2n)(indirect + |P_N|)
};

/// Requires a verified sequence from the blown T to the blown T'. Asserts that conflict
/// arcs between direct pairs respect gone order and that direct_order is topological in H.
SequenceAnalysis analyze_sequence(const Blowup& b, const FlipSequence& seq);

/// Adds the missing hull edges (j, j+1) in ascending j, each time dropping the first
/// non-path edge on the cycle it closes, then runs the same walk backwards from tp.
FlipSequence route_through_hull_path(const Tree& t, const Tree& tp);

struct KBound {
    long long k = 0;
    long long bound = 0;       ///< (k - 2n)(2|V(H)| - ac(H))
    long long difference = 0;  ///< d_k = d + k|V(H)|, the trivial lower bound
    long long shown() const { return bound > difference ? bound : difference; }
};

struct LowerBoundCertificate {
    int n = 0;
    std::size_t v_h = 0;
    std::size_t ac_h = 0;
    Rational coefficient;  ///< 2 - ac(H)/|V(H)|
    std::vector<KBound> bounds;
    AcyclicCertificate witness;
};

/// Arithmetic part: requires v_h ≥ 1. Values of k below 2n are rejected.
LowerBoundCertificate lower_bound_certificate(int n, std::size_t v_h, std::size_t ac_h, std::size_t d,
                                              std::span<const long long> ks);

/// Computes H and an exact ac(H) for the base; throws BudgetExceeded beyond the exact budget.
LowerBoundCertificate lower_bound_certificate(const ConvexInstance& base, std::span<const long long> ks,
                                              std::size_t budget = default_exact_budget);

/// Smallest integer k with (k - 2n)(2 vH - acH) > 3/2 n + 3/2 k vH - 5.
/// Throws Unsatisfiable when 2 vH - acH ≤ 3/2 vH.
long long concrete_threshold_check(long long n, long long v_h, long long ac_h);

} // namespace treeflip

#endif
