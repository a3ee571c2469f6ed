#ifndef TREEFLIP_FLIPS_HPP_
#define TREEFLIP_FLIPS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeflip/conflict_graph.hpp"
#include "treeflip/gaps.hpp"
#include "treeflip/geometry.hpp"

namespace treeflip {

struct Flip {
    Edge remove;
    Edge add;

    friend bool operator==(const Flip&, const Flip&) = default;
};

enum class FlipDefect { same_edge, out_of_range, remove_missing, add_present, crossing, cycle };

const char* to_string(FlipDefect d);

struct FlipCheck {
    std::optional<FlipDefect> defect;
    Edge witness;  ///< the crossed edge for FlipDefect::crossing

    explicit operator bool() const { return !defect; }
    std::string describe(const Flip& f) const;
};

/// Checks whether t - remove + add is a non-crossing spanning tree.
FlipCheck check_flip(const Tree& t, const Flip& f);

/// Throws InvalidFlip naming the broken invariant.
Tree apply_flip(const Tree& t, const Flip& f);

enum class DirectFlipBlock { none, already_present, not_covering, crossing, condition_a, condition_b };

const char* to_string(DirectFlipBlock b);

struct DirectFlipCheck {
    DirectFlipBlock reason = DirectFlipBlock::none;
    Edge witness;  ///< the tree edge responsible for the block

    explicit operator bool() const { return reason == DirectFlipBlock::none; }
};

/// Sufficient condition for replacing e_j by new_edge while every other edge keeps its gap.
/// Blocks when new_edge crosses an edge of t - e_j, or some e_i in t - e_j satisfies
/// (a) new_edge covers e_i and e_i covers g_j, or (b) e_i covers new_edge and new_edge covers g_i.
DirectFlipCheck can_direct_flip(const Tree& t, const GapAssignment& ga, int j, const Edge& new_edge);

struct PartLength {
    std::string name;
    std::size_t length = 0;

    friend bool operator==(const PartLength&, const PartLength&) = default;
};

struct SequenceMeta {
    std::string constructor;
    std::size_t zero_flips = 0;  ///< gaps resolved without a flip
    std::size_t one_flips = 0;
    std::size_t two_flips = 0;
    std::vector<PartLength> parts;
    std::size_t cells = 0;
    std::size_t fallbacks = 0;
    std::size_t acyclic_size = 0;   ///< |Y| summed over constructed cells
    std::size_t conflict_size = 0;  ///< |V(H)| summed over constructed cells

    void add_part(const std::string& name, std::size_t length);
    std::size_t part(const std::string& name) const;
};

struct FlipSequence {
    Tree start;
    std::vector<Flip> steps;
    SequenceMeta meta;

    std::size_t length() const { return steps.size(); }
};

struct VerifyReport {
    bool ok = true;
    std::size_t length = 0;
    std::optional<std::size_t> failed_step;  ///< 0-based step index
    std::string message;

    explicit operator bool() const { return ok; }
};

/// Replays every step. With forbid_common_flips, removing an edge of start ∩ target fails.
VerifyReport verify_sequence(const FlipSequence& seq, const Tree& target, bool forbid_common_flips);

/// Flips e_g to the hull edge (g, g+1) for each listed gap with a non-tiny e_g, in ascending gap order.
std::vector<Flip> boundary_preprocess(const GapAssignment& ga, std::span<const int> gaps);

/// Boundary round trip for the remaining pairs and the unmatched near-near pairs, direct
/// flips for an acyclic subset. Works on the given labels as the linear order when the
/// instance is linear; a cyclic instance is first cut at a hull edge free in both trees.
FlipSequence build_sequence_general(const ConvexInstance& inst, std::size_t budget = default_exact_budget);

/// Exactly d single exchanges when T ∪ T' holds every hull edge and no chord is common.
FlipSequence all_boundary_sequence(const ConvexInstance& inst);

/// Splits at common chords and solves each cell; never flips a common edge.
/// Length ≤ 5/3·d + 2/3·b − 4/3, with b the number of common hull edges.
FlipSequence build_sequence_careful(const ConvexInstance& inst, std::size_t budget = default_exact_budget);

/// Requires T to be a separated caterpillar. Length ≤ 3/2·d; never flips a common edge.
FlipSequence build_sequence_caterpillar(const ConvexInstance& inst);

bool within_general_bound(std::size_t length, int n, std::size_t conflict_size, std::size_t acyclic_size);
bool within_careful_bound(std::size_t length, std::size_t d, std::size_t b);
bool within_caterpillar_bound(std::size_t length, std::size_t d);

} // namespace treeflip

#endif
