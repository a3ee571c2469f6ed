#include "treeflip/flips.hpp"

#include <algorithm>
#include <functional>

#include "treeflip/error.hpp"

namespace treeflip {

const char* to_string(FlipDefect d) {
    switch (d) {
    case FlipDefect::same_edge: return "same-edge";
    case FlipDefect::out_of_range: return "out-of-range";
    case FlipDefect::remove_missing: return "remove-missing";
    case FlipDefect::add_present: return "add-present";
    case FlipDefect::crossing: return "crossing";
    case FlipDefect::cycle: return "cycle";
    }
    return "?";
}

const char* to_string(DirectFlipBlock b) {
    switch (b) {
    case DirectFlipBlock::none: return "none";
    case DirectFlipBlock::already_present: return "already-present";
    case DirectFlipBlock::not_covering: return "not-covering";
    case DirectFlipBlock::crossing: return "crossing";
    case DirectFlipBlock::condition_a: return "condition-a";
    case DirectFlipBlock::condition_b: return "condition-b";
    }
    return "?";
}

std::string FlipCheck::describe(const Flip& f) const {
    const std::string step = to_string(f.remove) + " -> " + to_string(f.add);
    if (!defect) return step + ": ok";
    switch (*defect) {
    case FlipDefect::same_edge: return step + ": removed and added edge coincide";
    case FlipDefect::out_of_range: return step + ": added edge out of range";
    case FlipDefect::remove_missing: return step + ": removed edge is not in the tree";
    case FlipDefect::add_present: return step + ": added edge is already in the tree";
    case FlipDefect::crossing: return step + ": added edge crosses " + to_string(witness);
    case FlipDefect::cycle: return step + ": added edge closes a cycle and leaves the tree disconnected";
    }
    return step;
}

FlipCheck check_flip(const Tree& t, const Flip& f) {
    FlipCheck out;
    const int n = t.n();
    if (f.remove == f.add) {
        out.defect = FlipDefect::same_edge;
        return out;
    }
    if (f.add.a < 1 || f.add.b > n || f.add.a == f.add.b) {
        out.defect = FlipDefect::out_of_range;
        return out;
    }
    if (!t.contains(f.remove)) {
        out.defect = FlipDefect::remove_missing;
        return out;
    }
    if (t.contains(f.add)) {
        out.defect = FlipDefect::add_present;
        return out;
    }
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& e : t.edges()) {
        if (e == f.remove) continue;
        if (edges_cross(e, f.add)) {
            out.defect = FlipDefect::crossing;
            out.witness = e;
            return out;
        }
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> stack{f.add.a};
    seen[f.add.a] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    if (seen[f.add.b]) out.defect = FlipDefect::cycle;
    return out;
}

Tree apply_flip(const Tree& t, const Flip& f) {
    const auto check = check_flip(t, f);
    if (!check) throw InvalidFlip("invalid flip " + check.describe(f));
    std::vector<Edge> edges;
    edges.reserve(t.size());
    for (const auto& e : t.edges()) {
        if (e != f.remove) edges.push_back(e);
    }
    edges.push_back(f.add);
    return Tree::from_edges(t.n(), std::move(edges));
}

DirectFlipCheck can_direct_flip(const Tree& t, const GapAssignment& ga, int j, const Edge& new_edge) {
    DirectFlipCheck out;
    if (t.contains(new_edge)) {
        out.reason = DirectFlipBlock::already_present;
        out.witness = new_edge;
        return out;
    }
    if (!edge_covers_gap(new_edge, j)) {
        out.reason = DirectFlipBlock::not_covering;
        return out;
    }
    const Edge& ej = ga.edge(j);
    for (int i = 1; i <= ga.num_gaps(); ++i) {
        const Edge& ei = ga.edge(i);
        if (ei == ej) continue;
        if (edges_cross(ei, new_edge)) {
            out.reason = DirectFlipBlock::crossing;
            out.witness = ei;
            return out;
        }
        if (edge_covers_edge(new_edge, ei) && edge_covers_gap(ei, j)) {
            out.reason = DirectFlipBlock::condition_a;
            out.witness = ei;
            return out;
        }
        if (edge_covers_edge(ei, new_edge) && edge_covers_gap(new_edge, i)) {
            out.reason = DirectFlipBlock::condition_b;
            out.witness = ei;
            return out;
        }
    }
    return out;
}

void SequenceMeta::add_part(const std::string& name, std::size_t length) {
    for (auto& p : parts) {
        if (p.name == name) {
            p.length += length;
            return;
        }
    }
    parts.push_back(PartLength{name, length});
}

std::size_t SequenceMeta::part(const std::string& name) const {
    for (const auto& p : parts) {
        if (p.name == name) return p.length;
    }
    return 0;
}

VerifyReport verify_sequence(const FlipSequence& seq, const Tree& target, bool forbid_common_flips) {
    VerifyReport report;
    report.length = seq.length();
    if (seq.start.n() != target.n()) {
        report.ok = false;
        report.message = "start and target have different point counts";
        return report;
    }
    Tree cur = seq.start;
    for (std::size_t s = 0; s < seq.steps.size(); ++s) {
        const Flip& f = seq.steps[s];
        auto fail = [&](std::string why) {
            report.ok = false;
            report.failed_step = s;
            report.message = "step " + std::to_string(s + 1) + ": " + std::move(why);
            return report;
        };
        if (forbid_common_flips && seq.start.contains(f.remove) && target.contains(f.remove))
            return fail("removes common edge " + to_string(f.remove));
        const auto check = check_flip(cur, f);
        if (!check) return fail(check.describe(f));
        cur = apply_flip(cur, f);
    }
    if (cur != target) {
        report.ok = false;
        report.message = "final tree differs from target in " + std::to_string(difference_size(cur, target)) + " edges";
    }
    return report;
}

std::vector<Flip> boundary_preprocess(const GapAssignment& ga, std::span<const int> gaps) {
    std::vector<int> sorted(gaps.begin(), gaps.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Flip> out;
    for (int g : sorted) {
        if (ga.edge_class(g) != EdgeClass::tiny) out.push_back(Flip{ga.edge(g), Edge(g, g + 1)});
    }
    return out;
}

bool within_general_bound(std::size_t length, int n, std::size_t conflict_size, std::size_t acyclic_size) {
    const long long len = static_cast<long long>(length);
    const long long m = std::max(0, n - 1);
    if (conflict_size == 0) return 2 * len <= 3 * m;
    const long long v = static_cast<long long>(conflict_size);
    const long long y = static_cast<long long>(acyclic_size);
    return 2 * v * len <= std::max(3 * v, 4 * v - 2 * y) * m;
}

bool within_careful_bound(std::size_t length, std::size_t d, std::size_t b) {
    if (d == 0) return length == 0;
    return 3 * static_cast<long long>(length) <= 5 * static_cast<long long>(d) + 2 * static_cast<long long>(b) - 4;
}

bool within_caterpillar_bound(std::size_t length, std::size_t d) { return 2 * length <= 3 * d; }

namespace {

struct Steps {
    std::vector<Flip> flips;
    SequenceMeta meta;
};

void merge_meta(SequenceMeta& into, const SequenceMeta& from) {
    into.zero_flips += from.zero_flips;
    into.one_flips += from.one_flips;
    into.two_flips += from.two_flips;
    into.fallbacks += from.fallbacks;
    into.acyclic_size += from.acyclic_size;
    into.conflict_size += from.conflict_size;
    for (const auto& p : from.parts) into.add_part(p.name, p.length);
}

Flip map_flip(const Flip& f, std::span<const int> map) {
    return Flip{Edge(map[f.remove.a - 1], map[f.remove.b - 1]), Edge(map[f.add.a - 1], map[f.add.b - 1])};
}

std::vector<int> uncut_map(int n, int cut_after) {
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) map[j - 1] = (j - 1 + cut_after) % n + 1;
    return map;
}

// Flips on a linearly labeled instance, in five parts: remaining pairs to the hull, the
// unmatched near-near pairs to the hull, direct flips in y_order, then back from the hull.
Steps five_part(const ConvexInstance& lin, const std::vector<int>& y_order) {
    const auto ga = compute_rho(lin.t);
    const auto gap = compute_rho(lin.tp);
    const auto pairing = compute_pairing(ga, gap);

    std::vector<char> in_y(static_cast<std::size_t>(lin.n), 0);
    for (int g : y_order) in_y[g] = 1;
    std::vector<int> x;
    for (int g : pairing.near_gaps) {
        if (!in_y[g]) x.push_back(g);
    }

    Steps out;
    Tree cur = lin.t;
    auto emit = [&](const Flip& f) {
        cur = apply_flip(cur, f);
        out.flips.push_back(f);
    };

    std::size_t before = 0;
    auto close_part = [&](const char* name) {
        out.meta.add_part(name, out.flips.size() - before);
        before = out.flips.size();
    };

    for (const auto& f : boundary_preprocess(ga, pairing.rest_gaps)) emit(f);
    close_part("rest-to-hull");
    for (const auto& f : boundary_preprocess(ga, x)) emit(f);
    close_part("near-to-hull");
    for (int g : y_order) {
        const auto now = compute_rho(cur);
        const auto check = can_direct_flip(cur, now, g, pairing.at(g).second);
        if (!check)
            throw InvariantViolation("direct flip at gap " + std::to_string(g) + " blocked: " + to_string(check.reason) +
                                     " by " + to_string(check.witness));
        emit(Flip{pairing.at(g).first, pairing.at(g).second});
    }
    close_part("direct");
    for (int g : x) emit(Flip{Edge(g, g + 1), pairing.at(g).second});
    close_part("hull-to-near");
    for (int g : pairing.rest_gaps) {
        if (gap.edge_class(g) != EdgeClass::tiny) emit(Flip{Edge(g, g + 1), pairing.at(g).second});
    }
    close_part("hull-to-rest");
    if (cur != lin.tp) throw InvariantViolation("five-part construction did not reach the target tree");

    out.meta.zero_flips = pairing.equal_gaps.size();
    out.meta.one_flips = y_order.size();
    out.meta.two_flips = x.size();
    for (int g : pairing.rest_gaps) {
        const bool t_tiny = ga.edge_class(g) == EdgeClass::tiny;
        const bool tp_tiny = gap.edge_class(g) == EdgeClass::tiny;
        (t_tiny || tp_tiny ? out.meta.one_flips : out.meta.two_flips) += 1;
    }
    out.meta.conflict_size = pairing.near_gaps.size();
    out.meta.acyclic_size = y_order.size();
    return out;
}

Steps lift(Steps s, std::span<const int> map) {
    for (auto& f : s.flips) f = map_flip(f, map);
    return s;
}

using YChooser = std::function<std::vector<int>(const ConvexInstance&, const ConflictGraph&)>;

// Cuts a cell at a free hull edge and runs the five-part construction; labels are mapped back.
Steps cut_and_build(const ConvexInstance& cell, int cut_after, const YChooser& choose) {
    const ConvexInstance lin = apply_cut(cell, cut_after);
    const auto pairing = compute_pairing(compute_rho(lin.t), compute_rho(lin.tp));
    const auto cg = build_conflict_graph(pairing);
    return lift(five_part(lin, choose(lin, cg)), uncut_map(cell.n, cut_after));
}

Steps all_boundary_steps(const ConvexInstance& inst) {
    auto seq = all_boundary_sequence(inst);
    Steps s;
    s.flips = std::move(seq.steps);
    s.meta = seq.meta;
    return s;
}

std::vector<int> acyclic_order(const ConflictGraph& cg, std::size_t budget) { return best_acyclic(cg, budget).order; }

Steps careful_cell(const ConvexInstance& cell, std::size_t budget) {
    if (auto cut = choose_cut(cell.t, cell.tp)) {
        Steps s = cut_and_build(cell, *cut, [budget](const ConvexInstance&, const ConflictGraph& cg) {
            return acyclic_order(cg, budget);
        });
        if (!within_careful_bound(s.flips.size(), difference_size(cell.t, cell.tp),
                                  common_boundary_count(cell.t, cell.tp)))
            throw BoundViolation("cell sequence of length " + std::to_string(s.flips.size()) +
                                 " exceeds 5/3 d + 2/3 b - 4/3");
        return s;
    }
    return all_boundary_steps(cell);
}

std::vector<int> caterpillar_order(const ConvexInstance& lin, const ConflictGraph& cg) {
    const auto chains = caterpillar_chains(lin.t);
    auto [a, b] = caterpillar_ab_partition(cg, chains);
    return b.size() > a.size() ? b.order : a.order;
}

Steps caterpillar_cell(const ConvexInstance& cell, std::size_t budget) {
    const std::size_t d = difference_size(cell.t, cell.tp);
    auto cut = choose_cut(cell.t, cell.tp);
    if (!cut) return all_boundary_steps(cell);
    std::optional<Steps> s;
    try {
        s = cut_and_build(cell, *cut, caterpillar_order);
    } catch (const InvariantViolation&) {
        s.reset();
    }
    if (s && within_caterpillar_bound(s->flips.size(), d)) return std::move(*s);
    Steps fallback = careful_cell(cell, budget);
    fallback.meta.fallbacks += 1;
    return fallback;
}

// T' = T - e + e' is itself a valid flip.
Steps single_exchange(const ConvexInstance& cell) {
    Steps s;
    Edge remove, add;
    for (const auto& e : cell.t.edges()) {
        if (!cell.tp.contains(e)) remove = e;
    }
    for (const auto& e : cell.tp.edges()) {
        if (!cell.t.contains(e)) add = e;
    }
    s.flips.push_back(Flip{remove, add});
    s.meta.one_flips = 1;
    s.meta.add_part("single", 1);
    return s;
}

FlipSequence by_cells(const ConvexInstance& inst, const char* tag,
                      const std::function<Steps(const ConvexInstance&)>& solve) {
    FlipSequence seq;
    seq.start = inst.t;
    seq.meta.constructor = tag;
    if (inst.n <= 2 || inst.t == inst.tp) {
        seq.meta.zero_flips = inst.t.size();
        return seq;
    }
    for (const auto& cell : split_at_common_chords(inst)) {
        ++seq.meta.cells;
        const std::size_t d = difference_size(cell.instance.t, cell.instance.tp);
        if (d == 0) continue;
        Steps s = lift(d == 1 ? single_exchange(cell.instance) : solve(cell.instance), cell.to_parent);
        seq.steps.insert(seq.steps.end(), s.flips.begin(), s.flips.end());
        merge_meta(seq.meta, s.meta);
    }
    seq.meta.zero_flips = static_cast<std::size_t>(inst.n - 1) - difference_size(inst.t, inst.tp);
    const auto report = verify_sequence(seq, inst.tp, true);
    if (!report) throw InvariantViolation(std::string(tag) + " sequence failed verification: " + report.message);
    return seq;
}

} // namespace

FlipSequence all_boundary_sequence(const ConvexInstance& inst) {
    FlipSequence seq;
    seq.start = inst.t;
    seq.meta.constructor = "all-boundary";
    const int n = inst.n;
    if (n <= 2 || inst.t == inst.tp) return seq;
    for (int i = 1; i <= n; ++i) {
        Edge hull(i, i % n + 1);
        if (!inst.t.contains(hull) && !inst.tp.contains(hull))
            throw PreconditionError("hull edge " + to_string(hull) + " is in neither tree");
    }
    for (const auto& e : inst.t.edges()) {
        if (!is_hull_edge(e, n) && inst.tp.contains(e))
            throw PreconditionError("common chord " + to_string(e) + "; split first");
    }

    auto cyclic_length = [n](const Edge& e) { return std::min(e.length(), n - e.length()); };
    const std::size_t d = difference_size(inst.t, inst.tp);
    std::size_t nodes = 0;
    constexpr std::size_t node_limit = 2'000'000;

    std::function<bool(const Tree&)> search = [&](const Tree& cur) {
        if (cur == inst.tp) return true;
        if (++nodes > node_limit) return false;
        std::vector<Edge> adds, removes;
        for (const auto& e : inst.tp.edges()) {
            if (!cur.contains(e)) adds.push_back(e);
        }
        for (const auto& e : cur.edges()) {
            if (!inst.tp.contains(e)) removes.push_back(e);
        }
        std::stable_sort(adds.begin(), adds.end(), [&](const Edge& x, const Edge& y) {
            return is_hull_edge(x, n) > is_hull_edge(y, n);
        });
        std::stable_sort(removes.begin(), removes.end(), [&](const Edge& x, const Edge& y) {
            return cyclic_length(x) > cyclic_length(y);
        });
        for (const auto& add : adds) {
            for (const auto& rem : removes) {
                const Flip f{rem, add};
                if (!check_flip(cur, f)) continue;
                seq.steps.push_back(f);
                if (search(apply_flip(cur, f))) return true;
                seq.steps.pop_back();
            }
        }
        return false;
    };
    if (!search(inst.t) || seq.steps.size() != d)
        throw InvariantViolation("no exchange sequence of length d found for an all-hull instance");
    seq.meta.one_flips = d;
    seq.meta.add_part("all-boundary", d);
    return seq;
}

FlipSequence build_sequence_general(const ConvexInstance& inst, std::size_t budget) {
    FlipSequence seq;
    seq.start = inst.t;
    seq.meta.constructor = "general";
    seq.meta.cells = 1;
    if (inst.n <= 2 || inst.t == inst.tp) {
        seq.meta.zero_flips = inst.t.size();
        return seq;
    }

    int cut_after = inst.n;
    if (inst.labeling == Labeling::cyclic) {
        if (auto c = choose_cut(inst.t, inst.tp)) cut_after = *c;
    }
    const ConvexInstance lin = cut_after == inst.n ? inst : apply_cut(inst, cut_after);
    const auto pairing = compute_pairing(compute_rho(lin.t), compute_rho(lin.tp));
    const auto cg = build_conflict_graph(pairing);
    Steps s = lift(five_part(lin, acyclic_order(cg, budget)), uncut_map(inst.n, cut_after));
    seq.steps = std::move(s.flips);
    seq.meta.zero_flips = s.meta.zero_flips;
    seq.meta.one_flips = s.meta.one_flips;
    seq.meta.two_flips = s.meta.two_flips;
    seq.meta.conflict_size = s.meta.conflict_size;
    seq.meta.acyclic_size = s.meta.acyclic_size;
    seq.meta.add_part("to-hull", s.meta.part("rest-to-hull") + s.meta.part("near-to-hull"));
    seq.meta.add_part("direct", s.meta.part("direct"));
    seq.meta.add_part("from-hull", s.meta.part("hull-to-near") + s.meta.part("hull-to-rest"));

    const auto report = verify_sequence(seq, inst.tp, false);
    if (!report) throw InvariantViolation("general sequence failed verification: " + report.message);
    if (!within_general_bound(seq.length(), inst.n, seq.meta.conflict_size, seq.meta.acyclic_size))
        throw BoundViolation("general sequence of length " + std::to_string(seq.length()) + " exceeds its bound");
    return seq;
}

FlipSequence build_sequence_careful(const ConvexInstance& inst, std::size_t budget) {
    auto seq = by_cells(inst, "careful", [budget](const ConvexInstance& cell) { return careful_cell(cell, budget); });
    const std::size_t d = difference_size(inst.t, inst.tp);
    if (!within_careful_bound(seq.length(), d, common_boundary_count(inst.t, inst.tp)))
        throw BoundViolation("careful sequence of length " + std::to_string(seq.length()) +
                             " exceeds 5/3 d + 2/3 b - 4/3");
    return seq;
}

FlipSequence build_sequence_caterpillar(const ConvexInstance& inst) {
    if (!is_separated_caterpillar(inst.t)) throw PreconditionError("T is not a separated caterpillar");
    auto seq = by_cells(inst, "caterpillar",
                        [](const ConvexInstance& cell) { return caterpillar_cell(cell, default_exact_budget); });
    if (!within_caterpillar_bound(seq.length(), difference_size(inst.t, inst.tp)))
        throw BoundViolation("caterpillar sequence of length " + std::to_string(seq.length()) + " exceeds 3/2 d");
    return seq;
}

} // namespace treeflip
