#include "treeflip/conflict_graph.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>

#include "treeflip/error.hpp"

namespace treeflip {

const char* to_string(GapSide s) {
    switch (s) {
    case GapSide::above: return "above";
    case GapSide::below: return "below";
    case GapSide::crossing: return "crossing";
    }
    return "?";
}

const char* to_string(AcyclicMethod m) {
    switch (m) {
    case AcyclicMethod::exact: return "exact";
    case AcyclicMethod::abc_heuristic: return "abc-heuristic";
    case AcyclicMethod::caterpillar_ab: return "caterpillar-AB";
    case AcyclicMethod::abc_above: return "abc-above";
    case AcyclicMethod::abc_below: return "abc-below";
    case AcyclicMethod::abc_crossing: return "abc-crossing";
    }
    return "?";
}

int ConflictGraph::index_of(int gap) const {
    auto it = std::lower_bound(gaps_.begin(), gaps_.end(), gap);
    return (it != gaps_.end() && *it == gap) ? static_cast<int>(it - gaps_.begin()) : -1;
}

bool ConflictGraph::has_arc(std::size_t u, std::size_t v) const {
    return std::binary_search(out_[u].begin(), out_[u].end(), static_cast<int>(v));
}

std::vector<int> ConflictGraph::side_members(GapSide s) const {
    std::vector<int> out;
    for (std::size_t v = 0; v < size(); ++v) {
        if (side_[v] == s) out.push_back(gaps_[v]);
    }
    return out;
}

std::uint8_t conflict_types(const Edge& ei, int gi, const Edge& epj, int gj) {
    std::uint8_t types = 0;
    if (edges_cross(ei, epj)) types |= arc_type1;
    if (edge_covers_edge(epj, ei) && edge_covers_gap(ei, gj)) types |= arc_type2;
    if (edge_covers_edge(ei, epj) && edge_covers_gap(epj, gi)) types |= arc_type3;
    return types;
}

namespace {

bool share_endpoint(const Edge& e, const Edge& f) {
    return e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b;
}

} // namespace

ConflictGraph build_conflict_graph_unchecked(const Pairing& pairing) {
    ConflictGraph cg;
    cg.gaps_ = pairing.near_gaps;
    const std::size_t m = cg.gaps_.size();
    for (int g : cg.gaps_) {
        const auto& [e, ep] = pairing.at(g);
        cg.e_.push_back(e);
        cg.ep_.push_back(ep);
        if (!share_endpoint(e, ep)) cg.side_.push_back(GapSide::crossing);
        else cg.side_.push_back(e.length() > ep.length() ? GapSide::above : GapSide::below);
    }
    cg.out_.assign(m, {});
    cg.in_.assign(m, {});
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const std::uint8_t types = conflict_types(cg.e_[i], cg.gaps_[i], cg.ep_[j], cg.gaps_[j]);
            if (!types) continue;
            cg.arcs_.push_back(Arc{cg.gaps_[i], cg.gaps_[j], types});
            cg.out_[i].push_back(static_cast<int>(j));
            cg.in_[j].push_back(static_cast<int>(i));
        }
    }
    return cg;
}

Pairing swap_pairing(const Pairing& p) {
    Pairing q = p;
    for (auto& pr : q.pairs) std::swap(pr.first, pr.second);
    return q;
}

ConflictGraph build_conflict_graph(const Pairing& pairing) {
    ConflictGraph cg = build_conflict_graph_unchecked(pairing);
    ConflictGraph rev = build_conflict_graph_unchecked(swap_pairing(pairing));
    auto swap23 = [](std::uint8_t t) {
        return static_cast<std::uint8_t>((t & arc_type1) | ((t & arc_type2) ? arc_type3 : 0) |
                                         ((t & arc_type3) ? arc_type2 : 0));
    };
    std::vector<Arc> reversed;
    for (const auto& a : rev.arcs()) reversed.push_back(Arc{a.to, a.from, swap23(a.types)});
    auto by_endpoints = [](const Arc& x, const Arc& y) { return std::pair(x.from, x.to) < std::pair(y.from, y.to); };
    std::sort(reversed.begin(), reversed.end(), by_endpoints);
    if (reversed != cg.arcs()) throw InvariantViolation("H(T',T) is not the reversal of H(T,T')");
    return cg;
}

bool is_topological_order(const ConflictGraph& cg, std::span<const int> order) {
    std::vector<int> position(cg.size(), -1);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int v = cg.index_of(order[k]);
        if (v < 0 || position[v] >= 0) return false;
        position[v] = static_cast<int>(k);
    }
    for (std::size_t u = 0; u < cg.size(); ++u) {
        if (position[u] < 0) continue;
        for (int v : cg.out(u)) {
            if (position[v] >= 0 && position[v] <= position[u]) return false;
        }
    }
    return true;
}

std::vector<int> topological_order(const ConflictGraph& cg, std::span<const int> gaps) {
    std::vector<char> member(cg.size(), 0);
    for (int g : gaps) {
        const int v = cg.index_of(g);
        if (v < 0) throw PreconditionError("gap " + std::to_string(g) + " is not a conflict-graph vertex");
        member[v] = 1;
    }
    std::vector<int> indegree(cg.size(), 0);
    for (std::size_t u = 0; u < cg.size(); ++u) {
        if (!member[u]) continue;
        for (int v : cg.out(u)) indegree[v] += member[v];
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (std::size_t v = 0; v < cg.size(); ++v) {
        if (member[v] && indegree[v] == 0) ready.push(static_cast<int>(v));
    }
    std::vector<int> order;
    while (!ready.empty()) {
        const int u = ready.top();
        ready.pop();
        order.push_back(cg.gap(u));
        for (int v : cg.out(u)) {
            if (member[v] && --indegree[v] == 0) ready.push(v);
        }
    }
    if (order.size() != gaps.size()) return {};
    return order;
}

const AcyclicCertificate& AbcCertificates::largest() const {
    const AcyclicCertificate* best = &above;
    if (below.size() > best->size()) best = &below;
    if (crossing.size() > best->size()) best = &crossing;
    return *best;
}

namespace {

AcyclicCertificate make_certificate(const ConflictGraph& cg, std::vector<int> order, AcyclicMethod method) {
    if (!is_topological_order(cg, order))
        throw InvariantViolation(std::string("class order is not topological: ") + to_string(method));
    AcyclicCertificate c;
    c.subset = order;
    std::sort(c.subset.begin(), c.subset.end());
    c.order = std::move(order);
    c.method = method;
    return c;
}

bool spans_overlap(const Edge& x, const Edge& y) { return std::max(x.a, y.a) < std::min(x.b, y.b); }

// Region Z_i is the union of the semicircle of e_i above the spine and of e'_i below it,
// slightly shortened at the ends. Z_i lies above Z_j when its upper arc overlaps the
// lower arc of Z_j, or when it nests one of Z_j's arcs from outside.
bool region_above(const ConflictGraph& cg, std::size_t i, std::size_t j) {
    return spans_overlap(cg.edge(i), cg.partner(j)) || edge_covers_edge(cg.edge(i), cg.edge(j)) ||
           edge_covers_edge(cg.partner(j), cg.partner(i));
}

std::vector<int> crossing_sweep(const ConflictGraph& cg) {
    std::vector<std::size_t> remaining;
    for (std::size_t v = 0; v < cg.size(); ++v) {
        if (cg.side(v) == GapSide::crossing) remaining.push_back(v);
    }
    std::vector<int> order;
    while (!remaining.empty()) {
        std::size_t pick = remaining.size();
        int pick_right = 0;
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            const std::size_t j = remaining[k];
            bool covered = false;
            for (std::size_t i : remaining) {
                if (i != j && region_above(cg, i, j)) {
                    covered = true;
                    break;
                }
            }
            if (covered) continue;
            const int right = std::max(cg.edge(j).b, cg.partner(j).b);
            if (pick == remaining.size() || right < pick_right) {
                pick = k;
                pick_right = right;
            }
        }
        if (pick == remaining.size()) throw InvariantViolation("no unobstructed region in crossing sweep");
        order.push_back(cg.gap(remaining[pick]));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return order;
}

std::vector<int> sorted_by_length(const ConflictGraph& cg, GapSide side, bool use_partner, bool ascending) {
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < cg.size(); ++v) {
        if (cg.side(v) == side) members.push_back(v);
    }
    auto len = [&](std::size_t v) { return use_partner ? cg.partner(v).length() : cg.edge(v).length(); };
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t x, std::size_t y) { return ascending ? len(x) < len(y) : len(x) > len(y); });
    std::vector<int> order;
    for (auto v : members) order.push_back(cg.gap(v));
    return order;
}

class ExactSolver {
public:
    explicit ExactSolver(const ConflictGraph& cg) : m_(cg.size()) {
        // Bit p is the p-th vertex in descending total degree, ties by gap index.
        std::vector<std::size_t> byDegree(m_);
        for (std::size_t v = 0; v < m_; ++v) byDegree[v] = v;
        std::stable_sort(byDegree.begin(), byDegree.end(), [&](std::size_t x, std::size_t y) {
            return cg.out(x).size() + cg.in(x).size() > cg.out(y).size() + cg.in(y).size();
        });
        vertex_ = byDegree;
        std::vector<int> position(m_);
        for (std::size_t p = 0; p < m_; ++p) position[byDegree[p]] = static_cast<int>(p);
        out_.assign(m_, 0);
        for (std::size_t v = 0; v < m_; ++v) {
            for (int w : cg.out(v)) out_[position[v]] |= bit(position[w]);
        }
        both_.assign(m_, 0);
        for (std::size_t p = 0; p < m_; ++p) {
            for (std::size_t q = 0; q < m_; ++q) {
                if ((out_[p] & bit(q)) && (out_[q] & bit(p))) both_[p] |= bit(q);
            }
        }
    }

    void seed(std::uint64_t mask) {
        best_ = mask;
        best_size_ = std::popcount(mask);
    }

    std::uint64_t to_mask(std::span<const int> positions_of_vertices) const {
        std::uint64_t mask = 0;
        for (int v : positions_of_vertices) {
            for (std::size_t p = 0; p < m_; ++p) {
                if (vertex_[p] == static_cast<std::size_t>(v)) mask |= bit(p);
            }
        }
        return mask;
    }

    std::uint64_t solve() {
        const std::uint64_t all = m_ == 64 ? ~0ULL : (bit(m_) - 1);
        search(0, all);
        return best_;
    }

    std::vector<std::size_t> vertices_of(std::uint64_t mask) const {
        std::vector<std::size_t> out;
        for (std::size_t p = 0; p < m_; ++p) {
            if (mask & bit(p)) out.push_back(vertex_[p]);
        }
        return out;
    }

private:
    static std::uint64_t bit(std::size_t p) { return 1ULL << p; }

    bool closes_cycle(std::size_t v, std::uint64_t included) const {
        std::uint64_t seen = 0;
        std::uint64_t frontier = out_[v] & included;
        while (frontier) {
            seen |= frontier;
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f; f &= f - 1) {
                const auto u = static_cast<std::size_t>(std::countr_zero(f));
                if (out_[u] & bit(v)) return true;
                next |= out_[u] & included;
            }
            frontier = next & ~seen;
        }
        return false;
    }

    int bound_of(std::uint64_t included, std::uint64_t open) const {
        int pairs = 0;
        std::uint64_t rest = open;
        while (rest) {
            const auto v = static_cast<std::size_t>(std::countr_zero(rest));
            rest &= rest - 1;
            const std::uint64_t mate = both_[v] & rest;
            if (mate) {
                rest &= ~(mate & (~mate + 1));
                ++pairs;
            }
        }
        return std::popcount(included) + std::popcount(open) - pairs;
    }

    void search(std::uint64_t included, std::uint64_t open) {
        if (!open) {
            if (std::popcount(included) > best_size_) seed(included);
            return;
        }
        if (bound_of(included, open) <= best_size_) return;
        const auto v = static_cast<std::size_t>(std::countr_zero(open));
        const std::uint64_t rest = open & ~bit(v);
        if (!closes_cycle(v, included)) search(included | bit(v), rest & ~both_[v]);
        search(included, rest);
    }

    std::size_t m_;
    std::vector<std::size_t> vertex_;
    std::vector<std::uint64_t> out_;
    std::vector<std::uint64_t> both_;
    std::uint64_t best_ = 0;
    int best_size_ = -1;
};

} // namespace

AbcCertificates abc_partition_orders(const ConflictGraph& cg) {
    AbcCertificates out;
    out.above = make_certificate(cg, sorted_by_length(cg, GapSide::above, false, true), AcyclicMethod::abc_above);
    // A shortest e' in B is a sink, so B peels from the back.
    out.below = make_certificate(cg, sorted_by_length(cg, GapSide::below, true, false), AcyclicMethod::abc_below);
    out.crossing = make_certificate(cg, crossing_sweep(cg), AcyclicMethod::abc_crossing);
    if (!cg.empty() && 3 * out.largest().size() < cg.size())
        throw InvariantViolation("largest side class below a third of the vertices");
    return out;
}

AcyclicCertificate max_acyclic_exact(const ConflictGraph& cg, std::size_t budget) {
    if (cg.size() > budget || cg.size() > 64)
        throw BudgetExceeded("conflict graph has " + std::to_string(cg.size()) +
                             " vertices, above the exact budget of " + std::to_string(std::min<std::size_t>(budget, 64)) +
                             "; use the side-class heuristic");
    AcyclicCertificate result;
    result.method = AcyclicMethod::exact;
    if (cg.empty()) return result;

    ExactSolver solver(cg);
    const auto abc = abc_partition_orders(cg);
    std::vector<int> seedVertices;
    for (int g : abc.largest().subset) seedVertices.push_back(cg.index_of(g));
    solver.seed(solver.to_mask(seedVertices));
    const std::uint64_t best = solver.solve();

    for (auto v : solver.vertices_of(best)) result.subset.push_back(cg.gap(v));
    std::sort(result.subset.begin(), result.subset.end());
    result.order = topological_order(cg, result.subset);
    if (result.order.size() != result.subset.size()) throw InvariantViolation("exact solver returned a cyclic subset");
    return result;
}

AcyclicCertificate best_acyclic(const ConflictGraph& cg, std::size_t budget) {
    if (cg.size() <= std::min<std::size_t>(budget, 64)) return max_acyclic_exact(cg, budget);
    AcyclicCertificate c = abc_partition_orders(cg).largest();
    c.method = AcyclicMethod::abc_heuristic;
    return c;
}

std::pair<AcyclicCertificate, AcyclicCertificate> caterpillar_ab_partition(const ConflictGraph& cg,
                                                                           const CaterpillarChains& chains) {
    // "Comes before" order on A: left-chain gaps inner to outer, then right-chain gaps
    // outer to inner. B is the mirror image.
    std::vector<std::size_t> aLeft, aRight, bLeft, bRight;
    for (std::size_t v = 0; v < cg.size(); ++v) {
        const Edge& e = cg.edge(v);
        const bool covers = edge_covers_edge(e, cg.partner(v));
        if (chains.in_left(e)) (covers ? aLeft : bLeft).push_back(v);
        else if (chains.in_right(e)) (covers ? bRight : aRight).push_back(v);
        else throw PreconditionError("edge " + to_string(e) + " is in neither caterpillar chain");
    }
    auto by_length = [&](bool ascending) {
        return [&cg, ascending](std::size_t x, std::size_t y) {
            return ascending ? cg.edge(x).length() < cg.edge(y).length() : cg.edge(x).length() > cg.edge(y).length();
        };
    };
    std::sort(aLeft.begin(), aLeft.end(), by_length(true));
    std::sort(aRight.begin(), aRight.end(), by_length(false));
    std::sort(bRight.begin(), bRight.end(), by_length(true));
    std::sort(bLeft.begin(), bLeft.end(), by_length(false));

    auto gaps_of = [&](const std::vector<std::size_t>& first, const std::vector<std::size_t>& second) {
        std::vector<int> order;
        for (auto v : first) order.push_back(cg.gap(v));
        for (auto v : second) order.push_back(cg.gap(v));
        return order;
    };
    auto a = make_certificate(cg, gaps_of(aLeft, aRight), AcyclicMethod::caterpillar_ab);
    auto b = make_certificate(cg, gaps_of(bRight, bLeft), AcyclicMethod::caterpillar_ab);
    if (2 * std::max(a.size(), b.size()) < cg.size()) throw InvariantViolation("caterpillar split below half");
    return {std::move(a), std::move(b)};
}

std::string to_dot(const ConflictGraph& cg) {
    std::ostringstream os;
    os << "digraph conflict {\n  node [style=filled, shape=circle];\n";
    for (std::size_t v = 0; v < cg.size(); ++v) {
        const char* color = "pink";
        if (cg.side(v) == GapSide::above) color = "orange";
        else if (cg.side(v) == GapSide::below) color = "palegreen";
        os << "  g" << cg.gap(v) << " [label=\"g" << cg.gap(v) << "\", fillcolor=" << color << ", tooltip=\""
           << to_string(cg.edge(v)) << " / " << to_string(cg.partner(v)) << "\"];\n";
    }
    for (const auto& a : cg.arcs()) {
        std::string label;
        for (int t = 0; t < 3; ++t) {
            if (a.types & (1 << t)) {
                if (!label.empty()) label += ",";
                label += std::to_string(t + 1);
            }
        }
        os << "  g" << a.from << " -> g" << a.to << " [label=\"" << label << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace treeflip
