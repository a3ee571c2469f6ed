#include "treeflip/gaps.hpp"

#include <algorithm>

#include "treeflip/error.hpp"

namespace treeflip {

const char* to_string(EdgeClass c) {
    switch (c) {
    case EdgeClass::tiny: return "tiny";
    case EdgeClass::near: return "near";
    case EdgeClass::far: return "far";
    }
    return "?";
}

const char* to_string(PairCell c) {
    switch (c) {
    case PairCell::equal: return "equal";
    case PairCell::near_near: return "near";
    case PairCell::rest: return "rest";
    }
    return "?";
}

EdgeClass classify_edge(const Edge& e, int gap) {
    int shared = (e.a == gap || e.a == gap + 1) + (e.b == gap || e.b == gap + 1);
    if (shared == 2) return EdgeClass::tiny;
    if (shared == 1) return EdgeClass::near;
    return EdgeClass::far;
}

GapAssignment::GapAssignment(int n, std::vector<Edge> rho) : n_(n), rho_(std::move(rho)) {
    classes_.reserve(rho_.size());
    inverse_.reserve(rho_.size());
    for (int g = 1; g <= num_gaps(); ++g) {
        classes_.push_back(classify_edge(rho_[g - 1], g));
        inverse_.emplace_back(rho_[g - 1], g);
    }
    std::sort(inverse_.begin(), inverse_.end());
}

int GapAssignment::gap_of(const Edge& e) const {
    auto it = std::lower_bound(inverse_.begin(), inverse_.end(), std::pair<Edge, int>{e, 0});
    return (it != inverse_.end() && it->first == e) ? it->second : 0;
}

GapAssignment compute_rho(const Tree& t) {
    const int n = t.n();
    const auto& edges = t.edges();
    std::vector<Edge> rho;
    rho.reserve(edges.size());
    std::vector<char> used(edges.size(), 0);
    for (int k = 1; k < n; ++k) {
        int best = -1;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!edge_covers_gap(edges[i], k)) continue;
            if (best >= 0 && edges[i].length() == edges[best].length())
                throw InvariantViolation("two shortest coverers of gap " + std::to_string(k));
            if (best < 0 || edges[i].length() < edges[best].length()) best = static_cast<int>(i);
        }
        if (best < 0) throw InvariantViolation("gap " + std::to_string(k) + " is uncovered");
        if (used[best]++) throw InvariantViolation("edge " + to_string(edges[best]) + " assigned to two gaps");
        rho.push_back(edges[best]);
    }
    return GapAssignment(n, std::move(rho));
}

Pairing compute_pairing(const GapAssignment& ga_t, const GapAssignment& ga_tp) {
    if (ga_t.n() != ga_tp.n()) throw PreconditionError("pairing needs trees on the same points");
    Pairing p;
    p.n = ga_t.n();
    for (int g = 1; g <= ga_t.num_gaps(); ++g) {
        const Edge& e = ga_t.edge(g);
        const Edge& ep = ga_tp.edge(g);
        p.pairs.emplace_back(e, ep);
        PairCell cell = PairCell::rest;
        if (e == ep) {
            cell = PairCell::equal;
            p.equal_gaps.push_back(g);
        } else if (ga_t.edge_class(g) == EdgeClass::near && ga_tp.edge_class(g) == EdgeClass::near) {
            cell = PairCell::near_near;
            p.near_gaps.push_back(g);
        } else {
            p.rest_gaps.push_back(g);
        }
        p.cells.push_back(cell);
    }
    return p;
}

CoverForest cover_forest(const Tree& t) {
    CoverForest f;
    f.nodes = t.edges();
    const std::size_t m = f.nodes.size();
    f.parent.assign(m, -1);
    f.children.assign(m, {});
    for (std::size_t i = 0; i < m; ++i) {
        // Parent is the shortest other edge covering this one; the coverers form a chain.
        int best = -1;
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || !edge_covers_edge(f.nodes[j], f.nodes[i])) continue;
            if (best < 0 || f.nodes[j].length() < f.nodes[best].length()) best = static_cast<int>(j);
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || static_cast<int>(j) == best || !edge_covers_edge(f.nodes[j], f.nodes[i])) continue;
            if (!edge_covers_edge(f.nodes[j], f.nodes[best]))
                throw InvariantViolation("upset of " + to_string(f.nodes[i]) + " is not a chain");
        }
        f.parent[i] = best;
        if (best >= 0) f.children[best].push_back(static_cast<int>(i));
        else f.roots.push_back(static_cast<int>(i));
    }

    auto ga = compute_rho(t);
    for (std::size_t i = 0; i < m; ++i) {
        const int gap = ga.gap_of(f.nodes[i]);
        const EdgeClass c = ga.edge_class(gap);
        if (c == EdgeClass::tiny) {
            ++f.tiny_count;
            if (!f.children[i].empty()) throw InvariantViolation("tiny edge with children in cover forest");
        } else if (f.children[i].empty()) {
            throw InvariantViolation("childless non-tiny edge " + to_string(f.nodes[i]));
        }
        if (c == EdgeClass::far) {
            ++f.far_count;
            if (f.children[i].size() < 2) throw InvariantViolation("far edge with fewer than two children");
        }
    }
    return f;
}

bool is_separated_caterpillar(const Tree& t) {
    return t.n() >= 3 && boundary_edges(t, true).size() <= 2;
}

bool CaterpillarChains::in_left(const Edge& e) const {
    return std::find(left.begin(), left.end(), e) != left.end();
}

bool CaterpillarChains::in_right(const Edge& e) const {
    return std::find(right.begin(), right.end(), e) != right.end();
}

CaterpillarChains caterpillar_chains(const Tree& t) {
    if (!is_separated_caterpillar(t)) throw PreconditionError("tree is not a separated caterpillar");
    if (t.contains(Edge(1, t.n()))) throw PreconditionError("linear cut must avoid the caterpillar's hull edges");
    auto tiny = boundary_edges(t, false);
    if (tiny.size() != 2) throw InvariantViolation("separated caterpillar without exactly two tiny edges");

    CaterpillarChains c;
    c.left_tiny = tiny.front();
    c.right_tiny = tiny.back();
    for (const auto& e : t.edges()) {
        const bool l = edge_covers_edge(e, c.left_tiny);
        const bool r = edge_covers_edge(e, c.right_tiny);
        if (l == r) throw InvariantViolation("edge " + to_string(e) + " is not in exactly one chain");
        (l ? c.left : c.right).push_back(e);
    }
    auto by_length = [](const Edge& x, const Edge& y) { return x.length() < y.length(); };
    std::sort(c.left.begin(), c.left.end(), by_length);
    std::sort(c.right.begin(), c.right.end(), by_length);
    for (const auto* chain : {&c.left, &c.right}) {
        for (std::size_t i = 1; i < chain->size(); ++i) {
            if (!edge_covers_edge((*chain)[i], (*chain)[i - 1]))
                throw InvariantViolation("caterpillar chain is not totally ordered by cover");
        }
    }
    return c;
}

} // namespace treeflip
