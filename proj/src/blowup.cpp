#include "treeflip/blowup.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "treeflip/error.hpp"

namespace treeflip {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

int far_endpoint(const Edge& e, int gap) { return (e.a == gap || e.a == gap + 1) ? e.b : e.a; }

} // namespace

Blowup build_blowup(const ConvexInstance& base, int k) {
    if (k < 1) throw PreconditionError("blowup needs k >= 1");
    Blowup b;
    b.base = base;
    b.k = k;
    b.pairing = compute_pairing(compute_rho(base.t), compute_rho(base.tp));
    b.gaps = b.pairing.near_gaps;
    if (b.gaps.empty()) throw PreconditionError("instance has no near-near pairs");

    const int n = base.n;
    b.base_to_blown.assign(static_cast<std::size_t>(n) + 1, 0);
    int shift = 0;
    std::size_t next_gap = 0;
    for (int j = 1; j <= n; ++j) {
        b.base_to_blown[j] = j + shift;
        if (next_gap < b.gaps.size() && b.gaps[next_gap] == j) {
            shift += k;
            ++next_gap;
        }
    }
    const int n_k = n + k * static_cast<int>(b.gaps.size());

    auto lift = [&](const Tree& t) {
        std::vector<Edge> out;
        for (const auto& e : t.edges()) out.emplace_back(b.base_to_blown[e.a], b.base_to_blown[e.b]);
        return out;
    };
    std::vector<Edge> t_edges = lift(base.t);
    std::vector<Edge> tp_edges = lift(base.tp);
    for (int g : b.gaps) {
        const auto& [e, ep] = b.pairing.at(g);
        std::vector<int> points;
        for (int s = 1; s <= k; ++s) points.push_back(b.base_to_blown[g] + s);
        std::vector<Edge> fan, fan_p;
        for (int v : points) {
            fan.emplace_back(v, b.base_to_blown[far_endpoint(e, g)]);
            fan_p.emplace_back(v, b.base_to_blown[far_endpoint(ep, g)]);
        }
        t_edges.insert(t_edges.end(), fan.begin(), fan.end());
        tp_edges.insert(tp_edges.end(), fan_p.begin(), fan_p.end());
        b.inserted.push_back(std::move(points));
        b.fan_t.push_back(std::move(fan));
        b.fan_tp.push_back(std::move(fan_p));
    }
    b.blown = ConvexInstance::make(n_k, std::move(t_edges), std::move(tp_edges), Labeling::linear);

    const auto cg = build_conflict_graph(b.pairing);
    for (const auto& arc : cg.arcs()) {
        const auto i = static_cast<std::size_t>(cg.index_of(arc.from));
        const auto j = static_cast<std::size_t>(cg.index_of(arc.to));
        for (const auto& f : b.fan_t[i]) {
            for (const auto& fp : b.fan_tp[j]) {
                if (!edges_cross(f, fp))
                    throw InvariantViolation("fan edges " + to_string(f) + " and " + to_string(fp) +
                                             " do not cross along arc g" + std::to_string(arc.from) + " -> g" +
                                             std::to_string(arc.to));
            }
        }
    }
    return b;
}

SequenceAnalysis analyze_sequence(const Blowup& b, const FlipSequence& seq) {
    if (seq.start != b.blown.t) throw PreconditionError("sequence does not start at the blown T");
    const auto report = verify_sequence(seq, b.blown.tp, false);
    if (!report) throw PreconditionError("sequence does not verify: " + report.message);

    // Edge -> (gap position, 0 for Λ(e) / 1 for Λ(e')).
    std::map<Edge, std::pair<std::size_t, int>> owner;
    for (std::size_t q = 0; q < b.gaps.size(); ++q) {
        for (const auto& f : b.fan_t[q]) owner[f] = {q, 0};
        for (const auto& f : b.fan_tp[q]) owner[f] = {q, 1};
    }
    const std::size_t m = b.gaps.size();
    std::vector<std::size_t> count_t(m, 0), count_tp(m, 0);
    for (const auto& e : seq.start.edges()) {
        if (auto it = owner.find(e); it != owner.end()) (it->second.second ? count_tp : count_t)[it->second.first]++;
    }
    constexpr std::size_t never = static_cast<std::size_t>(-1);
    std::vector<std::size_t> gone(m, never), first_tp(m, never);
    for (std::size_t q = 0; q < m; ++q) {
        if (count_t[q] == 0) gone[q] = 0;
        if (count_tp[q] > 0) first_tp[q] = 0;
    }
    for (std::size_t a = 1; a <= seq.steps.size(); ++a) {
        const Flip& f = seq.steps[a - 1];
        if (auto it = owner.find(f.remove); it != owner.end()) (it->second.second ? count_tp : count_t)[it->second.first]--;
        if (auto it = owner.find(f.add); it != owner.end()) (it->second.second ? count_tp : count_t)[it->second.first]++;
        for (std::size_t q = 0; q < m; ++q) {
            if (gone[q] == never && count_t[q] == 0) gone[q] = a;
            if (first_tp[q] == never && count_tp[q] > 0) first_tp[q] = a;
        }
    }

    SequenceAnalysis out;
    std::vector<char> direct(m, 0);
    for (std::size_t q = 0; q < m; ++q) {
        if (gone[q] == never) throw InvariantViolation("fan of gap " + std::to_string(b.gaps[q]) + " never vanishes");
        direct[q] = first_tp[q] <= gone[q];
        out.pairs.push_back(PairStatus{b.gaps[q], gone[q], static_cast<bool>(direct[q])});
        (direct[q] ? out.direct_count : out.indirect_count) += 1;
    }

    const auto cg = build_conflict_graph(b.pairing);
    for (const auto& arc : cg.arcs()) {
        const auto i = static_cast<std::size_t>(cg.index_of(arc.from));
        const auto j = static_cast<std::size_t>(cg.index_of(arc.to));
        if (direct[i] && direct[j] && !(gone[i] < gone[j]))
            throw InvariantViolation("direct pairs g" + std::to_string(arc.from) + " -> g" + std::to_string(arc.to) +
                                     " vanish out of order");
    }
    std::vector<std::size_t> order;
    for (std::size_t q = 0; q < m; ++q) {
        if (direct[q]) order.push_back(q);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return gone[x] < gone[y]; });
    for (auto q : order) out.direct_order.push_back(b.gaps[q]);
    if (!is_topological_order(cg, out.direct_order)) throw InvariantViolation("direct pairs induce a cycle");

    const long long slack = static_cast<long long>(b.k) - 2LL * b.base.n;
    out.length_bound = slack * static_cast<long long>(out.indirect_count + m);
    return out;
}

namespace {

// Flips that turn t into the hull path 1-2-...-n.
std::vector<Flip> walk_to_path(Tree t) {
    const int n = t.n();
    std::vector<Flip> out;
    auto on_path = [](const Edge& e) { return e.length() == 1; };
    for (int j = 1; j < n; ++j) {
        const Edge add(j, j + 1);
        if (t.contains(add)) continue;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
        for (const auto& e : t.edges()) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
        std::vector<int> queue{j};
        parent[j] = j;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (int w : adj[queue[h]]) {
                if (!parent[w]) {
                    parent[w] = queue[h];
                    queue.push_back(w);
                }
            }
        }
        std::optional<Edge> drop;
        for (int v = j + 1; v != j; v = parent[v]) {
            const Edge e(v, parent[v]);
            if (!on_path(e)) {
                drop = e;
                break;
            }
        }
        if (!drop) throw InvariantViolation("cycle through a missing hull edge has no chord");
        const Flip f{*drop, add};
        t = apply_flip(t, f);
        out.push_back(f);
    }
    return out;
}

} // namespace

FlipSequence route_through_hull_path(const Tree& t, const Tree& tp) {
    if (t.n() != tp.n()) throw PreconditionError("trees on different point counts");
    FlipSequence seq;
    seq.start = t;
    seq.meta.constructor = "hull-path";
    seq.steps = walk_to_path(t);
    auto back = walk_to_path(tp);
    for (auto it = back.rbegin(); it != back.rend(); ++it) seq.steps.push_back(Flip{it->add, it->remove});
    seq.meta.add_part("to-path", seq.steps.size() - back.size());
    seq.meta.add_part("from-path", back.size());
    const auto report = verify_sequence(seq, tp, false);
    if (!report) throw InvariantViolation("hull path route failed: " + report.message);
    return seq;
}

LowerBoundCertificate lower_bound_certificate(int n, std::size_t v_h, std::size_t ac_h, std::size_t d,
                                              std::span<const long long> ks) {
    if (v_h == 0) throw PreconditionError("conflict graph is empty; no certificate");
    if (ac_h > v_h) throw PreconditionError("ac(H) exceeds |V(H)|");
    LowerBoundCertificate c;
    c.n = n;
    c.v_h = v_h;
    c.ac_h = ac_h;
    const auto v = static_cast<long long>(v_h);
    const auto a = static_cast<long long>(ac_h);
    c.coefficient = Rational(2) - Rational(a, v);
    for (long long k : ks) {
        if (k < 2LL * n) throw PreconditionError("k = " + std::to_string(k) + " is below 2n = " + std::to_string(2 * n));
        const Rational bound = Rational(k - 2LL * n) * Rational(2 * v - a);
        c.bounds.push_back(KBound{k, bound.numerator(), static_cast<long long>(d) + k * v});
    }
    return c;
}

LowerBoundCertificate lower_bound_certificate(const ConvexInstance& base, std::span<const long long> ks,
                                              std::size_t budget) {
    const auto pairing = compute_pairing(compute_rho(base.t), compute_rho(base.tp));
    const auto cg = build_conflict_graph(pairing);
    if (cg.empty()) throw PreconditionError("conflict graph is empty; no certificate");
    auto witness = max_acyclic_exact(cg, budget);
    auto c = lower_bound_certificate(base.n, cg.size(), witness.size(), difference_size(base.t, base.tp), ks);
    c.witness = std::move(witness);
    return c;
}

long long concrete_threshold_check(long long n, long long v_h, long long ac_h) {
    if (v_h < 1) throw PreconditionError("need |V(H)| >= 1");
    const Rational slope = Rational(2 * v_h - ac_h) - Rational(3 * v_h, 2);
    if (slope <= 0)
        throw Unsatisfiable("2|V(H)| - ac(H) = " + std::to_string(2 * v_h - ac_h) + " does not exceed 3/2 |V(H)| = " +
                            to_string(Rational(3 * v_h, 2)));
    auto holds = [&](long long k) {
        const Rational lhs = Rational(k - 2 * n) * Rational(2 * v_h - ac_h);
        const Rational rhs = Rational(3 * n, 2) + Rational(3 * k * v_h, 2) - 5;
        return lhs > rhs;
    };
    // Linear in k with positive slope: start just below the real root and scan upwards.
    const Rational intercept = Rational(3 * n, 2) - 5 + Rational(2 * n) * Rational(2 * v_h - ac_h);
    const Rational root = intercept / slope;
    long long k = std::max<long long>(0, boost::rational_cast<long long>(root) - 2);
    while (!holds(k)) ++k;
    while (k > 0 && holds(k - 1)) --k;
    return k;
}

} // namespace treeflip
