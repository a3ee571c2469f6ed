#include "treeflip/sweep.hpp"

#include <algorithm>
#include <random>

#include "treeflip/error.hpp"
#include "treeflip/flips.hpp"
#include "treeflip/gaps.hpp"
#include "treeflip/oracle.hpp"

namespace treeflip {

const char* to_string(SweepMode m) {
    switch (m) {
        case SweepMode::general: return "general";
        case SweepMode::careful: return "careful";
        case SweepMode::caterpillar: return "caterpillar";
    }
    return "?";
}

SweepMode parse_sweep_mode(const std::string& s) {
    if (s == "general") return SweepMode::general;
    if (s == "careful") return SweepMode::careful;
    if (s == "caterpillar") return SweepMode::caterpillar;
    throw InputError("unknown sweep mode \"" + s + "\"");
}

namespace {

FlipSequence construct(SweepMode mode, const ConvexInstance& inst) {
    switch (mode) {
        case SweepMode::general: return build_sequence_general(inst);
        case SweepMode::careful: return build_sequence_careful(inst);
        case SweepMode::caterpillar: return build_sequence_caterpillar(inst);
    }
    throw PreconditionError("unknown sweep mode");
}

// Empty when the pair passes.
std::string check_pair(SweepMode mode, const ConvexInstance& inst, std::optional<int> oracle, SweepReport& r) {
    FlipSequence seq;
    try {
        seq = construct(mode, inst);
    } catch (const Error& e) {
        return std::string("constructor threw: ") + e.what();
    }
    const bool careful = mode != SweepMode::general;
    const auto report = verify_sequence(seq, inst.tp, careful);
    if (!report) return "verification failed: " + report.message;
    const std::size_t len = seq.length();
    const std::size_t d = difference_size(inst.t, inst.tp);
    r.max_length = std::max(r.max_length, len);
    r.fallbacks += seq.meta.fallbacks > 0;
    if (len < d) return "length " + std::to_string(len) + " below d = " + std::to_string(d);
    if (oracle) {
        const auto dist = static_cast<std::size_t>(*oracle);
        if (len < dist) return "length " + std::to_string(len) + " below flip distance " + std::to_string(dist);
        r.oracle_optimal += len == dist;
        r.max_excess = std::max(r.max_excess, len - dist);
    }
    bool within = true;
    switch (mode) {
        case SweepMode::general:
            within = within_general_bound(len, inst.n, seq.meta.conflict_size, seq.meta.acyclic_size);
            break;
        case SweepMode::careful:
            within = within_careful_bound(len, d, common_boundary_count(inst.t, inst.tp));
            break;
        case SweepMode::caterpillar:
            within = within_caterpillar_bound(len, d);
            break;
    }
    if (!within) return "length " + std::to_string(len) + " exceeds the " + to_string(mode) + " bound";
    return {};
}

} // namespace

SweepReport run_sweep(const SweepConfig& config) {
    const auto idx = enumerate_trees(config.n, max_oracle_points);
    SweepReport r;
    r.n = config.n;
    r.mode = config.mode;
    r.trees = idx.size();

    std::vector<std::size_t> sources;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (config.mode != SweepMode::caterpillar || is_separated_caterpillar(idx.decode(idx.trees()[i])))
            sources.push_back(i);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (config.samples) {
        std::mt19937_64 rng(config.seed);
        std::uniform_int_distribution<std::size_t> pick_source(0, sources.size() - 1);
        std::uniform_int_distribution<std::size_t> pick_target(0, idx.size() - 1);
        for (std::size_t s = 0; s < *config.samples; ++s) pairs.emplace_back(sources[pick_source(rng)], pick_target(rng));
        std::sort(pairs.begin(), pairs.end());
    } else {
        for (auto i : sources) {
            for (std::size_t j = 0; j < idx.size(); ++j) pairs.emplace_back(i, j);
        }
    }

    std::vector<int> dist;
    std::size_t dist_source = idx.size();
    for (const auto& [i, j] : pairs) {
        if (config.compare_oracle && dist_source != i) {
            dist = distances_from(idx, i);
            dist_source = i;
        }
        const Tree t = idx.decode(idx.trees()[i]);
        const Tree tp = idx.decode(idx.trees()[j]);
        const auto inst = ConvexInstance::make(config.n, t.edges(), tp.edges());
        ++r.pairs;
        std::optional<int> oracle;
        if (config.compare_oracle) oracle = dist[j];
        auto message = check_pair(config.mode, inst, oracle, r);
        if (message.empty()) continue;
        ++r.violations;
        if (r.failures.size() < config.max_failures) r.failures.push_back(SweepFailure{t, tp, std::move(message)});
    }
    return r;
}

} // namespace treeflip
