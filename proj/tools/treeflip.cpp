// Command-line front end. Exit codes: 0 success, 1 verification or bound failure, 2 input error.
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treeflip/blowup.hpp"
#include "treeflip/conflict_graph.hpp"
#include "treeflip/error.hpp"
#include "treeflip/flips.hpp"
#include "treeflip/gaps.hpp"
#include "treeflip/io.hpp"
#include "treeflip/oracle.hpp"
#include "treeflip/random.hpp"
#include "treeflip/sweep.hpp"

using namespace treeflip;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

ConvexInstance linearized(const ConvexInstance& inst) {
    if (inst.labeling == Labeling::linear) return inst;
    if (const auto cut = choose_cut(inst.t, inst.tp)) return apply_cut(inst, *cut);
    return inst;
}

Pairing pairing_of(const ConvexInstance& inst) {
    const auto lin = linearized(inst);
    return compute_pairing(compute_rho(lin.t), compute_rho(lin.tp));
}

std::string edge_text(const Edge& e) { return std::to_string(e.a) + "-" + std::to_string(e.b); }

int cmd_validate(const std::string& path) {
    const auto inst = read_instance(path);
    std::cout << "valid\tn=" << inst.n << "\td=" << difference_size(inst.t, inst.tp)
              << "\tb=" << common_boundary_count(inst.t, inst.tp) << "\n";
    return exit_ok;
}

int cmd_classify(const std::string& path) {
    const auto inst = linearized(read_instance(path));
    const auto ga = compute_rho(inst.t);
    const auto gap = compute_rho(inst.tp);
    const auto p = compute_pairing(ga, gap);
    std::cout << "gap\te\tclass\te'\tclass'\tcell\n";
    for (int g = 1; g < inst.n; ++g) {
        std::cout << g << "\t" << edge_text(ga.edge(g)) << "\t" << to_string(ga.edge_class(g)) << "\t"
                  << edge_text(gap.edge(g)) << "\t" << to_string(gap.edge_class(g)) << "\t" << to_string(p.cell(g))
                  << "\n";
    }
    return exit_ok;
}

int cmd_conflict_graph(const std::string& path) {
    std::cout << to_dot(build_conflict_graph(pairing_of(read_instance(path))));
    return exit_ok;
}

std::string gap_list(const std::vector<int>& gaps) {
    std::ostringstream out;
    for (std::size_t i = 0; i < gaps.size(); ++i) out << (i ? "," : "") << gaps[i];
    return out.str();
}

int cmd_acyclic(const std::string& path, std::size_t budget) {
    const auto cg = build_conflict_graph(pairing_of(read_instance(path)));
    const auto cert = best_acyclic(cg, budget);
    std::cout << "vertices\t" << cg.size() << "\n";
    std::cout << (cert.method == AcyclicMethod::exact ? "ac" : "heuristic") << "\t" << cert.size() << "\n";
    std::cout << "method\t" << to_string(cert.method) << "\n";
    std::cout << "subset\t" << gap_list(cert.subset) << "\n";
    std::cout << "order\t" << gap_list(cert.order) << "\n";
    if (!cg.empty()) {
        const Rational c = Rational(2) - Rational(static_cast<long long>(cert.size()), static_cast<long long>(cg.size()));
        std::cout << "coefficient\t" << to_string(c) << "\n";
    }
    return exit_ok;
}

struct SequenceOptions {
    std::string method = "careful";
    bool verify = false;
    std::string emit = "text";
    std::size_t budget = default_exact_budget;
};

int cmd_sequence(const std::string& path, const SequenceOptions& o) {
    const auto inst = read_instance(path);
    FlipSequence seq;
    bool bound_ok = true;
    const std::size_t d = difference_size(inst.t, inst.tp);
    const std::size_t b = common_boundary_count(inst.t, inst.tp);
    try {
        if (o.method == "general") {
            seq = build_sequence_general(inst, o.budget);
            bound_ok = within_general_bound(seq.length(), inst.n, seq.meta.conflict_size, seq.meta.acyclic_size);
        } else if (o.method == "careful") {
            seq = build_sequence_careful(inst, o.budget);
            bound_ok = within_careful_bound(seq.length(), d, b);
        } else if (o.method == "caterpillar") {
            seq = build_sequence_caterpillar(inst);
            bound_ok = within_caterpillar_bound(seq.length(), d);
        } else {
            seq = all_boundary_sequence(inst);
            bound_ok = seq.length() == d;
        }
    } catch (const BoundViolation& e) {
        std::cerr << "bound violation: " << e.what() << "\n";
        return exit_failed;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return exit_failed;
    }

    std::optional<VerifyReport> report;
    if (o.verify) report = verify_sequence(seq, inst.tp, o.method != "general");

    if (o.emit == "json") {
        auto j = sequence_to_json(seq);
        j["d"] = d;
        j["b"] = b;
        j["bound_ok"] = bound_ok;
        if (report) j["verified"] = report->ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "constructor\t" << seq.meta.constructor << "\n";
        std::cout << "length\t" << seq.length() << "\td\t" << d << "\tb\t" << b << "\n";
        for (const auto& part : seq.meta.parts) std::cout << "part\t" << part.name << "\t" << part.length << "\n";
        if (seq.meta.fallbacks) std::cout << "fallbacks\t" << seq.meta.fallbacks << "\n";
        for (const auto& f : seq.steps) std::cout << "flip\t" << edge_text(f.remove) << "\t" << edge_text(f.add) << "\n";
        std::cout << "bound\t" << (bound_ok ? "ok" : "violated") << "\n";
        if (report) std::cout << "verify\t" << (report->ok ? "ok" : report->message) << "\n";
    }
    if (!bound_ok || (report && !report->ok)) return exit_failed;
    return exit_ok;
}

struct OracleOptions {
    std::string query;
    std::optional<std::string> path;
    std::optional<int> n;
    int limit = default_oracle_limit;
};

int cmd_oracle(const OracleOptions& o) {
    const bool needs_instance = o.query == "distance" || o.query == "eccentricity";
    if (needs_instance && !o.path) throw InputError(o.query + " needs an instance file");
    if (!needs_instance && !o.n) throw InputError(o.query + " needs --n");
    std::optional<ConvexInstance> inst;
    if (o.path) inst = read_instance(*o.path);
    const int n = inst ? inst->n : *o.n;
    const auto idx = enumerate_trees(n, o.limit);
    if (o.query == "distance") {
        std::cout << "n\ttrees\tdistance\n" << n << "\t" << idx.size() << "\t" << bfs_distance(idx, inst->t, inst->tp) << "\n";
    } else if (o.query == "eccentricity") {
        std::cout << "n\ttrees\teccentricity\n" << n << "\t" << idx.size() << "\t" << eccentricity(idx, inst->t) << "\n";
    } else if (o.query == "diameter") {
        std::cout << "n\ttrees\tdiameter\n" << n << "\t" << idx.size() << "\t" << diameter(idx) << "\n";
    } else {
        std::cout << "n\ttrees\tradius\n" << n << "\t" << idx.size() << "\t" << radius(idx) << "\n";
    }
    return exit_ok;
}

int cmd_blowup(const std::string& path, int k) {
    const auto b = build_blowup(read_instance(path), k);
    std::cout << instance_to_json(b.blown).dump() << "\n";
    return exit_ok;
}

int cmd_certificate(const std::string& path, const std::vector<long long>& ks, std::size_t budget) {
    const auto base = linearized(read_instance(path));
    const auto c = lower_bound_certificate(base, ks, budget);
    json out;
    out["n"] = c.n;
    out["vH"] = c.v_h;
    out["acH"] = c.ac_h;
    out["coefficient"] = to_string(c.coefficient);
    out["acyclic_order"] = c.witness.order;
    json bounds = json::array();
    for (const auto& kb : c.bounds)
        bounds.push_back({{"k", kb.k}, {"bound", kb.bound}, {"difference", kb.difference}, {"shown", kb.shown()}});
    out["bounds"] = bounds;
    std::cout << out.dump(2) << "\n";
    return exit_ok;
}

int cmd_threshold(long long n, long long v_h, long long ac_h) {
    std::cout << concrete_threshold_check(n, v_h, ac_h) << "\n";
    return exit_ok;
}

int cmd_sweep(const SweepConfig& config) {
    const auto r = run_sweep(config);
    std::cout << "n\tmode\ttrees\tpairs\tviolations\tfallbacks\toracle_optimal\tmax_length\tmax_excess\n";
    std::cout << r.n << "\t" << to_string(r.mode) << "\t" << r.trees << "\t" << r.pairs << "\t" << r.violations << "\t"
              << r.fallbacks << "\t" << r.oracle_optimal << "\t" << r.max_length << "\t" << r.max_excess << "\n";
    for (const auto& f : r.failures) {
        std::cerr << "failure\t" << edges_to_json(f.t).dump() << "\t" << edges_to_json(f.tp).dump() << "\t" << f.message
                  << "\n";
    }
    return r.ok() ? exit_ok : exit_failed;
}

int cmd_random(int n, std::uint64_t seed, std::size_t steps) {
    std::cout << instance_to_json(generate_random_instance(n, seed, steps)).dump() << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flip sequences between non-crossing spanning trees on convex point sets"};
    app.require_subcommand(1);

    std::string path;
    std::size_t budget = default_exact_budget;

    auto* validate = app.add_subcommand("validate", "Check an instance file");
    validate->add_option("instance", path, "Instance JSON, or - for stdin")->required();

    auto* classify = app.add_subcommand("classify", "Per-gap edge classes and pairing cells as TSV");
    classify->add_option("instance", path)->required();

    auto* conflict = app.add_subcommand("conflict-graph", "Conflict graph as DOT");
    conflict->add_option("instance", path)->required();

    auto* acyclic = app.add_subcommand("acyclic", "Largest acyclic subset of the conflict graph");
    acyclic->add_option("instance", path)->required();
    acyclic->add_option("--budget", budget, "Largest graph for the exact solver");

    SequenceOptions seq_opts;
    auto* sequence = app.add_subcommand("sequence", "Build a flip sequence from T to T'");
    sequence->add_option("instance", path)->required();
    sequence->add_option("--method", seq_opts.method)
        ->check(CLI::IsMember({"general", "careful", "caterpillar", "all-boundary"}));
    sequence->add_flag("--verify", seq_opts.verify, "Replay the sequence");
    sequence->add_option("--emit", seq_opts.emit)->check(CLI::IsMember({"json", "text"}));
    sequence->add_option("--budget", seq_opts.budget);

    OracleOptions oracle_opts;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive flip-graph queries");
    oracle->add_option("query", oracle_opts.query)
        ->required()
        ->check(CLI::IsMember({"distance", "diameter", "radius", "eccentricity"}));
    oracle->add_option("instance", oracle_opts.path);
    oracle->add_option("--n", oracle_opts.n);
    oracle->add_option("--limit", oracle_opts.limit, "Largest n to enumerate")->check(CLI::Range(1, max_oracle_points));

    int k = 1;
    auto* blowup = app.add_subcommand("blowup", "k-blowup of an instance as JSON");
    blowup->add_option("instance", path)->required();
    blowup->add_option("--k", k)->required()->check(CLI::PositiveNumber);

    std::vector<long long> ks;
    auto* certificate = app.add_subcommand("certificate", "Lower-bound certificate as JSON");
    certificate->add_option("instance", path)->required();
    certificate->add_option("--k", ks, "Blowup sizes, each at least 2n");
    certificate->add_option("--budget", budget);

    long long th_n = 0, th_v = 0, th_ac = 0;
    auto* threshold = app.add_subcommand("threshold", "Smallest k beating the upper bound");
    threshold->add_option("--n", th_n)->required();
    threshold->add_option("--vh", th_v)->required();
    threshold->add_option("--ac", th_ac)->required();

    SweepConfig sweep_cfg;
    std::string sweep_mode = "careful";
    std::size_t samples = 0;
    bool no_oracle = false;
    auto* sweep = app.add_subcommand("sweep", "Run a constructor over all tree pairs");
    sweep->add_option("--n", sweep_cfg.n)->check(CLI::Range(1, max_oracle_points));
    sweep->add_option("--mode", sweep_mode)->check(CLI::IsMember({"general", "careful", "caterpillar"}));
    sweep->add_option("--samples", samples, "Sample this many pairs instead of all");
    sweep->add_option("--seed", sweep_cfg.seed);
    sweep->add_flag("--no-oracle", no_oracle, "Skip the flip-distance comparison");

    int rand_n = 10;
    std::uint64_t seed = 0;
    std::size_t steps = 100;
    auto* random = app.add_subcommand("random", "Random instance from two flip walks");
    random->add_option("--n", rand_n);
    random->add_option("--seed", seed);
    random->add_option("--steps", steps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*validate) return cmd_validate(path);
        if (*classify) return cmd_classify(path);
        if (*conflict) return cmd_conflict_graph(path);
        if (*acyclic) return cmd_acyclic(path, budget);
        if (*sequence) return cmd_sequence(path, seq_opts);
        if (*oracle) return cmd_oracle(oracle_opts);
        if (*blowup) return cmd_blowup(path, k);
        if (*certificate) {
            if (ks.empty()) ks.push_back(2LL * read_instance(path).n);
            return cmd_certificate(path, ks, budget);
        }
        if (*threshold) return cmd_threshold(th_n, th_v, th_ac);
        if (*sweep) {
            sweep_cfg.mode = parse_sweep_mode(sweep_mode);
            if (samples) sweep_cfg.samples = samples;
            sweep_cfg.compare_oracle = !no_oracle;
            return cmd_sweep(sweep_cfg);
        }
        if (*random) return cmd_random(rand_n, seed, steps);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return exit_input;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return exit_input;
    } catch (const Unsatisfiable& e) {
        std::cerr << "unsatisfiable: " << e.what() << "\n";
        return exit_failed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failed;
    }
    return exit_input;
}
