#include "treeflip/io.hpp"

#include <fstream>
#include <iostream>

#include "treeflip/error.hpp"

namespace treeflip {

std::vector<Edge> edges_from_json(const json& j) {
    if (!j.is_array()) throw InputError("edge list must be an array of [a,b] pairs");
    std::vector<Edge> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw InputError("bad edge entry " + e.dump());
        out.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return out;
}

json edges_to_json(const Tree& t) {
    json out = json::array();
    for (const auto& e : t.edges()) out.push_back({e.a, e.b});
    return out;
}

ConvexInstance instance_from_json(const json& j) {
    if (!j.is_object()) throw InputError("instance must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw InputError("instance needs an integer \"n\"");
    if (!j.contains("T")) throw InputError("instance needs \"T\"");
    const int n = j["n"].get<int>();
    if (n < 1) throw InputError("\"n\" must be positive");
    Labeling labeling = Labeling::cyclic;
    if (j.contains("labeling")) {
        const auto l = j["labeling"].get<std::string>();
        if (l == "linear") labeling = Labeling::linear;
        else if (l != "cyclic") throw InputError("\"labeling\" must be \"cyclic\" or \"linear\"");
    }
    auto t = edges_from_json(j["T"]);
    auto tp = j.contains("Tprime") ? edges_from_json(j["Tprime"]) : t;
    auto inst = ConvexInstance::make(n, std::move(t), std::move(tp), labeling);
    if (j.contains("cut")) {
        const int cut = j["cut"].get<int>();
        if (cut < 1 || cut > n) throw InputError("\"cut\" out of range");
        inst.cut_after = cut;
    }
    return inst;
}

json instance_to_json(const ConvexInstance& inst) {
    json out;
    out["n"] = inst.n;
    out["T"] = edges_to_json(inst.t);
    out["Tprime"] = edges_to_json(inst.tp);
    out["labeling"] = inst.labeling == Labeling::linear ? "linear" : "cyclic";
    if (inst.cut_after != inst.n) out["cut"] = inst.cut_after;
    return out;
}

json read_json(const std::string& path) {
    try {
        if (path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw InputError("cannot open " + path);
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

ConvexInstance read_instance(const std::string& path) {
    try {
        return instance_from_json(read_json(path));
    } catch (const json::exception& e) {
        throw InputError("bad instance in " + path + ": " + e.what());
    }
}

json sequence_to_json(const FlipSequence& seq) {
    json out;
    out["start"] = {{"n", seq.start.n()}, {"T", edges_to_json(seq.start)}};
    json steps = json::array();
    for (const auto& f : seq.steps) steps.push_back({{"remove", {f.remove.a, f.remove.b}}, {"add", {f.add.a, f.add.b}}});
    out["steps"] = steps;
    json parts = json::array();
    for (const auto& p : seq.meta.parts) parts.push_back({{"name", p.name}, {"length", p.length}});
    out["meta"] = {{"constructor", seq.meta.constructor},
                   {"length", seq.length()},
                   {"zero_flips", seq.meta.zero_flips},
                   {"one_flips", seq.meta.one_flips},
                   {"two_flips", seq.meta.two_flips},
                   {"parts", parts},
                   {"cells", seq.meta.cells},
                   {"fallbacks", seq.meta.fallbacks},
                   {"conflict_size", seq.meta.conflict_size},
                   {"acyclic_size", seq.meta.acyclic_size}};
    return out;
}

FlipSequence sequence_from_json(const json& j) {
    try {
        FlipSequence seq;
        const auto& start = j.at("start");
        seq.start = Tree::from_edges(start.at("n").get<int>(), edges_from_json(start.at("T")));
        for (const auto& s : j.at("steps")) {
            const auto rem = edges_from_json(json::array({s.at("remove")}));
            const auto add = edges_from_json(json::array({s.at("add")}));
            seq.steps.push_back(Flip{rem[0], add[0]});
        }
        if (j.contains("meta")) {
            const auto& m = j["meta"];
            seq.meta.constructor = m.value("constructor", "");
            seq.meta.zero_flips = m.value("zero_flips", std::size_t{0});
            seq.meta.one_flips = m.value("one_flips", std::size_t{0});
            seq.meta.two_flips = m.value("two_flips", std::size_t{0});
            seq.meta.cells = m.value("cells", std::size_t{0});
            seq.meta.fallbacks = m.value("fallbacks", std::size_t{0});
            seq.meta.conflict_size = m.value("conflict_size", std::size_t{0});
            seq.meta.acyclic_size = m.value("acyclic_size", std::size_t{0});
            if (m.contains("parts")) {
                for (const auto& p : m["parts"])
                    seq.meta.add_part(p.at("name").get<std::string>(), p.at("length").get<std::size_t>());
            }
        }
        return seq;
    } catch (const json::exception& e) {
        throw InputError(std::string("bad sequence JSON: ") + e.what());
    }
}

} // namespace treeflip
