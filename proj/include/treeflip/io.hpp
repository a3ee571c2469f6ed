#ifndef TREEFLIP_IO_HPP_
#define TREEFLIP_IO_HPP_

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "treeflip/flips.hpp"
#include "treeflip/geometry.hpp"

namespace treeflip {

using nlohmann::json;

/// Parses `[[a,b],...]`; throws InputError on shape errors.
std::vector<Edge> edges_from_json(const json& j);
json edges_to_json(const Tree& t);

/// {"n", "T", "Tprime", "labeling", optional "cut"}. "Tprime" may be omitted for
/// single-tree commands, in which case it defaults to T.
ConvexInstance instance_from_json(const json& j);
json instance_to_json(const ConvexInstance& inst);

/// Reads a JSON file, or standard input for "-".
json read_json(const std::string& path);
ConvexInstance read_instance(const std::string& path);

json sequence_to_json(const FlipSequence& seq);
FlipSequence sequence_from_json(const json& j);

} // namespace treeflip

#endif
