#ifndef ULTRALAB_JSON_IO_HPP
#define ULTRALAB_JSON_IO_HPP

#include <json.hpp>

#include "ultralab/level.hpp"
#include "ultralab/structures.hpp"

namespace ultralab {

using Json = nlohmann::json;

// {"signature":[{"name":"rho","arity":2}],"universe":[0,1],
//  "relations":{"rho":[[0,0],[1,1],[0,1],[1,0]]}}
// Emitted with sorted universe and sorted tuple lists.
Json structure_to_json(const FinStructure& a);
FinStructure structure_from_json(const Json& j);

// Vertex maps as sorted [[from,to],...] pair lists.
Json vertex_map_to_json(const std::map<Vertex, Vertex>& m);
std::map<Vertex, Vertex> vertex_map_from_json(const Json& j);

// "zero" or {"exp":i,"value":"1/8"}
Json level_to_json(const Level& l);
Level level_from_json(const Json& j);

} // namespace ultralab

#endif
