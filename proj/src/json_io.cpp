#include "ultralab/json_io.hpp"

#include "ultralab/errors.hpp"

namespace ultralab {

Json structure_to_json(const FinStructure& a) {
    Json sig = Json::array();
    for (const auto& r : a.signature().relations())
        sig.push_back({{"name", r.name}, {"arity", r.arity}});
    Json rels = Json::object();
    for (const auto& r : a.signature().relations()) {
        Json list = Json::array();
        for (const auto& t : a.tuples(r.name)) list.push_back(t); // std::set keeps them sorted
        rels[r.name] = list;
    }
    return Json{{"signature", sig}, {"universe", a.universe()}, {"relations", rels}};
}

FinStructure structure_from_json(const Json& j) {
    try {
        std::vector<RelationSymbol> rels;
        for (const auto& r : j.at("signature"))
            rels.push_back({r.at("name").get<std::string>(), r.at("arity").get<int>()});
        FinStructure a(Signature(std::move(rels)), j.at("universe").get<std::vector<Vertex>>());
        if (j.contains("relations")) {
            for (const auto& [name, tuples] : j.at("relations").items()) {
                for (const auto& t : tuples) a.add_tuple(name, t.get<Tuple>());
            }
        }
        return a;
    } catch (const Json::exception& e) {
        throw InputError(std::string("bad structure JSON: ") + e.what());
    }
}

Json vertex_map_to_json(const std::map<Vertex, Vertex>& m) {
    Json out = Json::array();
    for (const auto& [from, to] : m) out.push_back(Json::array({from, to}));
    return out;
}

std::map<Vertex, Vertex> vertex_map_from_json(const Json& j) {
    std::map<Vertex, Vertex> m;
    try {
        for (const auto& pair : j) {
            if (!pair.is_array() || pair.size() != 2) throw InputError("map entries must be pairs");
            m[pair[0].get<Vertex>()] = pair[1].get<Vertex>();
        }
    } catch (const Json::exception& e) {
        throw InputError(std::string("bad vertex map JSON: ") + e.what());
    }
    return m;
}

Json level_to_json(const Level& l) {
    if (l.is_zero()) return Json("zero");
    return Json{{"exp", l.exponent()}, {"value", l.to_string()}};
}

Level level_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "zero") return Level::zero();
    if (j.is_object() && j.contains("exp")) return Level::val(j.at("exp").get<std::uint32_t>());
    if (j.is_number_unsigned()) return Level::val(j.get<std::uint32_t>());
    throw InputError("bad level JSON");
}

} // namespace ultralab
