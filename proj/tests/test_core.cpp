#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ultralab/classes.hpp"
#include "ultralab/errors.hpp"
#include "ultralab/json_io.hpp"
#include "ultralab/structures.hpp"

using namespace ultralab;

namespace {

FinStructure loop_vertex() {
    FinStructure a(Signature::graph(), {0});
    a.add_tuple("rho", {0, 0});
    return a;
}

FinStructure loop_pair(bool edge) {
    FinStructure a(Signature::graph(), {0, 1});
    a.add_tuple("rho", {0, 0});
    a.add_tuple("rho", {1, 1});
    if (edge) {
        a.add_tuple("rho", {0, 1});
        a.add_tuple("rho", {1, 0});
    }
    return a;
}

// The vertex-coloured digraph used as the amalgamation counterexample.
FinStructure gamma() {
    Signature sig({{"rho", 2}, {"P", 1}, {"Q", 1}});
    FinStructure g(sig, {1, 2, 3, 4});
    g.add_tuple("P", {2});
    g.add_tuple("P", {4});
    g.add_tuple("Q", {3});
    g.add_tuple("Q", {4});
    g.add_tuple("rho", {2, 3});
    return g;
}

} // namespace

TEST_CASE("identity is an isomorphism") {
    auto a = loop_pair(true);
    CHECK(is_morphism(Morphism::identity(a), MorphismKind::iso));
}

TEST_CASE("collapse of an edgeless loop pair onto a loop vertex: hom yes, embedding no") {
    auto src = loop_pair(false);
    auto dst = loop_vertex();
    Morphism f{src, dst, {{0, 0}, {1, 0}}};
    CHECK(is_morphism(f, MorphismKind::hom));
    CHECK_FALSE(is_morphism(f, MorphismKind::embedding));
}

TEST_CASE("malformed map is an input error") {
    auto src = loop_vertex();
    auto dst = loop_vertex();
    Morphism f{src, dst, {{0, 5}}};
    CHECK_THROWS_AS(is_morphism(f, MorphismKind::hom), InputError);
}

TEST_CASE("morphism enumeration order and counts") {
    auto single = loop_vertex();
    auto pair = loop_pair(false);
    auto homs = enumerate_morphisms(single, pair, MorphismKind::hom);
    REQUIRE(homs.size() == 2);
    CHECK(homs[0].map.at(0) == 0);
    CHECK(homs[1].map.at(0) == 1);

    auto k2 = loop_pair(true);
    auto isos = enumerate_morphisms(k2, k2, MorphismKind::iso);
    CHECK(isos.size() == 2); // identity and the swap

    // loopless pair cannot embed into the loop-carrying K2: reflection fails
    FinStructure loopless(Signature::graph(), {0, 1});
    CHECK(enumerate_morphisms(loopless, k2, MorphismKind::embedding).empty());
}

TEST_CASE("every enumerated morphism passes its own law") {
    auto a = loop_pair(false);
    auto b = loop_pair(true);
    for (auto kind : {MorphismKind::hom, MorphismKind::embedding}) {
        for (const auto& f : enumerate_morphisms(a, b, kind)) CHECK(is_morphism(f, kind));
    }
}

TEST_CASE("composition of homs is a hom, of embeddings an embedding") {
    auto a = loop_vertex();
    auto b = loop_pair(false);
    auto c = loop_pair(true);
    for (const auto& f : enumerate_morphisms(a, b, MorphismKind::embedding)) {
        for (const auto& g : enumerate_morphisms(b, c, MorphismKind::embedding)) {
            CHECK(is_morphism(g.compose_after(f), MorphismKind::embedding));
        }
    }
    for (const auto& f : enumerate_morphisms(b, c, MorphismKind::hom)) {
        for (const auto& g : enumerate_morphisms(c, c, MorphismKind::hom)) {
            CHECK(is_morphism(g.compose_after(f), MorphismKind::hom));
        }
    }
}

TEST_CASE("find_isomorphism basics") {
    auto a = loop_pair(true);
    auto id = find_isomorphism(a, a);
    REQUIRE(id.has_value());
    CHECK(id->map == Morphism::identity(a).map); // least = identity
    CHECK_FALSE(find_isomorphism(loop_pair(true), loop_pair(false)).has_value());

    // two relabelings of a 3-path match by the least vertex bijection
    FinStructure p1(Signature::graph(), {0, 1, 2});
    for (Vertex v : p1.universe()) p1.add_tuple("rho", {v, v});
    p1.add_tuple("rho", {0, 1});
    p1.add_tuple("rho", {1, 0});
    p1.add_tuple("rho", {1, 2});
    p1.add_tuple("rho", {2, 1});
    FinStructure p2 = p1.relabeled({{0, 7}, {1, 3}, {2, 5}});
    auto iso = find_isomorphism(p1, p2);
    REQUIRE(iso.has_value());
    CHECK(is_morphism(*iso, MorphismKind::iso));
    // oracle: exhaustively the least image tuple over sorted source 0,1,2
    auto all = enumerate_morphisms(p1, p2, MorphismKind::iso);
    CHECK(iso->map == all.front().map);
}

TEST_CASE("class generation counts") {
    auto graphs = ClassPresentation::graphs_with_loops(4);
    CHECK(graphs.members(2).size() == 3);  // point; edgeless pair; edge
    CHECK(graphs.members(3).size() == 7);  // 1+2+4
    CHECK(graphs.members(4).size() == 18); // 1+2+4+11

    auto orders = ClassPresentation::linear_orders(4);
    CHECK(orders.members(2).size() == 2);
    CHECK(orders.members(4).size() == 4);

    auto age = ClassPresentation::age_of(gamma(), 4);
    CHECK(age.members(4).size() == 15); // all induced substructures are rigid here
    bool has_gamma = false;
    for (const auto& m : age.members(4))
        if (m.size() == 4 && find_isomorphism(m, gamma())) has_gamma = true;
    CHECK(has_gamma);
}

TEST_CASE("class output is isomorphism-irredundant and hereditary") {
    for (auto cls : {ClassPresentation::graphs_with_loops(3), ClassPresentation::linear_orders(3),
                     ClassPresentation::age_of(gamma(), 4)}) {
        const auto& ms = cls.members(cls.max_size());
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i + 1; j < ms.size(); ++j)
                CHECK_FALSE(find_isomorphism(ms[i], ms[j]).has_value());
        CHECK(cls.hereditary_ok());
    }
}

TEST_CASE("membership tests") {
    auto graphs = ClassPresentation::graphs_with_loops(4);
    CHECK(graphs.contains(loop_pair(true)));
    FinStructure no_loops(Signature::graph(), {0, 1});
    CHECK_FALSE(graphs.contains(no_loops));

    auto age = ClassPresentation::age_of(gamma(), 4);
    FinStructure pq(gamma().signature(), {0});
    pq.add_tuple("P", {0});
    pq.add_tuple("Q", {0});
    CHECK(age.contains(pq));
    FinStructure pq_loop = pq;
    pq_loop.add_tuple("rho", {0, 0});
    CHECK_FALSE(age.contains(pq_loop)); // no member carries a rho-loop
}

TEST_CASE("structure JSON round trip with canonical layout") {
    auto a = loop_pair(true);
    Json j = structure_to_json(a);
    CHECK(j["universe"] == Json::array({0, 1}));
    CHECK(structure_from_json(j) == a);
    CHECK(structure_to_json(structure_from_json(j)) == j);
}
