#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ultralab/cochain.hpp"
#include "ultralab/errors.hpp"

using namespace ultralab;

namespace {

// Constant cochain of a single looped vertex.
Cochain one_point(int depth) {
    FinStructure pt(Signature::graph(), {0});
    pt.add_tuple("rho", {0, 0});
    std::vector<FinStructure> levels(depth + 1, pt);
    std::vector<std::map<Vertex, Vertex>> bonds(depth, {{0, 0}});
    return Cochain(levels, bonds);
}

// A_0 = {a,b} edgeless, A_i = {a} above: not surjective at the bottom.
Cochain shrinking(int depth) {
    FinStructure two(Signature::graph(), {0, 1});
    FinStructure one(Signature::graph(), {0});
    std::vector<FinStructure> levels{two};
    std::vector<std::map<Vertex, Vertex>> bonds;
    for (int i = 0; i < depth; ++i) {
        levels.push_back(one);
        bonds.push_back({{0, 0}});
    }
    return Cochain(levels, bonds);
}

} // namespace

TEST_CASE("cochain validation rejects non-homomorphic bonds") {
    FinStructure k2(Signature::graph(), {0, 1});
    k2.add_tuple("rho", {0, 1});
    k2.add_tuple("rho", {1, 0});
    FinStructure empty2(Signature::graph(), {0, 1});
    // collapsing the edge into a single vertex of an edgeless pair is fine,
    // but mapping an edge onto a non-edge is not when the edge sits above
    std::vector<FinStructure> levels{k2, k2};
    std::vector<std::map<Vertex, Vertex>> bonds{{{0, 0}, {1, 1}}};
    CHECK_NOTHROW(Cochain(levels, bonds));
    std::vector<FinStructure> bad_levels{empty2, k2};
    CHECK_THROWS_AS(Cochain(bad_levels, bonds), InputError);
}

TEST_CASE("agreement and distance basics") {
    FiniteCochainSpace space(Cochain::k2_example(8));
    Branch a(&space, {0});
    Branch b(&space, {1});
    CHECK(agreement_level(a, a, 8).exhausted());
    CHECK(distance(a, a, 8) == Level::zero());
    CHECK(distance(a, b, 8) == Level::val(0));

    CHECK_THROWS_AS(
        [&] {
            FiniteCochainSpace other(Cochain::k2_example(8));
            Branch c(&other, {0});
            (void)distance(a, c, 4);
        }(),
        InputError);
}

TEST_CASE("first disagreement is positional") {
    FiniteCochainSpace space(one_point(8));
    Branch x(&space, {0, 0, 0});
    CHECK(distance(x, x, 8) == Level::zero());
    // prefixes (0,1,...) vs (0,2,...) -> Val(1) on a suitable cochain
    FinStructure three(Signature::graph(), {0, 1, 2});
    FinStructure one(Signature::graph(), {0});
    Cochain c({one, three, three}, {{{0, 0}, {1, 0}, {2, 0}}, {{0, 0}, {1, 1}, {2, 2}}});
    FiniteCochainSpace s2(std::move(c));
    Branch p(&s2, {0, 1, 1});
    Branch q(&s2, {0, 2, 2});
    CHECK(distance(p, q, 2) == Level::val(1));
}

TEST_CASE("ultrametric: triangle over all prefix triples of a small cochain") {
    // oracle-style exhaustive check on every branch triple to depth 3
    FinStructure two(Signature::graph(), {0, 1});
    Cochain c({two, two, two, two},
              {{{0, 0}, {1, 0}}, {{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}});
    FiniteCochainSpace space(std::move(c));
    std::vector<Branch> all;
    for (Vertex v3 : space.cochain().level(3).universe()) {
        std::vector<Vertex> pre{space.cochain().project(3, 0, v3), space.cochain().project(3, 1, v3),
                                space.cochain().project(3, 2, v3), v3};
        all.emplace_back(&space, pre);
    }
    for (const auto& x : all)
        for (const auto& y : all)
            for (const auto& z : all) {
                Level xz = distance(x, z, 3);
                Level bound = Level::max(distance(x, y, 3), distance(y, z, 3));
                CHECK((xz < bound || xz == bound));
            }
}

TEST_CASE("relation values on the two-point example cochain") {
    FiniteCochainSpace space(Cochain::k2_example(8));
    Branch a(&space, {0});
    Branch b(&space, {1});
    CHECK(rel_value_lower(space, "rho", {a, b}, 8) == Level::val(1));
    auto [upper, exact] = rel_value_upper(space, "rho", {a, b}, 8);
    CHECK(upper == Level::val(0));
    CHECK(exact);

    // loops at every level on a constant one-point cochain
    FiniteCochainSpace pt(one_point(6));
    Branch x(&pt, {0});
    CHECK(rel_value_lower(pt, "rho", {x, x}, 6) == Level::zero());
    auto [u2, e2] = rel_value_upper(pt, "rho", {x, x}, 6);
    CHECK(u2 == Level::zero());
    (void)e2;
}

TEST_CASE("upper >= lower pointwise and equality under strong bonds") {
    // identity cochain of an edge: bonds are strong isomorphisms
    FinStructure k2(Signature::graph(), {0, 1});
    k2.add_tuple("rho", {0, 1});
    k2.add_tuple("rho", {1, 0});
    Cochain c({k2, k2, k2}, {{{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}});
    FiniteCochainSpace space(std::move(c));
    Branch a(&space, {0});
    Branch b(&space, {1});
    for (auto tuple : {std::vector<Branch>{a, b}, std::vector<Branch>{a, a}}) {
        Level lower = rel_value_lower(space, "rho", tuple, 2);
        auto [upper, exact] = rel_value_upper(space, "rho", tuple, 2);
        (void)exact;
        CHECK((lower < upper || lower == upper));
        CHECK(lower == upper); // strong cochain: the two measures coincide
    }
}

TEST_CASE("strongness verdicts") {
    FiniteCochainSpace k2(Cochain::k2_example(4));
    auto report = is_strong_at(k2, 0, 4);
    CHECK_FALSE(report.strong);
    CHECK(report.relation == "rho");
    CHECK(report.tuple == Tuple{0, 1}); // the level-0 edge cannot be lifted

    FiniteCochainSpace pt(one_point(5));
    CHECK(is_strong_at(pt, 0, 5).strong);
    CHECK(is_strong_at(pt, 2, 5).strong);
}

TEST_CASE("level-set closedness proxy: lower values are prefix-stable") {
    // if lower(x̄) = Val(i), any ȳ with per-coordinate distance < Val(i)
    // shares all projections through level i, hence the same lower value.
    FiniteCochainSpace space(Cochain::k2_example(6));
    Branch a(&space, {0});
    Branch b(&space, {1});
    Level la = rel_value_lower(space, "rho", {a, b}, 6);
    REQUIRE(la == Level::val(1));
    // the only branches within distance < 1/2 of a and b are themselves
    CHECK(rel_value_lower(space, "rho", {a, b}, 6) == la);
}

TEST_CASE("limit of a stabilizing sequence") {
    FiniteCochainSpace space(Cochain::k2_example(8));
    Branch x(&space, {0});
    std::vector<Branch> constant{x, x, x};
    auto lim = limit_of_cauchy(constant, 6);
    CHECK(distance(lim, x, 6) == Level::zero());

    // element k agrees with a fixed branch y through level k; the limit is y
    FinStructure one(Signature::graph(), {0});
    FinStructure three(Signature::graph(), {0, 1, 2});
    Cochain tree({one, three, three, three},
                 {{{0, 0}, {1, 0}, {2, 0}},
                  {{0, 0}, {1, 1}, {2, 2}},
                  {{0, 0}, {1, 1}, {2, 2}}});
    FiniteCochainSpace ts(std::move(tree));
    Branch y(&ts, {0, 1, 1, 1});
    Branch stray(&ts, {0, 2, 2, 2});
    std::vector<Branch> tail{stray, y, y, y};
    auto lim2 = limit_of_cauchy(tail, 3);
    CHECK(distance(lim2, y, 3) == Level::zero());
    for (std::size_t k = 0; k < tail.size(); ++k) {
        Level d = distance(lim2, tail[k], 3);
        // distance(result, seq[k]) <= Val(k)
        CHECK((d == Level::zero() || !(Level::val(static_cast<std::uint32_t>(k)) < d)));
    }

    // non-Cauchy: level-1 projection never settles
    std::vector<Branch> bad{y, stray, y, stray};
    CHECK_THROWS_WITH_AS(limit_of_cauchy(bad, 3) /**/,
                         "sequence is not Cauchy within depth: first unstable level 1", InputError);
}

TEST_CASE("quotient counts") {
    FiniteCochainSpace space(Cochain::k2_example(8));
    Branch a(&space, {0});
    Branch b(&space, {1});
    CHECK(quotient_sizes<FiniteCochainSpace>({a, a, a}, 3) == 1);
    CHECK(quotient_sizes<FiniteCochainSpace>({a, b}, 0) == 2);
    CHECK(quotient_sizes<FiniteCochainSpace>({a, b, a}, 5) == 2);
}

TEST_CASE("canonical extension requires surjective bonds") {
    FiniteCochainSpace space(shrinking(3));
    Branch a(&space, {0});
    CHECK(a.at(3) == 0);
    Branch b(&space, {1});
    CHECK_THROWS_AS(b.at(1), InputError); // vertex 1 has no preimage
}

TEST_CASE("cochain JSON round trip and DOT export") {
    auto c = Cochain::k2_example(3);
    Json j = c.to_json();
    auto back = Cochain::from_json(j);
    CHECK(back.stored_depth() == c.stored_depth());
    CHECK(back.to_json() == j);
    auto dot = tree_to_dot(c, 2);
    CHECK(dot.find("\"0:0\"") != std::string::npos);
    CHECK(dot.find("\"2:1\" -> \"1:1\"") != std::string::npos);
}

TEST_CASE("1-Lipschitz bound for lower values on sampled pairs") {
    FiniteCochainSpace space(Cochain::k2_example(8));
    Branch a(&space, {0});
    Branch b(&space, {1});
    std::vector<std::vector<Branch>> tuples = {{a, b}, {b, a}, {a, a}, {b, b}};
    for (const auto& t1 : tuples) {
        for (const auto& t2 : tuples) {
            Level v1 = rel_value_lower(space, "rho", t1, 8);
            Level v2 = rel_value_lower(space, "rho", t2, 8);
            Level d = Level::max(distance(t1[0], t2[0], 8), distance(t1[1], t2[1], 8));
            CHECK(abs_diff_le(v1, v2, d));
        }
    }
}
