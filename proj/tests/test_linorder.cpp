#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ultralab/linorder.hpp"

using namespace ultralab;
using namespace ultralab::linorder;

TEST_CASE("rationals reduce and compare exactly") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational::parse("-7/3") == Rational(-7, 3));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational(1, 2).to_string() == "1/2");
    CHECK_THROWS_AS(Rational(1, 0), InputError);
    CHECK_THROWS_AS(Rational::parse("x"), InputError);
}

TEST_CASE("lexicographic comparison") {
    using V = std::vector<Rational>;
    CHECK(lex_compare(V{{1, 2}, {0}}, V{{1, 2}, {1, 3}}) == Cmp::less);
    CHECK(lex_compare(V{{1, 2}}, V{{1, 2}}) == Cmp::equal);
    CHECK(lex_compare(V{{0}, {5}}, V{{1}, {-100}}) == Cmp::less);
    CHECK_THROWS_AS(lex_compare(V{{0}}, V{{0}, {1}}), InputError);
}

TEST_CASE("projection drops the last coordinate and is locally constant") {
    using V = std::vector<Rational>;
    CHECK(project(V{{1, 2}, {1, 3}}) == V{{1, 2}});
    CHECK_THROWS_AS(project(V{}), InputError);
    // order is weakly preserved
    V a{{1, 2}, {0}}, b{{1, 2}, {1, 3}};
    REQUIRE(lex_compare(a, b) == Cmp::less);
    CHECK(lex_compare(project(a), project(b)) != Cmp::greater);
    // all one-step extensions share their projection
    for (int p = -2; p <= 2; ++p) {
        V ext{{1, 2}, {p, 3}};
        CHECK(project(ext) == V{{1, 2}});
    }
}

TEST_CASE("order values follow the multivalued rule") {
    LexSpace space;
    auto x = lex_branch(space, {{1, 2}, {0, 1}, {0, 1}});
    auto y = lex_branch(space, {{1, 2}, {0, 1}, {1, 3}});
    CHECK(order_value(x, x, 4) == Level::zero());
    CHECK(order_value(x, y, 2) == Level::zero());       // x < y decided at coordinate 2
    CHECK(order_value(y, x, 2) == Level::val(2));       // the violation costs the distance
    CHECK(distance(x, y, 2) == Level::val(2));

    // compatibility: order_value never exceeds the distance
    auto z = lex_branch(space, {{0, 1}, {7, 2}});
    for (const auto* p : {&x, &y}) {
        Level ov = order_value(z, *p, 1);
        Level d = distance(z, *p, 1);
        CHECK((ov < d || ov == d));
    }
}

TEST_CASE("order value is 1-Lipschitz on sampled pairs") {
    LexSpace space;
    std::vector<LexBranch> pool;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            pool.push_back(lex_branch(space, {{a, 1}, {b, 2}, {0, 1}}));
    for (const auto& x : pool)
        for (const auto& y : pool)
            for (const auto& u : pool)
                for (const auto& v : pool) {
                    Level lhs1 = order_value(x, y, 2);
                    Level lhs2 = order_value(u, v, 2);
                    Level bound = Level::max(distance(x, u, 2), distance(y, v, 2));
                    CHECK(abs_diff_le(lhs1, lhs2, bound));
                }
}

TEST_CASE("dense witnesses are canonical") {
    CHECK(dense_witness(Rational(0), Rational(1)) == Rational(1, 2));
    CHECK(dense_witness(Rational(1, 3), Rational(1, 2)) == Rational(2, 5));
    CHECK(dense_witness(Rational(-1), Rational(0)) == Rational(-1, 2));
    CHECK_THROWS_AS(dense_witness(Rational(1), Rational(1)), InputError);
    CHECK_THROWS_AS(dense_witness(Rational(2), Rational(1)), InputError);
}

TEST_CASE("branch metric agrees with coordinate disagreement") {
    LexSpace space;
    auto x = lex_branch(space, {{1, 2}, {0, 1}});
    auto y = lex_branch(space, {{1, 2}, {1, 3}});
    CHECK(distance(x, y, 1) == Level::val(1));
    CHECK(agreement_level(x, y, 1).value.value() == Level::val(1));
    // canonical extension appends zero
    CHECK(x.at(3).back() == Rational(0));
}

TEST_CASE("back-and-forth responses keep the order pattern") {
    LexSpace left, right;
    std::vector<LexBranch> mine{lex_branch(left, {{0, 1}, {0, 1}}),
                                lex_branch(left, {{1, 1}, {0, 1}})};
    std::vector<LexBranch> theirs{lex_branch(right, {{5, 1}, {0, 1}}),
                                  lex_branch(right, {{7, 1}, {0, 1}})};
    // a point strictly between the two on the left
    auto moved = lex_branch(left, {{1, 2}, {3, 1}});
    auto answer = lex_respond(right, mine, theirs, moved, 3);
    for (std::size_t j = 0; j < mine.size(); ++j) {
        // same agreement level and same strict order as on the moving side
        auto dm = first_disagreement(moved, mine[j], 3);
        auto da = first_disagreement(answer, theirs[j], 3);
        REQUIRE(dm.has_value());
        REQUIRE(da.has_value());
        CHECK(*dm == *da);
        CHECK(order_value(moved, mine[j], 3).is_zero() == order_value(answer, theirs[j], 3).is_zero());
    }
    // repeated rounds stay injective and monotone: feed responses back in
    std::vector<LexBranch> m2 = mine;
    std::vector<LexBranch> t2 = theirs;
    m2.push_back(moved);
    t2.push_back(answer);
    auto moved2 = lex_branch(left, {{0, 1}, {1, 2}});
    auto answer2 = lex_respond(right, m2, t2, moved2, 3);
    for (std::size_t j = 0; j < m2.size(); ++j) {
        auto dm = first_disagreement(moved2, m2[j], 3);
        auto da = first_disagreement(answer2, t2[j], 3);
        CHECK(dm.has_value() == da.has_value());
        if (dm) CHECK(*dm == *da);
        CHECK(order_value(moved2, m2[j], 3).is_zero() == order_value(answer2, t2[j], 3).is_zero());
    }
}
