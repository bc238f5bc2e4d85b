#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ultralab/bignat.hpp"

using ultralab::BigNat;

TEST_CASE("small arithmetic round trips through u64") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t a = rng() >> 16, b = rng() >> 16;
        BigNat A(a), B(b);
        CHECK((A + B).as_u64() == a + b);
        CHECK((A < B) == (a < b));
        if (a >= b) CHECK((A - B).as_u64() == a - b);
        CHECK(A.mul_u64(3).as_u64() == a * 3);
    }
}

TEST_CASE("shifts, bits and decimal") {
    BigNat x = BigNat::power_of_two(200);
    CHECK(x.bit_length() == 201);
    CHECK(x.bit(200));
    CHECK_FALSE(x.bit(199));
    CHECK((x >> 200).as_u64() == 1);
    CHECK((BigNat(1) << 200) == x);
    CHECK(BigNat::from_decimal("18446744073709551616") == BigNat::power_of_two(64));
    CHECK(BigNat::power_of_two(64).to_decimal() == "18446744073709551616");
}

TEST_CASE("isqrt exact on squares and off-by-one neighbours") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        BigNat r(rng() >> 20);
        BigNat sq = r * r;
        CHECK(sq.isqrt() == r);
        CHECK((sq + BigNat(1)).isqrt() == r);
        if (!sq.is_zero()) CHECK((sq - BigNat(1)).isqrt() == r - BigNat(1));
    }
    BigNat big = (BigNat::power_of_two(150) + BigNat(12345)) * (BigNat::power_of_two(150) + BigNat(12345));
    CHECK(big.isqrt() == BigNat::power_of_two(150) + BigNat(12345));
}

TEST_CASE("triangular root matches the staircase enumeration") {
    // oracle: walk n upward tracking the largest t with t(t+1)/2 <= n
    std::uint64_t t = 0;
    for (std::uint64_t n = 0; n < 3000; ++n) {
        while ((t + 1) * (t + 2) / 2 <= n) ++t;
        CHECK(ultralab::triangular_root(BigNat(n)) == BigNat(t));
    }
}
