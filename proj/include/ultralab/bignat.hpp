#ifndef ULTRALAB_BIGNAT_HPP
#define ULTRALAB_BIGNAT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ultralab {

/**
 * Arbitrary-precision natural number, little-endian 64-bit limbs.
 * Covers exactly what the explicit Rado constructions require:
 * comparison, addition/subtraction, bit access, shifts, small
 * multiplication/division and integer square root.
 */
class BigNat {
public:
    BigNat() = default;
    BigNat(std::uint64_t v); // NOLINT: implicit on purpose, small literals abound

    static BigNat power_of_two(std::uint64_t exponent);
    static BigNat from_decimal(const std::string& s);

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const { return limbs_.size() <= 1; }
    std::uint64_t as_u64() const; // InputError if it does not fit

    // Number of bits; 0 for zero.
    std::uint64_t bit_length() const;
    bool bit(std::uint64_t i) const;
    void set_bit(std::uint64_t i);
    std::vector<std::uint64_t> set_bits() const; // ascending positions

    int compare(const BigNat& o) const;
    bool operator==(const BigNat& o) const { return compare(o) == 0; }
    bool operator!=(const BigNat& o) const { return compare(o) != 0; }
    bool operator<(const BigNat& o) const { return compare(o) < 0; }
    bool operator<=(const BigNat& o) const { return compare(o) <= 0; }
    bool operator>(const BigNat& o) const { return compare(o) > 0; }
    bool operator>=(const BigNat& o) const { return compare(o) >= 0; }

    BigNat operator+(const BigNat& o) const;
    BigNat operator-(const BigNat& o) const; // requires *this >= o
    BigNat operator<<(std::uint64_t k) const;
    BigNat operator>>(std::uint64_t k) const;
    BigNat mul_u64(std::uint64_t m) const;
    // Divides in place, returns the remainder.
    std::uint64_t divmod_u64(std::uint64_t d);

    BigNat& operator+=(const BigNat& o) { *this = *this + o; return *this; }
    BigNat& operator-=(const BigNat& o) { *this = *this - o; return *this; }

    // floor(sqrt(n))
    BigNat isqrt() const;

    std::string to_decimal() const;
    std::size_t hash() const;

private:
    void trim();
    std::vector<std::uint64_t> limbs_;
};

// Schoolbook product; only used where operands stay small.
BigNat operator*(const BigNat& a, const BigNat& b);

// floor triangular root: largest t with t(t+1)/2 <= n.
BigNat triangular_root(const BigNat& n);
// t(t+1)/2
BigNat triangular(const BigNat& t);

} // namespace ultralab

#endif
