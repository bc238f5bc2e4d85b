#ifndef ULTRALAB_LEVEL_HPP
#define ULTRALAB_LEVEL_HPP

#include <cstdint>
#include <string>

namespace ultralab {

/**
 * Exact dyadic metric value: either 0 or 2^{-i} for a non-negative i.
 * All metric and relation values in the library are of this form, so
 * every comparison and bound below is decided exactly in integers.
 */
class Level {
public:
    static Level zero() { return Level(0); }
    static Level val(std::uint32_t exponent) { return Level(std::uint64_t(exponent) + 1); }

    bool is_zero() const { return code_ == 0; }
    // Only valid when !is_zero(): the i of 2^{-i}.
    std::uint32_t exponent() const { return static_cast<std::uint32_t>(code_ - 1); }

    // Numeric order of the values: 0 < 2^{-j} < 2^{-i} whenever i < j.
    bool operator==(const Level& o) const { return code_ == o.code_; }
    bool operator!=(const Level& o) const { return code_ != o.code_; }
    bool operator<(const Level& o) const {
        if (is_zero()) return !o.is_zero();
        if (o.is_zero()) return false;
        return exponent() > o.exponent();
    }
    bool operator<=(const Level& o) const { return *this == o || *this < o; }

    static Level max(Level a, Level b) { return a < b ? b : a; }
    static Level min(Level a, Level b) { return a < b ? a : b; }

    std::string to_string() const;

private:
    explicit Level(std::uint64_t code) : code_(code) {}
    std::uint64_t code_; // 0 = value zero, k+1 = value 2^{-k}
};

// Exact test |a - b| <= c over dyadic values.
bool abs_diff_le(Level a, Level b, Level c);

} // namespace ultralab

#endif
