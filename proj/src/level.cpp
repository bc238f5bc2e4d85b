#include "ultralab/level.hpp"

namespace ultralab {

std::string Level::to_string() const {
    if (is_zero()) return "0";
    if (exponent() == 0) return "1";
    if (exponent() < 63) return "1/" + std::to_string(std::uint64_t(1) << exponent());
    return "2^-" + std::to_string(exponent());
}

bool abs_diff_le(Level a, Level b, Level c) {
    if (a == b) return true;
    Level hi = Level::max(a, b);
    Level lo = Level::min(a, b);
    // diff = v(hi) - v(lo) > 0, so c must be nonzero.
    if (c.is_zero()) return false;
    std::uint32_t k = c.exponent();
    if (lo.is_zero()) {
        // diff = 2^{-i} <= 2^{-k}  iff  k <= i
        return k <= hi.exponent();
    }
    std::uint32_t i = hi.exponent();
    std::uint32_t j = lo.exponent(); // j > i
    // 2^{-i} - 2^{-j} <= 2^{-k}: scale by 2^j -> 2^{j-i} - 1 <= 2^{j-k}.
    if (k <= i) return true;
    if (k == i + 1 && j == i + 1) return true; // equality case: diff = 2^{-i-1}
    return false;
}

} // namespace ultralab
