#include "ultralab/bignat.hpp"

#include <algorithm>
#include <cmath>

#include "ultralab/errors.hpp"

namespace ultralab {

BigNat::BigNat(std::uint64_t v) {
    if (v != 0) limbs_.push_back(v);
}

void BigNat::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigNat BigNat::power_of_two(std::uint64_t exponent) {
    BigNat r;
    r.set_bit(exponent);
    return r;
}

std::uint64_t BigNat::as_u64() const {
    if (limbs_.size() > 1) throw InputError("number too large for a machine word");
    return limbs_.empty() ? 0 : limbs_[0];
}

std::uint64_t BigNat::bit_length() const {
    if (limbs_.empty()) return 0;
    std::uint64_t top = limbs_.back();
    std::uint64_t bits = 0;
    while (top) { ++bits; top >>= 1; }
    return (limbs_.size() - 1) * 64 + bits;
}

bool BigNat::bit(std::uint64_t i) const {
    std::size_t limb = i / 64;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 64)) & 1;
}

std::vector<std::uint64_t> BigNat::set_bits() const {
    std::vector<std::uint64_t> out;
    for (std::size_t limb = 0; limb < limbs_.size(); ++limb) {
        std::uint64_t w = limbs_[limb];
        while (w) {
            unsigned tz = static_cast<unsigned>(__builtin_ctzll(w));
            out.push_back(limb * 64 + tz);
            w &= w - 1;
        }
    }
    return out;
}

void BigNat::set_bit(std::uint64_t i) {
    std::size_t limb = i / 64;
    if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
    limbs_[limb] |= std::uint64_t(1) << (i % 64);
}

int BigNat::compare(const BigNat& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t k = limbs_.size(); k-- > 0;) {
        if (limbs_[k] != o.limbs_[k]) return limbs_[k] < o.limbs_[k] ? -1 : 1;
    }
    return 0;
}

BigNat BigNat::operator+(const BigNat& o) const {
    BigNat r;
    const std::size_t n = std::max(limbs_.size(), o.limbs_.size());
    r.limbs_.resize(n, 0);
    unsigned __int128 carry = 0;
    for (std::size_t k = 0; k < n; ++k) {
        unsigned __int128 s = carry;
        if (k < limbs_.size()) s += limbs_[k];
        if (k < o.limbs_.size()) s += o.limbs_[k];
        r.limbs_[k] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
    }
    if (carry) r.limbs_.push_back(static_cast<std::uint64_t>(carry));
    return r;
}

BigNat BigNat::operator-(const BigNat& o) const {
    if (*this < o) throw InputError("negative result in natural subtraction");
    BigNat r;
    r.limbs_.resize(limbs_.size(), 0);
    std::uint64_t borrow = 0;
    for (std::size_t k = 0; k < limbs_.size(); ++k) {
        unsigned __int128 lhs = limbs_[k];
        unsigned __int128 rhs = borrow;
        if (k < o.limbs_.size()) rhs += o.limbs_[k];
        if (lhs >= rhs) {
            r.limbs_[k] = static_cast<std::uint64_t>(lhs - rhs);
            borrow = 0;
        } else {
            const unsigned __int128 base = static_cast<unsigned __int128>(1) << 64;
            r.limbs_[k] = static_cast<std::uint64_t>(lhs + base - rhs);
            borrow = 1;
        }
    }
    r.trim();
    return r;
}

BigNat BigNat::operator<<(std::uint64_t k) const {
    if (is_zero()) return BigNat();
    BigNat r;
    const std::uint64_t limb_shift = k / 64;
    const std::uint64_t bit_shift = k % 64;
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        r.limbs_[i + limb_shift] |= bit_shift ? (limbs_[i] << bit_shift) : limbs_[i];
        if (bit_shift) r.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
    }
    r.trim();
    return r;
}

BigNat BigNat::operator>>(std::uint64_t k) const {
    const std::uint64_t limb_shift = k / 64;
    const std::uint64_t bit_shift = k % 64;
    if (limb_shift >= limbs_.size()) return BigNat();
    BigNat r;
    r.limbs_.assign(limbs_.begin() + static_cast<std::ptrdiff_t>(limb_shift), limbs_.end());
    if (bit_shift) {
        for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
            r.limbs_[i] >>= bit_shift;
            if (i + 1 < r.limbs_.size()) r.limbs_[i] |= r.limbs_[i + 1] << (64 - bit_shift);
        }
    }
    r.trim();
    return r;
}

BigNat BigNat::mul_u64(std::uint64_t m) const {
    if (m == 0 || is_zero()) return BigNat();
    BigNat r;
    r.limbs_.resize(limbs_.size() + 1, 0);
    unsigned __int128 carry = 0;
    for (std::size_t k = 0; k < limbs_.size(); ++k) {
        unsigned __int128 p = static_cast<unsigned __int128>(limbs_[k]) * m + carry;
        r.limbs_[k] = static_cast<std::uint64_t>(p);
        carry = p >> 64;
    }
    r.limbs_[limbs_.size()] = static_cast<std::uint64_t>(carry);
    r.trim();
    return r;
}

std::uint64_t BigNat::divmod_u64(std::uint64_t d) {
    if (d == 0) throw InputError("division by zero");
    unsigned __int128 rem = 0;
    for (std::size_t k = limbs_.size(); k-- > 0;) {
        unsigned __int128 cur = (rem << 64) | limbs_[k];
        limbs_[k] = static_cast<std::uint64_t>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<std::uint64_t>(rem);
}

namespace {

// Shift-subtract long division, quotient only.
BigNat divide(const BigNat& n, const BigNat& d) {
    BigNat quotient;
    BigNat rem;
    for (std::uint64_t i = n.bit_length(); i-- > 0;) {
        rem = rem << 1;
        if (n.bit(i)) rem.set_bit(0);
        if (rem >= d) {
            rem = rem - d;
            quotient.set_bit(i);
        }
    }
    return quotient;
}

} // namespace

BigNat BigNat::isqrt() const {
    if (is_zero()) return BigNat();
    if (fits_u64()) {
        std::uint64_t v = limbs_[0];
        std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
        while (r > 0 && r > v / r) --r;
        while ((r + 1) <= v / (r + 1)) ++r;
        return BigNat(r);
    }
    // Newton iteration with a power-of-two seed.
    BigNat x = BigNat::power_of_two((bit_length() + 1) / 2);
    for (;;) {
        BigNat y = (x + divide(*this, x)) >> 1;
        if (y >= x) break;
        x = y;
    }
    while (x * x > *this) x = x - BigNat(1);
    return x;
}

std::string BigNat::to_decimal() const {
    if (is_zero()) return "0";
    BigNat tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
        std::uint64_t digit = tmp.divmod_u64(10);
        out.push_back(static_cast<char>('0' + digit));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

BigNat BigNat::from_decimal(const std::string& s) {
    if (s.empty()) throw InputError("empty number literal");
    BigNat r;
    for (char c : s) {
        if (c < '0' || c > '9') throw InputError("bad digit in number literal");
        r = r.mul_u64(10) + BigNat(static_cast<std::uint64_t>(c - '0'));
    }
    return r;
}

std::size_t BigNat::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint64_t limb : limbs_) {
        h ^= static_cast<std::size_t>(limb);
        h *= 1099511628211ull;
    }
    return h;
}

// General product, only needed for isqrt verification and triangular numbers.
BigNat operator*(const BigNat& a, const BigNat& b) {
    BigNat acc;
    for (std::uint64_t i = 0; i < b.bit_length(); ++i) {
        if (b.bit(i)) acc += a << i;
    }
    return acc;
}

BigNat triangular(const BigNat& t) {
    BigNat p = t * (t + BigNat(1));
    return p >> 1;
}

BigNat triangular_root(const BigNat& n) {
    // largest t with t(t+1)/2 <= n, i.e. t = floor((sqrt(8n+1)-1)/2)
    BigNat s = ((n << 3) + BigNat(1)).isqrt();
    BigNat t = (s - BigNat(1)) >> 1;
    while (triangular(t + BigNat(1)) <= n) t += BigNat(1);
    while (triangular(t) > n) t -= BigNat(1);
    return t;
}

} // namespace ultralab
