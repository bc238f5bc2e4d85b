#ifndef ULTRALAB_LINORDER_HPP
#define ULTRALAB_LINORDER_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ultralab/cochain.hpp"
#include "ultralab/level.hpp"

namespace ultralab::linorder {

/** Exact rational in lowest terms, denominator positive. */
class Rational {
public:
    Rational() = default;
    Rational(long long num, long long den = 1);
    static Rational parse(const std::string& s); // "p/q" with optional sign

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this == o || *this < o; }

    std::string to_string() const;

private:
    long long num_ = 0;
    long long den_ = 1;
};

enum class Cmp { less, equal, greater };

// Lexicographic comparison of equal-length tuples.
Cmp lex_compare(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Drop the last coordinate; order-preserving, surjective, locally constant.
std::vector<Rational> project(const std::vector<Rational>& a);

/**
 * The lexicographic-power tower as a branch space: the level-i vertex is
 * the tuple of the first i+1 coordinates, bonds drop the last coordinate
 * and the canonical extension appends zero.
 */
class LexSpace {
public:
    using VertexT = std::vector<Rational>;

    int max_depth() const { return std::numeric_limits<int>::max(); }
    VertexT bond_down(int, const VertexT& v) const;
    VertexT canonical_up(int, const VertexT& v) const;
    bool related(const std::string& rel, int, const std::vector<VertexT>& t) const;
    const Signature& signature() const;
};

using LexBranch = BranchT<LexSpace>;

LexBranch lex_branch(const LexSpace& space, std::vector<Rational> coordinates);

// The multivalued order predicate of the ordered limit: zero when x <= y is
// decided within depth (or the prefixes agree), else the distance.
Level order_value(const LexBranch& x, const LexBranch& y, int depth);

// Canonical strictly-between rational: least denominator, then least
// numerator. InputError unless a < b.
Rational dense_witness(const Rational& a, const Rational& b);

// Player-2 move for back-and-forth on the ordered tower: the canonical
// branch with the same order/agreement pattern to `theirs` as `moved` has
// to `mine`.
LexBranch lex_respond(const LexSpace& side, const std::vector<LexBranch>& mine,
                      const std::vector<LexBranch>& theirs, const LexBranch& moved, int depth);

} // namespace ultralab::linorder

#endif
