#include "ultralab/linorder.hpp"

#include <numeric>

namespace ultralab::linorder {

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw InputError("zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw InputError("bad rational literal: " + s);
    }
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Cmp lex_compare(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw InputError("lexicographic comparison needs equal lengths");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return Cmp::less;
        if (b[i] < a[i]) return Cmp::greater;
    }
    return Cmp::equal;
}

std::vector<Rational> project(const std::vector<Rational>& a) {
    if (a.empty()) throw InputError("cannot project the empty tuple");
    return std::vector<Rational>(a.begin(), a.end() - 1);
}

LexSpace::VertexT LexSpace::bond_down(int, const VertexT& v) const { return project(v); }

LexSpace::VertexT LexSpace::canonical_up(int, const VertexT& v) const {
    VertexT w = v;
    w.emplace_back(0);
    return w;
}

bool LexSpace::related(const std::string& rel, int, const std::vector<VertexT>& t) const {
    if (rel != "leq" || t.size() != 2) throw InputError("the ordered tower only has leq/2");
    return lex_compare(t[0], t[1]) != Cmp::greater;
}

const Signature& LexSpace::signature() const {
    static const Signature sig = Signature::linear_order();
    return sig;
}

LexBranch lex_branch(const LexSpace& space, std::vector<Rational> coordinates) {
    if (coordinates.empty()) throw InputError("a branch needs at least one coordinate");
    std::vector<LexSpace::VertexT> prefix;
    for (std::size_t i = 1; i <= coordinates.size(); ++i)
        prefix.emplace_back(coordinates.begin(), coordinates.begin() + static_cast<std::ptrdiff_t>(i));
    return LexBranch(&space, prefix);
}

Level order_value(const LexBranch& x, const LexBranch& y, int depth) {
    auto d = first_disagreement(x, y, depth);
    if (!d) return Level::zero(); // equal through depth
    // the disagreement coordinate decides the order
    const auto& xt = x.at(*d);
    const auto& yt = y.at(*d);
    if (lex_compare(xt, yt) == Cmp::less) return Level::zero();
    return Level::val(static_cast<std::uint32_t>(*d));
}

Rational dense_witness(const Rational& a, const Rational& b) {
    if (!(a < b)) throw InputError("dense witness needs a < b");
    for (long long den = 1;; ++den) {
        // least numerator with a < p/den < b
        __int128 lo = static_cast<__int128>(a.num()) * den;
        long long p = static_cast<long long>(lo / a.den());
        while (Rational(p, den) <= a) ++p;
        if (Rational(p, den) < b) return Rational(p, den);
    }
}

LexBranch lex_respond(const LexSpace& side, const std::vector<LexBranch>& mine,
                      const std::vector<LexBranch>& theirs, const LexBranch& moved, int depth) {
    if (mine.size() != theirs.size()) throw InputError("mismatched game sides");
    const std::size_t k = mine.size();
    std::vector<int> agree(k);
    for (std::size_t j = 0; j < k; ++j) {
        auto d = first_disagreement(moved, mine[j], depth);
        agree[j] = d ? *d : depth + 1;
    }
    for (std::size_t j = 0; j < k; ++j)
        if (agree[j] > depth) return theirs[j];

    std::vector<Rational> coords;
    for (int lvl = 0; lvl <= depth; ++lvl) {
        std::optional<Rational> forced;
        for (std::size_t j = 0; j < k; ++j) {
            if (agree[j] > lvl) {
                Rational c = theirs[j].at(lvl).back();
                if (forced && !(*forced == c))
                    throw std::logic_error("inconsistent forced lex responses");
                forced = c;
            }
        }
        if (forced) {
            coords.push_back(*forced);
            continue;
        }
        // only branches splitting exactly here pin the new coordinate: the
        // order against earlier splits is already decided above
        std::optional<Rational> low, high;
        for (std::size_t j = 0; j < k; ++j) {
            if (agree[j] != lvl) continue;
            const Rational& my_coord = moved.at(lvl)[static_cast<std::size_t>(lvl)];
            const Rational& their_coord = mine[j].at(lvl)[static_cast<std::size_t>(lvl)];
            const Rational& pivot = theirs[j].at(lvl)[static_cast<std::size_t>(lvl)];
            if (my_coord < their_coord) {
                if (!high || pivot < *high) high = pivot;
            } else if (their_coord < my_coord) {
                if (!low || *low < pivot) low = pivot;
            } else {
                throw std::logic_error("split branches compare equal at the split level");
            }
        }
        auto floor_of = [](const Rational& r) {
            long long q = r.num() / r.den();
            if (r.num() < 0 && r.num() % r.den() != 0) --q;
            return q;
        };
        Rational choice(0);
        if (low && high) {
            choice = dense_witness(*low, *high);
        } else if (low) {
            choice = Rational(floor_of(*low) + 1);
        } else if (high) {
            choice = Rational(floor_of(*high) - (Rational(floor_of(*high)) < *high ? 0 : 1));
        }
        coords.push_back(choice);
    }
    return lex_branch(side, coords);
}

} // namespace ultralab::linorder
