#ifndef ULTRALAB_COCHAIN_HPP
#define ULTRALAB_COCHAIN_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ultralab/errors.hpp"
#include "ultralab/json_io.hpp"
#include "ultralab/level.hpp"
#include "ultralab/structures.hpp"

namespace ultralab {

/**
 * Finitely truncated ω-cochain: levels 0..depth with bonding homomorphisms
 * pointing downwards, stored as the consecutive maps. An optional extender
 * produces the next level on demand (lazy deepening).
 */
class Cochain {
public:
    struct Extension {
        FinStructure level;
        std::map<Vertex, Vertex> bond; // new level -> previous top level
    };
    using Extender = std::function<Extension(const Cochain&)>;

    Cochain() = default;
    Cochain(std::vector<FinStructure> levels, std::vector<std::map<Vertex, Vertex>> bonds,
            Extender extender = nullptr);

    int stored_depth() const { return static_cast<int>(levels_.size()) - 1; }
    bool extendable() const { return static_cast<bool>(extender_); }
    const FinStructure& level(int i) const;
    const std::map<Vertex, Vertex>& bond(int upper) const; // α_{upper-1}^{upper}

    // α_i^j for i <= j applied to a level-j vertex.
    Vertex project(int j, int i, Vertex v) const;

    // Grows the truncation to the requested depth via the extender.
    void ensure_depth(int depth);

    bool bond_surjective(int upper) const;
    bool all_bonds_surjective() const;

    // Least level-(i+1) preimage of the vertex in canonical vertex order.
    std::optional<Vertex> least_preimage(int i, Vertex v) const;

    // Vertices at level i that extend to compatible chains of length depth.
    std::vector<Vertex> reachable(int i, int depth) const;

    Json to_json() const;
    static Cochain from_json(const Json& j);

    // A_0 = the two-vertex complete loopless graph, edgeless above, identity
    // bonds; extends on demand.
    static Cochain k2_example(int depth);

private:
    std::vector<FinStructure> levels_;
    std::vector<std::map<Vertex, Vertex>> bonds_;
    Extender extender_;
};

/**
 * Adapters below expose a cochain-like space to the branch machinery:
 *   VertexT                     vertex type of every level
 *   int max_depth()             deepest reachable level (extenders extend)
 *   VertexT bond_down(j, v)     α_{j-1}^j(v)
 *   VertexT canonical_up(i, v)  canonical extension rule at level i
 *   bool related(rel, i, tuple) level-i relation membership
 *   const Signature& signature()
 */
class FiniteCochainSpace {
public:
    using VertexT = Vertex;

    explicit FiniteCochainSpace(Cochain c) : cochain_(std::move(c)) {}

    const Cochain& cochain() const { return cochain_; }
    Cochain& cochain() { return cochain_; }
    void ensure_depth(int d) const { cochain_.ensure_depth(d); }

    int max_depth() const;
    Vertex bond_down(int j, Vertex v) const { return cochain_.project(j, j - 1, v); }
    Vertex canonical_up(int i, Vertex v) const;
    bool related(const std::string& rel, int i, const std::vector<Vertex>& t) const;
    const Signature& signature() const { return cochain_.level(0).signature(); }

private:
    mutable Cochain cochain_; // lazily deepened
};

/** A limit element: known finite prefix plus the canonical extension rule. */
template <class Space>
class BranchT {
public:
    using V = typename Space::VertexT;

    BranchT(const Space* space, std::vector<V> prefix) : space_(space), prefix_(std::move(prefix)) {
        if (prefix_.empty()) throw InputError("branch prefix must be non-empty");
        for (std::size_t i = 0; i + 1 < prefix_.size(); ++i) {
            if (!(space_->bond_down(static_cast<int>(i) + 1, prefix_[i + 1]) == prefix_[i]))
                throw InputError("branch prefix is not bond-compatible at level " + std::to_string(i));
        }
    }

    const Space& space() const { return *space_; }
    int known_depth() const { return static_cast<int>(prefix_.size()) - 1; }

    // Level-i projection, extending the private prefix cache canonically.
    const V& at(int i) const {
        while (static_cast<int>(prefix_.size()) <= i)
            prefix_.push_back(space_->canonical_up(static_cast<int>(prefix_.size()) - 1, prefix_.back()));
        return prefix_[static_cast<std::size_t>(i)];
    }

    std::vector<V> prefix(int depth) const {
        at(depth);
        return std::vector<V>(prefix_.begin(), prefix_.begin() + depth + 1);
    }

    bool same_space(const BranchT& o) const { return space_ == o.space_; }

private:
    const Space* space_;
    mutable std::vector<V> prefix_;
};

using Branch = BranchT<FiniteCochainSpace>;

// min{i <= depth : x_i != y_i}; nullopt when the prefixes agree through depth.
template <class Space>
std::optional<int> first_disagreement(const BranchT<Space>& x, const BranchT<Space>& y, int depth) {
    if (!x.same_space(y)) throw InputError("branches live over different cochains");
    for (int i = 0; i <= depth; ++i)
        if (!(x.at(i) == y.at(i))) return i;
    return std::nullopt;
}

struct Agreement {
    std::optional<Level> value; // Val(i); empty = exhausted(depth)
    int depth;
    bool exhausted() const { return !value.has_value(); }
};

template <class Space>
Agreement agreement_level(const BranchT<Space>& x, const BranchT<Space>& y, int depth) {
    auto d = first_disagreement(x, y, depth);
    if (!d) return Agreement{std::nullopt, depth};
    return Agreement{Level::val(static_cast<std::uint32_t>(*d)), depth};
}

// Zero when equal through depth (δ < 2^-depth for the caller), else 2^{-Δ}.
template <class Space>
Level distance(const BranchT<Space>& x, const BranchT<Space>& y, int depth) {
    auto d = first_disagreement(x, y, depth);
    if (!d) return Level::zero();
    return Level::val(static_cast<std::uint32_t>(*d));
}

// Zero when the projections are related at every level <= depth, else the
// first failing level. Once a projection fails, every deeper one does.
template <class Space>
Level rel_value_lower(const Space& space, const std::string& rel,
                      const std::vector<BranchT<Space>>& tuple, int depth) {
    if (tuple.empty()) throw InputError("empty tuple");
    for (int i = 0; i <= depth; ++i) {
        std::vector<typename Space::VertexT> proj;
        proj.reserve(tuple.size());
        for (const auto& b : tuple) proj.push_back(b.at(i));
        if (!space.related(rel, i, proj)) return Level::val(static_cast<std::uint32_t>(i));
    }
    return Level::zero();
}

struct StrongnessReport {
    bool strong;              // up to the examined depth
    std::string relation;     // counterexample data when !strong
    std::vector<Vertex> tuple;
    int depth;
};

struct CauchyError {
    int first_unstable_level;
};

// Assembles the limit of a sequence with the standard modulus: entries with
// index >= M must share their level-M projection. The result then satisfies
// distance(result, seq[k]) <= 2^{-k} for every k.
template <class Space>
BranchT<Space> limit_of_cauchy(const std::vector<BranchT<Space>>& seq, int depth) {
    if (seq.empty()) throw InputError("empty sequence");
    std::vector<typename Space::VertexT> prefix;
    for (int level = 0; level <= depth; ++level) {
        std::size_t start = std::min(static_cast<std::size_t>(level), seq.size() - 1);
        typename Space::VertexT value = seq[start].at(level);
        for (std::size_t k = start + 1; k < seq.size(); ++k) {
            if (!(seq[k].at(level) == value))
                throw InputError("sequence is not Cauchy within depth: first unstable level " +
                                 std::to_string(level));
        }
        prefix.push_back(value);
    }
    return BranchT<Space>(&seq.front().space(), std::move(prefix));
}

// Number of distinct level-i projections in the sample.
template <class Space>
int quotient_sizes(const std::vector<BranchT<Space>>& sample, int i) {
    std::vector<typename Space::VertexT> seen;
    for (const auto& b : sample) {
        bool found = false;
        for (const auto& v : seen)
            if (v == b.at(i)) { found = true; break; }
        if (!found) seen.push_back(b.at(i));
    }
    return static_cast<int>(seen.size());
}

// Finite-space relation-value upper bound: the distance from the tuple to
// the depth-certified related tuples, with an exactness certificate.
std::pair<Level, bool> rel_value_upper(const FiniteCochainSpace& space, const std::string& rel,
                                       const std::vector<Branch>& tuple, int depth);

StrongnessReport is_strong_at(const FiniteCochainSpace& space, int i, int depth);

// DOT rendering of the level tree down to the requested depth.
std::string tree_to_dot(const Cochain& c, int depth);

} // namespace ultralab

#endif
