#ifndef ULTRALAB_SEQLIM_HPP
#define ULTRALAB_SEQLIM_HPP

#include <functional>
#include <optional>

#include "ultralab/cochain.hpp"

namespace ultralab {

/**
 * The level-i quotient of the limit of a cochain, computed at a finite
 * horizon: classes are the level-i vertices reachable by compatible chains
 * of length depth, named by their least representative prefix; a class
 * tuple is related when the bond projections are related at every level
 * up to i.
 */
struct QuotientStructure {
    int level = 0;
    int depth = 0;
    FinStructure structure; // universe = reachable level-i vertices
    std::map<Vertex, std::vector<Vertex>> least_prefix;

    bool has_class(Vertex v) const { return structure.has_vertex(v); }
    std::string class_name(Vertex v) const;
    Json to_json() const;
};

QuotientStructure seq_quotient(const FiniteCochainSpace& space, int i, int depth);

// The whole quotient tower as a cochain (levels 0..depth); its bonds are
// the induced surjections between quotients.
Cochain seq_tower(const FiniteCochainSpace& space, int depth);

// ε at level i: a quotient class goes to its level-i projection.
Vertex epsilon_apply(const QuotientStructure& q, Vertex cls);

struct EpsilonVerdict {
    std::vector<bool> embedding_at; // per level 0..depth-1
    std::vector<bool> iso_at;
    bool iso_everywhere = true;
};

EpsilonVerdict epsilon_is_iso(const FiniteCochainSpace& space, int depth);

// η: the class sequence of a branch (classes named by level vertices).
std::vector<Vertex> eta_apply(const Branch& x, int depth);

struct EtaReport {
    bool injective = true;
    bool surjective = true;
    bool isometric = true;
    bool values_preserved = true;
    std::string detail;
    bool ok() const { return injective && surjective && isometric && values_preserved; }
};

EtaReport eta_check(const FiniteCochainSpace& space, const std::vector<Branch>& samples, int depth);

/** A natural transformation between cochains, one morphism per level. */
class CochainMap {
public:
    CochainMap(Cochain source, Cochain target, std::vector<std::map<Vertex, Vertex>> levels);

    const FiniteCochainSpace& source() const { return source_; }
    const FiniteCochainSpace& target() const { return target_; }
    int stored_depth() const { return static_cast<int>(levels_.size()) - 1; }
    Vertex apply(int i, Vertex v) const;
    bool level_is_embedding(int i) const;

private:
    FiniteCochainSpace source_;
    FiniteCochainSpace target_;
    std::vector<std::map<Vertex, Vertex>> levels_;
};

// Lim of a cochain map: (x_i) -> (h_i(x_i)). The branch must live over
// m.source().
Branch lim_map(const CochainMap& m, const Branch& x, int depth);

struct LevelMap {
    std::map<Vertex, Vertex> map;     // between quotient classes
    bool well_defined = true;
    std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> violation; // witness prefixes
};

// Seq of a branch-level map at level i, well-definedness sampled over all
// compatible chains through each class (up to the horizon).
LevelMap seq_of_map(const CochainMap& m, int i, int depth);
LevelMap seq_of_map_oracle(const FiniteCochainSpace& src, const FiniteCochainSpace& dst,
                           const std::function<Branch(const Branch&)>& h, int i, int depth);

struct TriangleReport {
    bool lim_side = true; // (Lim*ε)∘(η*Lim) = id on branches
    bool seq_side = true; // (ε*Seq)∘(Seq*η) = id on classes
    std::string detail;
    bool ok() const { return lim_side && seq_side; }
};

TriangleReport check_triangle_identities(const FiniteCochainSpace& space,
                                         const std::vector<Branch>& samples, int depth);

// Canonical branch through the level-i vertex v: bond-determined below i,
// least preimages above.
Branch canonical_branch_through(const FiniteCochainSpace& space, int i, Vertex v);

// All branch prefixes of length depth through the level-i vertex v.
std::vector<std::vector<Vertex>> chains_through(const FiniteCochainSpace& space, int i, Vertex v,
                                                int depth, std::size_t cap = 0);

} // namespace ultralab

#endif
