#ifndef ULTRALAB_STRUCTURES_HPP
#define ULTRALAB_STRUCTURES_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ultralab {

using Vertex = int;
using Tuple = std::vector<Vertex>;

struct RelationSymbol {
    std::string name;
    int arity = 1;
};

/**
 * Finite, purely relational signature. Relation names are pairwise
 * distinct and arities are at least 1.
 */
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<RelationSymbol> relations);

    const std::vector<RelationSymbol>& relations() const { return rels_; }
    int arity(const std::string& name) const;
    bool has(const std::string& name) const;
    bool operator==(const Signature& o) const;

    static Signature graph();        // one binary relation "rho"
    static Signature linear_order(); // one binary relation "leq"

private:
    std::vector<RelationSymbol> rels_;
};

/**
 * Finite relational structure: a universe of non-negative vertex ids and,
 * per relation symbol, a set of tuples over the universe.
 */
class FinStructure {
public:
    FinStructure() = default;
    explicit FinStructure(Signature sig, std::vector<Vertex> universe = {});

    const Signature& signature() const { return sig_; }
    const std::vector<Vertex>& universe() const { return universe_; } // sorted
    int size() const { return static_cast<int>(universe_.size()); }
    bool has_vertex(Vertex v) const;

    void add_vertex(Vertex v);
    void add_tuple(const std::string& rel, const Tuple& t);
    bool related(const std::string& rel, const Tuple& t) const;
    const std::set<Tuple>& tuples(const std::string& rel) const;

    // Induced substructure on the given (subset of the) universe.
    FinStructure induced(const std::vector<Vertex>& verts) const;

    // Renames vertices through the map; the map must be injective.
    FinStructure relabeled(const std::map<Vertex, Vertex>& m) const;

    bool operator==(const FinStructure& o) const;

    // Minimal encoding over all vertex relabelings to 0..n-1; two
    // structures are isomorphic iff their keys agree. Exhaustive, meant
    // for universes of at most ~8 vertices.
    std::string canonical_key() const;

private:
    Signature sig_;
    std::vector<Vertex> universe_;
    std::map<std::string, std::set<Tuple>> rels_;
};

enum class MorphismKind { hom, embedding, iso };

struct Morphism {
    FinStructure source;
    FinStructure target;
    std::map<Vertex, Vertex> map;

    Vertex operator()(Vertex v) const;
    Tuple apply(const Tuple& t) const;
    static Morphism identity(const FinStructure& a);
    Morphism compose_after(const Morphism& inner) const; // this ∘ inner
};

// Laws for the requested kind; hom = preservation, embedding = injective
// preservation + reflection, iso = bijective embedding. Throws InputError
// on a malformed map (missing entries or entries outside the target).
bool is_morphism(const Morphism& f, MorphismKind kind);

// All morphisms of the kind, ordered lexicographically by the image tuple
// over the sorted source universe.
std::vector<Morphism> enumerate_morphisms(const FinStructure& a, const FinStructure& b,
                                          MorphismKind kind);

// Same order, restricted to maps extending the given partial assignment.
// With first_only set, stops after one morphism.
std::vector<Morphism> enumerate_morphisms_extending(const FinStructure& a, const FinStructure& b,
                                                    MorphismKind kind,
                                                    const std::map<Vertex, Vertex>& partial,
                                                    bool first_only = false);

// First isomorphism in the canonical order, if any.
std::optional<Morphism> find_isomorphism(const FinStructure& a, const FinStructure& b);

} // namespace ultralab

#endif
